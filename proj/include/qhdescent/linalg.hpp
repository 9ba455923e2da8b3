#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qhdescent/rational.hpp"

// Dense exact linear algebra for the small systems the engine solves.
namespace qhd::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major

Matrix zeros(std::size_t rows, std::size_t cols);
Matrix identity(std::size_t n);
Matrix transpose(const Matrix& a);

struct Echelon {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};
Echelon rref(Matrix a);
std::size_t rank(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);
// Basis of {x : a x = 0}; `cols` is needed when a has no rows.
std::vector<Vector> kernel(const Matrix& a, std::size_t cols);
// Some x with a x = b, or nullopt.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

// Coefficients c_0..c_n of det(X I - a) by Berkowitz's division-free recurrence,
// valid over any commutative ring. T needs +, -, *, T{} as zero and `one`.
template <class T>
std::vector<T> characteristic_polynomial(const std::vector<std::vector<T>>& a, const T& one) {
  const std::size_t n = a.size();
  // poly holds coefficients from the leading power down: poly[0] = 1.
  std::vector<T> poly{one};
  for (std::size_t r = 0; r < n; ++r) {
    // Leading principal block of size r+1 split as [[A, C], [R, d]].
    std::vector<T> toeplitz;  // first column of the (r+2) x (r+1) Toeplitz matrix
    toeplitz.reserve(r + 2);
    toeplitz.push_back(one);
    toeplitz.push_back(T{} - a[r][r]);
    std::vector<T> col(r);  // A^k C
    for (std::size_t i = 0; i < r; ++i) col[i] = a[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      T dot{};
      for (std::size_t i = 0; i < r; ++i) dot = dot + a[r][i] * col[i];
      toeplitz.push_back(T{} - dot);
      if (k + 1 < r) {
        std::vector<T> next(r);
        for (std::size_t i = 0; i < r; ++i) {
          T acc{};
          for (std::size_t j = 0; j < r; ++j) acc = acc + a[i][j] * col[j];
          next[i] = acc;
        }
        col = std::move(next);
      }
    }
    std::vector<T> next_poly(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i) {
      T acc{};
      for (std::size_t j = 0; j <= i && j < r + 1; ++j) acc = acc + toeplitz[i - j] * poly[j];
      next_poly[i] = acc;
    }
    poly = std::move(next_poly);
  }
  // Reorder to ascending powers.
  return std::vector<T>(poly.rbegin(), poly.rend());
}

template <class T>
T determinant(const std::vector<std::vector<T>>& a, const T& one) {
  if (a.empty()) return one;
  const auto poly = characteristic_polynomial(a, one);
  return a.size() % 2 == 0 ? poly[0] : T{} - poly[0];
}

}  // namespace qhd::linalg
