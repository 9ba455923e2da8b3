// Writes the bundled manifolds, fibrations, loops and complexes as JSON files.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qhdescent/qhdescent.h"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: qhd_export <data directory>\n";
    return 2;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir / "elements");
  struct Item {
    std::string document;
    std::filesystem::path file;
  };
  std::vector<Item> items;
  for (const char* m : {"cp1", "cp2", "cp2_undeformed", "s2xs2", "t2"})
    items.push_back({std::string("manifold:") + m, dir / (std::string(m) + ".json")});
  // Blow-up files carry their section tables, so they load as manifolds and fibrations.
  for (const char* f : {"blowup_cp2", "blowup_t4", "cp1_x_s2", "cp2_x_s2", "s2xs2_x_s2"})
    items.push_back({std::string("fibration:") + f, dir / (std::string(f) + ".json")});
  for (const char* m : {"cp1", "cp2", "s2xs2", "blowup_cp2", "blowup_t4", "t2"})
    items.push_back({std::string("elements:") + m, dir / "elements" / (std::string(m) + ".json")});
  items.push_back({"complex:torus", dir / "torus_complex.json"});
  items.push_back({"cycles:torus", dir / "torus_cycles.json"});
  for (const auto& item : items) {
    char* text = nullptr;
    if (qhd_bundled_document(item.document.c_str(), nullptr, &text) != QHD_OK) {
      std::cerr << item.document << ": " << qhd_last_error() << "\n";
      return 1;
    }
    std::ofstream(item.file) << text << "\n";
    qhd_string_free(text);
    std::cout << item.file.string() << "\n";
  }
  return 0;
}
