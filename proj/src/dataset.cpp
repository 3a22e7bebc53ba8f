#include "ilouvain/dataset.hpp"

#include <array>
#include <filesystem>

namespace ilouvain {

namespace {

struct DatasetEntry {
  const char* key;
  const char* file;
  bool weighted;
};

// Weightedness is a property of the file, not a caller choice.
constexpr std::array<DatasetEntry, 3> kRegistry{{
    {"karate", "karate.edges", false},
    {"lesmiserables", "lesmiserables.edges", true},
    {"meredith", "meredith.edges", false},
}};

const DatasetEntry* find_entry(const std::string& name) {
  for (const auto& e : kRegistry)
    if (name == e.key) return &e;
  return nullptr;
}

}  // namespace

bool is_registered_dataset(const std::string& name) {
  return find_entry(name) != nullptr;
}

Graph resolve_graph(const std::string& name_or_path, const std::string& data_dir,
                    bool weighted) {
  if (is_builtin_name(name_or_path)) return builtin_graph(name_or_path);
  if (const DatasetEntry* e = find_entry(name_or_path))
    return load_edge_list(std::filesystem::path(data_dir) / e->file, e->weighted);
  return load_edge_list(name_or_path, weighted);
}

}  // namespace ilouvain
