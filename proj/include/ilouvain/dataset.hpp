#pragma once

#include <string>

#include "ilouvain/graph.hpp"

namespace ilouvain {

/// True for bundled data file keys ("karate", "lesmiserables", "meredith").
bool is_registered_dataset(const std::string& name);

/// Resolution order: builtin generator, then the bundled-dataset registry
/// under data_dir (which knows each file's weightedness), then a filesystem
/// path read with the supplied weighted flag. Throws ParseError when nothing
/// resolves or the file is malformed.
Graph resolve_graph(const std::string& name_or_path, const std::string& data_dir,
                    bool weighted);

}  // namespace ilouvain
