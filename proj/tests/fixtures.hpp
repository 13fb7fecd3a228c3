#pragma once

#include "operlab/io.hpp"

#include <string>

namespace operlab::testfx {

inline std::string data_path(const std::string& rel) { return std::string(OPERLAB_DATA_DIR) + "/" + rel; }

inline surface::GroupRepresentation rep(const std::string& name) {
  return io::representation_from_json(io::read_json_file(data_path("fixtures/" + name + ".json")));
}

}  // namespace operlab::testfx
