#pragma once

#include <string>

#include <doctest.h>

#include "cxtcat/io.hpp"

inline std::string data_path(const std::string& name) { return std::string(CXTCAT_TEST_DATA) + "/" + name; }

inline std::vector<std::string> extent_labels(const cxtcat::ConceptLattice& l, std::size_t i) {
  return cxtcat::labels_of(l.context()->objects(), l.extent(i));
}
