#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace clusim {

using RecordId = std::size_t;

/// One input row: values in schema field order. `id` is the 0-based data
/// row index in the source table.
struct Record {
  RecordId id = 0;
  std::vector<std::string> values;
};

}  // namespace clusim
