#pragma once

// Reference labeler for connected_components: plain BFS flood fill.

#include <cstdint>
#include <vector>

#include "borescan/detect.hpp"

namespace oracle {

struct FloodLabels {
  std::vector<std::int32_t> labels;  // 0 = background, components 1..n
  std::vector<std::size_t> areas;    // index label - 1
};

FloodLabels flood_fill(const borescan::BinaryMask& mask, int min_area);

/// True when `labels` induces the same partition as `expected`
/// (same background, a bijection between component labels).
bool same_partition(const std::vector<std::int32_t>& labels,
                    const std::vector<std::int32_t>& expected);

}  // namespace oracle
