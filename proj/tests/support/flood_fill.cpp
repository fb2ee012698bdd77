#include "flood_fill.hpp"

#include <deque>
#include <unordered_map>

namespace oracle {

FloodLabels flood_fill(const borescan::BinaryMask& mask, int min_area) {
  const int w = mask.width();
  const int h = mask.height();
  FloodLabels out;
  out.labels.assign(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::int32_t> raw(out.labels.size(), 0);
  std::int32_t next = 0;
  std::vector<std::vector<std::size_t>> members;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t seed = static_cast<std::size_t>(y) * w + x;
      if (!mask.at(x, y) || raw[seed] != 0) continue;
      ++next;
      members.emplace_back();
      std::deque<std::pair<int, int>> queue{{x, y}};
      raw[seed] = next;
      while (!queue.empty()) {
        const auto [cx, cy] = queue.front();
        queue.pop_front();
        members.back().push_back(static_cast<std::size_t>(cy) * w + cx);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx;
            const int ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h || !mask.at(nx, ny)) continue;
            const std::size_t i = static_cast<std::size_t>(ny) * w + nx;
            if (raw[i] != 0) continue;
            raw[i] = next;
            queue.emplace_back(nx, ny);
          }
        }
      }
    }
  }
  std::int32_t kept = 0;
  for (const auto& group : members) {
    if (static_cast<int>(group.size()) < min_area) continue;
    ++kept;
    out.areas.push_back(group.size());
    for (std::size_t i : group) out.labels[i] = kept;
  }
  return out;
}

bool same_partition(const std::vector<std::int32_t>& labels,
                    const std::vector<std::int32_t>& expected) {
  if (labels.size() != expected.size()) return false;
  std::unordered_map<std::int32_t, std::int32_t> fwd;
  std::unordered_map<std::int32_t, std::int32_t> back;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::int32_t a = labels[i];
    const std::int32_t b = expected[i];
    if ((a == 0) != (b == 0)) return false;
    if (a == 0) continue;
    auto [it, fresh] = fwd.try_emplace(a, b);
    if (!fresh && it->second != b) return false;
    auto [jt, fresh_b] = back.try_emplace(b, a);
    if (!fresh_b && jt->second != a) return false;
  }
  return true;
}

}  // namespace oracle
