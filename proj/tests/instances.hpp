#pragma once

#include <vector>

#include "lpbound/group.hpp"

namespace instances {

// Cyclic groups and small products up to the given order.
inline std::vector<std::vector<int>> groups_up_to(int max_order) {
  std::vector<std::vector<int>> out;
  for (int n = 1; n <= max_order; ++n) out.push_back({n});
  const std::vector<std::vector<int>> products{{2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 3}, {3, 4}, {2, 2, 2}, {2, 2, 3}};
  for (const auto& p : products) {
    int order = 1;
    for (int o : p) order *= o;
    if (order <= max_order) out.push_back(p);
  }
  return out;
}

// Orbits {x, -x} of the nonzero elements.
inline std::vector<std::vector<std::size_t>> sign_orbits(const lpbound::FiniteAbelianGroup& g) {
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<bool> seen(g.order(), false);
  for (std::size_t x = 1; x < g.order(); ++x) {
    if (seen[x]) continue;
    const auto y = g.negate(x);
    seen[x] = seen[y] = true;
    orbits.push_back(x == y ? std::vector<std::size_t>{x} : std::vector<std::size_t>{x, y});
  }
  return orbits;
}

// Every symmetric forbidden set containing 0, as sorted member lists.
inline std::vector<std::vector<std::size_t>> symmetric_sets(const lpbound::FiniteAbelianGroup& g) {
  const auto orbits = sign_orbits(g);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << orbits.size()); ++mask) {
    std::vector<std::size_t> members{0};
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      if (mask >> i & 1u) members.insert(members.end(), orbits[i].begin(), orbits[i].end());
    }
    out.push_back(members);
  }
  return out;
}

inline std::vector<bool> mask_of(const lpbound::FiniteAbelianGroup& g, const std::vector<std::size_t>& members) {
  std::vector<bool> m(g.order(), false);
  for (auto x : members) m[x] = true;
  return m;
}

}  // namespace instances
