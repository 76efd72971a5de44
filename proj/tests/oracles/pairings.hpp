#pragma once

// Perfect pairings of 2n points listed by brute force, as sorted pair sets.

#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Pairing = std::set<std::pair<int, int>>;

inline void pairings_rec(std::vector<int>& free, Pairing& cur, std::vector<Pairing>& out) {
  if (free.empty()) {
    out.push_back(cur);
    return;
  }
  const int a = free.front();
  for (std::size_t k = 1; k < free.size(); ++k) {
    const int b = free[k];
    std::vector<int> rest;
    for (std::size_t i = 1; i < free.size(); ++i) {
      if (i != k) rest.push_back(free[i]);
    }
    cur.insert({a, b});
    pairings_rec(rest, cur, out);
    cur.erase({a, b});
  }
}

/// Pairings of {1, ..., 2n}.
inline std::vector<Pairing> all_pairings(int n) {
  std::vector<int> pts;
  for (int i = 1; i <= 2 * n; ++i) pts.push_back(i);
  std::vector<Pairing> out;
  Pairing cur;
  pairings_rec(pts, cur, out);
  return out;
}

}  // namespace oracle
