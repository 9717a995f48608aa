#pragma once

#include <algorithm>
#include <vector>

#include "cantorplane/cantor_core.hpp"
#include "cantorplane/kuratowski.hpp"

namespace oracle {

using cantorplane::Rat;
using cantorplane::Support;

// All supports of size k inside [1..maxN] from bitmasks, lexicographic.
inline std::vector<Support> subsets(int k, int maxN) {
  std::vector<Support> out;
  for (unsigned m = 0; m < (1u << maxN); ++m) {
    Support s;
    for (int i = 0; i < maxN; ++i)
      if (m & (1u << i)) s.push_back(i + 1);
    if (static_cast<int>(s.size()) == k) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Support> all_supports(int maxN) {
  std::vector<Support> out;
  for (int k = 0; k <= maxN; ++k)
    for (auto& s : subsets(k, maxN)) out.push_back(s);
  return out;
}

// f by direct summation with doubling denominators.
inline Rat f_value(const Support& s) {
  Rat v = 0, w = Rat(1, 2);
  for (int c : s) {
    v += (c % 2 == 0) ? w : Rat(-w);
    w /= 2;
  }
  return v;
}

inline bool prefix_match(const Support& y, const Support& d, int n) {
  for (int i = 1; i <= n; ++i) {
    bool a = std::find(y.begin(), y.end(), i) != y.end();
    bool b = std::find(d.begin(), d.end(), i) != d.end();
    if (a != b) return false;
  }
  return true;
}

inline Rat two_pow(int e) {
  Rat r = 1;
  for (int i = 0; i < e; ++i) r *= 2;
  for (int i = 0; i > e; --i) r /= 2;
  return r;
}

}  // namespace oracle
