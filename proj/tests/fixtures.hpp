#pragma once

#include "cantorplane/poset.hpp"

namespace fixture {

using namespace cantorplane;

inline Point P(const Rat& x, const Rat& y) { return Point(Scalar(x), Scalar(y)); }

inline StageRecord scheme_stage(int id, const CantorScheme& s, const RegionPair& pair = {Region::disc(0, 0, 2)}) {
  return {id, pair, std::nullopt, s, tail_cover(s, Continuation::cover_rule)};
}

// Radial scheme mirrored through sigma(empty) onto the negative x-axis.
inline CantorScheme mirrored(const CantorScheme& s) {
  CantorScheme m = s;
  for (auto& [d, n] : m.nodes) n.sigma = Point(-n.sigma.x, n.sigma.y);
  return m;
}

inline Condition as_condition(const CantorScheme& s) {
  Condition c;
  c.nodes = s.nodes;
  return c;
}

}  // namespace fixture
