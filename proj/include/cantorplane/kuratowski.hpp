#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "cantorplane/cantor_core.hpp"

namespace cantorplane {

using Int = mpz_class;
using Rat = mpq_class;

// numerator / 2^exponent, reduced.
struct DyadicRational {
  Int numerator;
  unsigned exponent = 0;

  static DyadicRational from_rational(const Rat& q);
  Rat value() const;
  std::string to_string() const;
  bool operator==(const DyadicRational& o) const {
    return numerator == o.numerator && exponent == o.exponent;
  }
};

struct RationalInterval {
  Rat lo, hi;

  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  Rat width() const { return hi - lo; }
  std::string to_string() const;
};

struct FiberInterval {
  Support owner;
  RationalInterval interval;
};

enum class Tri { no, yes, unknown };
std::string tri_string(Tri t);

// 2^e for any integer e.
Rat pow2(long e);

DyadicRational eval_finite(const Support& d);
RationalInterval eval_cylinder(const Cylinder& c);

// Signed binary expansion of a residual: term j has sign s_j and sits at
// support position c(j).
class SignedExpansion {
 public:
  SignedExpansion(Rat residual, int first_term, int min_position);
  // Advance one term; returns the support position used.
  int next();
  int last_sign() const { return sign_; }
  const Rat& residual() const { return r_; }
  int term() const { return j_; }

 private:
  Rat r_;
  int j_;
  int pos_;
  int sign_ = 0;
};

CantorPoint fiber_point(const Rat& t);
bool accumulation_test(const Support& d, const Rat& t);
std::optional<CantorPoint> fiber_witness_in_cylinder(const Support& d, const Rat& t, int n);
FiberInterval closure_slice(const Support& d);

// Partial sum of the defining series through the first j support terms.
Rat partial_sum(const CantorPoint& x, int j);

// Open box: a cylinder times the open interval (lo, hi).
struct GraphBox {
  Cylinder cylinder;
  Rat lo, hi;
};
// For lazy x, depth is the number of support terms forced.
Tri graph_neighborhood_member(const CantorPoint& x, const GraphBox& box, int depth);

}  // namespace cantorplane
