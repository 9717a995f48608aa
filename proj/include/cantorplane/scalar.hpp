#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "cantorplane/kuratowski.hpp"

namespace cantorplane {

struct Interval {
  Rat lo, hi;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval square(const Interval& a);

// Increasing pairwise-coprime non-square integers; stands for sqrt of their product.
using Radical = std::vector<Int>;

struct Term {
  Radical rad;
  Rat coef;
};

// m = f^2 * rest with small square factors and perfect squares removed.
struct SquareSplit {
  Int f;
  Int rest;
};
SquareSplit split_square(const Int& m);
// Pairwise-coprime refinement of a list of integers > 1 by gcd splitting.
std::vector<Int> coprime_base(std::vector<Int> xs);

Int radical_value(const Radical& r);

// Exact real number sum_i c_i * sqrt(R_i), each R_i a product over a base of
// pairwise-coprime non-squares. Such roots are linearly independent over Q,
// so within a common base the term list is canonical.
class Scalar {
 public:
  enum class Kind { rational, surd, compound };

  Scalar() = default;
  Scalar(const Rat& q);  // NOLINT
  Scalar(long v);        // NOLINT

  static Scalar sqrt_of(const Rat& q);
  // a + b*sqrt(m)
  static Scalar surd(const Rat& a, const Rat& b, const Int& m);
  static Scalar parse(const std::string& text);

  Kind kind() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].rad.empty()); }
  Rat rational_part() const;
  // Requires is_rational().
  Rat rational_value() const;
  const std::vector<Term>& terms() const { return terms_; }

  int sign() const;
  Interval enclose(int bits) const;
  // Rational within 2^-bits of the value.
  Rat approx(int bits) const;
  double to_double() const;

  std::string str() const;
  std::string decimal(int digits) const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar scaled(const Rat& q) const;
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  int exact_sign() const;
  std::vector<Term> terms_;
  mutable int cache_bits_ = -1;
  mutable Interval cache_;
};

// -1, 0, +1
int scalar_compare(const Scalar& a, const Scalar& b);

Rat floor_sqrt_scaled(const Int& m, int bits);
Rat sqrt_approx(const Rat& q, int bits);
// Simplest rational strictly between lo < hi.
Rat simplest_between(const Rat& lo, const Rat& hi);
// A rational strictly between two distinct scalars a < b.
Rat rational_between(const Scalar& a, const Scalar& b);
Int floor_rat(const Rat& q);

}  // namespace cantorplane
