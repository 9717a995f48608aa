#include "cantorplane/kuratowski.hpp"

namespace cantorplane {

Rat pow2(long e) {
  Int one = 1;
  Rat r;
  if (e >= 0) {
    Int v;
    mpz_mul_2exp(v.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    r = v;
  } else {
    Int den;
    mpz_mul_2exp(den.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    r = Rat(one, den);
  }
  return r;
}

DyadicRational DyadicRational::from_rational(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  const Int& den = c.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) throw DomainError("value is not dyadic");
  DyadicRational d;
  d.numerator = c.get_num();
  d.exponent = static_cast<unsigned>(mpz_scan1(den.get_mpz_t(), 0));
  return d;
}

Rat DyadicRational::value() const { return Rat(numerator) * pow2(-static_cast<long>(exponent)); }

std::string DyadicRational::to_string() const { return value().get_str(); }

std::string RationalInterval::to_string() const { return "[" + lo.get_str() + ", " + hi.get_str() + "]"; }

std::string tri_string(Tri t) {
  switch (t) {
    case Tri::yes:
      return "true";
    case Tri::no:
      return "false";
    default:
      return "unknown";
  }
}

DyadicRational eval_finite(const Support& d) {
  if (!is_support(d)) throw DomainError("invalid support");
  const unsigned k = static_cast<unsigned>(d.size());
  Int num = 0;
  for (unsigned j = 1; j <= k; ++j) {
    Int term;
    Int one = 1;
    mpz_mul_2exp(term.get_mpz_t(), one.get_mpz_t(), k - j);
    if (d[j - 1] % 2 == 0)
      num += term;
    else
      num -= term;
  }
  DyadicRational out;
  if (num == 0) return out;
  unsigned tz = static_cast<unsigned>(mpz_scan1(num.get_mpz_t(), 0));
  unsigned shift = std::min(tz, k);
  mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), shift);
  out.numerator = num;
  out.exponent = k - shift;
  return out;
}

RationalInterval eval_cylinder(const Cylinder& c) {
  Support s = c.support();
  Rat p = eval_finite(s).value();
  Rat r = pow2(-static_cast<long>(s.size()));
  return {p - r, p + r};
}

SignedExpansion::SignedExpansion(Rat residual, int first_term, int min_position)
    : r_(std::move(residual)), j_(first_term - 1), pos_(min_position) {}

int SignedExpansion::next() {
  ++j_;
  sign_ = (sgn(r_) >= 0) ? 1 : -1;
  r_ -= sign_ * pow2(-j_);
  int want = (sign_ > 0) ? 0 : 1;
  int p = pos_ + 1;
  if (p % 2 != want) ++p;
  pos_ = p;
  return p;
}

CantorPoint fiber_point(const Rat& t) {
  if (t < -1 || t > 1) throw DomainError("t must lie in [-1, 1]");
  auto exp = std::make_shared<SignedExpansion>(t, 1, 0);
  return CantorPoint::lazy([exp]() { return exp->next(); });
}

bool accumulation_test(const Support& d, const Rat& t) {
  Rat f = eval_finite(d).value();
  Rat r = pow2(-static_cast<long>(d.size()));
  return f - r <= t && t <= f + r;
}

std::optional<CantorPoint> fiber_witness_in_cylinder(const Support& d, const Rat& t, int n) {
  if (n < N_of(d)) throw DomainError("n must be at least N_d");
  const int k = k_of(d);
  Rat residual = t - eval_finite(d).value();
  // The expansion of the tail keeps |r_j| <= 2^{1-j}; the first term needs |r| <= 2^{-k}.
  if (abs(residual) > pow2(-k)) return std::nullopt;
  auto exp = std::make_shared<SignedExpansion>(residual, k + 1, n);
  auto head = std::make_shared<std::size_t>(0);
  Support prefix = d;
  return CantorPoint::lazy([exp, head, prefix]() {
    if (*head < prefix.size()) return prefix[(*head)++];
    return exp->next();
  });
}

FiberInterval closure_slice(const Support& d) {
  Rat f = eval_finite(d).value();
  Rat r = pow2(-static_cast<long>(d.size()));
  return {d, {f - r, f + r}};
}

Rat partial_sum(const CantorPoint& x, int j) {
  Rat s = 0;
  for (int i = 1; i <= j; ++i) {
    Rat term = pow2(-i);
    if (x.at(i) % 2 == 0)
      s += term;
    else
      s -= term;
  }
  return s;
}

Tri graph_neighborhood_member(const CantorPoint& x, const GraphBox& box, int depth) {
  if (!box.cylinder.contains(x)) return Tri::no;
  RationalInterval enc;
  if (x.is_finite()) {
    Rat v = eval_finite(x.finite_support()).value();
    enc = {v, v};
  } else {
    int j = std::max(depth, 0);
    Rat p = partial_sum(x, j);
    Rat r = pow2(-j);
    enc = {p - r, p + r};
  }
  if (box.lo < enc.lo && enc.hi < box.hi) return Tri::yes;
  if (enc.hi <= box.lo || enc.lo >= box.hi) return Tri::no;
  return Tri::unknown;
}

}  // namespace cantorplane
