#include <doctest.h>

#include <random>

#include "cantorplane/kuratowski.hpp"
#include "oracles.hpp"

using namespace cantorplane;

namespace {

// Extensions of the word's support with every free index in (len, maxN].
std::vector<Support> extensions(const Cylinder& c, int maxN) {
  std::vector<Support> out;
  Support base = c.support();
  int L = static_cast<int>(c.length());
  int free = std::max(0, maxN - L);
  for (unsigned m = 0; m < (1u << free); ++m) {
    Support s = base;
    for (int i = 0; i < free; ++i)
      if (m & (1u << i)) s.push_back(L + 1 + i);
    out.push_back(s);
  }
  return out;
}

Cylinder word_cylinder(const std::string& w) { return Cylinder{w}; }

}  // namespace

TEST_SUITE("kuratowski") {
  TEST_CASE("eval_finite examples") {
    CHECK(eval_finite({}).value() == 0);
    CHECK(eval_finite({1}).value() == Rat(-1, 2));
    CHECK(eval_finite({2, 3}).value() == Rat(1, 4));
    CHECK(eval_finite({2, 3}).value() == Rat(1, 2) - Rat(1, 4));
    CHECK(eval_finite({1, 2}).to_string() == "-1/4");
  }

  TEST_CASE("eval_finite agrees with direct summation") {
    for (const Support& d : oracle::all_supports(10)) CHECK(eval_finite(d).value() == oracle::f_value(d));
  }

  TEST_CASE("dyadic representation is reduced") {
    DyadicRational v = eval_finite({2, 3});
    CHECK(v.numerator == 1);
    CHECK(v.exponent == 2);
    CHECK(DyadicRational::from_rational(Rat(6, 8)) == DyadicRational{3, 2});
    CHECK(eval_finite({}).to_string() == "0");
  }

  TEST_CASE("eval_cylinder examples") {
    RationalInterval a = eval_cylinder(word_cylinder("100"));
    CHECK(a.lo == -1);
    CHECK(a.hi == 0);
    RationalInterval b = eval_cylinder(word_cylinder(""));
    CHECK(b.lo == -1);
    CHECK(b.hi == 1);
    RationalInterval c = eval_cylinder(word_cylinder("11"));
    CHECK(c.lo == Rat(-1, 2));
    CHECK(c.hi == 0);
  }

  TEST_CASE("eval_cylinder encloses extensions and is approached") {
    for (std::string w : {"100", "11", "", "0110", "1", "00101"}) {
      Cylinder c = word_cylinder(w);
      RationalInterval iv = eval_cylinder(c);
      Rat lo = 2, hi = -2;
      for (const Support& s : extensions(c, 12)) {
        Rat v = oracle::f_value(s);
        CHECK(iv.contains(v));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      const int k = c.ones();
      // Extensions with N <= 12 reach within 2^-(k + #free bits) of the endpoints.
      Rat slack = oracle::two_pow(-(k + (12 - static_cast<int>(w.size())) / 2 - 1));
      CHECK(lo - iv.lo <= slack);
      CHECK(iv.hi - hi <= slack);
    }
  }

  TEST_CASE("fiber_point examples") {
    CHECK(fiber_point(1).support(7) == Support{2, 4, 6});
    CHECK(fiber_point(0).support(7) == Support{2, 3, 5, 7});
    CantorPoint h = fiber_point(Rat(-1, 2));
    CHECK(h.at(1) == 1);
    CHECK_THROWS_AS(fiber_point(Rat(3, 2)), DomainError);
  }

  TEST_CASE("fiber_point partial sums replay the residual recursion") {
    for (Rat t : {Rat(0), Rat(1), Rat(-1), Rat(1, 3), Rat(-5, 7), Rat(3, 64)}) {
      CantorPoint x = fiber_point(t);
      Rat r = t;
      for (int j = 1; j <= 30; ++j) {
        int sign = r >= 0 ? 1 : -1;
        r -= sign * oracle::two_pow(-j);
        CHECK((x.at(j) % 2 == 0) == (sign > 0));
        CHECK(t - partial_sum(x, j) == r);
        CHECK(abs(r) <= oracle::two_pow(-j));
      }
    }
  }

  TEST_CASE("accumulation_test examples") {
    CHECK(accumulation_test({}, 1));
    CHECK(accumulation_test({1}, 0));
    CHECK_FALSE(accumulation_test({1}, Rat(1, 4)));
  }

  TEST_CASE("fiber_witness_in_cylinder examples") {
    auto y = fiber_witness_in_cylinder({}, 0, 3);
    REQUIRE(y.has_value());
    CHECK(y->at(1) > 3);
    for (int j = 1; j <= 20; ++j) CHECK(abs(partial_sum(*y, j)) <= oracle::two_pow(-j));

    CHECK_FALSE(fiber_witness_in_cylinder({1}, Rat(1, 4), 1).has_value());

    auto z = fiber_witness_in_cylinder({1}, 0, 1);
    REQUIRE(z.has_value());
    CHECK(z->support(9) == Support{1, 2, 4, 6, 8});

    CHECK_THROWS_AS(fiber_witness_in_cylinder({4}, 0, 2), DomainError);
  }

  TEST_CASE("witnesses stay in the cylinder and converge to t") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      Support d;
      for (int i = 1; i <= 6; ++i)
        if (rng() % 2) d.push_back(i);
      Rat t(static_cast<long>(rng() % 129) - 64, 64);
      int n = N_of(d) + static_cast<int>(rng() % 3);
      auto y = fiber_witness_in_cylinder(d, t, n);
      CHECK(y.has_value() == accumulation_test(d, t));
      if (!y) continue;
      Cylinder c = cylinder_of(d, n);
      CHECK(c.contains(*y));
      for (int j = k_of(d) + 1; j <= k_of(d) + 25; ++j) CHECK(abs(t - partial_sum(*y, j)) <= oracle::two_pow(1 - j));
    }
  }

  TEST_CASE("closure_slice examples") {
    FiberInterval a = closure_slice({});
    CHECK(a.interval.lo == -1);
    CHECK(a.interval.hi == 1);
    FiberInterval b = closure_slice({1});
    CHECK(b.interval.lo == -1);
    CHECK(b.interval.hi == 0);
    FiberInterval c = closure_slice({2});
    CHECK(c.interval.lo == 0);
    CHECK(c.interval.hi == 1);
    CHECK(c.owner == Support{2});
  }

  TEST_CASE("graph_neighborhood_member examples") {
    CHECK(graph_neighborhood_member(CantorPoint::finite({}), {Cylinder{""}, Rat(-1, 4), Rat(1, 4)}, 0) == Tri::yes);
    CHECK(graph_neighborhood_member(CantorPoint::finite({1}), {Cylinder{"1"}, 0, 1}, 0) == Tri::no);
    CHECK(graph_neighborhood_member(fiber_point(0), {Cylinder{""}, -oracle::two_pow(-5), oracle::two_pow(-5)}, 8) ==
          Tri::yes);
    CHECK(graph_neighborhood_member(fiber_point(0), {Cylinder{""}, -oracle::two_pow(-5), oracle::two_pow(-5)}, 2) ==
          Tri::unknown);
    CHECK(graph_neighborhood_member(CantorPoint::finite({1}), {Cylinder{"0"}, -1, 1}, 0) == Tri::no);
    CHECK(tri_string(Tri::unknown) == "unknown");
  }

  TEST_CASE("oscillation on cylinders is bounded by the enclosure width") {
    for (const Support& d : oracle::all_supports(6)) {
      for (int n = N_of(d); n <= 6; ++n) {
        Cylinder c = cylinder_of(d, n);
        RationalInterval iv = eval_cylinder(c);
        CHECK(iv.width() == oracle::two_pow(1 - c.ones()));
        for (const Support& s : extensions(c, n + 6)) CHECK(iv.contains(oracle::f_value(s)));
      }
    }
  }
}
