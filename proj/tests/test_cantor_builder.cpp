#include <doctest.h>

#include <random>

#include "cantorplane/scheme.hpp"
#include "oracles.hpp"

using namespace cantorplane;

namespace {

Point P(const Rat& x, const Rat& y) { return Point(Scalar(x), Scalar(y)); }

Rat xcoord(const CantorScheme& s, const Support& d) { return s.at(d).sigma.x.rational_value(); }

// Conditions (1)-(3) for schemes on the x-axis with plain rational arithmetic.
long axis_violations(const CantorScheme& s) {
  long bad = 0;
  for (const auto& [e, n] : s.nodes) {
    if (e.empty()) continue;
    Support d = predecessor(e);
    Rat gap = abs(xcoord(s, e) - xcoord(s, d));
    Rat we = oracle::two_pow(-n.ell), ud = oracle::two_pow(-s.at(d).ell - 1);
    if (!(gap < oracle::two_pow(-N_of(e)))) ++bad;
    if (!(gap > we && gap + we < ud)) ++bad;
  }
  for (const auto& [a, na] : s.nodes)
    for (const auto& [b, nb] : s.nodes)
      if (a < b && a.size() == b.size())
        if (!(abs(xcoord(s, a) - xcoord(s, b)) > oracle::two_pow(-na.ell) + oracle::two_pow(-nb.ell))) ++bad;
  return bad;
}

bool has(const ValidationReport& r, const std::string& cond) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.condition == cond; });
}

}  // namespace

TEST_SUITE("cantor_builder") {
  TEST_CASE("radial scheme matches its closed form") {
    CantorScheme s = radial_scheme(1, 6);
    CHECK(s.at({}).sigma == P(0, 0));
    CHECK(s.at({}).ell == 1);
    for (int m = 1; m <= 6; ++m) {
      CHECK(s.at({m}).sigma == P(oracle::two_pow(-m - 2), 0));
      CHECK(s.at({m}).ell == m + 4);
    }
  }

  TEST_CASE("validate_scheme examples") {
    CantorScheme s = radial_scheme(6, 6);
    CHECK(validate_scheme(s).ok());
    CHECK(axis_violations(s) == 0);

    CantorScheme shrunk = radial_scheme(1, 6);
    shrunk.nodes[{1}].ell = 2;
    ValidationReport r = validate_scheme(shrunk);
    CHECK(has(r, "condition-2"));
    CHECK(axis_violations(shrunk) > 0);
    CHECK(r.to_json()["conditions"]["condition-2"] == "fail");

    CHECK(validate_scheme(CantorScheme{}).ok());
  }

  TEST_CASE("validate_scheme flags missing predecessors and far children") {
    CantorScheme s = radial_scheme(2, 4);
    s.nodes.erase({2});
    CHECK(has(validate_scheme(s), "downward-closed"));

    CantorScheme far = radial_scheme(1, 4);
    far.nodes[{3}].sigma = P(Rat(1, 8), 0);
    CHECK(has(validate_scheme(far), "condition-1"));

    CantorScheme clash = radial_scheme(1, 4);
    clash.nodes[{3}].sigma = clash.at({2}).sigma;
    CHECK(has(validate_scheme(clash), "condition-3"));
  }

  TEST_CASE("validity agrees with the axis oracle under random ell changes") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
      CantorScheme s = radial_scheme(3, 5);
      for (int edits = 0; edits < 3; ++edits) {
        auto it = s.nodes.begin();
        std::advance(it, static_cast<long>(rng() % s.nodes.size()));
        it->second.ell += static_cast<int>(rng() % 7) - 3;
      }
      ValidationReport r = validate_scheme(s);
      CHECK(r.ok() == (axis_violations(s) == 0));
      if (r.ok()) {
        CHECK(h_data(s).certified);
        CHECK(collars_pairwise_disjoint(s).disjoint);
      }
    }
  }

  TEST_CASE("approx_K examples") {
    CantorScheme s = radial_scheme(6, 6);
    BallFamily k0 = approx_K(s, 0);
    REQUIRE(k0.balls.size() == 1);
    CHECK(k0.balls[0].second.radius == Rat(1, 2));
    BallFamily k1 = approx_K(s, 1);
    CHECK_FALSE(k1.error);
    REQUIRE(k1.balls.size() == 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j) CHECK(balls_disjoint_closed(k1.balls[i].second, k1.balls[j].second));
    CHECK(approx_K(s, 7).error);
  }

  TEST_CASE("level balls nest and shrink") {
    CantorScheme s = radial_scheme(4, 6);
    for (int m = 0; m < s.populated_depth(); ++m) {
      BallFamily next = approx_K(s, m + 1);
      CHECK_FALSE(next.error);
      for (const auto& [e, b] : next.balls) {
        CHECK(closed_ball_inside_open(b, s.W(predecessor(e))));
        CHECK(b.radius <= oracle::two_pow(-(m + 1)));
      }
    }
  }

  TEST_CASE("h_data examples") {
    HData h = h_data(radial_scheme(6, 6));
    CHECK(h.injective);
    CHECK(h.certified);
    CantorScheme dup = radial_scheme(1, 3);
    dup.nodes[{1}].sigma = dup.at({2}).sigma;
    CHECK_FALSE(h_data(dup).injective);
    CantorScheme one;
    one.nodes[{}] = {P(0, 0), 1};
    CHECK(h_data(one).certified);
    CHECK(h_data(one).injective);
  }

  TEST_CASE("collar examples") {
    CantorScheme s = radial_scheme(6, 6);
    CollarSet c = collar(s, {});
    CHECK(c.base.center == P(0, 0));
    CHECK(c.base.radius == Rat(1, 4));
    CHECK(c.removed.size() == 6);
    CHECK(c.truncated);

    Support leaf{1, 2, 3, 4, 5, 6};
    CollarSet l = collar(s, leaf);
    CHECK(l.removed.empty());
    CHECK(l.truncated);
    CHECK(l.contains(s.at(leaf).sigma));

    Point z = P(Rat(1, 4) + oracle::two_pow(-9), 0);
    CHECK_FALSE(c.contains(z));
    Point edge = P(Rat(1, 4), 0);
    CHECK(c.contains(edge));
    CHECK_FALSE(c.contains(s.at({1}).sigma));
    CHECK(c.contains(P(0, Rat(1, 8))));
  }

  TEST_CASE("collar membership matches the ball oracle") {
    CantorScheme s = radial_scheme(3, 5);
    std::mt19937 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
      Point z = P(Rat(static_cast<long>(rng() % 161) - 80, 256), Rat(static_cast<long>(rng() % 21) - 10, 256));
      for (const Support& d : std::vector<Support>{{}, {1}, {2}}) {
        bool want = in_closed_ball(z, s.U(d));
        for (const Support& e : s.children(d)) want = want && !in_open_ball(z, s.W(e));
        CHECK(collar(s, d).contains(z) == want);
      }
    }
  }

  TEST_CASE("collars_pairwise_disjoint examples") {
    CHECK(collars_pairwise_disjoint(radial_scheme(6, 6)).disjoint);
    CantorScheme bad = radial_scheme(1, 4);
    bad.nodes[{3}].sigma = bad.at({2}).sigma;
    DisjointnessReport r = collars_pairwise_disjoint(bad);
    CHECK_FALSE(r.disjoint);
    REQUIRE(r.meeting.has_value());
    CantorScheme single;
    single.nodes[{}] = {P(0, 0), 1};
    CHECK(collars_pairwise_disjoint(single).disjoint);
  }

  TEST_CASE("f_plus_eval examples") {
    CantorScheme s = radial_scheme(6, 6);
    FPlusValue a = f_plus_eval(s, P(0, Rat(1, 8)), 6);
    CHECK(a.kind == FPlusValue::Kind::collar);
    CHECK(a.exact == 0);
    FPlusValue b = f_plus_eval(s, s.at({1}).sigma, 6);
    CHECK(b.kind == FPlusValue::Kind::collar);
    CHECK(b.exact == Rat(-1, 2));

    CantorScheme one;
    one.nodes[{}] = {P(0, 0), 1};
    FPlusValue far = f_plus_eval(one, P(10, 10), 0);
    CHECK(far.kind == FPlusValue::Kind::extension);
    CHECK(far.value == 0);
  }

  TEST_CASE("f_plus_eval is the support value on every collar") {
    CantorScheme s = radial_scheme(3, 5);
    for (const auto& [d, n] : s.nodes) {
      FPlusValue v = f_plus_eval(s, n.sigma, 3);
      CHECK(v.kind == FPlusValue::Kind::collar);
      CHECK(v.owner == d);
      CHECK(v.exact == oracle::f_value(d));
    }
  }

  TEST_CASE("restriction_oscillation examples") {
    CantorScheme s = radial_scheme(6, 6);
    OscillationReport miss = restriction_oscillation(s, {{-2, 5}, {2, 5}}, 6);
    CHECK(miss.hits.empty());
    CHECK(miss.spread == 0);

    OscillationReport through = restriction_oscillation(s, {{0, -1}, {0, 1}}, 6);
    CHECK(std::find(through.hits.begin(), through.hits.end(), Support{}) != through.hits.end());
    REQUIRE_FALSE(through.certificates.empty());
    CHECK(through.certificates[0].owner == Support{});
    CHECK(through.certificates[0].eta > 0);
    CHECK(through.uncertified.empty());
    for (const Support& d : through.hits) {
      CHECK(segment_meets_closed_ball({{0, -1}, {0, 1}}, s.W(d)));
    }

    // Tangent to W({3}) from above.
    const Ball w = s.W({3});
    Rat top = w.center.y.rational_value() + w.radius;
    Rat cx = w.center.x.rational_value();
    OscillationReport tangent = restriction_oscillation(s, {{cx - Rat(1, 1024), top}, {cx + Rat(1, 1024), top}}, 6);
    CHECK(std::find(tangent.hits.begin(), tangent.hits.end(), Support{3}) != tangent.hits.end());
  }

  TEST_CASE("scheme JSON round trip") {
    CantorScheme s = radial_scheme(2, 4);
    CantorScheme t = scheme_from_json(scheme_to_json(s));
    CHECK(t.depth == s.depth);
    CHECK(t.bound == s.bound);
    REQUIRE(t.nodes.size() == s.nodes.size());
    for (const auto& [d, n] : s.nodes) {
      CHECK(t.at(d).sigma == n.sigma);
      CHECK(t.at(d).ell == n.ell);
    }
    CHECK_THROWS(point_from_json(json::array({"1"})));
  }
}
