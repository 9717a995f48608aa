#include <doctest.h>

#include <random>

#include "cantorplane/regions.hpp"
#include "oracles.hpp"

using namespace cantorplane;

namespace {

const Scalar kRoot2 = Scalar::sqrt_of(2);

Point P(const Scalar& x, const Scalar& y) { return Point(x, y); }

RegionPair disc_pair(long cx, long cy, long r2) { return {Region::disc(cx, cy, r2)}; }
RegionPair square_pair() { return {Region::rect(0, 0, 1, 1)}; }

// Enclosure of a + b sqrt(m) + c sqrt(n) with 400-bit floats.
mpf_class approx_value(const Rat& a, const Rat& b, long m, const Rat& c, long n) {
  mpf_class sm(m, 400), sn(n, 400), out(0, 400);
  sm = sqrt(sm);
  sn = sqrt(sn);
  out = mpf_class(a, 400) + mpf_class(b, 400) * sm + mpf_class(c, 400) * sn;
  return out;
}

// A point of the pair's U or V side, exactly, for a rational point.
int side_of(const RegionPair& pair, const RatPoint& p) { return pair.classify(p.point()); }

void check_T_point(const RegionPair& pair, const BoundaryPointT& t) {
  CHECK_FALSE(in_A(t.point));
  CHECK(point_on_segment(t.point, t.witness));
  int sa = side_of(pair, t.witness.a), sb = side_of(pair, t.witness.b);
  CHECK(sa != 0);
  CHECK(sb != 0);
  CHECK(sa == -sb);
  CHECK(pair.classify(t.point) == 0);
}

}  // namespace

TEST_SUITE("exact_plane") {
  TEST_CASE("scalar_compare examples") {
    CHECK(scalar_compare(kRoot2, Scalar(Rat(3, 2))) < 0);
    Scalar a = Scalar(1) + kRoot2;
    CHECK(scalar_compare(a, Scalar(1) + Scalar::sqrt_of(2)) == 0);
    CHECK(scalar_compare(kRoot2, kRoot2 - Scalar(0)) == 0);
    CHECK(kRoot2 == Scalar::parse("sqrt(2)"));
    CHECK(Scalar::sqrt_of(8) == kRoot2.scaled(2));
    CHECK(Scalar::sqrt_of(Rat(9, 4)) == Scalar(Rat(3, 2)));
  }

  TEST_CASE("scalar_compare agrees with a high-precision enclosure") {
    std::mt19937 rng(11);
    const long rads[] = {2, 3, 5, 6, 7, 10, 12, 18};
    auto rq = [&]() { return Rat(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1); };
    for (int trial = 0; trial < 500; ++trial) {
      Rat a = rq(), b = rq(), c = rq();
      long m = rads[rng() % 8], n = rads[rng() % 8];
      Scalar s = Scalar(a) + Scalar::sqrt_of(m).scaled(b) + Scalar::sqrt_of(n).scaled(c);
      mpf_class v = approx_value(a, b, m, c, n);
      int want = (v > mpf_class(1e-100)) ? 1 : (v < mpf_class(-1e-100) ? -1 : 0);
      CHECK(scalar_compare(s, Scalar(0)) == want);
      CHECK(s.sign() == want);
    }
  }

  TEST_CASE("surd arithmetic squares back to rationals") {
    Scalar s = Scalar(1) + kRoot2;
    CHECK(s * s == Scalar(3) + kRoot2.scaled(2));
    CHECK((Scalar::sqrt_of(6) - kRoot2 * Scalar::sqrt_of(3)).is_zero());
    CHECK(Scalar::parse(s.str()) == s);
  }

  TEST_CASE("simplest_between and rational_between") {
    CHECK(simplest_between(Rat(1, 3), Rat(1, 2)) == Rat(2, 5));
    Rat r = rational_between(Scalar(Rat(7, 5)), kRoot2);
    CHECK(Rat(7, 5) < r);
    CHECK(scalar_compare(Scalar(r), kRoot2) < 0);
  }

  TEST_CASE("in_A examples") {
    CHECK(in_A(P(kRoot2, 0)));
    CHECK_FALSE(in_A(P(0, 0)));
    CHECK(in_A(P(Scalar(1) + kRoot2, Scalar(Rat(1, 3)))));
    CHECK_FALSE(in_A(P(kRoot2, kRoot2)));
    CHECK_FALSE(in_A(P(Scalar::sqrt_of(3), 0)));
  }

  TEST_CASE("enumerate_A examples") {
    CHECK(enumerate_A(0).empty());
    auto a1 = enumerate_A(1);
    REQUIRE(a1.size() == 1);
    CHECK(a1[0] == P(kRoot2, 0));
    // Replay of the pairing: diagonal s, i over rationals 0, 1, -1, 1/2, -1/2, 2, -2, ...
    const Rat seq[] = {0, 1, -1, Rat(1, 2), Rat(-1, 2), 2, -2};
    auto a = enumerate_A(10);
    std::size_t idx = 0;
    for (std::size_t s = 0; idx < a.size(); ++s)
      for (std::size_t i = 0; i <= s && idx < a.size(); ++i, ++idx)
        CHECK(a[idx] == P(kRoot2 + Scalar(seq[i]), Scalar(seq[s - i])));
    for (const auto& p : a) CHECK(in_A(p));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j) CHECK(a[i] != a[j]);
  }

  TEST_CASE("ball predicates") {
    CHECK(balls_disjoint_closed({P(0, 0), 1}, {P(3, 0), 1}));
    CHECK_FALSE(balls_disjoint_closed({P(0, 0), 1}, {P(1, 0), Rat(1, 2)}));
    CHECK_FALSE(balls_disjoint_closed({P(kRoot2, 0), Rat(1, 4)}, {P(Rat(3, 2), 0), Rat(1, 8)}));
    CHECK_FALSE(balls_disjoint_closed({P(0, 0), 1}, {P(2, 0), 1}));

    CHECK(closed_ball_inside_punctured({P(Rat(1, 4), 0), Rat(1, 8)}, {P(0, 0), Rat(1, 2)}));
    CHECK_FALSE(closed_ball_inside_punctured({P(0, 0), Rat(1, 8)}, {P(0, 0), Rat(1, 2)}));
    CHECK_FALSE(closed_ball_inside_punctured({P(Rat(1, 4), 0), Rat(1, 4)}, {P(0, 0), Rat(1, 2)}));

    CHECK(in_closed_ball(P(1, 0), {P(0, 0), 1}));
    CHECK_FALSE(in_open_ball(P(1, 0), {P(0, 0), 1}));
    CHECK(cmp_dist2(P(kRoot2, 0), P(0, 0), 2) == 0);
  }

  TEST_CASE("ball predicates agree with distance oracles") {
    std::mt19937 rng(5);
    auto rq = [&]() { return Rat(static_cast<long>(rng() % 33) - 16, 8); };
    for (int trial = 0; trial < 300; ++trial) {
      Point c1 = P(Scalar(rq()) + kRoot2.scaled(Rat(static_cast<long>(rng() % 3), 2)), Scalar(rq()));
      Point c2 = P(Scalar(rq()), Scalar(rq()));
      Rat r1(static_cast<long>(rng() % 8) + 1, 8), r2(static_cast<long>(rng() % 8) + 1, 8);
      // disjoint closed iff |c1 - c2|^2 > (r1 + r2)^2
      Scalar d2 = dist2(c1, c2);
      Rat s = (r1 + r2) * (r1 + r2);
      CHECK(balls_disjoint_closed({c1, r1}, {c2, r2}) == (scalar_compare(d2, Scalar(s)) > 0));
      bool inside = r1 < r2 && scalar_compare(d2, Scalar((r2 - r1) * (r2 - r1))) < 0;
      CHECK(closed_ball_inside_open({c1, r1}, {c2, r2}) == inside);
    }
  }

  TEST_CASE("segment distance") {
    RatSegment s{{0, 0}, {2, 0}};
    CHECK(segment_dist2(s, P(1, 3)) == Scalar(9));
    CHECK(segment_dist2(s, P(3, 0)) == Scalar(1));
    CHECK(segment_meets_closed_ball(s, {P(1, 1), 1}));
    CHECK_FALSE(segment_meets_closed_ball(s, {P(1, 2), 1}));
    CHECK(point_on_segment(P(kRoot2, 0), s));
    CHECK_FALSE(point_on_segment(P(kRoot2, Scalar(Rat(1, 9))), s));
  }

  TEST_CASE("boundary_contains_segment examples") {
    auto sq = boundary_contains_segment(square_pair());
    REQUIRE(sq.has_value());
    RegionPair q = square_pair();
    for (Rat t : {Rat(1, 7), Rat(1, 2), Rat(6, 7)}) CHECK(q.classify(sq->at(t).point()) == 0);

    CHECK_FALSE(boundary_contains_segment(disc_pair(0, 0, 2)).has_value());

    RegionPair mixed{Region::unite({Region::disc(0, 0, 2), Region::rect(1, -3, 4, -2)})};
    auto e = boundary_contains_segment(mixed);
    REQUIRE(e.has_value());
    for (Rat t : {Rat(1, 5), Rat(1, 2), Rat(4, 5)}) CHECK(mixed.classify(e->at(t).point()) == 0);
  }

  TEST_CASE("region pair JSON round trip and complement check") {
    json j = {{"U", {{"union", json::array({{{"disc", {{"cx", "0"}, {"cy", "0"}, {"r2", "2"}}}},
                                             {{"rect", {{"x0", "1"}, {"y0", "1"}, {"x1", "3"}, {"y1", "2"}}}}})}}}};
    RegionPair p = RegionPair::from_json(j);
    CHECK(RegionPair::from_json(p.to_json()).U == p.U);
    json bad = {{"U", {{"disc", {{"cx", "0"}, {"cy", "0"}, {"r2", "2"}}}}}, {"V", {{"disc", {{"cx", "0"}, {"cy", "0"}, {"r2", "1"}}}}}};
    CHECK_THROWS_AS(RegionPair::from_json(bad), UnsupportedRegion);
    CHECK_THROWS_AS(Region::from_json({{"ellipse", {}}}), UnsupportedRegion);
    CHECK(p.classify(P(0, 0)) == 1);
    CHECK(p.classify(P(5, 5)) == -1);
    CHECK(p.classify(P(kRoot2, 0)) == 0);
  }

  TEST_CASE("boundary_point_near examples") {
    RegionPair c = disc_pair(0, 0, 2);
    auto t = boundary_point_near(c, P(1, 1), 1);
    REQUIRE(t.has_value());
    CHECK(cmp_dist2(t->point, P(0, 0), 2) == 0);
    CHECK(in_open_ball(t->point, {P(1, 1), 1}));
    check_T_point(c, *t);

    CHECK_FALSE(boundary_point_near(c, P(5, 5), 1).has_value());

    auto u = boundary_point_near(c, P(kRoot2, 0), Rat(1, 64));
    REQUIRE(u.has_value());
    CHECK(u->point != P(kRoot2, 0));
    check_T_point(c, *u);
  }

  TEST_CASE("dense_T examples") {
    CHECK(dense_T(disc_pair(0, 0, 2), 0).empty());
    auto three = dense_T(disc_pair(0, 0, 2), 3);
    REQUIRE(three.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      check_T_point(disc_pair(0, 0, 2), three[i]);
      for (std::size_t j = i + 1; j < 3; ++j) CHECK(scalar_compare(dist2(three[i].point, three[j].point), 0) > 0);
    }
    auto five = dense_T(square_pair(), 5);
    REQUIRE(five.size() == 5);
    for (const auto& p : five) {
      CHECK(p.point.is_rational());
      check_T_point(square_pair(), p);
    }
  }

  TEST_CASE("T points of a circle are found in every small ball on it") {
    RegionPair c = disc_pair(0, 0, 3);
    for (int f = 0; f < 4; ++f)
      for (Rat s : {Rat(-1), Rat(-1, 3), Rat(0), Rat(1, 2)}) {
        Int u, v;
        face_direction(f, s, u, v);
        Point center = circle_point({0, 0, 3}, u, v);
        auto t = boundary_point_near(c, center, Rat(1, 1024));
        REQUIRE(t.has_value());
        CHECK(in_open_ball(t->point, {center, Rat(1, 1024)}));
        check_T_point(c, *t);
      }
  }
}
