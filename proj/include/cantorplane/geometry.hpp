#pragma once

#include <string>
#include <vector>

#include "cantorplane/scalar.hpp"

namespace cantorplane {

struct Point {
  Scalar x, y;

  Point() = default;
  Point(Scalar x_, Scalar y_) : x(std::move(x_)), y(std::move(y_)) {}
  bool is_rational() const { return x.is_rational() && y.is_rational(); }
  std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

struct RatPoint {
  Rat x, y;
  Point point() const { return Point(Scalar(x), Scalar(y)); }
  friend bool operator==(const RatPoint& a, const RatPoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const RatPoint& a, const RatPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

// Closed segment with rational end points.
struct RatSegment {
  RatPoint a, b;

  RatPoint at(const Rat& t) const { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }
  Point at(const Scalar& t) const;
  std::string str() const;
  friend bool operator==(const RatSegment& s, const RatSegment& t) { return s.a == t.a && s.b == t.b; }
  friend bool operator<(const RatSegment& s, const RatSegment& t) {
    if (!(s.a == t.a)) return s.a < t.a;
    return s.b < t.b;
  }
};

// Ball with exact center and rational radius; open or closed per predicate.
struct Ball {
  Point center;
  Rat radius;

  static Ball dyadic(const Point& c, int ell) { return {c, pow2(-ell)}; }
};

Scalar dist2(const Point& a, const Point& b);
// sign(|a - b|^2 - t), interval filtered then exact.
int cmp_dist2(const Point& a, const Point& b, const Rat& t);

bool in_open_ball(const Point& p, const Ball& b);
bool in_closed_ball(const Point& p, const Ball& b);
bool balls_disjoint_closed(const Ball& b1, const Ball& b2);
bool closed_ball_inside_open(const Ball& inner, const Ball& outer);
bool closed_ball_inside_punctured(const Ball& inner, const Ball& outer);

// Squared distance from p to the closed segment.
Scalar segment_dist2(const RatSegment& s, const Point& p);
bool segment_meets_closed_ball(const RatSegment& s, const Ball& b);
bool point_on_segment(const Point& p, const RatSegment& s);

// The countable dense set {(p + sqrt2, q) : p, q rational}.
bool in_A(const Point& p);
Rat rational_enumeration(std::size_t i);
std::vector<Point> enumerate_A(std::size_t n);

}  // namespace cantorplane
