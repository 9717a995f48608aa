#include "cantorplane/geometry.hpp"

#include <numeric>

namespace cantorplane {

Point RatSegment::at(const Scalar& t) const {
  return Point(Scalar(a.x) + t.scaled(b.x - a.x), Scalar(a.y) + t.scaled(b.y - a.y));
}

std::string RatSegment::str() const {
  return "[(" + a.x.get_str() + ", " + a.y.get_str() + "), (" + b.x.get_str() + ", " + b.y.get_str() + ")]";
}

Scalar dist2(const Point& a, const Point& b) {
  Scalar dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

int cmp_dist2(const Point& a, const Point& b, const Rat& t) {
  if (a.is_rational() && b.is_rational()) {
    Rat dx = a.x.rational_value() - b.x.rational_value();
    Rat dy = a.y.rational_value() - b.y.rational_value();
    return sgn(Rat(dx * dx + dy * dy - t));
  }
  for (int bits : {64, 192}) {
    Interval d = square(a.x.enclose(bits) - b.x.enclose(bits)) + square(a.y.enclose(bits) - b.y.enclose(bits));
    if (d.lo > t) return 1;
    if (d.hi < t) return -1;
  }
  return (dist2(a, b) - Scalar(t)).sign();
}

bool in_open_ball(const Point& p, const Ball& b) { return cmp_dist2(p, b.center, b.radius * b.radius) < 0; }

bool in_closed_ball(const Point& p, const Ball& b) { return cmp_dist2(p, b.center, b.radius * b.radius) <= 0; }

bool balls_disjoint_closed(const Ball& b1, const Ball& b2) {
  Rat s = b1.radius + b2.radius;
  return cmp_dist2(b1.center, b2.center, s * s) > 0;
}

bool closed_ball_inside_open(const Ball& inner, const Ball& outer) {
  if (!(inner.radius < outer.radius)) return false;
  Rat g = outer.radius - inner.radius;
  return cmp_dist2(inner.center, outer.center, g * g) < 0;
}

bool closed_ball_inside_punctured(const Ball& inner, const Ball& outer) {
  return closed_ball_inside_open(inner, outer) &&
         cmp_dist2(inner.center, outer.center, inner.radius * inner.radius) > 0;
}

Scalar segment_dist2(const RatSegment& s, const Point& p) {
  Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  Rat len2 = dx * dx + dy * dy;
  Scalar wx = p.x - Scalar(s.a.x), wy = p.y - Scalar(s.a.y);
  Scalar dot = wx.scaled(dx) + wy.scaled(dy);
  if (dot.sign() <= 0) return wx * wx + wy * wy;
  if ((dot - Scalar(len2)).sign() >= 0) return dist2(p, s.b.point());
  Scalar cross = wx.scaled(dy) - wy.scaled(dx);
  return (cross * cross).scaled(1 / len2);
}

bool segment_meets_closed_ball(const RatSegment& s, const Ball& b) {
  // Cheap rejection against the bounding box of the segment.
  Interval cx = b.center.x.enclose(64), cy = b.center.y.enclose(64);
  Rat lox = std::min(s.a.x, s.b.x) - b.radius, hix = std::max(s.a.x, s.b.x) + b.radius;
  Rat loy = std::min(s.a.y, s.b.y) - b.radius, hiy = std::max(s.a.y, s.b.y) + b.radius;
  if (cx.hi < lox || cx.lo > hix || cy.hi < loy || cy.lo > hiy) return false;
  return (segment_dist2(s, b.center) - Scalar(Rat(b.radius * b.radius))).sign() <= 0;
}

bool point_on_segment(const Point& p, const RatSegment& s) {
  Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  Scalar wx = p.x - Scalar(s.a.x), wy = p.y - Scalar(s.a.y);
  Scalar cross = wx.scaled(dy) - wy.scaled(dx);
  if (!cross.is_zero()) return false;
  Scalar dot = wx.scaled(dx) + wy.scaled(dy);
  return dot.sign() >= 0 && (dot - Scalar(Rat(dx * dx + dy * dy))).sign() <= 0;
}

bool in_A(const Point& p) {
  if (!p.y.is_rational()) return false;
  return (p.x - Scalar::sqrt_of(2)).is_rational();
}

Rat rational_enumeration(std::size_t i) {
  thread_local std::vector<Rat> seq{Rat(0)};
  thread_local long height = 1;
  while (seq.size() <= i) {
    ++height;
    for (long p = 1; p < height; ++p) {
      long q = height - p;
      if (std::gcd(p, q) != 1) continue;
      Rat v{Int(p), Int(q)};
      v.canonicalize();
      seq.push_back(v);
      seq.push_back(-v);
    }
  }
  return seq[i];
}

std::vector<Point> enumerate_A(std::size_t n) {
  std::vector<Point> out;
  const Scalar root2 = Scalar::sqrt_of(2);
  for (std::size_t s = 0; out.size() < n; ++s)
    for (std::size_t i = 0; i <= s && out.size() < n; ++i)
      out.emplace_back(root2 + Scalar(rational_enumeration(i)), Scalar(rational_enumeration(s - i)));
  return out;
}

}  // namespace cantorplane
