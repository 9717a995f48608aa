#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "cantorplane/geometry.hpp"
#include "json.hpp"

namespace cantorplane {

using json = nlohmann::json;

class UnsupportedRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Circle {
  Rat cx, cy, r2;
  RatPoint center() const { return {cx, cy}; }
};

// Open plane region from {disc, rect, complement of closure, union, intersection}.
struct Region {
  enum class Kind { disc, rect, complement, unite, intersect };
  Kind kind = Kind::disc;
  Rat cx, cy, r2;
  Rat x0, y0, x1, y1;
  std::vector<Region> kids;

  static Region disc(const Rat& cx, const Rat& cy, const Rat& r2);
  static Region rect(const Rat& x0, const Rat& y0, const Rat& x1, const Rat& y1);
  static Region complement(const Region& r);
  static Region unite(std::vector<Region> rs);
  static Region intersect(std::vector<Region> rs);

  // -1: in the open region, +1: outside its closure, 0: undecided (on a primitive boundary).
  int side(const Point& p) const;

  void collect(std::vector<Circle>& circles, std::vector<RatSegment>& edges) const;
  json to_json() const;
  static Region from_json(const json& j);
  friend bool operator==(const Region& a, const Region& b);
};

// (U, V) with V = R^2 \ cl U, so U and V are disjoint with dense union.
struct RegionPair {
  Region U;

  Region V() const { return Region::complement(U); }
  // +1 in U, -1 in V, 0 undecided.
  int classify(const Point& p) const;
  std::vector<Circle> circles() const;
  std::vector<RatSegment> edges() const;
  json to_json() const;
  static RegionPair from_json(const json& j);
};

Rat parse_rational(const std::string& s);
std::string rat_string(const Rat& q);

struct SegmentPiece {
  Scalar lo, hi;
  Rat sample;
  int side = 0;
};

// Parameters t in (0,1) where the segment crosses a primitive boundary, sorted.
std::vector<Scalar> breakpoints(const RegionPair& pair, const RatSegment& seg);
std::vector<SegmentPiece> classify_segment(const RegionPair& pair, const RatSegment& seg);

std::optional<RatSegment> boundary_contains_segment(const RegionPair& pair);

// A point of S' \ A with a rational segment witnessing it.
struct BoundaryPointT {
  Point point;
  RatSegment witness;
  std::string tag;
};

// Circle point in lattice direction (u, v).
Point circle_point(const Circle& c, const Int& u, const Int& v);
// Direction of face f in {0,1,2,3} with slope parameter t in [-1, 1).
void face_direction(int face, const Rat& t, Int& u, Int& v);

std::optional<BoundaryPointT> certify_circle_point(const RegionPair& pair, std::size_t circle_index, int face,
                                                   const Rat& t);
std::optional<BoundaryPointT> certify_edge_point(const RegionPair& pair, std::size_t edge_index, const Rat& t);

// Searches T inside an open ball, by recursive simplest-fraction splitting of
// parameter windows on each boundary primitive.
class TWalker {
 public:
  TWalker(const RegionPair& pair, const Point& center, const Rat& radius);
  std::optional<BoundaryPointT> next(long budget);
  long examined() const { return examined_; }

 private:
  struct Window {
    bool circle = true;
    std::size_t index = 0;
    int face = 0;
    std::deque<std::pair<Rat, Rat>> queue;
  };
  const RegionPair& pair_;
  Point center_;
  Rat radius_;
  std::vector<Window> windows_;
  std::size_t turn_ = 0;
  long examined_ = 0;
};

std::optional<BoundaryPointT> boundary_point_near(const RegionPair& pair, const Point& center, const Rat& radius);
std::vector<BoundaryPointT> dense_T(const RegionPair& pair, std::size_t n);

}  // namespace cantorplane
