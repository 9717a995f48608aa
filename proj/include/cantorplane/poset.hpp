#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cantorplane/regions.hpp"
#include "cantorplane/scheme.hpp"

namespace cantorplane {

struct Condition {
  NodeMap nodes;
  std::set<int> F;
  std::set<RatSegment> Q;

  std::size_t size() const { return nodes.size(); }
  bool covers(const Support& d) const { return nodes.count(d) > 0; }
  json to_json() const;
  static Condition from_json(const json& j);
  friend bool operator==(const Condition& a, const Condition& b);
};

// How a finished scheme continues beyond its recorded domain.
//   dyadic: children with N_e = N_d + j lie within 2^-(ell_d + j) of sigma(d).
//   cover_rule: additionally, a future child keeps twice its distance bound clear
//   of every recorded sibling, as the cover-point extension does.
enum class Continuation { dyadic, cover_rule };

// Closed balls containing every point of a finished Cantor set: around each
// recorded center, a ball holding all descendants that were never recorded.
struct TailCover {
  std::map<Support, Ball> balls;
  bool meets_closed_ball(const Ball& b) const;
  bool meets_segment(const RatSegment& s) const;
  bool contains(const Point& p) const;
  const Ball& at(const Support& d) const { return balls.at(d); }
};

TailCover tail_cover(const CantorScheme& s, Continuation c = Continuation::dyadic);
// Radius of the ball around sigma(d) holding its unrecorded descendants.
Rat tail_radius(const CantorScheme& s, const Support& d, Continuation c = Continuation::dyadic);

struct StageRecord {
  int id = 0;
  RegionPair pair;
  std::optional<RatSegment> segment;
  CantorScheme scheme;
  TailCover cover;
  bool in_I() const { return !segment.has_value(); }
};

struct StageContext {
  std::vector<StageRecord> stages;
  std::vector<Point> A;

  const StageRecord& stage(int id) const;
  // Scheme stages whose recorded range contains x.
  std::vector<int> I_x(const Point& x) const;
  std::optional<Support> preimage(int beta, const Point& x) const;
  int current() const { return static_cast<int>(stages.size()); }
};

struct ExtendsReport {
  std::vector<Violation> violations;
  long checks = 0;
  bool ok() const { return violations.empty(); }
  json to_json() const;
};

ValidationReport is_valid(const Condition& p);

// Stages whose recorded balls at x constrain new children there. The
// printed index set is undefined; the plane-indexed set I_x is used.
std::vector<int> clause5_stages(const Condition& q, const StageContext& ctx, const Point& x);

// Clause 4 tests new balls against Q_q and K_beta for beta in F_p as printed;
// the alternative reads F_q.
enum class Clause4 { printed, weaker_F };

ExtendsReport extends(const Condition& p, const Condition& q, const StageContext& ctx,
                      Clause4 reading = Clause4::printed);

std::string centering_class(const Condition& p);
Condition merge_centered(const Condition& p, const Condition& q, const StageContext& ctx);

// Closed W-balls of stages in F at children of the preimage of x whose
// centers lie in B(x, eps).
std::vector<std::pair<int, Ball>> star_family(const StageContext& ctx, const Point& x, const std::set<int>& F,
                                              const Rat& eps);
std::optional<Rat> check_star(const StageContext& ctx, const Point& x, const std::set<int>& F, int budget = 64);

json segment_to_json(const RatSegment& s);
RatSegment segment_from_json(const json& j);

}  // namespace cantorplane
