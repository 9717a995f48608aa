#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cantorplane/cantor_core.hpp"
#include "cantorplane/geometry.hpp"
#include "cantorplane/kuratowski.hpp"
#include "json.hpp"

namespace cantorplane {

using json = nlohmann::json;

struct SchemeNode {
  Point sigma;
  int ell = 0;
};

using NodeMap = std::map<Support, SchemeNode>;

inline Ball W_ball(const SchemeNode& n) { return {n.sigma, pow2(-n.ell)}; }
inline Ball U_ball(const SchemeNode& n) { return {n.sigma, pow2(-n.ell - 1)}; }

struct CantorScheme {
  int depth = 0;
  int bound = 0;
  NodeMap nodes;

  bool contains(const Support& d) const { return nodes.count(d) > 0; }
  const SchemeNode& at(const Support& d) const;
  Ball W(const Support& d) const { return W_ball(at(d)); }
  Ball U(const Support& d) const { return U_ball(at(d)); }
  std::vector<Support> level(int k) const;
  // In-domain members of D_d.
  std::vector<Support> children(const Support& d) const;
  int populated_depth() const;
};

struct Violation {
  std::string condition;
  Support a, b;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  long checks = 0;
  bool ok() const { return violations.empty(); }
  json to_json() const;
  std::string text() const;
};

// Downward closure and conditions (1)-(3) over an arbitrary finite node map.
void check_nodes(const NodeMap& nodes, ValidationReport& rep);
ValidationReport validate_scheme(const CantorScheme& s);

struct BallFamily {
  std::vector<std::pair<Support, Ball>> balls;
  bool error = false;
  std::string detail;
};

BallFamily approx_K(const CantorScheme& s, int m);

struct HData {
  bool injective = true;
  bool certified = true;
  std::vector<Violation> failures;
  long checks = 0;
  json to_json() const;
};

HData h_data(const CantorScheme& s);

struct CollarSet {
  Support owner;
  Ball base;
  std::vector<std::pair<Support, Ball>> removed;
  bool truncated = false;

  bool contains(const Point& z) const;
};

CollarSet collar(const CantorScheme& s, const Support& d);
// Whether some member of D_d lies outside the domain limits.
bool collar_truncated(const CantorScheme& s, const Support& d);

struct DisjointnessReport {
  bool disjoint = true;
  long pairs = 0;
  std::optional<std::pair<Support, Support>> meeting;
  std::optional<Point> witness;
  json to_json() const;
};

DisjointnessReport collars_pairwise_disjoint(const CantorScheme& s);

struct FPlusValue {
  enum class Kind { collar, cylinder, extension };
  Kind kind = Kind::extension;
  Support owner;
  Rat exact;
  RationalInterval interval;
  Rat value;
  bool truncated = false;
  std::string str() const;
};

FPlusValue f_plus_eval(const CantorScheme& s, const Point& z, int depth);

struct NeighborhoodCertificate {
  Support owner;
  Rat eta;
  bool truncated = false;
};

struct OscillationReport {
  std::vector<Support> hits;
  std::vector<NeighborhoodCertificate> certificates;
  std::vector<Support> uncertified;
  Rat spread;
  json to_json() const;
};

OscillationReport restriction_oscillation(const CantorScheme& s, const RatSegment& L, int depth);

// Children placed on the positive x-axis at distance r_U(d) 2^-j, with ell
// growing by j + 3, where j = N_e - N_d.
CantorScheme radial_scheme(int depth, int bound);

json point_to_json(const Point& p);
Point point_from_json(const json& j);
json scheme_to_json(const CantorScheme& s);
CantorScheme scheme_from_json(const json& j);
json nodes_to_json(const NodeMap& nodes);
NodeMap nodes_from_json(const json& j);

}  // namespace cantorplane
