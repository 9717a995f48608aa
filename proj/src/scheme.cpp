#include "cantorplane/scheme.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantorplane {

const SchemeNode& CantorScheme::at(const Support& d) const {
  auto it = nodes.find(d);
  if (it == nodes.end()) throw DomainError("support " + support_string(d) + " not in the scheme domain");
  return it->second;
}

std::vector<Support> CantorScheme::level(int k) const {
  std::vector<Support> out;
  for (const auto& [d, n] : nodes)
    if (k_of(d) == k) out.push_back(d);
  return out;
}

std::vector<Support> CantorScheme::children(const Support& d) const {
  std::vector<Support> out;
  for (const auto& [e, n] : nodes)
    if (!e.empty() && is_successor_of(e, d)) out.push_back(e);
  return out;
}

int CantorScheme::populated_depth() const {
  int m = -1;
  for (const auto& [d, n] : nodes) m = std::max(m, k_of(d));
  return m;
}

namespace {

const char* kConditions[] = {"domain", "downward-closed", "condition-1", "condition-2", "condition-3"};

void add(ValidationReport& rep, const std::string& cond, const Support& a, const Support& b, std::string detail) {
  rep.violations.push_back({cond, a, b, std::move(detail)});
}

json support_json(const Support& s) { return json(s); }

}  // namespace

void check_nodes(const NodeMap& nodes, ValidationReport& rep) {
  std::map<int, std::vector<const std::pair<const Support, SchemeNode>*>> levels;
  for (const auto& kv : nodes) {
    const Support& e = kv.first;
    if (!is_support(e)) {
      add(rep, "domain", e, {}, "not a strictly increasing positive support");
      continue;
    }
    levels[k_of(e)].push_back(&kv);
    if (e.empty()) continue;
    Support d = predecessor(e);
    auto it = nodes.find(d);
    ++rep.checks;
    if (it == nodes.end()) {
      add(rep, "downward-closed", e, d, "predecessor missing");
      continue;
    }
    const SchemeNode& pd = it->second;
    const SchemeNode& pe = kv.second;
    ++rep.checks;
    if (cmp_dist2(pe.sigma, pd.sigma, pow2(-2L * N_of(e))) >= 0)
      add(rep, "condition-1", e, d, "|sigma(e) - sigma(d)| >= 2^-" + std::to_string(N_of(e)));
    ++rep.checks;
    if (!closed_ball_inside_punctured(W_ball(pe), U_ball(pd)))
      add(rep, "condition-2", e, d, "cl W(e) not inside U(d) minus sigma(d)");
  }
  for (const auto& [k, row] : levels)
    for (std::size_t i = 0; i < row.size(); ++i)
      for (std::size_t j = i + 1; j < row.size(); ++j) {
        ++rep.checks;
        if (!balls_disjoint_closed(W_ball(row[i]->second), W_ball(row[j]->second)))
          add(rep, "condition-3", row[i]->first, row[j]->first, "closed W-balls meet at level " + std::to_string(k));
      }
}

ValidationReport validate_scheme(const CantorScheme& s) {
  ValidationReport rep;
  for (const auto& [d, n] : s.nodes) {
    ++rep.checks;
    if (k_of(d) > s.depth || N_of(d) > s.bound)
      add(rep, "domain", d, {}, "outside depth " + std::to_string(s.depth) + " / bound " + std::to_string(s.bound));
  }
  check_nodes(s.nodes, rep);
  return rep;
}

json ValidationReport::to_json() const {
  json j;
  j["ok"] = ok();
  j["checks"] = checks;
  json conds = json::object();
  for (const char* c : kConditions) {
    long n = std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.condition == c; });
    conds[c] = n == 0 ? "pass" : "fail";
  }
  j["conditions"] = conds;
  json vs = json::array();
  for (const auto& v : violations)
    vs.push_back({{"condition", v.condition}, {"a", support_json(v.a)}, {"b", support_json(v.b)}, {"detail", v.detail}});
  j["violations"] = vs;
  return j;
}

std::string ValidationReport::text() const {
  std::string out;
  for (const char* c : kConditions) {
    long n = std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.condition == c; });
    out += std::string(c) + ": " + (n == 0 ? "pass" : "fail (" + std::to_string(n) + ")") + "\n";
  }
  for (const auto& v : violations)
    out += "  " + v.condition + " " + support_string(v.a) + " " + support_string(v.b) + ": " + v.detail + "\n";
  return out;
}

BallFamily approx_K(const CantorScheme& s, int m) {
  BallFamily out;
  if (m < 0 || m > s.populated_depth()) {
    out.error = true;
    out.detail = "level " + std::to_string(m) + " is not populated";
    return out;
  }
  for (const auto& [d, n] : s.nodes)
    if (k_of(d) == m) out.balls.emplace_back(d, W_ball(n));
  if (m + 1 <= s.populated_depth()) {
    for (const auto& [e, n] : s.nodes) {
      if (k_of(e) != m + 1) continue;
      auto it = s.nodes.find(predecessor(e));
      if (it == s.nodes.end() || !closed_ball_inside_open(W_ball(n), W_ball(it->second))) {
        out.error = true;
        out.detail = "level " + std::to_string(m + 1) + " ball " + support_string(e) + " not nested";
      }
    }
  }
  return out;
}

json HData::to_json() const {
  json j{{"injective", injective}, {"certified", certified}, {"checks", checks}};
  json f = json::array();
  for (const auto& v : failures) f.push_back({{"kind", v.condition}, {"a", v.a}, {"b", v.b}, {"detail", v.detail}});
  j["failures"] = f;
  return j;
}

HData h_data(const CantorScheme& s) {
  HData h;
  std::vector<const std::pair<const Support, SchemeNode>*> all;
  for (const auto& kv : s.nodes) all.push_back(&kv);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      ++h.checks;
      if (all[i]->second.sigma == all[j]->second.sigma) {
        h.injective = false;
        h.failures.push_back({"injectivity", all[i]->first, all[j]->first, "equal sigma values"});
      }
    }
  for (const auto* dn : all) {
    Ball w = W_ball(dn->second);
    for (const auto* en : all) {
      ++h.checks;
      bool inside = in_open_ball(en->second.sigma, w);
      bool below = extends_support(en->first, dn->first);
      if (inside != below) {
        h.certified = false;
        h.failures.push_back({below ? "missing" : "stray", dn->first, en->first,
                              below ? "descendant outside W(d)" : "non-descendant inside W(d)"});
      }
    }
  }
  return h;
}

bool CollarSet::contains(const Point& z) const {
  if (!in_closed_ball(z, base)) return false;
  for (const auto& r : removed)
    if (in_open_ball(z, r.second)) return false;
  return true;
}

bool collar_truncated(const CantorScheme& s, const Support& d) {
  for (int n = N_of(d) + 1; n <= std::max(s.bound, N_of(d)) + 1; ++n) {
    Support e = d;
    e.push_back(n);
    if (!s.contains(e)) return true;
  }
  return false;
}

CollarSet collar(const CantorScheme& s, const Support& d) {
  CollarSet c;
  c.owner = d;
  c.base = s.U(d);
  for (const Support& e : s.children(d)) c.removed.emplace_back(e, s.W(e));
  c.truncated = collar_truncated(s, d);
  return c;
}

json DisjointnessReport::to_json() const {
  json j{{"disjoint", disjoint}, {"pairs", pairs}};
  if (meeting) j["meeting"] = {meeting->first, meeting->second};
  if (witness) j["witness"] = point_to_json(*witness);
  return j;
}

namespace {

std::optional<Point> common_point(const CollarSet& a, const CollarSet& b) {
  std::vector<Point> cands{a.base.center, b.base.center};
  Rat ax = a.base.center.x.approx(64), ay = a.base.center.y.approx(64);
  Rat bx = b.base.center.x.approx(64), by = b.base.center.y.approx(64);
  for (int i = 1; i < 16; ++i) {
    Rat t(i, 16);
    cands.emplace_back(Scalar(ax + t * (bx - ax)), Scalar(ay + t * (by - ay)));
  }
  for (const Point& p : cands)
    if (a.contains(p) && b.contains(p)) return p;
  return std::nullopt;
}

}  // namespace

DisjointnessReport collars_pairwise_disjoint(const CantorScheme& s) {
  DisjointnessReport rep;
  std::vector<Support> dom;
  for (const auto& kv : s.nodes) dom.push_back(kv.first);
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = i + 1; j < dom.size(); ++j) {
      ++rep.pairs;
      const Support &d1 = dom[i], &d2 = dom[j];
      if (balls_disjoint_closed(s.U(d1), s.U(d2))) continue;
      const Support* lo = nullptr;
      const Support* hi = nullptr;
      if (extends_support(d2, d1)) {
        hi = &d1;
        lo = &d2;
      } else if (extends_support(d1, d2)) {
        hi = &d2;
        lo = &d1;
      }
      if (hi) {
        Support c = *hi;
        c.push_back((*lo)[hi->size()]);
        if (s.contains(c) && closed_ball_inside_open(s.U(*lo), s.W(c))) continue;
      }
      rep.disjoint = false;
      rep.meeting = std::make_pair(d1, d2);
      rep.witness = common_point(collar(s, d1), collar(s, d2));
      return rep;
    }
  return rep;
}

std::string FPlusValue::str() const {
  switch (kind) {
    case Kind::collar:
      return exact.get_str();
    case Kind::cylinder:
      return interval.to_string();
    default:
      return "~" + value.get_str();
  }
}

namespace {

Rat approx_dist(const Point& a, const Point& b) {
  Rat dx = a.x.approx(64) - b.x.approx(64), dy = a.y.approx(64) - b.y.approx(64);
  return sqrt_approx(dx * dx + dy * dy, 64);
}

Rat collar_distance(const CollarSet& c, const Point& z) {
  Rat r = approx_dist(z, c.base.center);
  if (r > c.base.radius) return r - c.base.radius;
  for (const auto& [e, b] : c.removed) {
    Rat q = approx_dist(z, b.center);
    if (q < b.radius) return b.radius - q;
  }
  return 0;
}

}  // namespace

FPlusValue f_plus_eval(const CantorScheme& s, const Point& z, int depth) {
  FPlusValue out;
  for (const auto& [d, n] : s.nodes) {
    if (k_of(d) > depth || !in_closed_ball(z, U_ball(n))) continue;
    CollarSet c = collar(s, d);
    if (c.contains(z)) {
      out.kind = FPlusValue::Kind::collar;
      out.owner = d;
      out.exact = eval_finite(d).value();
      out.value = out.exact;
      out.truncated = c.truncated;
      return out;
    }
  }
  int top = std::min(depth, s.populated_depth());
  std::optional<Support> deepest;
  for (int m = 0; m <= top; ++m) {
    std::optional<Support> hit;
    for (const auto& [d, n] : s.nodes)
      if (k_of(d) == m && in_closed_ball(z, W_ball(n))) {
        hit = d;
        break;
      }
    if (!hit) {
      deepest.reset();
      break;
    }
    deepest = hit;
  }
  if (deepest && top >= 0) {
    out.kind = FPlusValue::Kind::cylinder;
    out.owner = *deepest;
    out.interval = eval_cylinder(cylinder_of(*deepest, N_of(*deepest)));
    out.value = (out.interval.lo + out.interval.hi) / 2;
    return out;
  }
  out.kind = FPlusValue::Kind::extension;
  Rat num = 0, den = 0;
  for (const auto& [d, n] : s.nodes) {
    if (k_of(d) > depth) continue;
    Rat dist = collar_distance(collar(s, d), z);
    if (dist <= 0) dist = pow2(-64);
    Rat w = 1 / (dist * dist);
    num += w * eval_finite(d).value();
    den += w;
  }
  Rat v = den == 0 ? Rat(0) : Rat(num / den);
  out.value = Rat(floor_rat(v * pow2(48))) * pow2(-48);
  out.value.canonicalize();
  return out;
}

json OscillationReport::to_json() const {
  json certs = json::array();
  for (const auto& c : certificates)
    certs.push_back({{"owner", c.owner}, {"eta", c.eta.get_str()}, {"truncated", c.truncated}});
  return {{"hits", hits}, {"certificates", certs}, {"uncertified", uncertified}, {"spread", spread.get_str()}};
}

OscillationReport restriction_oscillation(const CantorScheme& s, const RatSegment& L, int depth) {
  OscillationReport rep;
  Rat lo = 0, hi = 0;
  for (const auto& [d, n] : s.nodes) {
    if (k_of(d) > depth) continue;
    if (!segment_meets_closed_ball(L, W_ball(n))) continue;
    Rat v = eval_finite(d).value();
    if (rep.hits.empty()) {
      lo = hi = v;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    rep.hits.push_back(d);
    if (!point_on_segment(n.sigma, L)) continue;
    CollarSet c = collar(s, d);
    bool done = false;
    for (long k = n.ell + 2; k < n.ell + 200 && !done; ++k) {
      Ball probe{n.sigma, pow2(-k)};
      bool clear = closed_ball_inside_open(probe, c.base);
      for (const auto& r : c.removed)
        if (clear && !balls_disjoint_closed(probe, r.second)) clear = false;
      if (clear) {
        rep.certificates.push_back({d, probe.radius, c.truncated});
        done = true;
      }
    }
    if (!done) rep.uncertified.push_back(d);
  }
  rep.spread = hi - lo;
  return rep;
}

CantorScheme radial_scheme(int depth, int bound) {
  CantorScheme s;
  s.depth = depth;
  s.bound = bound;
  for (const Support& e : domain_supports(depth, bound)) {
    if (e.empty()) {
      s.nodes[e] = {Point(Scalar(0), Scalar(0)), 1};
      continue;
    }
    Support d = predecessor(e);
    const SchemeNode& p = s.nodes.at(d);
    int j = N_of(e) - N_of(d);
    Rat step = pow2(-p.ell - 1 - j);
    s.nodes[e] = {Point(p.sigma.x + Scalar(step), p.sigma.y), p.ell + j + 3};
  }
  return s;
}

json point_to_json(const Point& p) { return json::array({p.x.str(), p.y.str()}); }

Point point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("point must be a pair");
  auto coord = [](const json& v) {
    if (v.is_number_integer()) return Scalar(v.get<long>());
    if (v.is_string()) return Scalar::parse(v.get<std::string>());
    throw std::invalid_argument("coordinate must be a string or an integer");
  };
  return Point(coord(j[0]), coord(j[1]));
}

json nodes_to_json(const NodeMap& nodes) {
  json arr = json::array();
  for (const auto& [d, n] : nodes) arr.push_back({{"support", d}, {"sigma", point_to_json(n.sigma)}, {"ell", n.ell}});
  return arr;
}

NodeMap nodes_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("nodes must be an array");
  NodeMap out;
  for (const auto& e : j) {
    Support d = e.at("support").get<Support>();
    if (!is_support(d)) throw std::invalid_argument("bad support " + support_string(d));
    if (out.count(d)) throw std::invalid_argument("duplicate support " + support_string(d));
    out[d] = {point_from_json(e.at("sigma")), e.at("ell").get<int>()};
  }
  return out;
}

json scheme_to_json(const CantorScheme& s) {
  return {{"depth", s.depth}, {"bound", s.bound}, {"nodes", nodes_to_json(s.nodes)}};
}

CantorScheme scheme_from_json(const json& j) {
  CantorScheme s;
  if (j.is_array()) {
    s.nodes = nodes_from_json(j);
  } else {
    s.nodes = nodes_from_json(j.at("nodes"));
  }
  int depth = 0, bound = 0;
  for (const auto& kv : s.nodes) {
    depth = std::max(depth, k_of(kv.first));
    bound = std::max(bound, N_of(kv.first));
  }
  s.depth = j.is_object() && j.contains("depth") ? j["depth"].get<int>() : depth;
  s.bound = j.is_object() && j.contains("bound") ? j["bound"].get<int>() : bound;
  return s;
}

}  // namespace cantorplane
