#include "cantorplane/poset.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantorplane {

namespace {

bool same_point(const Point& a, const Point& b) {
  Interval ax = a.x.enclose(64), bx = b.x.enclose(64);
  if (ax.hi < bx.lo || bx.hi < ax.lo) return false;
  Interval ay = a.y.enclose(64), by = b.y.enclose(64);
  if (ay.hi < by.lo || by.hi < ay.lo) return false;
  return a == b;
}

void note(ExtendsReport& r, const std::string& clause, const Support& a, const Support& b, std::string detail) {
  r.violations.push_back({clause, a, b, std::move(detail)});
}

}  // namespace

json segment_to_json(const RatSegment& s) {
  return {{"a", json::array({rat_string(s.a.x), rat_string(s.a.y)})},
          {"b", json::array({rat_string(s.b.x), rat_string(s.b.y)})}};
}

RatSegment segment_from_json(const json& j) {
  auto pt = [](const json& v) {
    if (!v.is_array() || v.size() != 2) throw std::invalid_argument("segment end point must be a pair");
    auto coord = [](const json& c) {
      if (c.is_number_integer()) return Rat(c.get<long>());
      if (c.is_string()) return parse_rational(c.get<std::string>());
      throw std::invalid_argument("segment coordinate must be a rational string");
    };
    return RatPoint{coord(v[0]), coord(v[1])};
  };
  RatSegment s{pt(j.at("a")), pt(j.at("b"))};
  if (s.a == s.b) throw std::invalid_argument("degenerate segment");
  return s;
}

json Condition::to_json() const {
  json q = json::array();
  for (const auto& s : Q) q.push_back(segment_to_json(s));
  return {{"nodes", nodes_to_json(nodes)}, {"F", F}, {"Q", q}};
}

Condition Condition::from_json(const json& j) {
  Condition c;
  c.nodes = nodes_from_json(j.at("nodes"));
  for (int b : j.value("F", std::vector<int>{})) c.F.insert(b);
  if (j.contains("Q"))
    for (const auto& s : j["Q"]) c.Q.insert(segment_from_json(s));
  return c;
}

bool operator==(const Condition& a, const Condition& b) {
  if (a.F != b.F || a.Q != b.Q || a.nodes.size() != b.nodes.size()) return false;
  for (auto i = a.nodes.begin(), j = b.nodes.begin(); i != a.nodes.end(); ++i, ++j)
    if (i->first != j->first || i->second.ell != j->second.ell || !(i->second.sigma == j->second.sigma)) return false;
  return true;
}

bool TailCover::meets_closed_ball(const Ball& b) const {
  for (const auto& [d, c] : balls)
    if (!balls_disjoint_closed(b, c)) return true;
  return false;
}

bool TailCover::meets_segment(const RatSegment& s) const {
  for (const auto& [d, c] : balls)
    if (segment_meets_closed_ball(s, c)) return true;
  return false;
}

bool TailCover::contains(const Point& p) const {
  for (const auto& [d, c] : balls)
    if (in_closed_ball(p, c)) return true;
  return false;
}

Rat tail_radius(const CantorScheme& s, const Support& d, Continuation c) {
  int m = N_of(d) + 1;
  if (k_of(d) < s.depth)
    for (;; ++m) {
      Support e = d;
      e.push_back(m);
      if (!s.contains(e)) break;
    }
  const SchemeNode& n = s.at(d);
  const long k = n.ell + m - N_of(d);
  Rat r = std::min(pow2(-k), s.U(d).radius);
  if (c == Continuation::dyadic) return r;
  std::vector<Ball> sibs;
  for (const Support& e : s.children(d)) sibs.push_back(s.W(e));
  for (long j = k; j < k + 4096; ++j) {
    Ball big{n.sigma, pow2(1 - j)};
    if (std::all_of(sibs.begin(), sibs.end(), [&](const Ball& b) { return balls_disjoint_closed(big, b); }))
      return std::min(r, pow2(-j));
  }
  throw DomainError("a recorded child ball contains its parent center");
}

TailCover tail_cover(const CantorScheme& s, Continuation c) {
  TailCover out;
  for (const auto& [d, n] : s.nodes) out.balls.emplace(d, Ball{n.sigma, tail_radius(s, d, c)});
  return out;
}

const StageRecord& StageContext::stage(int id) const {
  if (id < 0 || id >= current()) throw DomainError("unknown stage " + std::to_string(id));
  return stages[static_cast<std::size_t>(id)];
}

std::vector<int> StageContext::I_x(const Point& x) const {
  std::vector<int> out;
  for (const auto& st : stages)
    if (st.in_I() && preimage(st.id, x)) out.push_back(st.id);
  return out;
}

std::optional<Support> StageContext::preimage(int beta, const Point& x) const {
  const StageRecord& st = stage(beta);
  if (!st.in_I()) return std::nullopt;
  for (const auto& [d, n] : st.scheme.nodes)
    if (same_point(n.sigma, x)) return d;
  return std::nullopt;
}

json ExtendsReport::to_json() const {
  json vs = json::array();
  for (const auto& v : violations) vs.push_back({{"clause", v.condition}, {"a", v.a}, {"b", v.b}, {"detail", v.detail}});
  return {{"ok", ok()}, {"checks", checks}, {"violations", vs}};
}

ValidationReport is_valid(const Condition& p) {
  ValidationReport rep;
  check_nodes(p.nodes, rep);
  for (const auto& [d, n] : p.nodes)
    if (n.ell < 0) rep.violations.push_back({"domain", d, {}, "negative ell"});
  return rep;
}

std::vector<int> clause5_stages(const Condition& q, const StageContext& ctx, const Point& x) {
  std::vector<int> out;
  for (int b : ctx.I_x(x))
    if (q.F.count(b)) out.push_back(b);
  return out;
}

ExtendsReport extends(const Condition& p, const Condition& q, const StageContext& ctx, Clause4 reading) {
  const std::set<int>& F4 = reading == Clause4::printed ? p.F : q.F;
  ExtendsReport r;
  for (const auto& [d, n] : q.nodes) {
    ++r.checks;
    auto it = p.nodes.find(d);
    if (it == p.nodes.end())
      note(r, "clause-1", d, {}, "missing from the extension");
    else if (it->second.ell != n.ell || !(it->second.sigma == n.sigma))
      note(r, "clause-1", d, {}, "sigma or ell changed");
  }
  r.checks += 2;
  if (!std::includes(p.F.begin(), p.F.end(), q.F.begin(), q.F.end())) note(r, "clause-2", {}, {}, "F shrank");
  if (!std::includes(p.Q.begin(), p.Q.end(), q.Q.begin(), q.Q.end())) note(r, "clause-2", {}, {}, "Q shrank");

  const std::size_t window = std::min(q.size(), ctx.A.size());
  for (const auto& [d, n] : p.nodes) {
    if (q.covers(d)) continue;
    Ball w = W_ball(n);
    for (std::size_t i = 0; i < window; ++i) {
      ++r.checks;
      if (in_closed_ball(ctx.A[i], w)) note(r, "clause-3", d, {}, "contains a_" + std::to_string(i + 1));
    }
    for (const RatSegment& s : q.Q) {
      ++r.checks;
      if (segment_meets_closed_ball(s, w)) note(r, "clause-4", d, {}, "meets segment " + s.str());
    }
    for (int b : F4) {
      const StageRecord& st = ctx.stage(b);
      if (!st.in_I()) {
        note(r, "clause-4", d, {}, "stage " + std::to_string(b) + " is not a scheme stage");
        continue;
      }
      ++r.checks;
      if (st.cover.meets_closed_ball(w)) note(r, "clause-4", d, {}, "meets the cover of stage " + std::to_string(b));
    }
    if (d.empty()) continue;
    Support parent = predecessor(d);
    auto pit = q.nodes.find(parent);
    if (pit == q.nodes.end()) continue;
    const Point& x = pit->second.sigma;
    for (int b : clause5_stages(q, ctx, x)) {
      const CantorScheme& sb = ctx.stage(b).scheme;
      Support db = *ctx.preimage(b, x);
      for (const Support& a : sb.children(db)) {
        ++r.checks;
        if (!balls_disjoint_closed(w, sb.W(a)))
          note(r, "clause-5", d, a, "meets a recorded ball of stage " + std::to_string(b));
      }
    }
  }
  return r;
}

std::string centering_class(const Condition& p) { return nodes_to_json(p.nodes).dump(); }

Condition merge_centered(const Condition& p, const Condition& q, const StageContext& ctx) {
  (void)ctx;
  if (centering_class(p) != centering_class(q)) throw DomainError("conditions lie in different centering classes");
  Condition r = p;
  r.F.insert(q.F.begin(), q.F.end());
  r.Q.insert(q.Q.begin(), q.Q.end());
  return r;
}

std::vector<std::pair<int, Ball>> star_family(const StageContext& ctx, const Point& x, const std::set<int>& F,
                                              const Rat& eps) {
  std::vector<std::pair<int, Ball>> fam;
  for (int b : F) {
    auto db = ctx.preimage(b, x);
    if (!db) throw DomainError("point is not in the range of stage " + std::to_string(b));
    const CantorScheme& s = ctx.stage(b).scheme;
    for (const Support& a : s.children(*db)) {
      const SchemeNode& n = s.at(a);
      if (cmp_dist2(n.sigma, x, eps * eps) < 0) fam.emplace_back(b, W_ball(n));
    }
  }
  return fam;
}

std::optional<Rat> check_star(const StageContext& ctx, const Point& x, const std::set<int>& F, int budget) {
  for (int k = 0; k <= budget; ++k) {
    Rat eps = pow2(-k);
    auto fam = star_family(ctx, x, F, eps);
    bool ok = true;
    for (std::size_t i = 0; i < fam.size() && ok; ++i)
      for (std::size_t j = i + 1; j < fam.size() && ok; ++j)
        if (!balls_disjoint_closed(fam[i].second, fam[j].second)) ok = false;
    if (ok) return eps;
  }
  return std::nullopt;
}

}  // namespace cantorplane
