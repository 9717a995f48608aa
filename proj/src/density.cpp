#include "cantorplane/density.hpp"

#include <algorithm>

namespace cantorplane {

Requirement Requirement::add_stage(int beta) {
  Requirement r;
  r.kind = Kind::add_stage;
  r.stage = beta;
  return r;
}

Requirement Requirement::add_segment(const RatSegment& q) {
  Requirement r;
  r.kind = Kind::add_segment;
  r.segment = q;
  return r;
}

Requirement Requirement::grow_domain(std::size_t n) {
  Requirement r;
  r.kind = Kind::grow_domain;
  r.n = n;
  return r;
}

Requirement Requirement::cover_point(const Support& e) {
  Requirement r;
  r.kind = Kind::cover_point;
  r.e = e;
  return r;
}

std::string Requirement::id() const {
  switch (kind) {
    case Kind::add_stage:
      return "add-stage:" + std::to_string(stage);
    case Kind::add_segment:
      return "add-segment:" + segment.str();
    case Kind::grow_domain:
      return "grow-domain:" + std::to_string(n);
    default:
      return "cover-point:" + support_string(e);
  }
}

bool is_met(const Requirement& r, const Condition& p) {
  switch (r.kind) {
    case Requirement::Kind::add_stage:
      return p.F.count(r.stage) > 0;
    case Requirement::Kind::add_segment:
      return p.Q.count(r.segment) > 0;
    case Requirement::Kind::grow_domain:
      return p.size() >= r.n;
    default:
      return p.covers(r.e);
  }
}

namespace {

struct Obstacles {
  std::vector<Ball> balls;
  std::vector<RatSegment> segments;
  std::vector<Point> points;

  bool point_clear(const Point& z) const {
    for (const Ball& b : balls)
      if (in_closed_ball(z, b)) return false;
    for (const RatSegment& s : segments)
      if (point_on_segment(z, s)) return false;
    for (const Point& a : points)
      if (a == z) return false;
    return true;
  }

  bool ball_clear(const Ball& w) const {
    for (const Ball& b : balls)
      if (!balls_disjoint_closed(w, b)) return false;
    for (const RatSegment& s : segments)
      if (segment_meets_closed_ball(s, w)) return false;
    for (const Point& a : points)
      if (in_closed_ball(a, w)) return false;
    return true;
  }

  json summary() const {
    return {{"balls", balls.size()}, {"segments", segments.size()}, {"points", points.size()}};
  }
};

long log2_inverse(const Rat& dyadic) {
  Rat inv = 1 / dyadic;
  return static_cast<long>(mpz_sizeinbase(floor_rat(inv).get_mpz_t(), 2)) - 1;
}

// Obstacles shared by every new point: segments of Q and covers of stages in F.
Obstacles global_obstacles(const Condition& q, const StageContext& ctx) {
  Obstacles ob;
  ob.segments.assign(q.Q.begin(), q.Q.end());
  for (int b : q.F) {
    const StageRecord& st = ctx.stage(b);
    for (const auto& [d, c] : st.cover.balls) ob.balls.push_back(c);
  }
  std::size_t window = std::min(q.size(), ctx.A.size());
  for (std::size_t i = 0; i < window; ++i) ob.points.push_back(ctx.A[i]);
  return ob;
}

Extension cover_root(const Condition& q, const BuildContext& bc) {
  Obstacles ob = global_obstacles(q, *bc.ctx);
  const std::size_t pool = static_cast<std::size_t>(std::clamp<long>(bc.budget, 16, 512));
  std::vector<BoundaryPointT> ts = dense_T(bc.pair, pool);
  if (bc.root_hint) {
    auto it = std::find_if(ts.begin(), ts.end(), [&](const BoundaryPointT& t) { return t.point == *bc.root_hint; });
    if (it == ts.end()) throw BudgetExhausted("root hint " + bc.root_hint->str() + " not found among T points");
    ts = {*it};
  }
  long work = 0;
  for (const BoundaryPointT& t : ts) {
    ++work;
    if (!ob.point_clear(t.point)) continue;
    for (int ell = 1; ell <= 512; ++ell) {
      Ball w = Ball::dyadic(t.point, ell);
      if (!ob.ball_clear(w)) continue;
      Extension ext;
      ext.p = q;
      ext.p.nodes[{}] = {t.point, ell};
      ext.work = work;
      ext.witnesses.emplace_back(Support{}, t.witness);
      ext.certificate = {{"e", Support{}},
                         {"sigma", point_to_json(t.point)},
                         {"tag", t.tag},
                         {"witness", segment_to_json(t.witness)},
                         {"ell", ell},
                         {"candidates", work},
                         {"obstacles", ob.summary()}};
      return ext;
    }
  }
  throw BudgetExhausted("no admissible T point for the root among " + std::to_string(ts.size()) + " candidates");
}

Extension cover_child(const Support& e, const Condition& q, const BuildContext& bc) {
  const StageContext& ctx = *bc.ctx;
  const Support d = predecessor(e);
  const SchemeNode& nd = q.nodes.at(d);
  const Point& x = nd.sigma;

  std::vector<Ball> H;
  for (const auto& [a, n] : q.nodes)
    if (!a.empty() && is_successor_of(a, d)) H.push_back(W_ball(n));
  const long kmin = std::max<long>(N_of(e), nd.ell + N_of(e) - N_of(d));
  auto eps1 = largest_dyadic(kmin, kmin + 512, [&](const Rat& eps) {
    Ball big{x, 2 * eps};
    return std::all_of(H.begin(), H.end(), [&](const Ball& h) { return balls_disjoint_closed(big, h); });
  });
  if (!eps1) throw BudgetExhausted("no radius clears the siblings of " + support_string(e));

  std::set<int> Fx;
  for (int b : clause5_stages(q, ctx, x)) Fx.insert(b);
  auto star = check_star(ctx, x, Fx, 512);
  if (!star) throw BudgetExhausted("assumption (*) has no radius at " + x.str());
  const Rat eps2 = std::min(Rat(*eps1 / 2), *star);

  Obstacles ob = global_obstacles(q, ctx);
  ob.points.push_back(x);
  long clause5 = 0;
  for (int b : Fx) {
    const CantorScheme& sb = ctx.stage(b).scheme;
    Support db = *ctx.preimage(b, x);
    for (const Support& a : sb.children(db)) {
      ob.balls.push_back(sb.W(a));
      ++clause5;
    }
  }

  const Ball region{x, eps2};
  TWalker walker(bc.pair, x, eps2);
  const long k0 = log2_inverse(eps2);
  while (walker.examined() < bc.budget) {
    auto cand = walker.next(bc.budget - walker.examined());
    if (!cand) break;
    const Point& y = cand->point;
    if (!ob.point_clear(y)) continue;
    auto delta = largest_dyadic(k0, k0 + 1024, [&](const Rat& r) {
      Ball b{y, r};
      return closed_ball_inside_open(b, region) && ob.ball_clear(b);
    });
    if (!delta) continue;
    const int ell = static_cast<int>(log2_inverse(*delta) + 1);
    Extension ext;
    ext.p = q;
    ext.p.nodes[e] = {y, ell};
    ext.work = walker.examined();
    ext.witnesses.emplace_back(e, cand->witness);
    ext.certificate = {{"e", e},
                       {"d", d},
                       {"x", point_to_json(x)},
                       {"eps1", eps1->get_str()},
                       {"star", star->get_str()},
                       {"eps2", eps2.get_str()},
                       {"y", point_to_json(y)},
                       {"tag", cand->tag},
                       {"witness", segment_to_json(cand->witness)},
                       {"delta", delta->get_str()},
                       {"ell", ell},
                       {"candidates", walker.examined()},
                       {"clause5_balls", clause5},
                       {"obstacles", ob.summary()}};
    return ext;
  }
  throw BudgetExhausted("T search around " + x.str() + " for " + support_string(e) + " ran out after " +
                        std::to_string(walker.examined()) + " candidates");
}

Extension cover(const Support& e, const Condition& q, const BuildContext& bc) {
  if (q.covers(e)) return {q, {{"met", true}}, 0, {}};
  if (e.empty()) return cover_root(q, bc);
  Support d = predecessor(e);
  if (!q.covers(d)) {
    Extension first = cover(d, q, bc);
    Extension second = cover_child(e, first.p, bc);
    second.work += first.work;
    second.witnesses.insert(second.witnesses.begin(), first.witnesses.begin(), first.witnesses.end());
    second.certificate = {{"predecessors", first.certificate}, {"point", second.certificate}};
    return second;
  }
  return cover_child(e, q, bc);
}

}  // namespace

Extension extend(const Requirement& r, const Condition& q, const BuildContext& bc) {
  if (is_met(r, q)) return {q, {{"met", true}}, 0, {}};
  switch (r.kind) {
    case Requirement::Kind::add_stage: {
      const StageRecord& st = bc.ctx->stage(r.stage);
      if (!st.in_I()) throw DomainError("stage " + std::to_string(r.stage) + " has no Cantor set");
      Extension ext{q, {{"added_stage", r.stage}}, 0, {}};
      ext.p.F.insert(r.stage);
      return ext;
    }
    case Requirement::Kind::add_segment: {
      Extension ext{q, {{"added_segment", segment_to_json(r.segment)}}, 0, {}};
      ext.p.Q.insert(r.segment);
      return ext;
    }
    case Requirement::Kind::grow_domain: {
      Extension acc{q, json::array(), 0, {}};
      for (const Support& e : domain_supports(bc.depth, bc.bound)) {
        if (acc.p.size() >= r.n) break;
        if (acc.p.covers(e)) continue;
        Extension step = cover(e, acc.p, bc);
        acc.p = step.p;
        acc.work += step.work;
        acc.certificate.push_back(step.certificate);
        acc.witnesses.insert(acc.witnesses.end(), step.witnesses.begin(), step.witnesses.end());
      }
      if (acc.p.size() < r.n) throw BudgetExhausted("domain limits leave fewer than " + std::to_string(r.n) + " points");
      return acc;
    }
    default:
      return cover(r.e, q, bc);
  }
}

ChainResult rasiowa_sikorski(const Condition& p0, const std::vector<Requirement>& reqs, const BuildContext& bc) {
  ChainResult res;
  res.chain.push_back(p0);
  for (const auto& kv : p0.nodes) res.order.push_back(kv.first);
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    const Requirement& r = reqs[i];
    const Condition& q = res.chain.back();
    json rec{{"step", i}, {"requirement", r.id()}};
    if (is_met(r, q)) {
      rec["met"] = true;
      rec["work"] = 0;
      res.log.push_back(rec);
      res.met_at.emplace(r.id(), res.chain.size() - 1);
      continue;
    }
    Extension ext;
    try {
      BuildContext step = bc;
      step.budget = bc.budget - res.work;
      if (step.budget <= 0) throw BudgetExhausted("budget of " + std::to_string(bc.budget) + " candidates used up");
      ext = extend(r, q, step);
    } catch (const BudgetExhausted& ex) {
      rec["error"] = ex.what();
      res.log.push_back(rec);
      throw ChainBudgetExhausted(ex.what(), res);
    }
    ExtendsReport er = extends(ext.p, q, *bc.ctx);
    if (!er.ok()) throw std::logic_error("extension does not extend at step " + std::to_string(i) + ": " + er.to_json().dump());
    ValidationReport vr = is_valid(ext.p);
    if (!vr.ok()) throw std::logic_error("extension is not a condition at step " + std::to_string(i) + ": " + vr.to_json().dump());
    for (const auto& [e, w] : ext.witnesses) {
      res.order.push_back(e);
      res.witnesses[e] = w;
    }
    res.work += ext.work;
    rec["met"] = false;
    rec["work"] = ext.work;
    rec["extends_checks"] = er.checks;
    rec["validity_checks"] = vr.checks;
    rec["dom"] = ext.p.size();
    rec["certificate"] = ext.certificate;
    res.log.push_back(rec);
    res.chain.push_back(std::move(ext.p));
    res.met_at.emplace(r.id(), res.chain.size() - 1);
  }
  return res;
}

}  // namespace cantorplane
