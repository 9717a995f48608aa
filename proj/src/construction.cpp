#include "cantorplane/construction.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantorplane {

namespace {

int positive_int(const json& j, const char* key, int fallback, int lo) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string(key) + " must be an integer");
  long long x = v.get<long long>();
  if (x < lo || x > 1000000000LL) throw std::invalid_argument(std::string(key) + " out of range");
  return static_cast<int>(x);
}

long log2_inverse(const Rat& dyadic) {
  Rat inv = 1 / dyadic;
  return static_cast<long>(mpz_sizeinbase(floor_rat(inv).get_mpz_t(), 2)) - 1;
}

json pair_json(int a, int b) { return json::array({a, b}); }

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be an object");
  RunConfig c;
  c.depth = positive_int(j, "depth", c.depth, 0);
  c.bound = positive_int(j, "bound", c.bound, 0);
  c.mA = static_cast<std::size_t>(positive_int(j, "mA", static_cast<int>(c.mA), 0));
  c.budget = positive_int(j, "budget", static_cast<int>(c.budget), 1);
  c.samples = positive_int(j, "samples", c.samples, 0);
  if (!j.contains("stages") || !j["stages"].is_array() || j["stages"].empty())
    throw std::invalid_argument("config needs a non-empty stages array");
  for (std::size_t i = 0; i < j["stages"].size(); ++i) {
    const json& s = j["stages"][i];
    StageSpec spec;
    spec.name = s.value("name", "stage" + std::to_string(i));
    spec.pair = RegionPair::from_json(s);
    if (s.contains("root")) spec.root = point_from_json(s["root"]);
    c.stages.push_back(std::move(spec));
  }
  if (j.contains("segments")) {
    if (!j["segments"].is_array()) throw std::invalid_argument("segments must be an array");
    for (const auto& s : j["segments"]) c.segments.push_back(segment_from_json(s));
  }
  return c;
}

json RunConfig::to_json() const {
  json st = json::array();
  for (const auto& s : stages) {
    json e = s.pair.to_json();
    e["name"] = s.name;
    if (s.root) e["root"] = point_to_json(*s.root);
    st.push_back(e);
  }
  json segs = json::array();
  for (const auto& s : segments) segs.push_back(segment_to_json(s));
  return {{"depth", depth}, {"bound", bound},     {"mA", mA},     {"budget", budget},
          {"samples", samples}, {"stages", st}, {"segments", segs}};
}

json StageResult::to_json() const {
  json j{{"id", id}, {"name", name}, {"pair", pair.to_json()}, {"branch", scheme_branch() ? "scheme" : "segment"}};
  if (segment) {
    j["segment"] = segment_to_json(*segment);
    return j;
  }
  j["scheme"] = scheme_to_json(scheme);
  json w = json::array();
  for (const auto& [d, s] : chain.witnesses) w.push_back({{"support", d}, {"witness", segment_to_json(s)}});
  j["witnesses"] = w;
  json order = json::array();
  for (const Support& d : chain.order) order.push_back({{"support", d}, {"dom_before", entered_at.at(d)}});
  j["order"] = order;
  j["steps"] = chain.chain.size() - 1;
  j["final"] = chain.final().to_json();
  return j;
}

std::vector<RatSegment> segment_prefix(const RunConfig& cfg, const std::vector<StageResult>& done) {
  std::vector<RatSegment> out = cfg.segments;
  for (const auto& st : done)
    if (st.segment && std::find(out.begin(), out.end(), *st.segment) == out.end()) out.push_back(*st.segment);
  return out;
}

std::vector<Requirement> stage_requirements(const StageContext& ctx, const StageSpec& spec, const RunConfig& cfg,
                                            const std::vector<RatSegment>& prefix) {
  std::vector<Requirement> reqs;
  if (spec.root) reqs.push_back(Requirement::cover_point({}));
  for (const auto& st : ctx.stages)
    if (st.in_I()) reqs.push_back(Requirement::add_stage(st.id));
  for (const auto& q : prefix) reqs.push_back(Requirement::add_segment(q));
  std::vector<Support> dom = domain_supports(cfg.depth, cfg.bound);
  std::stable_sort(dom.begin(), dom.end(), [](const Support& a, const Support& b) { return a.size() < b.size(); });
  for (const auto& e : dom) reqs.push_back(Requirement::cover_point(e));
  return reqs;
}

StageResult run_stage(StageContext& ctx, const StageSpec& spec, const RunConfig& cfg,
                      const std::vector<RatSegment>& prefix) {
  StageResult r;
  r.id = ctx.current();
  r.name = spec.name;
  r.pair = spec.pair;
  StageRecord rec;
  rec.id = r.id;
  rec.pair = spec.pair;
  if (auto seg = boundary_contains_segment(spec.pair)) {
    r.segment = *seg;
    rec.segment = *seg;
    ctx.stages.push_back(rec);
    return r;
  }
  BuildContext bc;
  bc.ctx = &ctx;
  bc.pair = spec.pair;
  bc.depth = cfg.depth;
  bc.bound = cfg.bound;
  bc.budget = cfg.budget;
  bc.root_hint = spec.root;
  r.chain = rasiowa_sikorski(Condition{}, stage_requirements(ctx, spec, cfg, prefix), bc);
  for (std::size_t i = 1; i < r.chain.chain.size(); ++i)
    for (const auto& kv : r.chain.chain[i].nodes)
      if (!r.chain.chain[i - 1].covers(kv.first)) r.entered_at.emplace(kv.first, r.chain.chain[i - 1].size());
  r.scheme.depth = cfg.depth;
  r.scheme.bound = cfg.bound;
  r.scheme.nodes = r.chain.final().nodes;
  rec.scheme = r.scheme;
  rec.cover = tail_cover(r.scheme, Continuation::cover_rule);
  ctx.stages.push_back(rec);
  return r;
}

bool BasicNeighborhood::contains_closed_ball(const Ball& b, const StageContext& ctx) const {
  if (!closed_ball_inside_open(b, Ball{x, eps})) return false;
  for (int beta : G) {
    auto db = ctx.preimage(beta, x);
    if (!db) return false;
    const CantorScheme& s = ctx.stage(beta).scheme;
    if (!closed_ball_inside_open(b, s.U(*db))) return false;
    for (const Support& e : s.children(*db))
      if (!balls_disjoint_closed(b, s.W(e))) return false;
    if (!balls_disjoint_closed(b, ctx.stage(beta).cover.at(*db))) return false;
  }
  return true;
}

bool BasicNeighborhood::contains(const Point& z, const StageContext& ctx) const {
  if (!in_open_ball(z, Ball{x, eps})) return false;
  if (z == x) return std::all_of(G.begin(), G.end(), [&](int beta) { return ctx.preimage(beta, x).has_value(); });
  for (int beta : G) {
    auto db = ctx.preimage(beta, x);
    if (!db) return false;
    const CantorScheme& s = ctx.stage(beta).scheme;
    if (!in_closed_ball(z, s.U(*db))) return false;
    for (const Support& e : s.children(*db))
      if (in_open_ball(z, s.W(e))) return false;
    if (in_closed_ball(z, ctx.stage(beta).cover.at(*db))) return false;
  }
  return true;
}

void Report::fail(json entry) {
  ++checks;
  ++failures;
  entry["ok"] = false;
  entries.push_back(std::move(entry));
}

void Report::pass(json entry) {
  ++checks;
  entry["ok"] = true;
  entries.push_back(std::move(entry));
}

json Report::to_json() const {
  return {{"name", name}, {"checks", checks}, {"failures", failures}, {"ok", ok()}, {"entries", entries}};
}

json star_at(const StageContext& ctx, int alpha, const Point& x, const std::set<int>& priors,
             const std::set<Support>& dom_p, bool& ok) {
  json e{{"x", point_to_json(x)}, {"priors", priors}};
  ok = false;
  auto eps_prior = check_star(ctx, x, priors, 512);
  if (!eps_prior) {
    e["detail"] = "no radius works for the prior stages";
    return e;
  }
  e["eps_prior"] = eps_prior->get_str();
  auto da = ctx.preimage(alpha, x);
  if (!da) {
    e["detail"] = "point not in the range of the stage";
    return e;
  }
  const CantorScheme& s = ctx.stage(alpha).scheme;
  std::vector<Point> near;
  for (const Support& c : s.children(*da))
    if (dom_p.count(c)) near.push_back(s.at(c).sigma);
  auto eps = largest_dyadic(log2_inverse(*eps_prior), log2_inverse(*eps_prior) + 1024, [&](const Rat& r) {
    return std::all_of(near.begin(), near.end(), [&](const Point& p) { return cmp_dist2(p, x, r * r) > 0; });
  });
  if (!eps) {
    e["detail"] = "no radius below the recorded children";
    return e;
  }
  std::set<int> all = priors;
  all.insert(alpha);
  auto fam = star_family(ctx, x, all, *eps);
  e["eps"] = eps->get_str();
  e["family"] = fam.size();
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j)
      if (!balls_disjoint_closed(fam[i].second, fam[j].second)) {
        e["meeting"] = {{"stages", pair_json(fam[i].first, fam[j].first)},
                        {"centers", {point_to_json(fam[i].second.center), point_to_json(fam[j].second.center)}}};
        return e;
      }
  ok = true;
  return e;
}

Report verify_star_propagation(const StageContext& ctx, const StageResult& st) {
  Report rep{"star_propagation:" + std::to_string(st.id)};
  if (!st.scheme_branch()) return rep;
  long vacuous = 0;
  for (const auto& [d, n] : st.scheme.nodes) {
    std::set<int> priors;
    for (int b : ctx.I_x(n.sigma))
      if (b < st.id) priors.insert(b);
    if (priors.empty()) {
      ++vacuous;
      continue;
    }
    std::size_t at = st.chain.chain.size() - 1;
    for (std::size_t i = 0; i < st.chain.chain.size(); ++i) {
      const Condition& c = st.chain.chain[i];
      if (c.covers(d) && std::includes(c.F.begin(), c.F.end(), priors.begin(), priors.end())) {
        at = i;
        break;
      }
    }
    std::set<Support> dom_p;
    for (const auto& kv : st.chain.chain[at].nodes) dom_p.insert(kv.first);
    std::vector<int> pv(priors.begin(), priors.end());
    for (unsigned mask = 1; mask < (1u << std::min<std::size_t>(pv.size(), 6)); ++mask) {
      std::set<int> sub;
      for (std::size_t i = 0; i < pv.size() && i < 6; ++i)
        if (mask & (1u << i)) sub.insert(pv[i]);
      bool ok = false;
      json e = star_at(ctx, st.id, n.sigma, sub, dom_p, ok);
      e["support"] = d;
      e["step"] = at;
      ok ? rep.pass(e) : rep.fail(e);
    }
  }
  rep.entries.push_back({{"vacuous_points", vacuous}});
  return rep;
}

Report verify_finite_meets(const StageContext& ctx, const StageResult& alpha, int beta) {
  Report rep{"finite_meets:" + std::to_string(alpha.id) + ":" + std::to_string(beta)};
  if (beta == alpha.id || !alpha.scheme_branch()) {
    rep.entries.push_back({{"skipped", true}});
    return rep;
  }
  const StageRecord& sb = ctx.stage(beta);
  std::optional<std::size_t> at;
  for (std::size_t i = 0; i < alpha.chain.chain.size() && !at; ++i)
    if (alpha.chain.chain[i].F.count(beta)) at = i;
  if (!at) {
    rep.fail({{"detail", "stage never entered F"}});
    return rep;
  }
  const Condition& p = alpha.chain.chain[*at];
  int n = -1;
  for (const auto& kv : p.nodes) n = std::max(n, k_of(kv.first));
  long checked = 0;
  json inside = json::array();
  bool ok = true;
  for (const auto& [d, node] : alpha.scheme.nodes) {
    bool meets = sb.cover.meets_closed_ball(W_ball(node));
    ++checked;
    if (!meets) continue;
    if (p.covers(d)) {
      inside.push_back(d);
    } else {
      ok = false;
      rep.fail({{"support", d}, {"detail", "ball beyond dom p meets the cover"}});
    }
  }
  json cert{{"beta", beta}, {"step", *at}, {"dom_p", p.size()}, {"n", n}, {"balls", checked}, {"meeting_in_dom_p", inside}};
  if (ok) rep.pass(cert);
  return rep;
}

Report verify_segment_meets(const StageResult& alpha) {
  Report rep{"segment_meets:" + std::to_string(alpha.id)};
  if (!alpha.scheme_branch()) return rep;
  for (const RatSegment& q : alpha.chain.final().Q) {
    std::size_t at = 0;
    while (at < alpha.chain.chain.size() && !alpha.chain.chain[at].Q.count(q)) ++at;
    const Condition& p = alpha.chain.chain[at];
    json inside = json::array();
    bool ok = true;
    for (const auto& [d, node] : alpha.scheme.nodes) {
      if (!segment_meets_closed_ball(q, W_ball(node))) continue;
      if (p.covers(d)) {
        inside.push_back(d);
      } else {
        ok = false;
        rep.fail({{"segment", segment_to_json(q)}, {"support", d}});
      }
    }
    if (ok) rep.pass({{"segment", segment_to_json(q)}, {"step", at}, {"dom_p", p.size()}, {"meeting_in_dom_p", inside}});
  }
  return rep;
}

namespace {

// Rational points on the witness segment of z, one on each side, inside cl B(z, rho).
std::optional<std::pair<RatPoint, RatPoint>> straddle(const RatSegment& w, const Point& z, const Rat& rho) {
  Rat dx = w.b.x - w.a.x, dy = w.b.y - w.a.y;
  Rat L2 = dx * dx + dy * dy;
  Scalar tz = ((z.x - Scalar(w.a.x)).scaled(dx) + (z.y - Scalar(w.a.y)).scaled(dy)).scaled(1 / L2);
  Rat h = 1;
  int j = 0;
  while (h * h * L2 * 16 >= rho * rho) {
    h /= 2;
    ++j;
  }
  Rat t = tz.approx(j + 16);
  Rat t1 = t - h, t2 = t + h;
  if (t1 <= 0 || t2 >= 1) return std::nullopt;
  RatPoint p1 = w.at(t1), p2 = w.at(t2);
  Ball b{z, rho};
  if (!in_closed_ball(p1.point(), b) || !in_closed_ball(p2.point(), b)) return std::nullopt;
  return std::make_pair(p1, p2);
}

constexpr long kBoundaryBudget = 1 << 14;

json rp_json(const RatPoint& p) { return json::array({rat_string(p.x), rat_string(p.y)}); }

}  // namespace

Report verify_boundary(const StageContext& ctx, const StageResult& st, int samples) {
  Report rep{"boundary:" + std::to_string(st.id)};
  if (!st.scheme_branch()) {
    const RatSegment& q = *st.segment;
    Rat nx = -(q.b.y - q.a.y), ny = q.b.x - q.a.x;
    for (int i = 1; i <= samples; ++i) {
      RatPoint x = q.at(Rat(i, samples + 1));
      BasicNeighborhood O{x.point(), pow2(-4), ctx.I_x(x.point())};
      json e{{"x", rp_json(x)}, {"eps", O.eps.get_str()}, {"G", O.G}};
      bool done = false;
      for (int k = 4; k < 128 && !done; ++k) {
        Rat eta = pow2(-k);
        RatPoint p1{x.x + eta * nx, x.y + eta * ny}, p2{x.x - eta * nx, x.y - eta * ny};
        if (!O.contains(p1.point(), ctx) || !O.contains(p2.point(), ctx)) continue;
        int s1 = st.pair.classify(p1.point()), s2 = st.pair.classify(p2.point());
        if (s1 * s2 != -1) continue;
        e["u"] = rp_json(s1 > 0 ? p1 : p2);
        e["v"] = rp_json(s1 > 0 ? p2 : p1);
        done = true;
      }
      done ? rep.pass(e) : rep.fail(e);
    }
    return rep;
  }
  std::vector<Support> dom;
  for (const auto& kv : st.scheme.nodes)
    if (!st.scheme.children(kv.first).empty()) dom.push_back(kv.first);
  std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(samples), dom.size());
  for (std::size_t i = 0; i < count; ++i) {
    const Support& d = dom[i * dom.size() / count];
    const SchemeNode& n = st.scheme.at(d);
    BasicNeighborhood O{n.sigma, U_ball(n).radius, ctx.I_x(n.sigma)};
    json e{{"support", d}, {"x", point_to_json(n.sigma)}, {"eps", O.eps.get_str()}, {"G", O.G}};
    TWalker walker(st.pair, n.sigma, O.eps);
    bool done = false;
    const long k0 = log2_inverse(O.eps) + 1;
    long outside = 0, thin = 0, unsplit = 0;
    while (!done && walker.examined() < kBoundaryBudget) {
      auto z = walker.next(kBoundaryBudget - walker.examined());
      if (!z) break;
      if (!O.contains(z->point, ctx)) {
        ++outside;
        continue;
      }
      auto rho = largest_dyadic(k0, k0 + 256, [&](const Rat& r) { return O.contains_closed_ball(Ball{z->point, r}, ctx); });
      if (!rho) {
        ++thin;
        continue;
      }
      auto pts = straddle(z->witness, z->point, *rho);
      int s1 = pts ? st.pair.classify(pts->first.point()) : 0;
      int s2 = pts ? st.pair.classify(pts->second.point()) : 0;
      if (s1 * s2 != -1) {
        ++unsplit;
        continue;
      }
      e["z"] = point_to_json(z->point);
      e["rho"] = rho->get_str();
      e["u"] = rp_json(s1 > 0 ? pts->first : pts->second);
      e["v"] = rp_json(s1 > 0 ? pts->second : pts->first);
      e["candidates"] = walker.examined();
      done = true;
    }
    if (!done) {
      e["candidates"] = walker.examined();
      e["rejected"] = {{"outside", outside}, {"no_radius", thin}, {"no_straddle", unsplit}};
    }
    done ? rep.pass(e) : rep.fail(e);
  }
  return rep;
}

namespace {

// Every recorded ball of stage b around x inside B(x, eps) lies in the sound
// part of the collar of stage a at x.
void constancy(const StageContext& ctx, int a, int b, const Point& x, const Rat& eps, Report& rep) {
  const CantorScheme& sa = ctx.stage(a).scheme;
  const CantorScheme& sb = ctx.stage(b).scheme;
  Support da = *ctx.preimage(a, x), db = *ctx.preimage(b, x);
  Rat want = eval_finite(da).value();
  long balls = 0;
  for (const Support& c : sb.children(db)) {
    const SchemeNode& n = sb.at(c);
    if (cmp_dist2(n.sigma, x, eps * eps) >= 0) continue;
    ++balls;
    Ball w = W_ball(n);
    bool ok = closed_ball_inside_open(w, sa.U(da)) && balls_disjoint_closed(w, ctx.stage(a).cover.at(da));
    for (const Support& e : sa.children(da))
      if (ok && !balls_disjoint_closed(w, sa.W(e))) ok = false;
    FPlusValue v = f_plus_eval(sa, n.sigma, sa.depth);
    ok = ok && v.kind == FPlusValue::Kind::collar && v.owner == da && v.exact == want;
    json e{{"constant_stage", a}, {"ball_stage", b}, {"ball", c}, {"value", want.get_str()}};
    ok ? rep.pass(e) : rep.fail(e);
  }
  rep.entries.push_back({{"constant_stage", a}, {"ball_stage", b}, {"x", point_to_json(x)}, {"balls", balls}});
}

}  // namespace

Report verify_no_interference(const StageContext& ctx, int alpha, int beta) {
  Report rep{"no_interference:" + std::to_string(alpha) + ":" + std::to_string(beta)};
  const StageRecord& A = ctx.stage(alpha);
  const StageRecord& B = ctx.stage(beta);
  if (!A.in_I() || !B.in_I()) return rep;
  long shared = 0;
  for (const auto& [d, n] : A.scheme.nodes) {
    auto db = ctx.preimage(beta, n.sigma);
    if (!db) continue;
    ++shared;
    auto eps = check_star(ctx, n.sigma, {alpha, beta}, 512);
    if (!eps) {
      rep.fail({{"x", point_to_json(n.sigma)}, {"detail", "no radius for the pair"}});
      continue;
    }
    Rat e = std::min({*eps, A.scheme.U(d).radius, B.scheme.U(*db).radius});
    constancy(ctx, alpha, beta, n.sigma, e, rep);
    constancy(ctx, beta, alpha, n.sigma, e, rep);
  }
  rep.entries.push_back({{"shared_points", shared}});
  return rep;
}

json segment_euclidean(const CantorScheme& s, const RatSegment& Q, bool& ok) {
  ok = true;
  json out = json::array();
  for (const auto& [d, n] : s.nodes) {
    if (!point_on_segment(n.sigma, Q)) continue;
    long hits = 0;
    for (const Support& e : s.children(d))
      if (segment_meets_closed_ball(Q, s.W(e))) ++hits;
    auto eta = largest_dyadic(n.ell + 2, n.ell + 512, [&](const Rat& r) {
      Ball b{n.sigma, r};
      if (!closed_ball_inside_open(b, U_ball(n))) return false;
      for (const Support& e : s.children(d))
        if (!balls_disjoint_closed(b, s.W(e))) return false;
      return true;
    });
    json e{{"support", d}, {"hits", hits}, {"truncated", collar_truncated(s, d)}};
    if (eta) {
      e["eta"] = eta->get_str();
      e["ok"] = true;
    } else {
      e["ok"] = false;
      ok = false;
    }
    out.push_back(e);
  }
  return out;
}

Report verify_segment_euclidean(const StageContext& ctx, const StageResult& st, const std::vector<RatSegment>& Qs) {
  (void)ctx;
  Report rep{"segment_euclidean:" + std::to_string(st.id)};
  if (!st.scheme_branch()) return rep;
  for (const RatSegment& q : Qs) {
    bool ok = true;
    json hits = segment_euclidean(st.scheme, q, ok);
    json e{{"segment", segment_to_json(q)}, {"points", hits}};
    ok ? rep.pass(e) : rep.fail(e);
  }
  return rep;
}

Report verify_A_exemptions(const StageContext& ctx, const StageResult& st) {
  Report rep{"a_points:" + std::to_string(st.id)};
  if (!st.scheme_branch()) return rep;
  for (std::size_t i = 1; i <= ctx.A.size(); ++i) {
    json exempt = json::array();
    bool ok = true;
    for (const auto& [d, n] : st.scheme.nodes) {
      if (!in_closed_ball(ctx.A[i - 1], W_ball(n))) continue;
      if (i <= st.entered_at.at(d)) {
        ok = false;
        rep.fail({{"i", i}, {"support", d}, {"dom_before", st.entered_at.at(d)}});
      } else {
        exempt.push_back(d);
      }
    }
    if (ok) rep.pass({{"i", i}, {"exempt", exempt}});
  }
  return rep;
}

Report verify_chain(const StageContext& ctx, const StageResult& st) {
  Report rep{"chain:" + std::to_string(st.id)};
  if (!st.scheme_branch()) return rep;
  const auto& ch = st.chain.chain;
  long steps = 0, checks = 0;
  bool ok = true;
  for (std::size_t i = 1; i < ch.size(); ++i) {
    ExtendsReport r = extends(ch[i], ch[i - 1], ctx);
    ++steps;
    checks += r.checks;
    if (!r.ok()) {
      ok = false;
      rep.fail({{"step", i}, {"extends", r.to_json()}});
    }
  }
  bool refl = extends(ch.back(), ch.back(), ctx).ok();
  bool trans_printed = true, trans_weaker = true;
  for (std::size_t i = 0; i + 1 < ch.size(); ++i) {
    trans_printed = trans_printed && extends(ch.back(), ch[i], ctx).ok();
    trans_weaker = trans_weaker && extends(ch.back(), ch[i], ctx, Clause4::weaker_F).ok();
  }
  ValidationReport v = validate_scheme(st.scheme);
  DisjointnessReport c = collars_pairwise_disjoint(st.scheme);
  HData h = h_data(st.scheme);
  json cert{{"steps", steps},         {"extends_checks", checks}, {"reflexive", refl},
            {"transitive_printed", trans_printed}, {"transitive_weaker_F", trans_weaker},
            {"validity", v.to_json()}, {"collars", c.to_json()}, {"h", h.to_json()}};
  if (ok && refl && trans_weaker && v.ok() && c.disjoint && h.injective && h.certified)
    rep.pass(cert);
  else
    rep.fail(cert);
  return rep;
}

bool RunResult::ok() const {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.ok(); });
}

json RunResult::report_json(const RunConfig& cfg) const {
  json st = json::array();
  for (const auto& s : stages) {
    json e{{"id", s.id}, {"name", s.name}, {"branch", s.scheme_branch() ? "scheme" : "segment"}};
    if (s.segment) {
      e["segment"] = segment_to_json(*s.segment);
    } else {
      int max_ell = 0;
      for (const auto& kv : s.scheme.nodes) max_ell = std::max(max_ell, kv.second.ell);
      e["points"] = s.scheme.nodes.size();
      e["steps"] = s.chain.chain.size() - 1;
      e["work"] = s.chain.work;
      e["max_ell"] = max_ell;
      e["F"] = s.chain.final().F;
      e["Q"] = s.chain.final().Q.size();
    }
    st.push_back(e);
  }
  json reps = json::array();
  long failures = 0;
  for (const auto& r : reports) {
    reps.push_back(r.to_json());
    failures += r.failures;
  }
  return {{"config", cfg.to_json()}, {"stages", st}, {"reports", reps}, {"failures", failures}, {"ok", ok()}};
}

RunResult run_construction(const RunConfig& cfg) {
  RunResult res;
  res.ctx.A = enumerate_A(cfg.mA);
  for (const auto& spec : cfg.stages) {
    std::vector<RatSegment> prefix = segment_prefix(cfg, res.stages);
    res.stages.push_back(run_stage(res.ctx, spec, cfg, prefix));
  }
  const StageContext& ctx = res.ctx;
  for (const auto& st : res.stages) {
    res.reports.push_back(verify_chain(ctx, st));
    res.reports.push_back(verify_star_propagation(ctx, st));
    if (st.scheme_branch()) {
      for (const auto& other : res.stages)
        if (other.id < st.id && other.scheme_branch()) res.reports.push_back(verify_finite_meets(ctx, st, other.id));
      res.reports.push_back(verify_segment_meets(st));
      std::vector<RatSegment> Qs(st.chain.final().Q.begin(), st.chain.final().Q.end());
      std::size_t extra = 0;
      for (const Support& d : st.chain.order) {
        if (extra++ >= static_cast<std::size_t>(cfg.samples)) break;
        Qs.push_back(st.chain.witnesses.at(d));
      }
      res.reports.push_back(verify_segment_euclidean(ctx, st, Qs));
      res.reports.push_back(verify_A_exemptions(ctx, st));
    }
    res.reports.push_back(verify_boundary(ctx, st, cfg.samples));
  }
  for (const auto& a : res.stages)
    for (const auto& b : res.stages)
      if (b.id < a.id && a.scheme_branch() && b.scheme_branch())
        res.reports.push_back(verify_no_interference(ctx, a.id, b.id));
  return res;
}

}  // namespace cantorplane
