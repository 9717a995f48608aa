#include "cantorplane/regions.hpp"

#include <algorithm>
#include <cctype>

namespace cantorplane {

Rat parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw std::invalid_argument("empty rational");
  std::size_t slash = t.find('/');
  auto check_int = [&](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) throw std::invalid_argument("bad rational: " + s);
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) throw std::invalid_argument("bad rational: " + s);
  };
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  check_int(num);
  check_int(den);
  if (num[0] == '+') num = num.substr(1);
  if (den[0] == '+') den = den.substr(1);
  Int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rat q(Int(num), d);
  q.canonicalize();
  return q;
}

std::string rat_string(const Rat& q) { return q.get_str(); }

Region Region::disc(const Rat& cx, const Rat& cy, const Rat& r2) {
  if (r2 <= 0) throw UnsupportedRegion("disc radius^2 must be positive");
  Region r;
  r.kind = Kind::disc;
  r.cx = cx;
  r.cy = cy;
  r.r2 = r2;
  return r;
}

Region Region::rect(const Rat& x0, const Rat& y0, const Rat& x1, const Rat& y1) {
  if (!(x0 < x1) || !(y0 < y1)) throw UnsupportedRegion("rectangle must have x0 < x1 and y0 < y1");
  Region r;
  r.kind = Kind::rect;
  r.x0 = x0;
  r.y0 = y0;
  r.x1 = x1;
  r.y1 = y1;
  return r;
}

Region Region::complement(const Region& k) {
  Region r;
  r.kind = Kind::complement;
  r.kids.push_back(k);
  return r;
}

Region Region::unite(std::vector<Region> rs) {
  if (rs.empty()) throw UnsupportedRegion("empty union");
  Region r;
  r.kind = Kind::unite;
  r.kids = std::move(rs);
  return r;
}

Region Region::intersect(std::vector<Region> rs) {
  if (rs.empty()) throw UnsupportedRegion("empty intersection");
  Region r;
  r.kind = Kind::intersect;
  r.kids = std::move(rs);
  return r;
}

int Region::side(const Point& p) const {
  switch (kind) {
    case Kind::disc:
      return cmp_dist2(p, Point(Scalar(cx), Scalar(cy)), r2);
    case Kind::rect: {
      int a = scalar_compare(p.x, Scalar(x0)), b = scalar_compare(p.x, Scalar(x1));
      int c = scalar_compare(p.y, Scalar(y0)), d = scalar_compare(p.y, Scalar(y1));
      if (a > 0 && b < 0 && c > 0 && d < 0) return -1;
      if (a < 0 || b > 0 || c < 0 || d > 0) return 1;
      return 0;
    }
    case Kind::complement:
      return -kids[0].side(p);
    case Kind::unite: {
      bool all_out = true;
      for (const auto& k : kids) {
        int s = k.side(p);
        if (s < 0) return -1;
        if (s == 0) all_out = false;
      }
      return all_out ? 1 : 0;
    }
    case Kind::intersect: {
      bool all_in = true;
      for (const auto& k : kids) {
        int s = k.side(p);
        if (s > 0) return 1;
        if (s == 0) all_in = false;
      }
      return all_in ? -1 : 0;
    }
  }
  return 0;
}

void Region::collect(std::vector<Circle>& circles, std::vector<RatSegment>& edges) const {
  switch (kind) {
    case Kind::disc:
      circles.push_back({cx, cy, r2});
      break;
    case Kind::rect:
      edges.push_back({{x0, y0}, {x1, y0}});
      edges.push_back({{x1, y0}, {x1, y1}});
      edges.push_back({{x1, y1}, {x0, y1}});
      edges.push_back({{x0, y1}, {x0, y0}});
      break;
    default:
      for (const auto& k : kids) k.collect(circles, edges);
  }
}

json Region::to_json() const {
  switch (kind) {
    case Kind::disc:
      return {{"disc", {{"cx", rat_string(cx)}, {"cy", rat_string(cy)}, {"r2", rat_string(r2)}}}};
    case Kind::rect:
      return {{"rect", {{"x0", rat_string(x0)}, {"y0", rat_string(y0)}, {"x1", rat_string(x1)}, {"y1", rat_string(y1)}}}};
    case Kind::complement:
      return {{"complement", kids[0].to_json()}};
    default: {
      json arr = json::array();
      for (const auto& k : kids) arr.push_back(k.to_json());
      return {{kind == Kind::unite ? "union" : "intersection", arr}};
    }
  }
}

namespace {
Rat field(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field ") + key);
  const json& v = j.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rat(Int(std::to_string(v.get<long long>())));
  throw std::invalid_argument(std::string("field must be a rational string: ") + key);
}
}  // namespace

Region Region::from_json(const json& j) {
  if (!j.is_object() || j.size() != 1) throw std::invalid_argument("region must be a single-key object");
  const std::string key = j.begin().key();
  const json& v = j.begin().value();
  if (key == "disc") return disc(field(v, "cx"), field(v, "cy"), field(v, "r2"));
  if (key == "rect") return rect(field(v, "x0"), field(v, "y0"), field(v, "x1"), field(v, "y1"));
  if (key == "complement") return complement(from_json(v));
  if (key == "union" || key == "intersection") {
    if (!v.is_array()) throw std::invalid_argument(key + " expects an array");
    std::vector<Region> rs;
    for (const auto& e : v) rs.push_back(from_json(e));
    return key == "union" ? unite(std::move(rs)) : intersect(std::move(rs));
  }
  throw UnsupportedRegion("unsupported region kind: " + key);
}

bool operator==(const Region& a, const Region& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Region::Kind::disc) return a.cx == b.cx && a.cy == b.cy && a.r2 == b.r2;
  if (a.kind == Region::Kind::rect) return a.x0 == b.x0 && a.y0 == b.y0 && a.x1 == b.x1 && a.y1 == b.y1;
  if (a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!(a.kids[i] == b.kids[i])) return false;
  return true;
}

int RegionPair::classify(const Point& p) const { return -U.side(p); }

std::vector<Circle> RegionPair::circles() const {
  std::vector<Circle> cs;
  std::vector<RatSegment> es;
  U.collect(cs, es);
  return cs;
}

std::vector<RatSegment> RegionPair::edges() const {
  std::vector<Circle> cs;
  std::vector<RatSegment> es;
  U.collect(cs, es);
  return es;
}

json RegionPair::to_json() const { return {{"U", U.to_json()}, {"V", V().to_json()}}; }

RegionPair RegionPair::from_json(const json& j) {
  if (!j.is_object() || !j.contains("U")) throw std::invalid_argument("region pair needs a U entry");
  RegionPair p;
  p.U = Region::from_json(j.at("U"));
  if (j.contains("V")) {
    Region v = Region::from_json(j.at("V"));
    if (!(v == p.V()))
      throw UnsupportedRegion("V must be the complement of the closure of U; other pairs are not supported");
  }
  return p;
}

std::vector<Scalar> breakpoints(const RegionPair& pair, const RatSegment& seg) {
  std::vector<Circle> circles;
  std::vector<RatSegment> edges;
  pair.U.collect(circles, edges);
  const Rat dx = seg.b.x - seg.a.x, dy = seg.b.y - seg.a.y;
  std::vector<Scalar> ts;
  auto keep = [&](const Scalar& t) {
    if (t.sign() > 0 && (t - Scalar(1)).sign() < 0) ts.push_back(t);
  };
  for (const auto& c : circles) {
    Rat ax = seg.a.x - c.cx, ay = seg.a.y - c.cy;
    Rat A = dx * dx + dy * dy, B = 2 * (dx * ax + dy * ay), C = ax * ax + ay * ay - c.r2;
    Rat disc = B * B - 4 * A * C;
    if (disc < 0) continue;
    Scalar mid(Rat(-B / (2 * A)));
    if (disc == 0) {
      keep(mid);
      continue;
    }
    Scalar root = Scalar::sqrt_of(disc).scaled(1 / (2 * A));
    keep(mid - root);
    keep(mid + root);
  }
  for (const auto& e : edges) {
    if (e.a.x == e.b.x && dx != 0) keep(Scalar(Rat((e.a.x - seg.a.x) / dx)));
    if (e.a.y == e.b.y && dy != 0) keep(Scalar(Rat((e.a.y - seg.a.y) / dy)));
  }
  std::sort(ts.begin(), ts.end(), [](const Scalar& a, const Scalar& b) { return scalar_compare(a, b) < 0; });
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

std::vector<SegmentPiece> classify_segment(const RegionPair& pair, const RatSegment& seg) {
  std::vector<Scalar> bs = breakpoints(pair, seg);
  bs.insert(bs.begin(), Scalar(0));
  bs.push_back(Scalar(1));
  std::vector<SegmentPiece> out;
  for (std::size_t i = 0; i + 1 < bs.size(); ++i) {
    SegmentPiece p;
    p.lo = bs[i];
    p.hi = bs[i + 1];
    p.sample = rational_between(p.lo, p.hi);
    p.side = pair.classify(seg.at(p.sample).point());
    out.push_back(std::move(p));
  }
  return out;
}

std::optional<RatSegment> boundary_contains_segment(const RegionPair& pair) {
  for (const auto& edge : pair.edges()) {
    const Rat dx = edge.b.x - edge.a.x, dy = edge.b.y - edge.a.y;
    std::vector<Scalar> bs = breakpoints(pair, edge);
    bs.insert(bs.begin(), Scalar(0));
    bs.push_back(Scalar(1));
    for (std::size_t i = 0; i + 1 < bs.size(); ++i) {
      Rat tm = rational_between(bs[i], bs[i + 1]);
      RatPoint m = edge.at(tm);
      Rat eta = 1;
      for (int tries = 0; tries < 64; ++tries, eta /= 2) {
        RatSegment probe{{m.x + eta * dy, m.y - eta * dx}, {m.x - eta * dy, m.y + eta * dx}};
        std::vector<Scalar> pb = breakpoints(pair, probe);
        if (pb.size() != 1 || !(pb[0] == Scalar(Rat(1, 2)))) continue;
        int s1 = pair.classify(probe.a.point()), s2 = pair.classify(probe.b.point());
        if (s1 == 0 || s2 == 0) continue;
        if (s1 != s2) {
          Rat lo = bs[i].is_rational() ? bs[i].rational_value() : rational_between(bs[i], Scalar(tm));
          Rat hi = bs[i + 1].is_rational() ? bs[i + 1].rational_value() : rational_between(Scalar(tm), bs[i + 1]);
          return RatSegment{edge.at(lo), edge.at(hi)};
        }
        break;
      }
    }
  }
  return std::nullopt;
}

void face_direction(int face, const Rat& t, Int& u, Int& v) {
  const Int& a = t.get_num();
  const Int& b = t.get_den();
  switch (face) {
    case 0:
      u = b;
      v = a;
      break;
    case 1:
      u = -a;
      v = b;
      break;
    case 2:
      u = -b;
      v = -a;
      break;
    default:
      u = a;
      v = -b;
  }
}

Point circle_point(const Circle& c, const Int& u, const Int& v) {
  Rat s = Rat(u * u + v * v);
  Scalar lam = Scalar::sqrt_of(c.r2 / s);
  return Point(Scalar(c.cx) + lam.scaled(Rat(u)), Scalar(c.cy) + lam.scaled(Rat(v)));
}

namespace {

// Segment misses the circle's boundary entirely.
bool clear_of_circle(const RatSegment& s, const Circle& c) {
  Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  Rat ax = s.a.x - c.cx, ay = s.a.y - c.cy;
  Rat A = dx * dx + dy * dy, B = 2 * (dx * ax + dy * ay), C = ax * ax + ay * ay - c.r2;
  Rat f0 = C, f1 = A + B + C;
  Rat tv = -B / (2 * A);
  Rat fmin = std::min(f0, f1);
  if (tv > 0 && tv < 1) fmin = std::min(fmin, Rat(A * tv * tv + B * tv + C));
  Rat fmax = std::max(f0, f1);
  return fmin > 0 || fmax < 0;
}

int line_side(const RatPoint& p, const RatSegment& e) {
  if (e.a.x == e.b.x) return sgn(Rat(p.x - e.a.x));
  return sgn(Rat(p.y - e.a.y));
}

bool same_circle(const Circle& a, const Circle& b) { return a.cx == b.cx && a.cy == b.cy && a.r2 == b.r2; }

bool on_line_of(const RatSegment& edge, const RatSegment& line) {
  if (line.a.x == line.b.x) return edge.a.x == line.a.x && edge.b.x == line.a.x;
  return edge.a.y == line.a.y && edge.b.y == line.a.y;
}

// The witness crosses only the given primitive, at its interior, and has U on one end and V on the other.
bool clean_witness(const RegionPair& pair, const RatSegment& w, const Circle* own_circle, const RatSegment* own_edge) {
  std::vector<Circle> circles;
  std::vector<RatSegment> edges;
  pair.U.collect(circles, edges);
  for (const auto& c : circles) {
    if (own_circle && same_circle(c, *own_circle)) continue;
    if (!clear_of_circle(w, c)) return false;
  }
  for (const auto& e : edges) {
    if (own_edge && on_line_of(*own_edge, e)) continue;
    int sa = line_side(w.a, e), sb = line_side(w.b, e);
    if (sa == 0 || sb == 0 || sa != sb) return false;
  }
  int s1 = pair.classify(w.a.point()), s2 = pair.classify(w.b.point());
  return s1 != 0 && s2 != 0 && s1 != s2;
}

std::string circle_tag(std::size_t ci, int face, const Rat& t) {
  return "c" + std::to_string(ci) + ":f" + std::to_string(face) + ":" + t.get_str();
}

}  // namespace

std::optional<BoundaryPointT> certify_circle_point(const RegionPair& pair, std::size_t ci, int face, const Rat& t) {
  std::vector<Circle> circles = pair.circles();
  if (ci >= circles.size()) return std::nullopt;
  const Circle& c = circles[ci];
  Int u, v;
  face_direction(face, t, u, v);
  Rat s = Rat(u * u + v * v);
  Scalar lam = Scalar::sqrt_of(c.r2 / s);
  Point p(Scalar(c.cx) + lam.scaled(Rat(u)), Scalar(c.cy) + lam.scaled(Rat(v)));
  for (int k : {6, 10, 16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512, 768, 1024}) {
    Interval iv = lam.enclose(k + 64);
    Rat l1 = simplest_between(iv.lo * (1 - pow2(1 - k)), iv.lo * (1 - pow2(-k)));
    Rat l2 = simplest_between(iv.hi * (1 + pow2(-k)), iv.hi * (1 + pow2(1 - k)));
    RatSegment w{{c.cx + Rat(u) * l1, c.cy + Rat(v) * l1}, {c.cx + Rat(u) * l2, c.cy + Rat(v) * l2}};
    if (clean_witness(pair, w, &c, nullptr)) return BoundaryPointT{p, w, circle_tag(ci, face, t)};
  }
  return std::nullopt;
}

std::optional<BoundaryPointT> certify_edge_point(const RegionPair& pair, std::size_t ei, const Rat& t) {
  std::vector<RatSegment> edges = pair.edges();
  if (ei >= edges.size() || !(t > 0 && t < 1)) return std::nullopt;
  const RatSegment& e = edges[ei];
  const Rat dx = e.b.x - e.a.x, dy = e.b.y - e.a.y;
  RatPoint m = e.at(t);
  for (int k : {4, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512, 768, 1024}) {
    Rat eta = pow2(-k);
    RatSegment w{{m.x + eta * dy, m.y - eta * dx}, {m.x - eta * dy, m.y + eta * dx}};
    if (clean_witness(pair, w, nullptr, &e))
      return BoundaryPointT{m.point(), w, "e" + std::to_string(ei) + ":" + t.get_str()};
  }
  return std::nullopt;
}

TWalker::TWalker(const RegionPair& pair, const Point& center, const Rat& radius)
    : pair_(pair), center_(center), radius_(radius) {
  long scale = 0;
  if (radius > 0) {
    Rat inv = 1 / radius;
    scale = static_cast<long>(mpz_sizeinbase(floor_rat(inv).get_mpz_t(), 2));
  }
  const int bits = static_cast<int>(std::max(64L, scale + 48));
  const Rat slack = pow2(-bits + 8);
  const Rat zx = center.x.approx(bits), zy = center.y.approx(bits);
  auto circles = pair.circles();
  for (std::size_t ci = 0; ci < circles.size(); ++ci) {
    const Circle& c = circles[ci];
    Rat wx = zx - c.cx, wy = zy - c.cy;
    Rat nw = sqrt_approx(wx * wx + wy * wy, bits);
    Rat r = sqrt_approx(c.r2, bits);
    Rat dz = abs(Rat(nw - r));
    if (dz + slack >= radius) continue;
    if (nw <= radius) {
      for (int f = 0; f < 4; ++f) {
        Window w;
        w.circle = true;
        w.index = ci;
        w.face = f;
        w.queue.emplace_back(Rat(-1), Rat(1));
        windows_.push_back(std::move(w));
      }
      continue;
    }
    Rat dth = (radius - dz - slack) / r * Rat(7, 8);
    int face;
    Rat t0;
    if (abs(wx) >= abs(wy)) {
      face = wx > 0 ? 0 : 2;
      t0 = wy / wx;
    } else {
      face = wy > 0 ? 1 : 3;
      t0 = -wx / wy;
    }
    auto add = [&](int f, Rat lo, Rat hi) {
      if (lo < -1) lo = -1;
      if (hi > 1) hi = 1;
      if (!(lo < hi)) return;
      Window w;
      w.circle = true;
      w.index = ci;
      w.face = f;
      w.queue.emplace_back(lo, hi);
      windows_.push_back(std::move(w));
    };
    dth *= 1 + t0 * t0;
    add(face, t0 - dth, t0 + dth);
    if (t0 + dth > 1) add((face + 1) % 4, Rat(-1), Rat(-1) + (t0 + dth - 1));
    if (t0 - dth < -1) add((face + 3) % 4, Rat(1) - (-1 - (t0 - dth)), Rat(1));
  }
  auto edges = pair.edges();
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const RatSegment& e = edges[ei];
    Rat dx = e.b.x - e.a.x, dy = e.b.y - e.a.y;
    Rat len2 = dx * dx + dy * dy;
    Rat px = zx - e.a.x, py = zy - e.a.y;
    Rat t0 = (px * dx + py * dy) / len2;
    Rat cross = px * dy - py * dx;
    Rat h2 = cross * cross / len2;
    Rat rr = radius * radius;
    if (h2 >= rr) continue;
    Rat half = sqrt_approx((rr - h2) / len2, bits) * Rat(7, 8);
    Rat lo = std::max(Rat(0), Rat(t0 - half)), hi = std::min(Rat(1), Rat(t0 + half));
    if (!(lo < hi)) continue;
    Window w;
    w.circle = false;
    w.index = ei;
    w.queue.emplace_back(lo, hi);
    windows_.push_back(std::move(w));
  }
}

std::optional<BoundaryPointT> TWalker::next(long budget) {
  long used = 0;
  while (used < budget) {
    bool any = false;
    for (std::size_t k = 0; k < windows_.size() && used < budget; ++k) {
      Window& w = windows_[(turn_ + k) % windows_.size()];
      if (w.queue.empty()) continue;
      any = true;
      auto [lo, hi] = w.queue.front();
      w.queue.pop_front();
      Rat quarter = (hi - lo) / 4;
      Rat s = simplest_between(lo + quarter, hi - quarter);
      w.queue.emplace_back(lo, s);
      w.queue.emplace_back(s, hi);
      ++used;
      ++examined_;
      std::optional<BoundaryPointT> cand;
      if (w.circle) {
        auto circles = pair_.circles();
        Int u, v;
        face_direction(w.face, s, u, v);
        Point p = circle_point(circles[w.index], u, v);
        if (!in_open_ball(p, Ball{center_, radius_})) continue;
        cand = certify_circle_point(pair_, w.index, w.face, s);
      } else {
        auto edges = pair_.edges();
        if (!in_open_ball(edges[w.index].at(s).point(), Ball{center_, radius_})) continue;
        cand = certify_edge_point(pair_, w.index, s);
      }
      if (!cand || in_A(cand->point)) continue;
      turn_ = (turn_ + k + 1) % windows_.size();
      return cand;
    }
    if (!any) break;
  }
  return std::nullopt;
}

std::optional<BoundaryPointT> boundary_point_near(const RegionPair& pair, const Point& center, const Rat& radius) {
  if (radius <= 0) throw DomainError("radius must be positive");
  TWalker w(pair, center, radius);
  return w.next(4096);
}

namespace {

// Position of (face, t) counterclockwise from angle 0, as a monotone key in [0, 8).
Rat angle_key(int face, const Rat& t) {
  Rat psi = Rat(2 * face) + t + 1;
  return psi >= 1 ? Rat(psi - 1) : Rat(psi + 7);
}

}  // namespace

std::vector<BoundaryPointT> dense_T(const RegionPair& pair, std::size_t n) {
  std::vector<BoundaryPointT> out;
  if (n == 0) return out;
  const auto circles = pair.circles();
  const auto edges = pair.edges();
  auto add = [&](std::optional<BoundaryPointT> c) {
    if (!c || in_A(c->point)) return;
    for (const auto& q : out)
      if (q.point == c->point) return;
    out.push_back(std::move(*c));
  };
  const long max_level = 512;
  for (long level = 1; level <= max_level && out.size() < n; ++level) {
    for (std::size_t ci = 0; ci < circles.size() && out.size() < n; ++ci) {
      std::vector<std::pair<Rat, std::pair<int, Rat>>> dirs;
      for (int f = 0; f < 4; ++f)
        for (long a = -level; a < level; ++a) {
          if (std::gcd(std::labs(a), level) != 1) continue;
          Rat t{Int(a), Int(level)};
          t.canonicalize();
          dirs.push_back({angle_key(f, t), {f, t}});
        }
      std::sort(dirs.begin(), dirs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      for (const auto& d : dirs) {
        if (out.size() >= n) break;
        add(certify_circle_point(pair, ci, d.second.first, d.second.second));
      }
    }
    if (level > 24) continue;
    for (std::size_t ei = 0; ei < edges.size() && out.size() < n; ++ei) {
      Int den = 1;
      den <<= static_cast<mp_bitcnt_t>(level);
      for (Int i = 1; i < den && out.size() < n; i += 2) {
        Rat t(i, den);
        t.canonicalize();
        add(certify_edge_point(pair, ei, t));
      }
    }
  }
  return out;
}

}  // namespace cantorplane
