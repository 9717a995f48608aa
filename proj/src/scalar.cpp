#include "cantorplane/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cantorplane {

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Interval r{c[0], c[0]};
  for (const Rat& v : c) {
    if (v < r.lo) r.lo = v;
    if (v > r.hi) r.hi = v;
  }
  return r;
}

Interval square(const Interval& a) {
  if (a.lo >= 0) return {a.lo * a.lo, a.hi * a.hi};
  if (a.hi <= 0) return {a.hi * a.hi, a.lo * a.lo};
  Rat m = std::max(Rat(-a.lo), a.hi);
  return {0, m * m};
}

namespace {

bool perfect_square(const Int& m, Int& root) {
  if (!mpz_perfect_square_p(m.get_mpz_t())) return false;
  mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
  return true;
}

}  // namespace

SquareSplit split_square(const Int& m) {
  if (m <= 0) throw DomainError("split_square needs a positive integer");
  SquareSplit out{1, m};
  Int root;
  if (perfect_square(out.rest, root)) return {root, 1};
  for (unsigned long p = 2; p < 1000; p = (p == 2) ? 3 : p + 2) {
    unsigned long p2 = p * p;
    while (mpz_divisible_ui_p(out.rest.get_mpz_t(), p2)) {
      mpz_divexact_ui(out.rest.get_mpz_t(), out.rest.get_mpz_t(), p2);
      out.f *= p;
    }
  }
  if (perfect_square(out.rest, root)) return {out.f * root, 1};
  return out;
}

std::vector<Int> coprime_base(std::vector<Int> xs) {
  xs.erase(std::remove_if(xs.begin(), xs.end(), [](const Int& v) { return v <= 1; }), xs.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (bool split = true; split;) {
    split = false;
    for (std::size_t i = 0; i < xs.size() && !split; ++i)
      for (std::size_t j = i + 1; j < xs.size() && !split; ++j) {
        Int g;
        mpz_gcd(g.get_mpz_t(), xs[i].get_mpz_t(), xs[j].get_mpz_t());
        if (g == 1) continue;
        Int a = xs[i] / g, b = xs[j] / g;
        xs.erase(xs.begin() + static_cast<long>(j));
        xs.erase(xs.begin() + static_cast<long>(i));
        for (const Int& v : {a, b, g})
          if (v > 1) xs.push_back(v);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        split = true;
      }
  }
  return xs;
}

Int radical_value(const Radical& r) {
  Int v = 1;
  for (const Int& a : r) v *= a;
  return v;
}

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rat floor_sqrt_scaled(const Int& m, int bits) {
  Int scaled = m;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * static_cast<mp_bitcnt_t>(bits));
  Int s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  return Rat(s) * pow2(-bits);
}

Rat sqrt_approx(const Rat& q, int bits) {
  if (q <= 0) return 0;
  // sqrt(n/d) = sqrt(n*d)/d
  Int nd = q.get_num() * q.get_den();
  return floor_sqrt_scaled(nd, bits + static_cast<int>(mpz_sizeinbase(q.get_den_mpz_t(), 2))) / Rat(q.get_den());
}

namespace {

const Interval& sqrt_enclosure(const Radical& r, int bits) {
  thread_local std::map<std::pair<Radical, int>, Interval> cache;
  auto key = std::make_pair(r, bits);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (cache.size() > 100000) cache.clear();
  Rat lo = floor_sqrt_scaled(radical_value(r), bits);
  Interval iv{lo, lo + pow2(-bits)};
  return cache.emplace(key, iv).first->second;
}

bool rad_less(const Radical& a, const Radical& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void normalize(std::vector<Term>& ts) {
  std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return rad_less(a.rad, b.rad); });
  std::vector<Term> out;
  for (auto& t : ts) {
    if (!out.empty() && out.back().rad == t.rad)
      out.back().coef += t.coef;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coef == 0; }), out.end());
  ts = std::move(out);
}

Term mul_terms(const Term& a, const Term& b) {
  Term t;
  t.coef = a.coef * b.coef;
  std::size_t i = 0, j = 0;
  while (i < a.rad.size() || j < b.rad.size()) {
    if (j == b.rad.size() || (i < a.rad.size() && a.rad[i] < b.rad[j])) {
      t.rad.push_back(a.rad[i++]);
    } else if (i == a.rad.size() || b.rad[j] < a.rad[i]) {
      t.rad.push_back(b.rad[j++]);
    } else {
      t.coef *= a.rad[i];
      ++i;
      ++j;
    }
  }
  return t;
}

std::vector<Int> atoms_of(const std::vector<Term>& ts) {
  std::vector<Int> out;
  for (const auto& t : ts) out.insert(out.end(), t.rad.begin(), t.rad.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Rewrites terms over a refinement of their atoms; base entries that are
// perfect squares fold into the coefficient.
std::vector<Term> rebase(const std::vector<Term>& ts, const std::vector<Int>& base) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const auto& t : ts) {
    if (t.rad.empty() || std::binary_search(base.begin(), base.end(), t.rad.front())) {
      bool same = true;
      for (const Int& a : t.rad)
        if (!std::binary_search(base.begin(), base.end(), a)) same = false;
      if (same) {
        out.push_back(t);
        continue;
      }
    }
    std::vector<unsigned long> ex(base.size(), 0);
    for (Int a : t.rad)
      for (std::size_t k = 0; k < base.size() && a > 1; ++k)
        while (mpz_divisible_p(a.get_mpz_t(), base[k].get_mpz_t())) {
          mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), base[k].get_mpz_t());
          ++ex[k];
        }
    Term u;
    u.coef = t.coef;
    for (std::size_t k = 0; k < base.size(); ++k) {
      if (!ex[k]) continue;
      Int root;
      if (perfect_square(base[k], root)) {
        Int p;
        mpz_pow_ui(p.get_mpz_t(), root.get_mpz_t(), ex[k]);
        u.coef *= p;
        continue;
      }
      Int p;
      mpz_pow_ui(p.get_mpz_t(), base[k].get_mpz_t(), ex[k] / 2);
      u.coef *= p;
      if (ex[k] % 2) u.rad.push_back(base[k]);
    }
    out.push_back(std::move(u));
  }
  return out;
}

// Brings both term lists onto a common pairwise-coprime base.
void align(std::vector<Term>& a, std::vector<Term>& b) {
  std::vector<Int> aa = atoms_of(a), bb = atoms_of(b);
  if (aa.empty() || bb.empty()) return;
  std::vector<Int> all = aa;
  all.insert(all.end(), bb.begin(), bb.end());
  std::vector<Int> base = coprime_base(all);
  if (base != aa) a = rebase(a, base);
  if (base != bb) b = rebase(b, base);
}

}  // namespace

Scalar::Scalar(const Rat& q) {
  if (q != 0) terms_.push_back({{}, q});
}

Scalar::Scalar(long v) : Scalar(Rat(v)) {}

Scalar Scalar::sqrt_of(const Rat& q) {
  if (q < 0) throw DomainError("square root of a negative rational");
  if (q == 0) return Scalar();
  Rat c = q;
  c.canonicalize();
  SquareSplit sp = split_square(c.get_num() * c.get_den());
  Scalar s;
  Rat coef = Rat(sp.f) / Rat(c.get_den());
  coef.canonicalize();
  if (sp.rest == 1)
    s.terms_.push_back({{}, coef});
  else
    s.terms_.push_back({{sp.rest}, coef});
  return s;
}

Scalar Scalar::surd(const Rat& a, const Rat& b, const Int& m) {
  return Scalar(a) + sqrt_of(Rat(m)).scaled(b);
}

Scalar::Kind Scalar::kind() const {
  if (is_rational()) return Kind::rational;
  std::size_t radicals = 0;
  for (const auto& t : terms_)
    if (!t.rad.empty()) ++radicals;
  return radicals == 1 ? Kind::surd : Kind::compound;
}

Rat Scalar::rational_part() const {
  if (!terms_.empty() && terms_[0].rad.empty()) return terms_[0].coef;
  return 0;
}

Rat Scalar::rational_value() const {
  if (!is_rational()) throw DomainError("scalar is not rational");
  return rational_part();
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  for (auto& t : s.terms_) t.coef = -t.coef;
  s.cache_bits_ = -1;
  return s;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar s;
  s.terms_ = a.terms_;
  std::vector<Term> bt = b.terms_;
  align(s.terms_, bt);
  s.terms_.insert(s.terms_.end(), bt.begin(), bt.end());
  normalize(s.terms_);
  return s;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar s;
  if (a.is_rational() && b.is_rational()) return Scalar(a.rational_part() * b.rational_part());
  std::vector<Term> at = a.terms_, bt = b.terms_;
  align(at, bt);
  s.terms_.reserve(at.size() * bt.size());
  for (const auto& x : at)
    for (const auto& y : bt) s.terms_.push_back(mul_terms(x, y));
  normalize(s.terms_);
  return s;
}

Scalar Scalar::scaled(const Rat& q) const {
  if (q == 0) return Scalar();
  Scalar s = *this;
  for (auto& t : s.terms_) t.coef *= q;
  s.cache_bits_ = -1;
  return s;
}

bool operator==(const Scalar& a, const Scalar& b) {
  bool same = a.terms_.size() == b.terms_.size();
  for (std::size_t i = 0; same && i < a.terms_.size(); ++i)
    if (a.terms_[i].rad != b.terms_[i].rad || a.terms_[i].coef != b.terms_[i].coef) same = false;
  return same || (a - b).is_zero();
}

Interval Scalar::enclose(int bits) const {
  if (cache_bits_ == bits) return cache_;
  Interval acc{0, 0};
  for (const auto& t : terms_) {
    if (t.rad.empty()) {
      acc.lo += t.coef;
      acc.hi += t.coef;
      continue;
    }
    const Interval& s = sqrt_enclosure(t.rad, bits);
    if (t.coef >= 0) {
      acc.lo += t.coef * s.lo;
      acc.hi += t.coef * s.hi;
    } else {
      acc.lo += t.coef * s.hi;
      acc.hi += t.coef * s.lo;
    }
  }
  cache_bits_ = bits;
  cache_ = acc;
  return acc;
}

Rat Scalar::approx(int bits) const {
  if (is_rational()) return rational_part();
  int b = bits + 8;
  for (;;) {
    Interval iv = enclose(b);
    if (iv.hi - iv.lo <= pow2(-bits)) {
      Rat mid = (iv.lo + iv.hi) / 2;
      mid.canonicalize();
      return mid;
    }
    b += 32;
  }
}

double Scalar::to_double() const { return approx(80).get_d(); }

int Scalar::sign() const {
  if (terms_.empty()) return 0;
  if (is_rational()) return sgn(terms_[0].coef);
  for (int bits : {64, 256}) {
    Interval iv = enclose(bits);
    if (iv.lo > 0) return 1;
    if (iv.hi < 0) return -1;
  }
  return exact_sign();
}

int Scalar::exact_sign() const {
  Int a = 0;
  for (const auto& t : terms_)
    for (const Int& p : t.rad) a = std::max(a, p);
  Scalar alpha, beta;
  for (const auto& t : terms_) {
    auto it = std::find(t.rad.begin(), t.rad.end(), a);
    if (it == t.rad.end()) {
      alpha.terms_.push_back(t);
    } else {
      Term u = t;
      u.rad.erase(u.rad.begin() + (it - t.rad.begin()));
      beta.terms_.push_back(std::move(u));
    }
  }
  normalize(alpha.terms_);
  normalize(beta.terms_);
  int sa = alpha.sign();
  int sb = beta.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Scalar norm = alpha * alpha - (beta * beta).scaled(Rat(a));
  return sa * norm.sign();
}

int scalar_compare(const Scalar& a, const Scalar& b) { return (a - b).sign(); }

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    Rat c = t.coef;
    bool neg = c < 0;
    if (neg) c = -c;
    std::string piece;
    if (t.rad.empty()) {
      piece = c.get_str();
    } else {
      std::string r = "sqrt(" + radical_value(t.rad).get_str() + ")";
      piece = (c == 1) ? r : c.get_str() + "*" + r;
    }
    if (i == 0)
      out = (neg ? "-" : "") + piece;
    else
      out += (neg ? " - " : " + ") + piece;
  }
  return out;
}

namespace {

std::string fixed_point(const Int& v, int digits) {
  Int a = abs(v);
  std::string s = a.get_str();
  if (static_cast<int>(s.size()) <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
  std::string out = s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
  return (v < 0 ? "-" : "") + out;
}

}  // namespace

std::string Scalar::decimal(int digits) const {
  Interval iv = enclose(digits * 4 + 16);
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rat lo = iv.lo * Rat(scale), hi = iv.hi * Rat(scale);
  Int l = floor_rat(lo);
  Int h = -floor_rat(-hi);
  if (l == h) return fixed_point(l, digits);
  return "[" + fixed_point(l, digits) + ", " + fixed_point(h, digits) + "]";
}

Scalar Scalar::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty scalar");
  std::size_t i = 0;
  auto read_int = [&](std::string& out) {
    std::size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (st == i) throw std::invalid_argument("bad scalar: " + text);
    out = s.substr(st, i - st);
  };
  auto read_sqrt = [&]() {
    if (s.compare(i, 5, "sqrt(") != 0) throw std::invalid_argument("bad scalar: " + text);
    i += 5;
    std::string m;
    read_int(m);
    if (i >= s.size() || s[i] != ')') throw std::invalid_argument("bad scalar: " + text);
    ++i;
    return Int(m);
  };
  Scalar acc;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw std::invalid_argument("bad scalar: " + text);
    }
    first = false;
    Rat coef = 1;
    bool has_root = false;
    Int m;
    if (i < s.size() && s[i] == 's') {
      m = read_sqrt();
      has_root = true;
    } else {
      std::string num, den = "1";
      read_int(num);
      if (i < s.size() && s[i] == '/') {
        ++i;
        read_int(den);
      }
      if (Int(den) == 0) throw std::invalid_argument("zero denominator: " + text);
      coef = Rat(Int(num), Int(den));
      coef.canonicalize();
      if (i < s.size() && s[i] == '*') {
        ++i;
        m = read_sqrt();
        has_root = true;
      }
    }
    coef *= sign;
    acc += has_root ? sqrt_of(Rat(m)).scaled(coef) : Scalar(coef);
  }
  return acc;
}

Rat simplest_between(const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) throw DomainError("simplest_between needs lo < hi");
  if (lo < 0 && hi > 0) return 0;
  if (hi <= 0) return -simplest_between(-hi, -lo);
  Int fl = floor_rat(lo);
  Rat cand = Rat(fl + 1);
  if (cand < hi) return cand;
  Rat a = lo - Rat(fl), b = hi - Rat(fl);
  Rat inner;
  if (a == 0) {
    Rat inv = 1 / b;
    inner = Rat(floor_rat(inv) + 1);
  } else {
    inner = simplest_between(1 / b, 1 / a);
  }
  Rat out = Rat(fl) + 1 / inner;
  out.canonicalize();
  return out;
}

Rat rational_between(const Scalar& a, const Scalar& b) {
  for (int bits = 32;; bits *= 2) {
    Interval ea = a.enclose(bits), eb = b.enclose(bits);
    if (ea.hi < eb.lo) return simplest_between(ea.hi, eb.lo);
    if (bits > 1 << 16) throw DomainError("rational_between: values not separated");
  }
}

}  // namespace cantorplane
