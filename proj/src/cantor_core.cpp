#include "cantorplane/cantor_core.hpp"

#include <algorithm>
#include <sstream>

namespace cantorplane {

void CantorPoint::LazyState::force(std::size_t n) {
  while (memo.size() < n) {
    int v = next();
    if (v < 1 || (!memo.empty() && v <= memo.back()))
      throw DomainError("lazy generator is not strictly increasing");
    memo.push_back(v);
  }
}

CantorPoint CantorPoint::finite(Support s) {
  if (!is_support(s)) throw DomainError("support must be strictly increasing and positive");
  CantorPoint p;
  p.fin_ = std::move(s);
  return p;
}

CantorPoint CantorPoint::lazy(Generator next) {
  CantorPoint p;
  p.state_ = std::make_shared<LazyState>();
  p.state_->next = std::move(next);
  return p;
}

const Support& CantorPoint::finite_support() const {
  if (state_) throw DomainError("point has infinite support");
  return fin_;
}

int CantorPoint::at(int j) const {
  if (j < 1) throw DomainError("counting function index must be >= 1");
  if (!state_) {
    if (j > static_cast<int>(fin_.size())) throw DomainError("counting function index out of range");
    return fin_[j - 1];
  }
  state_->force(static_cast<std::size_t>(j));
  return state_->memo[j - 1];
}

Support CantorPoint::support(int bound) const {
  Support out;
  if (!state_) {
    for (int v : fin_)
      if (v <= bound) out.push_back(v);
    return out;
  }
  for (int j = 1;; ++j) {
    int v = at(j);
    if (v > bound) break;
    out.push_back(v);
  }
  return out;
}

bool CantorPoint::bit(int i) const {
  if (!state_) return std::binary_search(fin_.begin(), fin_.end(), i);
  for (int j = 1;; ++j) {
    int v = at(j);
    if (v == i) return true;
    if (v > i) return false;
  }
}

int CantorPoint::k() const { return k_of(finite_support()); }
int CantorPoint::N() const { return N_of(finite_support()); }

std::string CantorPoint::to_string() const {
  if (!state_) return support_string(fin_);
  std::ostringstream os;
  os << "{";
  for (int j = 1; j <= 8; ++j) os << (j > 1 ? "," : "") << at(j);
  os << ",...}";
  return os.str();
}

int Cylinder::ones() const { return static_cast<int>(std::count(word.begin(), word.end(), '1')); }

bool Cylinder::contains(const CantorPoint& y) const {
  for (std::size_t i = 0; i < word.size(); ++i)
    if (y.bit(static_cast<int>(i) + 1) != (word[i] == '1')) return false;
  return true;
}

bool Cylinder::contains(const Support& y) const { return contains(CantorPoint::finite(y)); }

Support Cylinder::support() const {
  Support s;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (word[i] == '1') s.push_back(static_cast<int>(i) + 1);
  return s;
}

Support support(const CantorPoint& x, int bound) {
  if (bound < 1) throw DomainError("bound must be >= 1");
  return x.support(bound);
}

int counting_function(const CantorPoint& x, int j) { return x.at(j); }

namespace {
void combos(int start, int maxN, int left, Support& cur, std::vector<Support>& out) {
  if (left == 0) {
    out.push_back(cur);
    return;
  }
  for (int m = start; m + left - 1 <= maxN; ++m) {
    cur.push_back(m);
    combos(m + 1, maxN, left - 1, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Support> enumerate_level(int k, int maxN) {
  std::vector<Support> out;
  if (k < 0) return out;
  Support cur;
  combos(1, maxN, k, cur, out);
  return out;
}

std::vector<Support> successors(const Support& d, int maxN) {
  std::vector<Support> out;
  for (int m = N_of(d) + 1; m <= maxN; ++m) {
    Support e = d;
    e.push_back(m);
    out.push_back(std::move(e));
  }
  return out;
}

Cylinder cylinder_of(const CantorPoint& x, int n) {
  Cylinder c;
  c.word.assign(static_cast<std::size_t>(std::max(n, 0)), '0');
  if (n <= 0) return c;
  for (int v : x.support(n)) c.word[v - 1] = '1';
  return c;
}

Cylinder cylinder_of(const Support& x, int n) { return cylinder_of(CantorPoint::finite(x), n); }

bool is_support(const Support& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1) return false;
    if (i > 0 && s[i] <= s[i - 1]) return false;
  }
  return true;
}

Support predecessor(const Support& e) {
  if (e.empty()) throw DomainError("the empty support has no predecessor");
  return Support(e.begin(), e.end() - 1);
}

bool is_successor_of(const Support& e, const Support& d) {
  return e.size() == d.size() + 1 && std::equal(d.begin(), d.end(), e.begin());
}

bool extends_support(const Support& e, const Support& d) {
  return e.size() >= d.size() && std::equal(d.begin(), d.end(), e.begin());
}

std::string support_string(const Support& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << "}";
  return os.str();
}

Support parse_support(const std::string& text) {
  Support s;
  std::string t;
  for (char ch : text)
    if (ch != '{' && ch != '}' && ch != ' ') t.push_back(ch);
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad support entry: " + item);
    s.push_back(v);
  }
  if (!is_support(s)) throw std::invalid_argument("support must be strictly increasing and positive");
  return s;
}

std::vector<Support> domain_supports(int depth, int bound) {
  std::vector<Support> all;
  for (int k = 0; k <= depth; ++k) {
    auto lvl = enumerate_level(k, bound);
    all.insert(all.end(), lvl.begin(), lvl.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace cantorplane
