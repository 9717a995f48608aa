#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantorplane/poset.hpp"

namespace cantorplane {

struct Requirement {
  enum class Kind { add_stage, add_segment, grow_domain, cover_point };
  Kind kind = Kind::cover_point;
  int stage = -1;
  RatSegment segment;
  std::size_t n = 0;
  Support e;

  static Requirement add_stage(int beta);
  static Requirement add_segment(const RatSegment& q);
  static Requirement grow_domain(std::size_t n);
  static Requirement cover_point(const Support& e);
  std::string id() const;
};

// Everything a stage under construction needs besides the condition itself.
struct BuildContext {
  const StageContext* ctx = nullptr;
  RegionPair pair;
  int depth = 0;
  int bound = 0;
  // Total T candidates a chain may examine.
  long budget = 4096;
  std::optional<Point> root_hint;
};

struct Extension {
  Condition p;
  json certificate;
  long work = 0;
  // New support points with their witness segments.
  std::vector<std::pair<Support, RatSegment>> witnesses;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_met(const Requirement& r, const Condition& p);
Extension extend(const Requirement& r, const Condition& q, const BuildContext& bc);

struct ChainResult {
  std::vector<Condition> chain;
  std::vector<json> log;
  std::map<std::string, std::size_t> met_at;
  // Order in which supports entered the domain.
  std::vector<Support> order;
  std::map<Support, RatSegment> witnesses;
  // Candidates examined over the whole chain; bounded by the budget.
  long work = 0;
  const Condition& final() const { return chain.back(); }
};

class ChainBudgetExhausted : public BudgetExhausted {
 public:
  ChainBudgetExhausted(const std::string& what, ChainResult partial)
      : BudgetExhausted(what), partial_(std::move(partial)) {}
  const ChainResult& partial() const { return partial_; }

 private:
  ChainResult partial_;
};

ChainResult rasiowa_sikorski(const Condition& p0, const std::vector<Requirement>& reqs, const BuildContext& bc);

// Largest 2^-k with kmin <= k <= kmax such that pred(2^-k) holds, or nullopt.
// pred must be monotone: once true for a radius it stays true for smaller ones.
template <class Pred>
std::optional<Rat> largest_dyadic(long kmin, long kmax, Pred pred) {
  if (kmin > kmax || !pred(pow2(-kmax))) return std::nullopt;
  while (kmin < kmax) {
    long mid = kmin + (kmax - kmin) / 2;
    if (pred(pow2(-mid)))
      kmax = mid;
    else
      kmin = mid + 1;
  }
  return pow2(-kmin);
}

}  // namespace cantorplane
