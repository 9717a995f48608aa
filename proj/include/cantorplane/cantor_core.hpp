#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cantorplane {

// Strictly increasing list of positive indices.
using Support = std::vector<int>;

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point of 2^N, either with finite support or given by a monotone stream.
class CantorPoint {
 public:
  using Generator = std::function<int()>;

  CantorPoint() = default;
  static CantorPoint finite(Support s);
  static CantorPoint lazy(Generator next);

  bool is_finite() const { return !state_; }
  const Support& finite_support() const;

  // 1-based counting function c_x(j); forces lazy points.
  int at(int j) const;
  // supp x restricted to [1..bound].
  Support support(int bound) const;
  // Whether index i belongs to the support.
  bool bit(int i) const;

  int k() const;  // |supp x| (finite only)
  int N() const;  // max supp x, 0 for the empty support (finite only)

  std::string to_string() const;

 private:
  struct LazyState {
    Generator next;
    std::vector<int> memo;
    void force(std::size_t n);
  };
  Support fin_;
  std::shared_ptr<LazyState> state_;
};

// Finite 0/1 word; index i of the word is coordinate i+1.
struct Cylinder {
  std::string word;

  std::size_t length() const { return word.size(); }
  int ones() const;
  bool contains(const CantorPoint& y) const;
  bool contains(const Support& y) const;
  // Support of the word itself.
  Support support() const;
};

Support support(const CantorPoint& x, int bound);
int counting_function(const CantorPoint& x, int j);
std::vector<Support> enumerate_level(int k, int maxN);
std::vector<Support> successors(const Support& d, int maxN);
Cylinder cylinder_of(const CantorPoint& x, int n);
Cylinder cylinder_of(const Support& x, int n);

inline int k_of(const Support& d) { return static_cast<int>(d.size()); }
inline int N_of(const Support& d) { return d.empty() ? 0 : d.back(); }

bool is_support(const Support& s);
// Immediate predecessor: drop the largest index.
Support predecessor(const Support& e);
bool is_successor_of(const Support& e, const Support& d);
// e extends d: d is an initial segment of e's support.
bool extends_support(const Support& e, const Support& d);

std::string support_string(const Support& s);
Support parse_support(const std::string& text);

// Every support with k <= depth and N <= bound, in lexicographic order.
std::vector<Support> domain_supports(int depth, int bound);

}  // namespace cantorplane
