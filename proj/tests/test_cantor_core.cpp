#include <doctest.h>

#include "cantorplane/cantor_core.hpp"
#include "oracles.hpp"

using namespace cantorplane;

TEST_SUITE("cantor_core") {
  TEST_CASE("support of finite and lazy points") {
    CHECK(support(CantorPoint::finite({}), 10).empty());
    CHECK(support(CantorPoint::finite({1, 3}), 10) == Support{1, 3});
    int next = 0;
    CantorPoint evens = CantorPoint::lazy([next]() mutable { return next += 2; });
    CHECK(support(evens, 7) == Support{2, 4, 6});
    CHECK_THROWS_AS(support(evens, 0), DomainError);
  }

  TEST_CASE("lazy points memoize and reject non-increasing streams") {
    int calls = 0;
    CantorPoint odd = CantorPoint::lazy([&calls]() { return 2 * (++calls) - 1; });
    CHECK(odd.at(3) == 5);
    CHECK(odd.at(1) == 1);
    CHECK(calls == 3);
    CantorPoint bad = CantorPoint::lazy([]() { return 4; });
    CHECK_THROWS_AS(bad.at(2), DomainError);
  }

  TEST_CASE("counting function") {
    CantorPoint x = CantorPoint::finite({2, 5});
    CHECK(counting_function(x, 1) == 2);
    CHECK(counting_function(x, 2) == 5);
    CHECK_THROWS_AS(counting_function(CantorPoint::finite({}), 1), DomainError);
    CHECK_THROWS_AS(counting_function(x, 3), DomainError);
  }

  TEST_CASE("invalid supports are rejected") {
    CHECK_THROWS_AS(CantorPoint::finite({3, 1}), DomainError);
    CHECK_THROWS_AS(CantorPoint::finite({0}), DomainError);
    CHECK(is_support({1, 4, 9}));
    CHECK_FALSE(is_support({2, 2}));
  }

  TEST_CASE("enumerate_level examples") {
    CHECK(enumerate_level(0, 5) == std::vector<Support>{{}});
    CHECK(enumerate_level(1, 3) == std::vector<Support>{{1}, {2}, {3}});
    CHECK(enumerate_level(2, 4).size() == oracle::subsets(2, 4).size());
    CHECK(enumerate_level(2, 4).size() == 6);
  }

  TEST_CASE("enumerate_level matches bitmask enumeration") {
    for (int maxN = 0; maxN <= 9; ++maxN)
      for (int k = 0; k <= maxN + 1; ++k) CHECK(enumerate_level(k, maxN) == oracle::subsets(k, maxN));
  }

  TEST_CASE("successors examples") {
    CHECK(successors({}, 3) == std::vector<Support>{{1}, {2}, {3}});
    CHECK(successors({2}, 4) == std::vector<Support>{{2, 3}, {2, 4}});
    CHECK(successors({1, 2}, 2).empty());
  }

  TEST_CASE("successors are the level members extending the N_d prefix") {
    const int maxN = 8;
    for (const Support& d : oracle::all_supports(6)) {
      std::vector<Support> want;
      for (const Support& e : oracle::subsets(k_of(d) + 1, maxN))
        if (oracle::prefix_match(e, d, N_of(d))) want.push_back(e);
      CHECK(successors(d, maxN) == want);
    }
  }

  TEST_CASE("cylinder_of examples") {
    CHECK(cylinder_of(CantorPoint::finite({1, 3}), 4).word == "1010");
    CHECK(cylinder_of(CantorPoint::finite({}), 0).word.empty());
    Cylinder v = cylinder_of(CantorPoint::finite({2}), 2);
    CHECK(v.word == "01");
    CHECK(v.contains(Support{2, 7}));
    CHECK_FALSE(v.contains(Support{1, 2}));
  }

  TEST_CASE("V_d cylinders of one level are pairwise disjoint") {
    const int maxN = 8;
    const auto pool = oracle::all_supports(maxN);
    for (int k = 0; k <= 3; ++k) {
      auto level = enumerate_level(k, maxN);
      for (std::size_t i = 0; i < level.size(); ++i)
        for (std::size_t j = i + 1; j < level.size(); ++j) {
          Cylinder a = cylinder_of(level[i], N_of(level[i]));
          Cylinder b = cylinder_of(level[j], N_of(level[j]));
          bool shared = std::any_of(pool.begin(), pool.end(), [&](const Support& y) { return a.contains(y) && b.contains(y); });
          CHECK_FALSE(shared);
        }
    }
  }

  TEST_CASE("V_d is d together with the V_e of its successors") {
    const int maxN = 7;
    const auto pool = oracle::all_supports(maxN);
    for (const Support& d : oracle::all_supports(5)) {
      Cylinder vd = cylinder_of(d, N_of(d));
      auto kids = successors(d, maxN);
      for (const Support& y : pool) {
        bool in_union = y == d;
        for (const Support& e : kids) in_union = in_union || cylinder_of(e, N_of(e)).contains(y);
        CHECK(vd.contains(y) == in_union);
      }
    }
  }

  TEST_CASE("support text round trip and predecessor") {
    CHECK(support_string({1, 3}) == "{1,3}");
    CHECK(support_string({}) == "{}");
    CHECK(parse_support("1,3") == Support{1, 3});
    CHECK(parse_support("{2,5}") == Support{2, 5});
    CHECK(parse_support("").empty());
    CHECK(predecessor({2, 5}) == Support{2});
    CHECK(is_successor_of({2, 5}, {2}));
    CHECK(extends_support({2, 5, 6}, {2}));
    CHECK_FALSE(extends_support({3, 5}, {2}));
  }

  TEST_CASE("domain_supports counts") {
    std::size_t want = 0;
    for (int k = 0; k <= 4; ++k) want += oracle::subsets(k, 8).size();
    CHECK(domain_supports(4, 8).size() == want);
    CHECK(domain_supports(4, 8).size() == 163);
  }
}
