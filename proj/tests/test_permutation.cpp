#include <doctest.h>

#include <random>
#include <set>

#include "midpoint/error.hpp"
#include "midpoint/permutation.hpp"
#include "support.hpp"

using namespace midpoint;

TEST_CASE("composition acts right to left") {
  const Permutation a = Permutation::from_cycles(3, {{1, 2}});
  const Permutation b = Permutation::from_cycles(3, {{2, 3}});
  // (a*b)(2) = a(b(2)) = a(3) = 3
  CHECK((a * b)(2) == 3);
  CHECK((a * b)(1) == 2);
  CHECK(compose(a, b) == a * b);
  CHECK(inverse(a * b) == inverse(b) * inverse(a));
}

TEST_CASE("construction rejects non-bijections") {
  CHECK_THROWS_AS(Permutation({1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_cycles(3, {{1, 2}, {2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::transposition(3, 2, 2), std::invalid_argument);
}

TEST_CASE("distance examples") {
  const auto e = Permutation::identity(4);
  CHECK(distance(e, Permutation::from_cycles(4, {{1, 2, 3, 4}})) == 3);
  CHECK(distance(e, Permutation::from_cycles(4, {{1, 2}, {3, 4}})) == 2);
  CHECK(distance(e, e) == 0);
  CHECK(distance(Permutation::identity(1), Permutation::identity(1)) == 0);
}

TEST_CASE("distance matches breadth-first search on S(4)") {
  const oracle::Metric d(4);
  const auto group = enumerate_group(4);
  for (const auto& a : group)
    for (const auto& b : group) REQUIRE(distance(a, b) == d(support::to_oracle(a), support::to_oracle(b)));
}

TEST_CASE("library BFS oracle agrees with the cycle formula") {
  std::mt19937_64 rng(11);
  const auto group = enumerate_group(5);
  for (int i = 0; i < 50; ++i) {
    const auto& a = group[rng() % group.size()];
    const auto& b = group[rng() % group.size()];
    CHECK(distance_bfs_oracle(a, b) == distance(a, b));
  }
  CHECK_THROWS_AS(distance_bfs_oracle(Permutation::identity(9), Permutation::identity(9)),
                  LimitExceeded);
}

TEST_CASE("metric is invariant under translation and conjugation") {
  std::mt19937_64 rng(5);
  const auto group = enumerate_group(5);
  auto pick = [&] { return group[rng() % group.size()]; };
  for (int i = 0; i < 300; ++i) {
    const auto a = pick(), b = pick(), g = pick();
    CHECK(distance(g * a, g * b) == distance(a, b));
    CHECK(distance(a * g, b * g) == distance(a, b));
    CHECK(distance(conjugate(g, a), conjugate(g, b)) == distance(a, b));
    CHECK(distance(a, b) == distance(b, a));
  }
}

TEST_CASE("ordered cycle factorization") {
  const auto p = Permutation::from_cycles(5, {{3, 5}, {1, 4}});
  const auto f = ordered_cycle_factorization(p);
  REQUIRE(f.cycles.size() == 3);
  CHECK(f.cycles[0] == std::vector<int>{1, 4});
  CHECK(f.cycles[1] == std::vector<int>{2});
  CHECK(f.cycles[2] == std::vector<int>{3, 5});
  CHECK(ordered_cycle_type(p) == Composition{2, 1, 2});
  CHECK(cycle_minima(p) == std::vector<int>{1, 2, 3});
  CHECK(f.to_permutation() == p);
  CHECK(ordered_cycle_type(Permutation::identity(3)) == Composition{1, 1, 1});
}

TEST_CASE("canonical permutation") {
  CHECK(canonical_permutation(Composition{3}) == Permutation::from_cycles(3, {{1, 2, 3}}));
  CHECK(canonical_permutation(Composition{2, 2}) == Permutation::from_cycles(4, {{1, 2}, {3, 4}}));
  CHECK(canonical_permutation(Composition{1, 1}).is_identity());
}

TEST_CASE("transport conjugates p_mu onto p and preserves minima") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& p : enumerate_group(n)) {
      const auto mu = ordered_cycle_type(p);
      const auto u = transport(p);
      REQUIRE(conjugate(u, canonical_permutation(mu)) == p);
      const auto minima_mu = cycle_minima(canonical_permutation(mu));
      const auto minima_p = cycle_minima(p);
      for (std::size_t k = 0; k < minima_mu.size(); ++k) CHECK(u(minima_mu[k]) == minima_p[k]);
    }
  }
}

TEST_CASE("transport is the only conjugator that maps minima to minima") {
  const auto group = enumerate_group(4);
  for (const auto& p : group) {
    const auto p_mu = canonical_permutation(ordered_cycle_type(p));
    const auto minima_mu = cycle_minima(p_mu);
    const auto minima_p = cycle_minima(p);
    int matches = 0;
    for (const auto& u : group) {
      if (conjugate(u, p_mu) != p) continue;
      bool ok = true;
      for (std::size_t k = 0; k < minima_mu.size(); ++k) ok = ok && u(minima_mu[k]) == minima_p[k];
      if (ok) {
        ++matches;
        CHECK(u == transport(p));
      }
    }
    CHECK(matches == 1);
  }
}

TEST_CASE("compositions") {
  for (int n = 1; n <= 7; ++n) CHECK(enumerate_compositions(n).size() == (1u << (n - 1)));
  const auto c3 = enumerate_compositions(3);
  CHECK(c3.front() == Composition{1, 1, 1});
  CHECK(c3.back() == Composition{3});
  CHECK(Composition::parse("2,2") == Composition{2, 2});
  CHECK(Composition::parse("4").to_string() == "4");
  CHECK(Composition{1, 2}.is_hypercube_type());
  CHECK_FALSE(Composition{3}.is_hypercube_type());
  for (const char* bad : {"", "0", "2,,1", "a", "-1", "1,"}) {
    CHECK_THROWS_AS(Composition::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("group enumeration is lexicographic and complete") {
  const auto g = enumerate_group(4);
  CHECK(g.size() == 24);
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(std::set<Permutation>(g.begin(), g.end()).size() == 24);
  CHECK_THROWS_AS(enumerate_group(10), LimitExceeded);
  int visited = 0;
  for_each_permutation(5, [&](const Permutation&) { return ++visited < 7; });
  CHECK(visited == 7);
}

TEST_CASE("level sizes are unsigned Stirling numbers") {
  std::vector<int> levels(4, 0);
  for (const auto& p : enumerate_group(4)) ++levels[static_cast<std::size_t>(distance(Permutation::identity(4), p))];
  CHECK(levels == std::vector<int>{1, 6, 11, 6});
}

TEST_CASE("cycle strings round trip") {
  for (const auto& p : enumerate_group(5)) CHECK(parse_cycle_string(to_cycle_string(p), 5) == p);
  CHECK(to_cycle_string(Permutation::identity(3)) == "e");
  CHECK(to_cycle_string(Permutation::from_cycles(4, {{2, 4}, {1, 3}})) == "(1 3)(2 4)");
  CHECK(parse_cycle_string("()", 2).is_identity());
  CHECK_THROWS_AS(parse_cycle_string("(1 5)", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycle_string("(1 2", 4), std::invalid_argument);
}
