// Worked small cases, one assertion group per operation.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "midpoint/lab.hpp"

using namespace midpoint;

namespace {

Permutation cyc(int n, std::vector<std::vector<int>> cycles) { return Permutation::from_cycles(n, cycles); }
Permutation e(int n) { return Permutation::identity(n); }

}  // namespace

TEST_CASE("compose and inverse") {
  const auto p = cyc(4, {{1, 4, 2}});
  CHECK(compose(e(4), p) == p);
  CHECK(compose(cyc(3, {{1, 3}}), cyc(3, {{1, 2}})) == cyc(3, {{1, 2, 3}}));
  CHECK(compose(p, inverse(p)) == e(4));
  CHECK(inverse(e(3)) == e(3));
  CHECK(inverse(cyc(3, {{1, 2, 3}})) == cyc(3, {{1, 3, 2}}));
  CHECK(inverse(cyc(2, {{1, 2}})) == cyc(2, {{1, 2}}));
}

TEST_CASE("factorizations, types and minima") {
  using Cycles = std::vector<std::vector<int>>;
  CHECK(ordered_cycle_factorization(e(3)).cycles == Cycles{{1}, {2}, {3}});
  CHECK(ordered_cycle_factorization(cyc(4, {{1, 3}, {2, 4}})).cycles == Cycles{{1, 3}, {2, 4}});
  CHECK(ordered_cycle_factorization(cyc(4, {{1, 2, 3, 4}})).cycles == Cycles{{1, 2, 3, 4}});

  CHECK(ordered_cycle_type(e(4)) == Composition{1, 1, 1, 1});
  CHECK(ordered_cycle_type(cyc(4, {{1, 3}, {2, 4}})) == Composition{2, 2});
  CHECK(ordered_cycle_type(cyc(4, {{2, 3, 4}})) == Composition{1, 3});

  CHECK(cycle_minima(e(3)) == std::vector<int>{1, 2, 3});
  CHECK(cycle_minima(cyc(4, {{1, 3}, {2, 4}})) == std::vector<int>{1, 2});
  CHECK(cycle_minima(cyc(4, {{1, 2, 3, 4}})) == std::vector<int>{1});
}

TEST_CASE("canonical permutation, transport, conjugate") {
  CHECK(canonical_permutation(Composition{2, 2}) == cyc(4, {{1, 2}, {3, 4}}));
  CHECK(canonical_permutation(Composition{1, 1, 1}) == e(3));
  CHECK(canonical_permutation(Composition{4}) == cyc(4, {{1, 2, 3, 4}}));

  CHECK(transport(cyc(4, {{1, 2}, {3, 4}})) == e(4));
  CHECK(transport(cyc(4, {{1, 3}, {2, 4}})) == cyc(4, {{2, 3}}));
  CHECK(transport(cyc(4, {{2, 3, 4}})) == e(4));

  const auto p = cyc(4, {{1, 2}, {3, 4}});
  CHECK(conjugate(e(4), p) == p);
  CHECK(conjugate(cyc(4, {{2, 3}}), p) == cyc(4, {{1, 3}, {2, 4}}));
  CHECK(conjugate(cyc(4, {{1, 4, 2}}), e(4)) == e(4));
}

TEST_CASE("distance and the search oracle") {
  const auto p = cyc(4, {{1, 3, 2}});
  CHECK(distance(p, p) == 0);
  CHECK(distance(e(3), cyc(3, {{1, 2, 3}})) == 2);
  CHECK(distance(e(4), cyc(4, {{1, 2}, {3, 4}})) == 2);
  CHECK(distance_bfs_oracle(e(4), e(4)) == 0);
  CHECK(distance_bfs_oracle(e(4), cyc(4, {{1, 2, 3, 4}})) == 3);
}

TEST_CASE("enumeration sizes") {
  CHECK(enumerate_group(1).size() == 1);
  CHECK(enumerate_group(5).size() == 120);
  const auto c2 = enumerate_compositions(2);
  REQUIRE(c2.size() == 2);
  CHECK(c2[0] == Composition{1, 1});
  CHECK(c2[1] == Composition{2});
  const auto c4 = enumerate_compositions(4);
  CHECK(c4.size() == 8);
  for (const auto& mu : {Composition{1, 1, 1, 1}, Composition{2, 1, 1}, Composition{1, 2, 1}}) {
    CHECK(std::find(c4.begin(), c4.end(), mu) != c4.end());
  }
  CHECK(enumerate_compositions(5).size() == 16);
}

TEST_CASE("midpoints") {
  CHECK(is_midpoint(cyc(3, {{1, 2}}), cyc(3, {{1, 2}}), cyc(3, {{1, 2}})));
  CHECK(is_midpoint(cyc(3, {{1, 2}}), e(3), cyc(3, {{1, 2, 3}})));
  CHECK_FALSE(is_midpoint(e(4), e(4), cyc(4, {{1, 2, 3, 4}})));

  CHECK(midpoint_set({e(3)}, {e(3)}) == PermutationSet{e(3)});
  CHECK(midpoint_set({e(3)}, {cyc(3, {{1, 2, 3}})}) ==
        PermutationSet{cyc(3, {{1, 2}}), cyc(3, {{2, 3}}), cyc(3, {{1, 3}})});
  CHECK(midpoint_set({e(3)}, {cyc(3, {{1, 2}})}) == PermutationSet{e(3), cyc(3, {{1, 2}})});
}

TEST_CASE("noncrossing products of an interval") {
  const auto one = noncrossing_products(1, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].permutation.is_identity());
  CHECK(one[0].blocks == std::vector<std::vector<int>>{{1}});
  CHECK(noncrossing_products(1, 3).size() == 5);
  CHECK(noncrossing_products(1, 4).size() == 14);
}

TEST_CASE("crossover sets") {
  auto as_set = [](const CrossoverSet& s) { return PermutationSet(s.elements().begin(), s.elements().end()); };
  CHECK(as_set(crossovers(Composition{2})) == PermutationSet{e(2), cyc(2, {{1, 2}})});
  CHECK(as_set(crossovers(Composition{3})) ==
        PermutationSet{cyc(3, {{1, 2}}), cyc(3, {{2, 3}}), cyc(3, {{1, 3}})});
  CHECK(crossovers(Composition{4}).size() == 12);
  CHECK(crossovers_bfs(Composition{4}).size() == 12);
  CHECK(as_set(crossovers(Composition{2, 2})) == PermutationSet{cyc(4, {{1, 2}}), cyc(4, {{3, 4}})});
  CHECK(as_set(crossovers_bfs(Composition{1, 1})) == PermutationSet{e(2)});
}

TEST_CASE("duals") {
  const Composition mu3{3};
  CHECK(dual(e(2), Composition{2}) == cyc(2, {{1, 2}}));
  CHECK(dual(cyc(3, {{1, 2}}), mu3) == cyc(3, {{2, 3}}));
  CHECK(dual(cyc(3, {{2, 3}}), mu3) == cyc(3, {{1, 3}}));
  CHECK(dual_set({}, mu3).empty());
  const auto& cr = CrossoverRegistry::shared().get(mu3);
  const auto all = dual_set(cr.elements(), mu3);
  CHECK(PermutationSet(all.begin(), all.end()) == PermutationSet(cr.elements().begin(), cr.elements().end()));
  const std::vector<Permutation> single{cyc(4, {{1, 2}})};
  CHECK(dual_set(single, Composition{2, 2}) == std::vector<Permutation>{cyc(4, {{3, 4}})});
}

TEST_CASE("encoding") {
  // e and p_mu are crossovers only for adjacent endpoints.
  const auto a = cyc(4, {{1, 3}});
  const auto b = a * Permutation::transposition(4, 2, 4);
  const auto mu = ordered_cycle_type(inverse(a) * b);
  REQUIRE(mu.rank() == 1);
  CHECK(encode_point(e(4), a, b) == a);
  CHECK(encode_point(canonical_permutation(mu), a, b) == b);
  CHECK_THROWS_AS(encode_point(e(4), a, cyc(4, {{1, 2, 3, 4}})), std::invalid_argument);
  const auto p3 = cyc(3, {{1, 2, 3}});
  CHECK(encode_point(cyc(3, {{1, 2}}), e(3), p3) == cyc(3, {{1, 2}}));

  CHECK(encode_pair(e(4), a, b) == MidpointPair{a, b});
  CHECK(encode_pair(cyc(3, {{1, 2}}), e(3), p3) == MidpointPair{cyc(3, {{1, 2}}), cyc(3, {{2, 3}})});
  const auto pair = encode_pair(cyc(3, {{1, 2}}), cyc(3, {{1, 2}}), cyc(3, {{1, 3}}));
  CHECK(ordered_cycle_type(inverse(pair.x) * pair.y) == Composition{3});
  CHECK(is_midpoint(cyc(3, {{1, 2}}), pair.x, pair.y));
  CHECK(is_midpoint(cyc(3, {{1, 3}}), pair.x, pair.y));
}

TEST_CASE("decoding keys") {
  CHECK(decode_key(e(2), Composition{2}) == e(2));
  CHECK(decode_key(e(3), Composition{1, 1, 1}) == e(3));
  CHECK(decode_key(cyc(3, {{1, 2}}), Composition{3}) == cyc(3, {{1, 2}}));
  const auto c = cyc(3, {{1, 3}});
  const auto key = decode_key(c, Composition{3});
  for (const auto& a : enumerate_group(3)) {
    for (const auto& b : enumerate_group(3)) {
      if (ordered_cycle_type(inverse(a) * b) != Composition{3}) continue;
      CHECK(encode_pair(key, encode_pair(c, a, b)) == MidpointPair{a, b});
    }
  }
}

TEST_CASE("first-policy key is position 0 of the crossover order") {
  const auto keys = select_keys({Composition{3}}, KeyPolicy::first);
  CHECK(keys.key_for(Composition{3}) == CrossoverRegistry::shared().get(Composition{3})[0]);
  CHECK(keys.key_for(Composition{3}) == cyc(3, {{2, 3}}));
}

TEST_CASE("injections on singletons") {
  const auto flat = flat_injection({e(3)}, {e(3)});
  REQUIRE(flat.map.size() == 1);
  CHECK(flat.map.begin()->second == MidpointPair{e(3), e(3)});

  const auto p3 = cyc(3, {{1, 2, 3}});
  const auto one = flat_injection({e(3)}, {p3});
  REQUIRE(one.map.size() == 1);
  const auto& cr = CrossoverRegistry::shared().get(Composition{3});
  CHECK(cr.contains(one.map.begin()->second.x));
  CHECK(cr.contains(one.map.begin()->second.y));
}

TEST_CASE("fibres of canonical pairs") {
  const Composition mu{2, 1};
  const auto p = canonical_permutation(mu);
  CHECK(fibre_set(e(3), p, {e(3)}, {p}) == std::vector<Permutation>{e(3)});
  // Here e is not a crossover, so nothing re-encodes to (e, p_mu).
  const auto q = canonical_permutation(Composition{2, 2});
  CHECK(fibre_set(e(4), q, {e(4)}, {q}).empty());
  CHECK(fibre_set(e(3), e(3), {e(3)}, {e(3)}) == std::vector<Permutation>{e(3)});
  CHECK(fibre_set(e(3), e(3), {e(3)}, {p}).empty());
  // The dual key swaps the endpoints.
  CHECK(fibre_set(e(3), p, {p}, {e(3)}) == std::vector<Permutation>{p});
}

TEST_CASE("set distance and inequality checks") {
  const PermutationSet A{e(4), cyc(4, {{1, 2}})};
  CHECK(set_distance(A, A) == 0);
  CHECK(set_distance(PermutationSet{e(4)}, PermutationSet{cyc(4, {{1, 2, 3, 4}})}) == 3);
  CHECK(set_distance(PermutationSet{e(3), cyc(3, {{1, 2}})}, PermutationSet{cyc(3, {{1, 2, 3}})}) == 1);

  const auto same = bm_flat_check({e(3)}, {e(3)});
  CHECK(same.passed);
  CHECK(same.metric_real("residual") == 0.0);
  const auto three = bm_flat_check({e(3)}, {cyc(3, {{1, 2, 3}})});
  CHECK(three.passed);
  CHECK(three.metric_int("size_m") == 3);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto [X, Y] = sample_subsets(5, 1 + seed % 7, 1 + seed % 5, false, seed);
    CHECK(bm_flat_check(X, Y).passed);
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto [X, Y] = sample_subsets(6, 1 + seed % 6, 1 + seed % 4, true, seed);
    CHECK(bm_curved_check(X, Y, 4 * std::numbers::ln2 / 25).passed);
  }
}

TEST_CASE("verification suites") {
  CHECK(verify_suite(3, Suite::all).passed);
  CHECK(verify_suite(5, Suite::prop3).passed);
  const auto trivial = verify_suite(1, Suite::all);
  CHECK(trivial.passed);
}

TEST_CASE("hypercube embedding") {
  CHECK(hypercube_embed({false, false, false}, 6).is_identity());
  CHECK(hypercube_embed({true, false}, 4) == cyc(4, {{1, 2}}));
}

TEST_CASE("conflict graph and separated sets for (2,2)") {
  const Composition mu{2, 2};
  const auto g = conflict_graph(mu, 2);
  CHECK(g.vertex_count == 2);
  CHECK(std::none_of(g.excluded.begin(), g.excluded.end(), [](bool x) { return x; }));
  CHECK(g.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});

  for (int n = 2; n <= 5; ++n) {
    for (const auto& m : enumerate_compositions(n)) {
      const auto& cr = CrossoverRegistry::shared().get(m);
      const auto r1 = conflict_graph(m, 1);
      for (std::size_t i = 0; i < cr.size(); ++i) CHECK(r1.excluded[i] == (cr[i] == dual(cr[i], m)));
      if (m.rank() >= 1) {
        const auto beyond = conflict_graph(m, m.rank() + 1);
        CHECK(std::all_of(beyond.excluded.begin(), beyond.excluded.end(), [](bool x) { return x; }));
      }
    }
  }

  const auto best = max_separated_set(mu, 2, SearchMode::exact);
  CHECK(best.size() == 1);
  const auto& cr = CrossoverRegistry::shared().get(mu);
  const auto chosen = cr[best.witness[0]];
  CHECK((chosen == cyc(4, {{1, 2}}) || chosen == cyc(4, {{3, 4}})));
  CHECK(max_separated_set(mu, 0, SearchMode::exact).size() == cr.size());
}
