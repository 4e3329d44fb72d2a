#pragma once

// Midpoints in S(n), noncrossing-partition products, and the crossover sets
// Cr(mu) of midpoints between the identity and the canonical permutation
// p_mu, together with the duality c -> c^{-1} p_mu.

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "midpoint/permutation.hpp"

namespace midpoint {

using PermutationSet = std::set<Permutation>;

inline constexpr int kDefaultNoncrossingLimit = 12;

bool is_midpoint(const Permutation& m, const Permutation& a, const Permutation& b);

// The admissible values of d(e, c) for c in Cr(mu): floor(D/2) and ceil(D/2)
// with D = n - length(mu); a single value when D is even.
std::vector<int> crossover_ranks(const Composition& mu);

struct NoncrossingProduct {
  // Blocks of the partition, each sorted, listed by increasing minimum.
  std::vector<std::vector<int>> blocks;
  // Product of the forward cycles b_1 -> b_2 -> ... -> b_k -> b_1 over the
  // blocks.
  Permutation permutation;
};

// One entry per noncrossing partition of [lo, hi], i.e. Catalan(hi - lo + 1)
// entries. Permutations have the given degree (>= hi). Order: lexicographic
// on the restricted-growth sequence of the partition.
std::vector<NoncrossingProduct> noncrossing_products(int lo, int hi, int degree,
                                                     int length_limit = kDefaultNoncrossingLimit);
inline std::vector<NoncrossingProduct> noncrossing_products(int lo, int hi) {
  return noncrossing_products(lo, hi, hi);
}

// Immutable, lexicographically ordered Cr(mu) with a reverse index and the
// dual map stored as positions.
class CrossoverSet {
 public:
  // Sorts and validates: no duplicates, every element a midpoint of e and
  // p_mu, closed under duals. Throws std::invalid_argument otherwise.
  CrossoverSet(Composition mu, std::vector<Permutation> elements);

  const Composition& mu() const { return mu_; }
  const Permutation& canonical() const { return canonical_; }
  std::span<const Permutation> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const Permutation& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> index_of(const Permutation& c) const;
  bool contains(const Permutation& c) const { return index_of(c).has_value(); }
  // Position of the dual of elements()[i].
  std::size_t dual_index(std::size_t i) const { return dual_index_[i]; }
  std::span<const std::size_t> dual_indices() const { return dual_index_; }

  friend bool operator==(const CrossoverSet& a, const CrossoverSet& b) {
    return a.mu_ == b.mu_ && a.elements_ == b.elements_;
  }

 private:
  Composition mu_;
  Permutation canonical_;
  std::vector<Permutation> elements_;
  std::vector<std::size_t> dual_index_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
};

// Generator: per cycle interval of p_mu a noncrossing product, all
// cross-interval combinations, filtered by the rank balance.
CrossoverSet crossovers(const Composition& mu);

// Oracle: breadth-first distances from e and from p_mu over all of S(n),
// keeping the balanced points on a geodesic. Throws LimitExceeded above
// `degree_limit`.
CrossoverSet crossovers_bfs(const Composition& mu, int degree_limit = kDefaultBfsLimit);

// c^{-1} p_mu. Throws std::invalid_argument when c is not a mu-crossover.
Permutation dual(const Permutation& c, const Composition& mu);
std::vector<Permutation> dual_set(std::span<const Permutation> subset, const Composition& mu);

// Memoizes crossover sets per composition, optionally backed by an on-disk
// JSON cache. Safe for concurrent use.
class CrossoverRegistry {
 public:
  CrossoverRegistry() = default;
  explicit CrossoverRegistry(std::filesystem::path cache_dir) : cache_dir_(std::move(cache_dir)) {}

  const CrossoverSet& get(const Composition& mu);

  const std::optional<std::filesystem::path>& cache_dir() const { return cache_dir_; }

  // Process-wide memo without a disk cache.
  static CrossoverRegistry& shared();

 private:
  std::optional<std::filesystem::path> cache_dir_;
  std::mutex mutex_;
  std::map<Composition, std::unique_ptr<CrossoverSet>> memo_;
};

// Midpoint set of A and B through the crossover parameterization
// m = a u c u^{-1}, u = transport(a^{-1} b), c in Cr(type(a^{-1} b)).
PermutationSet midpoint_set(const PermutationSet& A, const PermutationSet& B,
                            CrossoverRegistry& registry = CrossoverRegistry::shared());
// Oracle: scan of S(n) with is_midpoint.
PermutationSet midpoint_set_scan(const PermutationSet& A, const PermutationSet& B);

}  // namespace midpoint
