#pragma once

// Experiment harness: set distances, Brunn-Minkowski checks, exhaustive
// verification suites, the hypercube embedding, and the explorer for
// concentration of crossover sets far from their duals.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "midpoint/coding.hpp"
#include "midpoint/report.hpp"

namespace midpoint {

// Tolerance on log-domain residuals.
inline constexpr double kLogTolerance = 1e-12;
inline constexpr std::size_t kExactSearchLimit = 40;

// Minimum pairwise distance. Throws std::invalid_argument on an empty range.
template <class RangeA, class RangeB>
int set_distance(const RangeA& A, const RangeB& B) {
  if (std::begin(A) == std::end(A) || std::begin(B) == std::end(B)) {
    throw std::invalid_argument("set_distance: empty set");
  }
  int best = std::numeric_limits<int>::max();
  for (const auto& a : A)
    for (const auto& b : B) best = std::min(best, distance(a, b));
  return best;
}

// 4 log 2 / (n - 1)^2. Requires n >= 2.
double default_curvature(int n);

ExperimentReport bm_flat_check(const PermutationSet& A, const PermutationSet& B,
                               CrossoverRegistry& registry = CrossoverRegistry::shared());

// Residual log|M| - log|A|/2 - log|B|/2 - (K/8) d(A,B)^2, natural logs.
// K defaults to default_curvature(n). Throws on K <= 0.
ExperimentReport bm_curved_check(const PermutationSet& A, const PermutationSet& B,
                                 std::optional<double> curvature = std::nullopt,
                                 CrossoverRegistry& registry = CrossoverRegistry::shared());

// Uniform sampling without replacement from S(n) via a partial
// Fisher-Yates shuffle. Throws std::invalid_argument on infeasible sizes.
std::pair<PermutationSet, PermutationSet> sample_subsets(int n, std::size_t size_a,
                                                         std::size_t size_b, bool disjoint,
                                                         std::uint64_t seed);

enum class Suite { metric, duality, lemma1, prop2, prop3, derived_keys, injections, all };

std::string to_string(Suite suite);
// Throws std::invalid_argument on an unknown name.
Suite parse_suite(const std::string& name);
// Largest degree each suite accepts.
int suite_limit(Suite suite);

// Runs the exhaustive checks of a suite. Metrics hold "<check>.cases" and
// "<check>.failures"; passed iff every failure count is zero. Throws
// LimitExceeded when n > suite_limit(suite).
ExperimentReport verify_suite(int n, Suite suite,
                              CrossoverRegistry& registry = CrossoverRegistry::shared());

// Product of the transpositions (2i-1 2i) over the set bits. Throws
// std::invalid_argument when n < 2 * bits.size().
Permutation hypercube_embed(const std::vector<bool>& bits, int n);

// Hamming distance against the symmetric-group distance over all pairs of
// bitstrings of length `bits` (degree 2 * bits).
ExperimentReport embedding_check(int bits);

struct BmTrialConfig {
  int n = 4;
  // 0 draws a size per trial.
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  bool curved = false;
  bool disjoint = false;
  int trials = 1;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::optional<double> curvature;
  // Attach keys and injection records to each report.
  bool audit = false;
};

// Per trial: the inequality check, the flat injection (injective, image in
// M x M), and for curved runs on disjoint sets the two-copy injection plus
// |M|^2 >= 2|A||B|. Reports come back in trial order for any job count.
std::vector<ExperimentReport> run_bm_trials(const BmTrialConfig& config,
                                            CrossoverRegistry& registry = CrossoverRegistry::shared());
ExperimentReport summarize_bm(const BmTrialConfig& config,
                              const std::vector<ExperimentReport>& trials);

// Fibre separation for one pair of sets: for every image point (x, y) of the
// flat injection, d(D, D^dual) >= d(A, B) where D = fibre_set(x, y, A, B).
// Returns the number of violating image points.
std::size_t fibre_separation_failures(const PermutationSet& A, const PermutationSet& B,
                                      CrossoverRegistry& registry = CrossoverRegistry::shared());

// ---------------------------------------------------------------------------
// Concentration explorer

// d(C, C^dual): min over i, j of d(c_i, c_j^dual), including i == j.
// INT_MAX for an empty set.
int dual_separation(std::span<const Permutation> subset, const Composition& mu);

// A subset C of Cr(mu) has d(C, C^dual) >= r iff it avoids the excluded
// vertices and contains no edge.
struct ConflictGraph {
  Composition mu;
  int r = 1;
  std::size_t vertex_count = 0;
  std::vector<bool> excluded;
  // i < j, lexicographic.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  bool admissible(std::span<const std::size_t> subset) const;
};

ConflictGraph conflict_graph(const Composition& mu, int r,
                             CrossoverRegistry& registry = CrossoverRegistry::shared());

enum class SearchMode { exact, greedy };
std::string to_string(SearchMode mode);
SearchMode parse_search_mode(const std::string& name);

struct SeparatedSet {
  // Indices into Cr(mu), increasing.
  std::vector<std::size_t> witness;
  std::size_t size() const { return witness.size(); }
};

// Largest (exact: branch and bound, lexicographically least among maxima)
// or greedily large C with d(C, C^dual) >= r. r <= 0 returns all of Cr(mu).
// The witness is re-validated by direct distance computation; exact mode
// throws LimitExceeded above `exact_limit` crossovers.
SeparatedSet max_separated_set(const Composition& mu, int r, SearchMode mode,
                               CrossoverRegistry& registry = CrossoverRegistry::shared(),
                               std::size_t exact_limit = kExactSearchLimit);

struct ConcentrationRow {
  Composition mu;
  int r = 1;
  std::size_t cr_size = 0;
  std::size_t s = 0;
  // -(n - l(mu)) log(s / |Cr|) / r^2 when 0 < s < |Cr|.
  std::optional<double> bound_epsilon;
  // s == |Cr| with r >= 1: no epsilon > 0 can satisfy the bound.
  bool flagged = false;
  // s == 0: the constraint is unsatisfiable, so the row bounds nothing.
  bool vacuous = false;
};

struct ConcentrationTable {
  int n = 1;
  SearchMode mode = SearchMode::exact;
  std::vector<ConcentrationRow> rows;
  // Min of bound_epsilon over informative rows; empty when none.
  std::optional<double> epsilon_hat;
  std::size_t flagged_count() const;
};

// Every mu of n with n - l(mu) >= 1 and every r in 1..n - l(mu). Rows are in
// composition order then r, independent of `jobs`.
ConcentrationTable epsilon_estimate(int n, SearchMode mode,
                                    CrossoverRegistry& registry = CrossoverRegistry::shared(),
                                    unsigned jobs = 1);

ExperimentReport to_report(const ConcentrationTable& table);
// Columns: mu, r, cr_size, s, bound_epsilon, flagged.
void write_csv(std::ostream& out, const ConcentrationTable& table);
nlohmann::ordered_json to_json(const ConcentrationTable& table);

// Runs task(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task);

}  // namespace midpoint
