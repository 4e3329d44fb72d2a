#include "midpoint/geodesic.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <stdexcept>

#include "midpoint/crossover_cache.hpp"

namespace midpoint {

namespace {

void require_crossover(const Permutation& c, const Composition& mu, const char* what) {
  if (c.degree() != mu.n() ||
      !is_midpoint(c, Permutation::identity(mu.n()), canonical_permutation(mu))) {
    throw std::invalid_argument(std::string(what) + ": " + to_cycle_string(c) +
                                " is not a crossover of type (" + mu.to_string() + ")");
  }
}

}  // namespace

bool is_midpoint(const Permutation& m, const Permutation& a, const Permutation& b) {
  const int am = distance(a, m);
  const int mb = distance(m, b);
  return am + mb == distance(a, b) && std::abs(am - mb) <= 1;
}

std::vector<int> crossover_ranks(const Composition& mu) {
  const int total = mu.rank();
  if (total % 2 == 0) return {total / 2};
  return {total / 2, total / 2 + 1};
}

std::vector<NoncrossingProduct> noncrossing_products(int lo, int hi, int degree,
                                                     int length_limit) {
  if (lo < 1 || lo > hi || hi > degree) {
    throw std::invalid_argument("noncrossing_products: need 1 <= lo <= hi <= degree");
  }
  const int m = hi - lo + 1;
  if (m > length_limit) {
    throw LimitExceeded("noncrossing_products: interval length " + std::to_string(m) +
                        " above limit " + std::to_string(length_limit));
  }

  std::vector<NoncrossingProduct> out;
  std::vector<int> block_of(static_cast<std::size_t>(m));
  std::vector<int> last(static_cast<std::size_t>(m));
  std::vector<char> closed(static_cast<std::size_t>(m));

  auto emit = [&](int block_count) {
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(block_count));
    for (int i = 0; i < m; ++i) blocks[static_cast<std::size_t>(block_of[i])].push_back(lo + i);
    NoncrossingProduct entry{std::move(blocks), Permutation::from_cycles(degree, {})};
    entry.permutation = Permutation::from_cycles(degree, entry.blocks);
    out.push_back(std::move(entry));
  };

  // Restricted-growth sequences, pruned so no crossing is ever formed:
  // putting point i into an open block b closes every block with a point
  // strictly between b's last point and i.
  std::function<void(int, int)> extend = [&](int i, int block_count) {
    if (i == m) {
      emit(block_count);
      return;
    }
    for (int b = 0; b < block_count; ++b) {
      if (closed[static_cast<std::size_t>(b)]) continue;
      std::vector<int> newly_closed;
      for (int c = 0; c < block_count; ++c) {
        if (c != b && !closed[static_cast<std::size_t>(c)] && last[c] > last[b]) {
          closed[static_cast<std::size_t>(c)] = 1;
          newly_closed.push_back(c);
        }
      }
      const int saved_last = last[b];
      block_of[i] = b;
      last[b] = i;
      extend(i + 1, block_count);
      last[b] = saved_last;
      for (int c : newly_closed) closed[static_cast<std::size_t>(c)] = 0;
    }
    block_of[i] = block_count;
    last[block_count] = i;
    closed[static_cast<std::size_t>(block_count)] = 0;
    extend(i + 1, block_count + 1);
  };
  extend(0, 0);
  return out;
}

CrossoverSet::CrossoverSet(Composition mu, std::vector<Permutation> elements)
    : mu_(std::move(mu)), canonical_(canonical_permutation(mu_)), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw std::invalid_argument("CrossoverSet: duplicate element");
  }
  const auto e = Permutation::identity(mu_.n());
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].degree() != mu_.n() || !is_midpoint(elements_[i], e, canonical_)) {
      throw std::invalid_argument("CrossoverSet: element " + to_cycle_string(elements_[i]) +
                                  " is not a midpoint of e and p_mu");
    }
    index_.emplace(elements_[i], i);
  }
  dual_index_.reserve(elements_.size());
  for (const auto& c : elements_) {
    const auto it = index_.find(inverse(c) * canonical_);
    if (it == index_.end()) throw std::invalid_argument("CrossoverSet: not closed under duals");
    dual_index_.push_back(it->second);
  }
}

std::optional<std::size_t> CrossoverSet::index_of(const Permutation& c) const {
  const auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CrossoverSet crossovers(const Composition& mu) {
  const int n = mu.n();
  const auto ranks = crossover_ranks(mu);
  const int max_rank = ranks.back();

  struct Piece {
    Permutation permutation;
    int rank;
  };
  std::vector<std::vector<Piece>> per_interval;
  int lo = 1;
  for (int part : mu.parts()) {
    std::vector<Piece> pieces;
    for (auto& entry : noncrossing_products(lo, lo + part - 1, n)) {
      const int rank = part - static_cast<int>(entry.blocks.size());
      pieces.push_back({std::move(entry.permutation), rank});
    }
    per_interval.push_back(std::move(pieces));
    lo += part;
  }

  std::vector<Permutation> found;
  // Pieces act on disjoint intervals, so their product is order-free and
  // ranks add.
  std::function<void(std::size_t, const Permutation&, int)> combine =
      [&](std::size_t k, const Permutation& acc, int rank) {
        if (rank > max_rank) return;
        if (k == per_interval.size()) {
          if (std::find(ranks.begin(), ranks.end(), rank) != ranks.end()) found.push_back(acc);
          return;
        }
        for (const auto& piece : per_interval[k]) combine(k + 1, acc * piece.permutation, rank + piece.rank);
      };
  combine(0, Permutation::identity(n), 0);
  return CrossoverSet(mu, std::move(found));
}

CrossoverSet crossovers_bfs(const Composition& mu, int degree_limit) {
  const int n = mu.n();
  if (n > degree_limit) {
    throw LimitExceeded("crossovers_bfs: degree " + std::to_string(n) + " above limit " +
                        std::to_string(degree_limit));
  }
  const auto target = canonical_permutation(mu);
  const auto from_e = bfs_distance_table(Permutation::identity(n), degree_limit);
  const auto from_target = bfs_distance_table(target, degree_limit);
  const int total = from_e.at(target);
  std::vector<Permutation> found;
  for (const auto& [p, de] : from_e) {
    const int dt = from_target.at(p);
    if (de + dt == total && std::abs(de - dt) <= 1) found.push_back(p);
  }
  return CrossoverSet(mu, std::move(found));
}

Permutation dual(const Permutation& c, const Composition& mu) {
  require_crossover(c, mu, "dual");
  return inverse(c) * canonical_permutation(mu);
}

std::vector<Permutation> dual_set(std::span<const Permutation> subset, const Composition& mu) {
  std::vector<Permutation> out;
  out.reserve(subset.size());
  for (const auto& c : subset) out.push_back(dual(c, mu));
  return out;
}

const CrossoverSet& CrossoverRegistry::get(const Composition& mu) {
  std::lock_guard lock(mutex_);
  if (auto it = memo_.find(mu); it != memo_.end()) return *it->second;
  std::optional<CrossoverSet> set;
  if (cache_dir_) set = load_cached(*cache_dir_, mu);
  if (!set) {
    set.emplace(crossovers(mu));
    if (cache_dir_) store_cached(*cache_dir_, *set);
  }
  auto [it, inserted] = memo_.emplace(mu, std::make_unique<CrossoverSet>(std::move(*set)));
  return *it->second;
}

CrossoverRegistry& CrossoverRegistry::shared() {
  static CrossoverRegistry registry;
  return registry;
}

namespace {

void require_nonempty_same_degree(const PermutationSet& A, const PermutationSet& B,
                                  const char* what) {
  if (A.empty() || B.empty()) throw std::invalid_argument(std::string(what) + ": empty input set");
  const int n = A.begin()->degree();
  auto same = [n](const Permutation& p) { return p.degree() == n; };
  if (!std::all_of(A.begin(), A.end(), same) || !std::all_of(B.begin(), B.end(), same)) {
    throw std::invalid_argument(std::string(what) + ": degree mismatch");
  }
}

}  // namespace

PermutationSet midpoint_set(const PermutationSet& A, const PermutationSet& B,
                            CrossoverRegistry& registry) {
  require_nonempty_same_degree(A, B, "midpoint_set");
  PermutationSet out;
  for (const auto& a : A) {
    for (const auto& b : B) {
      const auto q = inverse(a) * b;
      const auto u = transport(q);
      const auto u_inv = inverse(u);
      const auto& cr = registry.get(ordered_cycle_type(q));
      const auto au = a * u;
      for (const auto& c : cr.elements()) out.insert(au * c * u_inv);
    }
  }
  return out;
}

PermutationSet midpoint_set_scan(const PermutationSet& A, const PermutationSet& B) {
  require_nonempty_same_degree(A, B, "midpoint_set_scan");
  PermutationSet out;
  for_each_permutation(A.begin()->degree(), [&](const Permutation& m) {
    for (const auto& a : A) {
      for (const auto& b : B) {
        if (is_midpoint(m, a, b)) {
          out.insert(m);
          return true;
        }
      }
    }
    return true;
  });
  return out;
}

}  // namespace midpoint
