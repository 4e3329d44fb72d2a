#include <bit>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "midpoint/lab.hpp"

namespace midpoint {

int dual_separation(std::span<const Permutation> subset, const Composition& mu) {
  const auto p_mu = canonical_permutation(mu);
  int best = std::numeric_limits<int>::max();
  for (const auto& cj : subset) {
    const auto cj_dual = inverse(cj) * p_mu;
    for (const auto& ci : subset) best = std::min(best, distance(ci, cj_dual));
  }
  return best;
}

bool ConflictGraph::admissible(std::span<const std::size_t> subset) const {
  for (auto v : subset) {
    if (v >= vertex_count || excluded[v]) return false;
  }
  for (const auto& [i, j] : edges) {
    const bool has_i = std::find(subset.begin(), subset.end(), i) != subset.end();
    const bool has_j = std::find(subset.begin(), subset.end(), j) != subset.end();
    if (has_i && has_j) return false;
  }
  return true;
}

ConflictGraph conflict_graph(const Composition& mu, int r, CrossoverRegistry& registry) {
  if (r < 1) throw std::invalid_argument("conflict_graph: r must be at least 1");
  const auto& cr = registry.get(mu);
  const std::size_t k = cr.size();
  // dist[i][j] = d(c_i, c_j^dual)
  std::vector<std::vector<int>> dist(k, std::vector<int>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) dist[i][j] = distance(cr[i], cr[cr.dual_index(j)]);

  ConflictGraph g{mu, r, k, std::vector<bool>(k), {}};
  for (std::size_t i = 0; i < k; ++i) {
    g.excluded[i] = dist[i][i] < r;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (dist[i][j] < r || dist[j][i] < r) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

std::string to_string(SearchMode mode) { return mode == SearchMode::exact ? "exact" : "greedy"; }

SearchMode parse_search_mode(const std::string& name) {
  if (name == "exact") return SearchMode::exact;
  if (name == "greedy") return SearchMode::greedy;
  throw std::invalid_argument("unknown mode '" + name + "' (expected exact or greedy)");
}

namespace {

using Mask = std::uint64_t;

Mask bit(std::size_t v) { return Mask{1} << v; }

// Maximum independent set by branch and bound. Vertices are branched in
// increasing order with inclusion first, so the first maximum reached is the
// lexicographically least one; ties never replace it.
class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(std::vector<Mask> neighbours) : nbr_(std::move(neighbours)) {}

  Mask solve(Mask candidates) {
    best_size_ = -1;
    best_ = 0;
    expand(candidates, 0, 0);
    return best_;
  }

 private:
  // Greedy clique cover of `mask`; an upper bound on its independence number.
  int clique_cover(Mask mask) const {
    int cliques = 0;
    while (mask) {
      const auto v = static_cast<std::size_t>(std::countr_zero(mask));
      mask &= ~bit(v);
      Mask common = nbr_[v] & mask;
      while (common) {
        const auto w = static_cast<std::size_t>(std::countr_zero(common));
        mask &= ~bit(w);
        common &= nbr_[w];
      }
      ++cliques;
    }
    return cliques;
  }

  void expand(Mask candidates, Mask chosen, int size) {
    if (!candidates) {
      if (size > best_size_) {
        best_size_ = size;
        best_ = chosen;
      }
      return;
    }
    if (size + std::popcount(candidates) <= best_size_) return;
    if (size + clique_cover(candidates) <= best_size_) return;
    const auto v = static_cast<std::size_t>(std::countr_zero(candidates));
    expand(candidates & ~nbr_[v] & ~bit(v), chosen | bit(v), size + 1);
    expand(candidates & ~bit(v), chosen, size);
  }

  std::vector<Mask> nbr_;
  int best_size_ = -1;
  Mask best_ = 0;
};

}  // namespace

SeparatedSet max_separated_set(const Composition& mu, int r, SearchMode mode,
                               CrossoverRegistry& registry, std::size_t exact_limit) {
  const auto& cr = registry.get(mu);
  SeparatedSet result;
  if (r <= 0) {
    for (std::size_t i = 0; i < cr.size(); ++i) result.witness.push_back(i);
    return result;
  }
  if (mode == SearchMode::exact && cr.size() > std::min<std::size_t>(exact_limit, 64)) {
    throw LimitExceeded("max_separated_set: |Cr(" + mu.to_string() + ")| = " +
                        std::to_string(cr.size()) + " above exact limit " +
                        std::to_string(exact_limit));
  }
  const auto graph = conflict_graph(mu, r, registry);
  const std::size_t k = graph.vertex_count;
  std::vector<std::vector<std::size_t>> adjacency(k);
  for (const auto& [i, j] : graph.edges) {
    adjacency[i].push_back(j);
    adjacency[j].push_back(i);
  }

  if (mode == SearchMode::exact) {
    std::vector<Mask> nbr(k, 0);
    Mask candidates = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (auto j : adjacency[i]) nbr[i] |= bit(j);
      if (!graph.excluded[i]) candidates |= bit(i);
    }
    IndependentSetSearch search(std::move(nbr));
    const Mask best = search.solve(candidates);
    for (std::size_t i = 0; i < k; ++i)
      if (best & bit(i)) result.witness.push_back(i);
  } else {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < k; ++i)
      if (!graph.excluded[i]) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return adjacency[a].size() < adjacency[b].size();
    });
    std::vector<bool> blocked(k, false);
    for (auto v : order) {
      if (blocked[v]) continue;
      result.witness.push_back(v);
      for (auto w : adjacency[v]) blocked[w] = true;
    }
    std::sort(result.witness.begin(), result.witness.end());
  }

  // Independent of the graph reformulation.
  std::vector<Permutation> chosen;
  for (auto i : result.witness) chosen.push_back(cr[i]);
  if (!chosen.empty() && dual_separation(chosen, mu) < r) {
    throw std::logic_error("max_separated_set: witness fails direct revalidation");
  }
  return result;
}

std::size_t ConcentrationTable::flagged_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ConcentrationRow& r) { return r.flagged; }));
}

ConcentrationTable epsilon_estimate(int n, SearchMode mode, CrossoverRegistry& registry,
                                    unsigned jobs) {
  if (n < 1) throw std::invalid_argument("epsilon_estimate: n must be positive");
  ConcentrationTable table;
  table.n = n;
  table.mode = mode;
  for (const auto& mu : enumerate_compositions(n)) {
    if (mode == SearchMode::exact && mu.rank() >= 1 && registry.get(mu).size() > kExactSearchLimit) {
      throw LimitExceeded("epsilon_estimate: |Cr(" + mu.to_string() + ")| = " +
                          std::to_string(registry.get(mu).size()) +
                          " exceeds the exact-search limit; use greedy mode");
    }
    for (int r = 1; r <= mu.rank(); ++r) {
      table.rows.push_back(ConcentrationRow{mu, r, 0, 0, std::nullopt, false, false});
    }
  }

  parallel_for(table.rows.size(), jobs, [&](std::size_t i) {
    auto& row = table.rows[i];
    row.cr_size = registry.get(row.mu).size();
    row.s = max_separated_set(row.mu, row.r, mode, registry).size();
    if (row.s == 0) {
      row.vacuous = true;
    } else if (row.s == row.cr_size) {
      row.flagged = true;
    } else {
      const double fraction = static_cast<double>(row.s) / static_cast<double>(row.cr_size);
      row.bound_epsilon = -static_cast<double>(row.mu.rank()) * std::log(fraction) /
                          (static_cast<double>(row.r) * row.r);
    }
  });

  for (const auto& row : table.rows) {
    if (row.bound_epsilon && (!table.epsilon_hat || *row.bound_epsilon < *table.epsilon_hat)) {
      table.epsilon_hat = row.bound_epsilon;
    }
  }
  return table;
}

namespace {

nlohmann::ordered_json row_json(const ConcentrationRow& row) {
  nlohmann::ordered_json j;
  j["mu"] = row.mu.parts();
  j["r"] = row.r;
  j["cr_size"] = row.cr_size;
  j["s"] = row.s;
  j["bound_epsilon"] =
      row.bound_epsilon ? nlohmann::ordered_json(*row.bound_epsilon) : nlohmann::ordered_json(nullptr);
  j["flagged"] = row.flagged;
  j["vacuous"] = row.vacuous;
  return j;
}

}  // namespace

nlohmann::ordered_json to_json(const ConcentrationTable& table) {
  nlohmann::ordered_json j;
  j["schema"] = "midpoint.concentration/1";
  j["n"] = table.n;
  j["mode"] = to_string(table.mode);
  j["epsilon_hat"] =
      table.epsilon_hat ? nlohmann::ordered_json(*table.epsilon_hat) : nlohmann::ordered_json(nullptr);
  j["flagged_count"] = table.flagged_count();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) rows.push_back(row_json(row));
  j["rows"] = std::move(rows);
  return j;
}

ExperimentReport to_report(const ConcentrationTable& table) {
  ExperimentReport report;
  report.kind = ReportKind::concentration;
  report.inputs["n"] = table.n;
  report.inputs["mode"] = to_string(table.mode);
  std::size_t vacuous = 0, informative = 0;
  for (const auto& row : table.rows) {
    if (row.vacuous) ++vacuous;
    if (row.bound_epsilon) ++informative;
  }
  report.metrics["rows"] = table.rows.size();
  report.metrics["informative_rows"] = informative;
  report.metrics["vacuous_rows"] = vacuous;
  report.metrics["flagged_rows"] = table.flagged_count();
  report.metrics["epsilon_hat"] =
      table.epsilon_hat ? nlohmann::ordered_json(*table.epsilon_hat) : nlohmann::ordered_json(nullptr);
  report.details = to_json(table).at("rows");
  report.passed = table.flagged_count() == 0;
  return report;
}

void write_csv(std::ostream& out, const ConcentrationTable& table) {
  out << "mu,r,cr_size,s,bound_epsilon,flagged,vacuous\n";
  for (const auto& row : table.rows) {
    out << csv_field(row.mu.to_string()) << ',' << row.r << ',' << row.cr_size << ',' << row.s
        << ',';
    // Same shortest round-trip rendering as the JSON output.
    if (row.bound_epsilon) out << nlohmann::ordered_json(*row.bound_epsilon).dump();
    out << ',' << (row.flagged ? "true" : "false") << ',' << (row.vacuous ? "true" : "false")
        << '\n';
  }
}

}  // namespace midpoint
