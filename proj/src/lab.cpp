#include "midpoint/lab.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <thread>

#include "midpoint/random.hpp"

namespace midpoint {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

double log_residual(std::size_t m, std::size_t a, std::size_t b) {
  return std::log(static_cast<double>(m)) - 0.5 * std::log(static_cast<double>(a)) -
         0.5 * std::log(static_cast<double>(b));
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

bool intersects(const PermutationSet& A, const PermutationSet& B) {
  for (const auto& a : A)
    if (B.contains(a)) return true;
  return false;
}

ExperimentReport flat_report(const PermutationSet& A, const PermutationSet& B,
                             const PermutationSet& M) {
  ExperimentReport r;
  r.kind = ReportKind::bm_flat;
  r.inputs["n"] = A.begin()->degree();
  r.inputs["size_a"] = A.size();
  r.inputs["size_b"] = B.size();
  r.metrics["size_m"] = M.size();
  r.metrics["residual"] = log_residual(M.size(), A.size(), B.size());
  const std::uint64_t m = M.size();
  r.passed = m * m >= static_cast<std::uint64_t>(A.size()) * B.size();
  return r;
}

ExperimentReport curved_report(const PermutationSet& A, const PermutationSet& B,
                               const PermutationSet& M, double curvature) {
  if (!(curvature > 0.0)) throw std::invalid_argument("bm_curved_check: K must be positive");
  ExperimentReport r;
  r.kind = ReportKind::bm_curved;
  r.inputs["n"] = A.begin()->degree();
  r.inputs["size_a"] = A.size();
  r.inputs["size_b"] = B.size();
  r.inputs["curvature"] = curvature;
  const int d = set_distance(A, B);
  const double residual = log_residual(M.size(), A.size(), B.size()) -
                          curvature / 8.0 * static_cast<double>(d) * static_cast<double>(d);
  r.metrics["size_m"] = M.size();
  r.metrics["set_distance"] = d;
  r.metrics["residual"] = residual;
  r.passed = residual >= -kLogTolerance;
  return r;
}

}  // namespace

double default_curvature(int n) {
  if (n < 2) throw std::invalid_argument("default_curvature: needs n >= 2");
  const double span = static_cast<double>(n - 1);
  return 4.0 * std::numbers::ln2 / (span * span);
}

ExperimentReport bm_flat_check(const PermutationSet& A, const PermutationSet& B,
                               CrossoverRegistry& registry) {
  const auto start = Clock::now();
  const auto M = midpoint_set(A, B, registry);
  auto r = flat_report(A, B, M);
  r.runtime_ms = elapsed_ms(start);
  return r;
}

ExperimentReport bm_curved_check(const PermutationSet& A, const PermutationSet& B,
                                 std::optional<double> curvature, CrossoverRegistry& registry) {
  const auto start = Clock::now();
  if (A.empty() || B.empty()) throw std::invalid_argument("bm_curved_check: empty input set");
  const double K = curvature ? *curvature : default_curvature(A.begin()->degree());
  if (!(K > 0.0)) throw std::invalid_argument("bm_curved_check: K must be positive");
  const auto M = midpoint_set(A, B, registry);
  auto r = curved_report(A, B, M, K);
  r.runtime_ms = elapsed_ms(start);
  return r;
}

std::pair<PermutationSet, PermutationSet> sample_subsets(int n, std::size_t size_a,
                                                         std::size_t size_b, bool disjoint,
                                                         std::uint64_t seed) {
  if (n < 1 || n > kDefaultEnumerationLimit) {
    throw std::invalid_argument("sample_subsets: n out of range");
  }
  const std::size_t total = factorial(n);
  if (size_a < 1 || size_b < 1 || size_a > total || size_b > total ||
      (disjoint && size_a + size_b > total)) {
    throw std::invalid_argument("sample_subsets: infeasible sizes " + std::to_string(size_a) +
                                ", " + std::to_string(size_b) + " in S(" + std::to_string(n) +
                                ")" + (disjoint ? " (disjoint)" : ""));
  }
  auto group = enumerate_group(n);
  std::mt19937_64 rng(seed);
  // Moves a uniform sample into positions [from, from + count).
  auto shuffle_prefix = [&](std::size_t from, std::size_t count) {
    for (std::size_t i = from; i < from + count; ++i) {
      const auto j = i + uniform_index(rng, total - i);
      std::swap(group[i], group[j]);
    }
  };
  shuffle_prefix(0, size_a);
  PermutationSet A(group.begin(), group.begin() + static_cast<std::ptrdiff_t>(size_a));
  PermutationSet B;
  if (disjoint) {
    shuffle_prefix(size_a, size_b);
    B.insert(group.begin() + static_cast<std::ptrdiff_t>(size_a),
             group.begin() + static_cast<std::ptrdiff_t>(size_a + size_b));
  } else {
    shuffle_prefix(0, size_b);
    B.insert(group.begin(), group.begin() + static_cast<std::ptrdiff_t>(size_b));
  }
  return {std::move(A), std::move(B)};
}

// ---------------------------------------------------------------------------
// Verification suites

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::metric: return "metric";
    case Suite::duality: return "duality";
    case Suite::lemma1: return "lemma1";
    case Suite::prop2: return "prop2";
    case Suite::prop3: return "prop3";
    case Suite::derived_keys: return "derived_keys";
    case Suite::injections: return "injections";
    case Suite::all: return "all";
  }
  return "unknown";
}

Suite parse_suite(const std::string& name) {
  for (auto s : {Suite::metric, Suite::duality, Suite::lemma1, Suite::prop2, Suite::prop3,
                 Suite::derived_keys, Suite::injections, Suite::all}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

int suite_limit(Suite suite) {
  switch (suite) {
    case Suite::metric: return 5;
    case Suite::duality: return 7;
    case Suite::lemma1: return 7;
    case Suite::prop2: return 6;
    case Suite::prop3: return 6;
    case Suite::derived_keys: return 7;
    case Suite::injections: return 6;
    case Suite::all: return 5;
  }
  return 0;
}

namespace {

constexpr std::uint64_t kSuiteSeed = 0x5eed'0001;
constexpr int kRandomTranslatedPairs = 1000;
constexpr int kInjectionTrials = 100;

class Tally {
 public:
  explicit Tally(ExperimentReport& report) : report_(report) {}

  void check(const std::string& name, bool ok) {
    auto& [cases, failures] = counts_[name];
    ++cases;
    if (!ok) ++failures;
    if (order_.empty() || std::find(order_.begin(), order_.end(), name) == order_.end()) {
      order_.push_back(name);
    }
  }

  void flush() {
    bool ok = true;
    for (const auto& name : order_) {
      const auto& [cases, failures] = counts_.at(name);
      report_.metrics[name + ".cases"] = cases;
      report_.metrics[name + ".failures"] = failures;
      ok = ok && failures == 0;
    }
    report_.passed = ok;
  }

 private:
  ExperimentReport& report_;
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> counts_;
  std::vector<std::string> order_;
};

void run_metric(int n, Tally& t) {
  const auto group = enumerate_group(n);
  const auto e = Permutation::identity(n);

  for (const auto& a : group) {
    const auto table = bfs_distance_table(a);
    for (const auto& b : group) t.check("metric.bfs_oracle", table.at(b) == distance(a, b));
  }

  for (const auto& a : group) {
    for (const auto& b : group) {
      const int d = distance(a, b);
      bool ok = distance(inverse(a) * b, e) == d && distance(e, inverse(a) * b) == d &&
                distance(a * inverse(b), e) == d;
      for (const auto& p : group) {
        ok = ok && distance(conjugate(p, a), conjugate(p, b)) == d &&
             distance(a * p, b * p) == d && distance(p * a, p * b) == d;
      }
      t.check("metric.invariance", ok);
    }
  }

  int diameter = 0;
  for (const auto& p : group) diameter = std::max(diameter, distance(e, p));
  t.check("metric.diameter", diameter == n - 1);

  for (const auto& p : group) {
    const auto f = ordered_cycle_factorization(p);
    bool ok = f.to_permutation() == p;
    for (std::size_t k = 0; k < f.cycles.size(); ++k) {
      const auto& c = f.cycles[k];
      ok = ok && *std::min_element(c.begin(), c.end()) == c.front();
      if (k) ok = ok && f.cycles[k - 1].front() < c.front();
    }
    t.check("metric.factorization", ok);

    const auto mu = ordered_cycle_type(p);
    const auto p_mu = canonical_permutation(mu);
    const auto u = transport(p);
    const auto minima_mu = cycle_minima(p_mu);
    const auto minima_p = cycle_minima(p);
    auto carries_minima = [&](const Permutation& v) {
      for (std::size_t k = 0; k < minima_mu.size(); ++k)
        if (v(minima_mu[k]) != minima_p[k]) return false;
      return true;
    };
    t.check("metric.transport", conjugate(u, p_mu) == p && carries_minima(u));

    int matches = 0;
    for (const auto& v : group) {
      if (conjugate(v, p_mu) == p && carries_minima(v)) ++matches;
    }
    t.check("metric.transport_unique", matches == 1);
  }
}

void run_duality(int n, Tally& t, CrossoverRegistry& registry) {
  for (const auto& mu : enumerate_compositions(n)) {
    const auto& cr = registry.get(mu);
    t.check("duality.generator_vs_oracle", cr == crossovers_bfs(mu));
    const auto p_mu_inv = inverse(cr.canonical());
    const auto ranks = crossover_ranks(mu);
    std::vector<bool> hit(cr.size(), false);
    for (std::size_t i = 0; i < cr.size(); ++i) {
      const auto& c = cr[i];
      const auto cd = inverse(c) * cr.canonical();
      t.check("duality.closure", cr.contains(cd));
      hit[cr.dual_index(i)] = true;
      t.check("duality.double_dual", inverse(cd) * cr.canonical() == conjugate(p_mu_inv, c));
      const int rank = distance(Permutation::identity(n), c);
      t.check("duality.rank_split", std::find(ranks.begin(), ranks.end(), rank) != ranks.end());
    }
    t.check("duality.bijective", std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
  }
}

void run_lemma1(int n, Tally& t, CrossoverRegistry& registry) {
  for (const auto& mu : enumerate_compositions(n)) {
    const auto& cr = registry.get(mu);
    const auto minima = cycle_minima(cr.canonical());
    for (std::size_t i = 0; i < cr.size(); ++i) {
      const auto q = inverse(cr[i]) * cr[cr.dual_index(i)];
      t.check("lemma1.type_and_minima", ordered_cycle_type(q) == mu && cycle_minima(q) == minima);
    }
  }
}

// Visits (c, a, b) over all mu, all c in Cr(mu), all b of type mu with a = e,
// then over seeded random translated pairs.
template <class Visit>
void sweep_encodings(int n, CrossoverRegistry& registry, Visit&& visit) {
  const auto group = enumerate_group(n);
  const auto e = Permutation::identity(n);
  std::map<Composition, std::vector<Permutation>> by_type;
  for (const auto& p : group) by_type[ordered_cycle_type(p)].push_back(p);
  for (const auto& [mu, members] : by_type) {
    const auto& cr = registry.get(mu);
    for (const auto& c : cr.elements())
      for (const auto& b : members) visit(mu, c, e, b, false);
  }
  std::mt19937_64 rng(kSuiteSeed);
  for (int k = 0; k < kRandomTranslatedPairs; ++k) {
    const auto& a = group[uniform_index(rng, group.size())];
    const auto& q = group[uniform_index(rng, group.size())];
    const auto mu = ordered_cycle_type(q);
    const auto& cr = registry.get(mu);
    visit(mu, cr[uniform_index(rng, cr.size())], a, a * q, true);
  }
}

void run_prop2(int n, Tally& t, CrossoverRegistry& registry) {
  sweep_encodings(n, registry, [&](const Composition& mu, const Permutation& c,
                                   const Permutation& a, const Permutation& b, bool translated) {
    const std::string tag = translated ? ".translated" : "";
    const auto [x, y] = encode_pair(c, a, b);
    const auto ab = inverse(a) * b;
    const auto xy = inverse(x) * y;
    t.check("prop2.part1" + tag,
            ordered_cycle_type(xy) == mu && cycle_minima(xy) == cycle_minima(ab));
    t.check("prop2.part2" + tag, is_midpoint(a, x, y) && is_midpoint(b, x, y));
    const auto cq = inverse(c) * (inverse(c) * canonical_permutation(mu));
    t.check("prop2.part3" + tag, transport(xy) == transport(ab) * transport(cq));
  });
}

void run_prop3(int n, Tally& t, CrossoverRegistry& registry) {
  std::map<Composition, std::map<Permutation, Permutation>> keys;
  for (const auto& mu : enumerate_compositions(n)) {
    const auto& cr = registry.get(mu);
    for (const auto& c : cr.elements()) {
      const auto d = decode_key(c, mu);
      keys[mu].emplace(c, d);
      t.check("prop3.key_in_crossovers", cr.contains(d));
      t.check("prop3.involution", cr.contains(d) && decode_key(d, mu) == c);
    }
  }
  sweep_encodings(n, registry, [&](const Composition& mu, const Permutation& c,
                                   const Permutation& a, const Permutation& b, bool translated) {
    const auto& d = keys.at(mu).at(c);
    const auto back = encode_pair(d, encode_pair(c, a, b));
    t.check(translated ? "prop3.round_trip.translated" : "prop3.round_trip",
            back.x == a && back.y == b);
  });
}

void run_derived_keys(int n, Tally& t, CrossoverRegistry& registry) {
  for (const auto& mu : enumerate_compositions(n)) {
    const auto& cr = registry.get(mu);
    for (const auto& c : cr.elements()) {
      const auto tilde = derived_key(c, mu);
      t.check("derived_keys.identity",
              cr.contains(tilde) && decode_key(tilde, mu) == dual(decode_key(c, mu), mu));
    }
  }
}

void run_injections(int n, Tally& t, CrossoverRegistry& registry) {
  const std::size_t total = factorial(n);
  std::mt19937_64 rng(kSuiteSeed);
  const std::size_t cap = std::min<std::size_t>(8, total);
  for (int trial = 0; trial < kInjectionTrials; ++trial) {
    const auto sa = 1 + uniform_index(rng, cap);
    const auto sb = 1 + uniform_index(rng, cap);
    const auto [A, B] = sample_subsets(n, sa, sb, false, rng());
    const auto M = midpoint_set(A, B, registry);
    const auto flat = flat_injection(A, B, KeyPolicy::first, std::nullopt, registry);
    bool in_m = true;
    for (const auto& [in, out] : flat.map) in_m = in_m && M.contains(out.x) && M.contains(out.y);
    t.check("injections.flat_injective", flat.is_injective() && flat.map.size() == sa * sb);
    t.check("injections.flat_in_midpoints", in_m);
    t.check("injections.flat_cardinality", M.size() * M.size() >= sa * sb);
    t.check("injections.fibre_separation", fibre_separation_failures(A, B, registry) == 0);

    if (total < 2) continue;
    const auto half = std::max<std::size_t>(1, std::min(cap, total / 2));
    const auto da = 1 + uniform_index(rng, half);
    const auto db = 1 + uniform_index(rng, half);
    const auto [C, D] = sample_subsets(n, da, db, true, rng());
    const auto MC = midpoint_set(C, D, registry);
    const auto curved = curved_injection(C, D, KeyPolicy::first, std::nullopt, registry);
    std::set<MidpointPair> copy0, copy1;
    bool curved_in_m = true;
    for (const auto& [in, out] : curved.map) {
      (std::get<2>(in) == 0 ? copy0 : copy1).insert(out);
      curved_in_m = curved_in_m && MC.contains(out.x) && MC.contains(out.y);
    }
    bool collision = false;
    for (const auto& p : copy0) collision = collision || copy1.contains(p);
    t.check("injections.curved_injective",
            curved.is_injective() && curved.map.size() == 2 * da * db);
    t.check("injections.curved_in_midpoints", curved_in_m);
    t.check("injections.no_cross_copy_collision", !collision);
    t.check("injections.curved_cardinality", MC.size() * MC.size() >= 2 * da * db);
    t.check("injections.fibre_separation_disjoint", fibre_separation_failures(C, D, registry) == 0);
  }
}

}  // namespace

ExperimentReport verify_suite(int n, Suite suite, CrossoverRegistry& registry) {
  if (n < 1) throw std::invalid_argument("verify_suite: n must be positive");
  if (n > suite_limit(suite)) {
    throw LimitExceeded("verify_suite: suite '" + to_string(suite) + "' accepts n <= " +
                        std::to_string(suite_limit(suite)));
  }
  const auto start = Clock::now();
  ExperimentReport report;
  report.kind = ReportKind::verify_suite;
  report.inputs["n"] = n;
  report.inputs["suite"] = to_string(suite);
  report.inputs["seed"] = kSuiteSeed;
  Tally tally(report);
  auto wants = [&](Suite s) { return suite == Suite::all || suite == s; };
  if (wants(Suite::metric)) run_metric(n, tally);
  if (wants(Suite::duality)) run_duality(n, tally, registry);
  if (wants(Suite::lemma1)) run_lemma1(n, tally, registry);
  if (wants(Suite::prop2)) run_prop2(n, tally, registry);
  if (wants(Suite::prop3)) run_prop3(n, tally, registry);
  if (wants(Suite::derived_keys)) run_derived_keys(n, tally, registry);
  if (wants(Suite::injections)) run_injections(n, tally, registry);
  tally.flush();
  report.runtime_ms = elapsed_ms(start);
  return report;
}

// ---------------------------------------------------------------------------
// Hypercube embedding

Permutation hypercube_embed(const std::vector<bool>& bits, int n) {
  const int width = static_cast<int>(bits.size());
  if (n < 2 * width || n < 1) {
    throw std::invalid_argument("hypercube_embed: degree " + std::to_string(n) +
                                " below 2 * " + std::to_string(width));
  }
  std::vector<std::vector<int>> cycles;
  for (int i = 1; i <= width; ++i) {
    if (bits[static_cast<std::size_t>(i - 1)]) cycles.push_back({2 * i - 1, 2 * i});
  }
  return Permutation::from_cycles(n, cycles);
}

ExperimentReport embedding_check(int bits) {
  if (bits < 1 || bits > 8) throw LimitExceeded("embedding_check: bits must be in 1..8");
  const auto start = Clock::now();
  ExperimentReport report;
  report.kind = ReportKind::embedding;
  report.inputs["bits"] = bits;
  report.inputs["n"] = 2 * bits;
  const std::uint32_t count = 1u << bits;
  auto unpack = [bits](std::uint32_t word) {
    std::vector<bool> out(static_cast<std::size_t>(bits));
    for (int i = 0; i < bits; ++i) out[static_cast<std::size_t>(i)] = (word >> i) & 1u;
    return out;
  };
  std::vector<Permutation> images;
  for (std::uint32_t w = 0; w < count; ++w) images.push_back(hypercube_embed(unpack(w), 2 * bits));
  std::uint64_t pairs = 0, failures = 0;
  for (std::uint32_t x = 0; x < count; ++x) {
    for (std::uint32_t y = 0; y < count; ++y) {
      ++pairs;
      const int hamming = std::popcount(x ^ y);
      if (distance(images[x], images[y]) != hamming) ++failures;
    }
  }
  std::set<Permutation> distinct(images.begin(), images.end());
  report.metrics["pairs"] = pairs;
  report.metrics["failures"] = failures;
  report.metrics["injective"] = distinct.size() == images.size();
  report.passed = failures == 0 && distinct.size() == images.size();
  report.runtime_ms = elapsed_ms(start);
  return report;
}

// ---------------------------------------------------------------------------
// Brunn-Minkowski trials

std::size_t fibre_separation_failures(const PermutationSet& A, const PermutationSet& B,
                                      CrossoverRegistry& registry) {
  const int separation = set_distance(A, B);
  const auto flat = flat_injection(A, B, KeyPolicy::first, std::nullopt, registry);
  std::size_t failures = 0;
  for (const auto& [input, image] : flat.map) {
    const auto fibre = fibre_set(image.x, image.y, A, B, registry);
    const auto mu = ordered_cycle_type(inverse(image.x) * image.y);
    if (!fibre.empty() && dual_separation(fibre, mu) < separation) ++failures;
  }
  return failures;
}

std::vector<ExperimentReport> run_bm_trials(const BmTrialConfig& config,
                                            CrossoverRegistry& registry) {
  if (config.n < 1 || config.n > kDefaultEnumerationLimit) {
    throw LimitExceeded("bm: n must be in 1.." + std::to_string(kDefaultEnumerationLimit));
  }
  if (config.trials < 0) throw std::invalid_argument("bm: trials must be nonnegative");
  const std::size_t total = factorial(config.n);
  const std::size_t cap =
      std::max<std::size_t>(1, std::min<std::size_t>(12, config.disjoint ? total / 2 : total));
  if ((config.size_a == 0 || config.size_b == 0) && config.disjoint && total < 2) {
    throw std::invalid_argument("bm: S(1) has no disjoint pair of nonempty sets");
  }
  // Validates fixed sizes before any work.
  if (config.size_a != 0 && config.size_b != 0) {
    sample_subsets(config.n, config.size_a, config.size_b, config.disjoint, config.seed);
  }
  std::optional<double> curvature = config.curvature;
  if (config.curved && !curvature) curvature = default_curvature(config.n);

  std::vector<ExperimentReport> reports(static_cast<std::size_t>(config.trials));
  parallel_for(reports.size(), config.jobs, [&](std::size_t trial) {
    const auto start = Clock::now();
    const std::uint64_t trial_seed = mix_seed(config.seed, trial);
    std::mt19937_64 size_rng(mix_seed(trial_seed, 1));
    const std::size_t sa = config.size_a ? config.size_a : 1 + uniform_index(size_rng, cap);
    const std::size_t sb = config.size_b ? config.size_b : 1 + uniform_index(size_rng, cap);
    const auto [A, B] = sample_subsets(config.n, sa, sb, config.disjoint, trial_seed);
    const auto M = midpoint_set(A, B, registry);

    auto report = config.curved ? curved_report(A, B, M, *curvature) : flat_report(A, B, M);
    report.inputs["trial"] = trial;
    report.inputs["seed"] = trial_seed;
    report.inputs["disjoint"] = config.disjoint;

    const auto flat = flat_injection(A, B, KeyPolicy::first, std::nullopt, registry);
    bool flat_in_m = true;
    for (const auto& [in, out] : flat.map) flat_in_m = flat_in_m && M.contains(out.x) && M.contains(out.y);
    const bool flat_ok = flat.is_injective() && flat.map.size() == sa * sb && flat_in_m;
    report.metrics["flat_injective"] = flat_ok;
    bool ok = report.passed && flat_ok;

    if (config.audit) {
      report.details["keys"] = to_json(flat.keys);
      report.details["flat_injection"] = to_json(flat);
    }
    if (config.curved && !intersects(A, B)) {
      const auto curved = curved_injection(A, B, KeyPolicy::first, std::nullopt, registry);
      bool in_m = true;
      for (const auto& [in, out] : curved.map) in_m = in_m && M.contains(out.x) && M.contains(out.y);
      const std::uint64_t m = M.size();
      const bool curved_ok = curved.is_injective() && curved.map.size() == 2 * sa * sb && in_m;
      const bool doubled = m * m >= 2 * static_cast<std::uint64_t>(sa) * sb;
      report.metrics["curved_injective"] = curved_ok;
      report.metrics["doubled_cardinality"] = doubled;
      ok = ok && curved_ok && doubled;
      if (config.audit) report.details["curved_injection"] = to_json(curved);
    }
    report.passed = ok;
    report.runtime_ms = elapsed_ms(start);
    reports[trial] = std::move(report);
  });
  return reports;
}

ExperimentReport summarize_bm(const BmTrialConfig& config,
                              const std::vector<ExperimentReport>& trials) {
  ExperimentReport summary;
  summary.kind = config.curved ? ReportKind::bm_curved : ReportKind::bm_flat;
  summary.inputs["n"] = config.n;
  summary.inputs["size_a"] = config.size_a;
  summary.inputs["size_b"] = config.size_b;
  summary.inputs["curved"] = config.curved;
  summary.inputs["disjoint"] = config.disjoint;
  summary.inputs["trials"] = config.trials;
  summary.inputs["seed"] = config.seed;
  if (config.curved) {
    summary.inputs["curvature"] = config.curvature ? *config.curvature : default_curvature(config.n);
  }
  std::size_t passed = 0;
  double min_residual = std::numeric_limits<double>::infinity();
  std::int64_t runtime = 0;
  for (const auto& t : trials) {
    if (t.passed) ++passed;
    min_residual = std::min(min_residual, t.metric_real("residual"));
    runtime += t.runtime_ms;
  }
  summary.metrics["trials"] = trials.size();
  summary.metrics["passed_trials"] = passed;
  summary.metrics["failed_trials"] = trials.size() - passed;
  summary.metrics["min_residual"] =
      trials.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(min_residual);
  summary.passed = passed == trials.size();
  summary.runtime_ms = runtime;
  return summary;
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  const auto threads = std::min<std::size_t>(jobs, count);
  for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace midpoint
