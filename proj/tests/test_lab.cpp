#include <doctest.h>

#include <atomic>
#include <bit>
#include <numbers>
#include <sstream>

#include "midpoint/error.hpp"
#include "midpoint/lab.hpp"
#include "support.hpp"

using namespace midpoint;

TEST_CASE("default curvature") {
  CHECK(default_curvature(3) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  CHECK(default_curvature(5) == doctest::Approx(std::numbers::ln2 / 4).epsilon(1e-15));
  CHECK_THROWS_AS(default_curvature(1), std::invalid_argument);
}

TEST_CASE("set distance") {
  const auto e = Permutation::identity(4);
  const auto t = Permutation::transposition(4, 1, 2);
  const auto c = Permutation::from_cycles(4, {{1, 2, 3, 4}});
  CHECK(set_distance(PermutationSet{e}, PermutationSet{c}) == 3);
  CHECK(set_distance(PermutationSet{e, t}, PermutationSet{c}) == 2);
  CHECK_THROWS_AS(set_distance(PermutationSet{}, PermutationSet{c}), std::invalid_argument);
}

TEST_CASE("sampling") {
  const auto [A, B] = sample_subsets(4, 5, 7, true, 42);
  CHECK(A.size() == 5);
  CHECK(B.size() == 7);
  for (const auto& a : A) CHECK_FALSE(B.contains(a));
  const auto again = sample_subsets(4, 5, 7, true, 42);
  CHECK(again.first == A);
  CHECK(again.second == B);
  CHECK_THROWS_AS(sample_subsets(3, 4, 3, true, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_subsets(3, 0, 1, false, 1), std::invalid_argument);
  CHECK_NOTHROW(sample_subsets(3, 6, 6, false, 1));
}

TEST_CASE("flat and curved checks on a single pair") {
  const auto e = Permutation::identity(3);
  const auto p = Permutation::from_cycles(3, {{1, 2, 3}});
  const auto flat = bm_flat_check({e}, {p});
  CHECK(flat.passed);
  CHECK(flat.metric_int("size_m") == 3);
  const auto curved = bm_curved_check({e}, {p});
  CHECK(curved.passed);
  CHECK(curved.inputs["curvature"].get<double>() == doctest::Approx(std::numbers::ln2));
  // log 3 - (log 2 / 8) * 4
  CHECK(curved.metric_real("residual") == doctest::Approx(std::log(3.0) - std::numbers::ln2 / 2));
  CHECK_THROWS_AS(bm_curved_check({e}, {p}, -1.0), std::invalid_argument);
}

TEST_CASE("verification suites pass for small n") {
  for (int n = 1; n <= 4; ++n) {
    const auto report = verify_suite(n, Suite::all);
    CHECK_MESSAGE(report.passed, report.to_json().dump());
  }
  CHECK(parse_suite("prop3") == Suite::prop3);
  CHECK_THROWS_AS(parse_suite("prop9"), std::invalid_argument);
  CHECK_THROWS_AS(verify_suite(6, Suite::all), LimitExceeded);
  CHECK_THROWS_AS(verify_suite(99, Suite::metric), LimitExceeded);
}

TEST_CASE("hypercube embedding") {
  CHECK(hypercube_embed({true, false, true}, 6) ==
        Permutation::from_cycles(6, {{1, 2}, {5, 6}}));
  CHECK_THROWS_AS(hypercube_embed({true, true}, 3), std::invalid_argument);
  // Independent check: Hamming distance against the reference metric.
  const oracle::Metric d(6);
  for (unsigned x = 0; x < 8; ++x) {
    for (unsigned y = 0; y < 8; ++y) {
      const auto px = hypercube_embed({bool(x & 1), bool(x & 2), bool(x & 4)}, 6);
      const auto py = hypercube_embed({bool(y & 1), bool(y & 2), bool(y & 4)}, 6);
      CHECK(d(support::to_oracle(px), support::to_oracle(py)) == std::popcount(x ^ y));
    }
  }
  for (int bits = 1; bits <= 3; ++bits) {
    const auto report = embedding_check(bits);
    CHECK(report.passed);
    CHECK(report.metric_int("pairs") == (1 << (2 * bits)));
  }
}

TEST_CASE("trials are reproducible and independent of the job count") {
  BmTrialConfig cfg;
  cfg.n = 5;
  cfg.trials = 40;
  cfg.seed = 7;
  cfg.curved = true;
  cfg.disjoint = true;
  const auto serial = run_bm_trials(cfg);
  cfg.jobs = 4;
  const auto parallel = run_bm_trials(cfg);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].to_json().dump() == parallel[i].to_json().dump());
    CHECK(serial[i].passed);
  }
  const auto summary = summarize_bm(cfg, serial);
  CHECK(summary.passed);
  CHECK(summary.metric_int("failed_trials") == 0);
}

TEST_CASE("audit mode attaches keys and injections") {
  BmTrialConfig cfg;
  cfg.n = 3;
  cfg.size_a = 1;
  cfg.size_b = 1;
  cfg.curved = true;
  cfg.disjoint = true;
  cfg.audit = true;
  cfg.seed = 1;
  const auto trials = run_bm_trials(cfg);
  REQUIRE(trials.size() == 1);
  CHECK(trials[0].details.contains("keys"));
  CHECK(trials[0].details["flat_injection"].size() == 1);
  CHECK(trials[0].details["curved_injection"].size() == 2);
}

TEST_CASE("infeasible trial sizes are rejected up front") {
  BmTrialConfig cfg;
  cfg.n = 3;
  cfg.size_a = 5;
  cfg.size_b = 5;
  cfg.disjoint = true;
  CHECK_THROWS_AS(run_bm_trials(cfg), std::invalid_argument);
  cfg.n = 12;
  CHECK_THROWS_AS(run_bm_trials(cfg), LimitExceeded);
}

TEST_CASE("fibre separation holds on random disjoint sets") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [A, B] = sample_subsets(4, 3, 3, true, seed);
    CHECK(fibre_separation_failures(A, B) == 0);
  }
}

TEST_CASE("parallel_for visits every index once and propagates errors") {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), 6, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 5) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("csv output has unique headers and quotes fields") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("2,2") == "\"2,2\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  BmTrialConfig cfg;
  cfg.n = 4;
  cfg.trials = 3;
  cfg.curved = true;
  const auto trials = run_bm_trials(cfg);
  std::ostringstream out;
  write_csv(out, trials);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  std::vector<std::string> columns;
  std::stringstream hs(header);
  for (std::string col; std::getline(hs, col, ',');) columns.push_back(col);
  std::set<std::string> unique(columns.begin(), columns.end());
  CHECK(unique.size() == columns.size());
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 3);
}
