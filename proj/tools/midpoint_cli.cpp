// midpoint: command-line front end for the S(n) midpoint toolkit.
//
// Exit codes: 0 all checks passed, 1 checks ran and failed, 2 usage or limit
// error, 3 a concentration row was flagged as a counterexample candidate.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "midpoint/crossover_cache.hpp"
#include "midpoint/error.hpp"
#include "midpoint/lab.hpp"

namespace {

using namespace midpoint;
using Json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFlagged = 3;
constexpr int kDotDegreeLimit = 6;

enum class Format { json, csv, text, dot };

struct CliConfig {
  std::string command;
  std::optional<std::string> format_name;
  Format format = Format::text;
  std::string cache_dir;
  bool no_cache = false;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "text") return Format::text;
  return Format::dot;
}

void require_format(const CliConfig& cfg, std::initializer_list<Format> allowed) {
  for (auto f : allowed)
    if (cfg.format == f) return;
  throw UsageError("format '" + *cfg.format_name + "' is not supported by '" + cfg.command + "'");
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

int cmd_crossovers(const CliConfig& cfg, const std::string& mu_text, CrossoverRegistry& registry) {
  require_format(cfg, {Format::text, Format::json, Format::csv});
  const auto mu = Composition::parse(mu_text);
  const auto& cr = registry.get(mu);
  if (cfg.format == Format::json) {
    auto j = to_json(cr);
    j["size"] = cr.size();
    auto cycles = Json::array();
    for (const auto& c : cr.elements()) cycles.push_back(to_cycle_string(c));
    j["cycles"] = std::move(cycles);
    print_json(j);
  } else if (cfg.format == Format::csv) {
    std::cout << "index,cycles,rank,dual_index\n";
    for (std::size_t i = 0; i < cr.size(); ++i) {
      std::cout << i << ',' << csv_field(to_cycle_string(cr[i])) << ','
                << (mu.n() - cr[i].cycle_count()) << ',' << cr.dual_index(i) << '\n';
    }
  } else {
    std::cout << "Cr(" << mu.to_string() << "): " << cr.size() << " element"
              << (cr.size() == 1 ? "" : "s") << ", p_mu = " << to_cycle_string(cr.canonical())
              << '\n';
    for (std::size_t i = 0; i < cr.size(); ++i) {
      std::cout << std::setw(4) << i << "  " << std::left << std::setw(24)
                << to_cycle_string(cr[i]) << std::right << " rank " << (mu.n() - cr[i].cycle_count())
                << "  dual " << cr.dual_index(i) << '\n';
    }
  }
  return kExitPass;
}

void print_report_text(const ExperimentReport& report) {
  std::cout << to_string(report.kind) << ' ' << report.inputs.dump() << '\n';
  for (const auto& [k, v] : report.metrics.items()) std::cout << "  " << k << " = " << v.dump() << '\n';
  std::cout << (report.passed ? "PASS" : "FAIL") << "  (" << report.runtime_ms << " ms)\n";
}

int emit_single(const CliConfig& cfg, const ExperimentReport& report) {
  require_format(cfg, {Format::text, Format::json, Format::csv});
  if (cfg.format == Format::json) {
    print_json(report.to_json());
  } else if (cfg.format == Format::csv) {
    write_csv(std::cout, std::span<const ExperimentReport>(&report, 1));
  } else {
    print_report_text(report);
  }
  return report.passed ? kExitPass : kExitFail;
}

int cmd_verify(const CliConfig& cfg, int n, const std::string& suite, CrossoverRegistry& registry) {
  require_format(cfg, {Format::text, Format::json, Format::csv});
  return emit_single(cfg, verify_suite(n, parse_suite(suite), registry));
}

int cmd_embed_check(const CliConfig& cfg, int bits) {
  require_format(cfg, {Format::text, Format::json, Format::csv});
  return emit_single(cfg, embedding_check(bits));
}

int cmd_bm(const CliConfig& cfg, BmTrialConfig config, CrossoverRegistry& registry) {
  require_format(cfg, {Format::text, Format::json, Format::csv});
  config.seed = cfg.seed.value_or(0);
  config.jobs = cfg.jobs;
  const auto trials = run_bm_trials(config, registry);
  const auto summary = summarize_bm(config, trials);
  if (cfg.format == Format::json) {
    Json j;
    j["schema"] = kReportSchema;
    j["summary"] = summary.to_json();
    auto rows = Json::array();
    for (const auto& t : trials) rows.push_back(t.to_json());
    j["trials"] = std::move(rows);
    print_json(j);
  } else if (cfg.format == Format::csv) {
    write_csv(std::cout, trials);
  } else {
    for (const auto& t : trials) {
      if (!t.passed) print_report_text(t);
    }
    print_report_text(summary);
  }
  return summary.passed ? kExitPass : kExitFail;
}

int cmd_concentration(const CliConfig& cfg, int n, const std::string& mode_name,
                      CrossoverRegistry& registry) {
  require_format(cfg, {Format::text, Format::json, Format::csv});
  const auto table = epsilon_estimate(n, parse_search_mode(mode_name), registry, cfg.jobs);
  if (cfg.format == Format::json) {
    print_json(to_json(table));
  } else if (cfg.format == Format::csv) {
    write_csv(std::cout, table);
  } else {
    std::cout << "n = " << n << ", mode = " << to_string(table.mode) << '\n';
    std::cout << std::left << std::setw(14) << "mu" << std::right << std::setw(4) << "r"
              << std::setw(8) << "|Cr|" << std::setw(6) << "s" << std::setw(14) << "epsilon<="
              << "  note\n";
    for (const auto& row : table.rows) {
      std::ostringstream eps;
      if (row.bound_epsilon) eps << std::setprecision(6) << *row.bound_epsilon;
      std::cout << std::left << std::setw(14) << ("(" + row.mu.to_string() + ")") << std::right
                << std::setw(4) << row.r << std::setw(8) << row.cr_size << std::setw(6) << row.s
                << std::setw(14) << eps.str() << "  "
                << (row.flagged ? "FLAGGED" : row.vacuous ? "vacuous" : "") << '\n';
    }
    std::cout << "epsilon_hat = ";
    if (table.epsilon_hat) {
      std::cout << std::setprecision(10) << *table.epsilon_hat;
    } else {
      std::cout << "none";
    }
    std::cout << ", flagged rows = " << table.flagged_count() << '\n';
  }
  return table.flagged_count() == 0 ? kExitPass : kExitFlagged;
}

std::string factorization_label(const Permutation& p) {
  std::string out;
  for (const auto& cycle : ordered_cycle_factorization(p).cycles) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(cycle[i]);
    }
    out += ')';
  }
  return out;
}

int cmd_cayley_dot(const CliConfig& cfg, int n) {
  if (cfg.format_name) require_format(cfg, {Format::dot});
  if (n < 1 || n > kDotDegreeLimit) {
    throw LimitExceeded("cayley-dot: n must be in 1.." + std::to_string(kDotDegreeLimit));
  }
  const auto group = enumerate_group(n);
  std::unordered_map<Permutation, std::size_t, PermutationHash> id;
  std::map<int, std::vector<std::size_t>> levels;
  for (std::size_t i = 0; i < group.size(); ++i) {
    id.emplace(group[i], i);
    levels[n - group[i].cycle_count()].push_back(i);
  }
  std::cout << "graph cayley_S" << n << " {\n";
  std::cout << "  node [shape=plaintext, fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < group.size(); ++i) {
    std::cout << "  v" << i << " [label=\"" << factorization_label(group[i]) << "\"];\n";
  }
  for (const auto& [level, members] : levels) {
    std::cout << "  subgraph level_" << level << " { rank=same;";
    for (auto i : members) std::cout << " v" << i << ';';
    std::cout << " }\n";
  }
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) {
        const std::size_t j = id.at(group[i] * Permutation::transposition(n, a, b));
        if (i < j) std::cout << "  v" << i << " -- v" << j << ";\n";
      }
    }
  }
  std::cout << "}\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric geometry of the symmetric group under the transposition metric"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  app.add_option("--format", cfg.format_name, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text", "dot"}));
  app.add_option("--cache-dir", cfg.cache_dir, "Directory for the crossover cache")
      ->envname("MIDPOINT_CACHE_DIR");
  app.add_flag("--no-cache", cfg.no_cache, "Ignore the on-disk crossover cache");
  app.add_option("--seed", cfg.seed, "Base seed for randomized experiments");
  app.add_option("--jobs", cfg.jobs, "Worker threads for parallel sweeps")
      ->check(CLI::Range(1u, 256u));

  std::string mu_text;
  auto* crossovers_cmd = app.add_subcommand("crossovers", "List Cr(mu) with dual indices");
  crossovers_cmd->add_option("--mu", mu_text, "Composition, e.g. 2,2")->required();

  int verify_n = 4;
  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "Run exhaustive verification suites");
  verify_cmd->add_option("--n", verify_n, "Degree")->required();
  verify_cmd->add_option("--suite", suite, "Suite name")
      ->check(CLI::IsMember({"metric", "duality", "lemma1", "prop2", "prop3", "derived_keys",
                             "injections", "all"}));

  BmTrialConfig bm;
  double curvature = 0.0;
  auto* bm_cmd = app.add_subcommand("bm", "Seeded Brunn-Minkowski trials");
  bm_cmd->add_option("--n", bm.n, "Degree")->required();
  bm_cmd->add_option("--size-a", bm.size_a, "|A| (random per trial when omitted)");
  bm_cmd->add_option("--size-b", bm.size_b, "|B| (random per trial when omitted)");
  bm_cmd->add_flag("--curved", bm.curved, "Check the curved inequality");
  bm_cmd->add_flag("--disjoint", bm.disjoint, "Sample disjoint A and B");
  bm_cmd->add_option("--trials", bm.trials, "Number of trials")->check(CLI::NonNegativeNumber);
  auto* curvature_opt = bm_cmd->add_option("--curvature", curvature, "Override K")
                            ->check(CLI::PositiveNumber);
  bm_cmd->add_flag("--audit", bm.audit, "Attach keys and injection records");

  int conc_n = 4;
  std::string mode = "exact";
  auto* conc_cmd = app.add_subcommand("concentration", "Tabulate the epsilon-hat explorer");
  conc_cmd->add_option("--n", conc_n, "Degree")->required();
  conc_cmd->add_option("--mode", mode, "exact or greedy")->check(CLI::IsMember({"exact", "greedy"}));

  int bits = 3;
  auto* embed_cmd = app.add_subcommand("embed-check", "Check the hypercube embedding");
  embed_cmd->add_option("--bits", bits, "Bitstring length N (degree 2N)");

  int dot_n = 4;
  auto* dot_cmd = app.add_subcommand("cayley-dot", "Emit the Cayley graph of S(n) as DOT");
  dot_cmd->add_option("--n", dot_n, "Degree")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.format_name) cfg.format = parse_format(*cfg.format_name);
  if (*curvature_opt) bm.curvature = curvature;

  std::optional<CrossoverRegistry> disk_registry;
  if (!cfg.no_cache && !cfg.cache_dir.empty()) disk_registry.emplace(std::filesystem::path(cfg.cache_dir));
  CrossoverRegistry& registry = disk_registry ? *disk_registry : CrossoverRegistry::shared();

  try {
    if (*crossovers_cmd) return cmd_crossovers(cfg, mu_text, registry);
    if (*verify_cmd) return cmd_verify(cfg, verify_n, suite, registry);
    if (*bm_cmd) return cmd_bm(cfg, bm, registry);
    if (*conc_cmd) return cmd_concentration(cfg, conc_n, mode, registry);
    if (*embed_cmd) return cmd_embed_check(cfg, bits);
    if (*dot_cmd) return cmd_cayley_dot(cfg, dot_n);
  } catch (const UsageError& e) {
    std::cerr << "midpoint: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LimitExceeded& e) {
    std::cerr << "midpoint: limit exceeded: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "midpoint: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "midpoint: internal error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
