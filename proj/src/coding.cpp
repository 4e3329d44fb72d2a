#include "midpoint/coding.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "midpoint/crossover_cache.hpp"
#include "midpoint/random.hpp"

namespace midpoint {

namespace {

bool is_crossover_of(const Permutation& c, const Composition& mu) {
  return c.degree() == mu.n() &&
         is_midpoint(c, Permutation::identity(mu.n()), canonical_permutation(mu));
}

void require_crossover(const Permutation& c, const Composition& mu, const char* what) {
  if (!is_crossover_of(c, mu)) {
    throw std::invalid_argument(std::string(what) + ": " + to_cycle_string(c) +
                                " is not a crossover of type (" + mu.to_string() + ")");
  }
}

// Frame of the isometry e -> a, p_mu -> b.
struct PairFrame {
  Composition mu;
  Permutation au;     // a u
  Permutation u_inv;  // u^{-1}

  static PairFrame of(const Permutation& a, const Permutation& b) {
    const auto q = inverse(a) * b;
    const auto u = transport(q);
    return {ordered_cycle_type(q), a * u, inverse(u)};
  }

  Permutation place(const Permutation& c) const { return au * c * u_inv; }
};

void require_nonempty(const PermutationSet& A, const PermutationSet& B, const char* what) {
  if (A.empty() || B.empty()) throw std::invalid_argument(std::string(what) + ": empty input set");
}

std::vector<Composition> class_types(const PermutationSet& A, const PermutationSet& B) {
  std::set<Composition> types;
  for (const auto& a : A)
    for (const auto& b : B) types.insert(ordered_cycle_type(inverse(a) * b));
  return {types.begin(), types.end()};
}

}  // namespace

Permutation encode_point(const Permutation& c, const Permutation& a, const Permutation& b) {
  const auto frame = PairFrame::of(a, b);
  require_crossover(c, frame.mu, "encode_point");
  return frame.place(c);
}

MidpointPair encode_pair(const Permutation& c, const Permutation& a, const Permutation& b) {
  const auto frame = PairFrame::of(a, b);
  require_crossover(c, frame.mu, "encode_pair");
  const auto c_dual = inverse(c) * canonical_permutation(frame.mu);
  return {frame.place(c), frame.place(c_dual)};
}

Permutation decode_key(const Permutation& c, const Composition& mu) {
  require_crossover(c, mu, "decode_key");
  const auto c_inv = inverse(c);
  const auto v = transport(c_inv * (c_inv * canonical_permutation(mu)));
  return conjugate(inverse(v), c_inv);
}

Permutation derived_key(const Permutation& c, const Composition& mu) {
  return decode_key(dual(decode_key(c, mu), mu), mu);
}

const Permutation& KeySystem::key_for(const Composition& mu) const {
  const auto it = std::lower_bound(classes.begin(), classes.end(), mu,
                                   [](const KeyClass& k, const Composition& m) { return k.mu < m; });
  if (it == classes.end() || it->mu != mu) {
    throw std::out_of_range("KeySystem: no key for (" + mu.to_string() + ")");
  }
  return it->key;
}

KeySystem select_keys(std::vector<Composition> mus, KeyPolicy policy,
                      std::optional<std::uint64_t> seed, CrossoverRegistry& registry) {
  std::sort(mus.begin(), mus.end());
  mus.erase(std::unique(mus.begin(), mus.end()), mus.end());
  if (policy == KeyPolicy::seeded && !seed) {
    throw std::invalid_argument("select_keys: seeded policy needs a seed");
  }
  KeySystem keys;
  keys.policy = policy;
  if (policy == KeyPolicy::seeded) keys.seed = seed;
  std::mt19937_64 rng(seed.value_or(0));
  for (auto& mu : mus) {
    const auto& cr = registry.get(mu);
    const std::size_t pick = policy == KeyPolicy::first ? 0 : uniform_index(rng, cr.size());
    keys.classes.push_back({std::move(mu), cr[pick]});
  }
  return keys;
}

bool FlatInjection::is_injective() const {
  std::set<MidpointPair> images;
  for (const auto& [input, output] : map) images.insert(output);
  return images.size() == map.size();
}

bool CurvedInjection::is_injective() const {
  std::set<MidpointPair> images;
  for (const auto& [input, output] : map) images.insert(output);
  return images.size() == map.size();
}

FlatInjection flat_injection(const PermutationSet& A, const PermutationSet& B, KeyPolicy policy,
                             std::optional<std::uint64_t> seed, CrossoverRegistry& registry) {
  require_nonempty(A, B, "flat_injection");
  FlatInjection result;
  result.keys = select_keys(class_types(A, B), policy, seed, registry);
  for (const auto& a : A) {
    for (const auto& b : B) {
      const auto frame = PairFrame::of(a, b);
      const auto& c = result.keys.key_for(frame.mu);
      const auto c_dual = inverse(c) * canonical_permutation(frame.mu);
      result.map.emplace(std::pair{a, b}, MidpointPair{frame.place(c), frame.place(c_dual)});
    }
  }
  return result;
}

CurvedInjection curved_injection(const PermutationSet& A, const PermutationSet& B,
                                 KeyPolicy policy, std::optional<std::uint64_t> seed,
                                 CrossoverRegistry& registry) {
  require_nonempty(A, B, "curved_injection");
  for (const auto& a : A) {
    if (B.contains(a)) {
      throw std::invalid_argument("curved_injection: A and B intersect (use flat_injection)");
    }
  }
  CurvedInjection result;
  result.keys = select_keys(class_types(A, B), policy, seed, registry);
  for (const auto& k : result.keys.classes) result.derived_keys.push_back(derived_key(k.key, k.mu));

  for (const auto& a : A) {
    for (const auto& b : B) {
      const auto frame = PairFrame::of(a, b);
      const auto p_mu = canonical_permutation(frame.mu);
      const auto it = std::find_if(result.keys.classes.begin(), result.keys.classes.end(),
                                   [&](const KeyClass& k) { return k.mu == frame.mu; });
      const auto slot = static_cast<std::size_t>(it - result.keys.classes.begin());
      const Permutation* copy_keys[2] = {&it->key, &result.derived_keys[slot]};
      for (int copy = 0; copy < 2; ++copy) {
        const auto& c = *copy_keys[copy];
        result.map.emplace(std::tuple{a, b, copy},
                           MidpointPair{frame.place(c), frame.place(inverse(c) * p_mu)});
      }
    }
  }
  return result;
}

std::vector<Permutation> fibre_set(const Permutation& x, const Permutation& y,
                                   const PermutationSet& A, const PermutationSet& B,
                                   CrossoverRegistry& registry) {
  require_nonempty(A, B, "fibre_set");
  const auto frame = PairFrame::of(x, y);
  const auto& cr = registry.get(frame.mu);
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < cr.size(); ++i) {
    if (A.contains(frame.place(cr[i])) && B.contains(frame.place(cr[cr.dual_index(i)]))) {
      out.push_back(cr[i]);
    }
  }
  return out;
}

std::string to_string(KeyPolicy policy) {
  return policy == KeyPolicy::first ? "first" : "seeded";
}

nlohmann::ordered_json to_json(const KeySystem& keys) {
  nlohmann::ordered_json j;
  j["policy"] = to_string(keys.policy);
  j["seed"] = keys.seed ? nlohmann::ordered_json(*keys.seed) : nlohmann::ordered_json(nullptr);
  auto classes = nlohmann::ordered_json::array();
  for (const auto& k : keys.classes) {
    nlohmann::ordered_json entry;
    entry["mu"] = k.mu.parts();
    entry["key"] = to_json(k.key);
    classes.push_back(std::move(entry));
  }
  j["classes"] = std::move(classes);
  return j;
}

nlohmann::ordered_json to_json(const FlatInjection& injection) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& [input, output] : injection.map) {
    nlohmann::ordered_json r;
    r["input"] = {to_json(input.first), to_json(input.second)};
    r["output"] = {to_json(output.x), to_json(output.y)};
    records.push_back(std::move(r));
  }
  return records;
}

nlohmann::ordered_json to_json(const CurvedInjection& injection) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& [input, output] : injection.map) {
    nlohmann::ordered_json r;
    r["input"] = {to_json(std::get<0>(input)), to_json(std::get<1>(input)), std::get<2>(input)};
    r["output"] = {to_json(output.x), to_json(output.y)};
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace midpoint
