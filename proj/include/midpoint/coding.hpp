#pragma once

// Encoding pairs of points by crossovers, the decoding involution, and the
// two injections A x B -> M x M and A x B x {0,1} -> M x M.
//
// For a pair (a, b) with q = a^{-1} b of ordered cycle type mu and
// u = transport(q), the map x -> a u x u^{-1} is an isometry taking e to a
// and p_mu to b; it carries Cr(mu) bijectively onto the midpoints of a and b.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "midpoint/geodesic.hpp"

namespace midpoint {

struct MidpointPair {
  Permutation x;
  Permutation y;

  friend auto operator<=>(const MidpointPair&, const MidpointPair&) = default;
  friend bool operator==(const MidpointPair&, const MidpointPair&) = default;
};

// The midpoint of a and b encoded by c: a u c u^{-1}. Throws
// std::invalid_argument unless c is a crossover of the type of a^{-1} b.
Permutation encode_point(const Permutation& c, const Permutation& a, const Permutation& b);

// (encode_point(c, a, b), encode_point(dual(c), a, b)).
MidpointPair encode_pair(const Permutation& c, const Permutation& a, const Permutation& b);
inline MidpointPair encode_pair(const Permutation& c, const MidpointPair& message) {
  return encode_pair(c, message.x, message.y);
}

// The decryption key delta(c) = v^{-1} c^{-1} v with v = transport(c^{-1} c^dual):
// encode_pair(decode_key(c), encode_pair(c, a, b)) == (a, b).
Permutation decode_key(const Permutation& c, const Composition& mu);

// delta(delta(c)^dual): the key whose decryption key is the dual of
// decode_key(c).
Permutation derived_key(const Permutation& c, const Composition& mu);

enum class KeyPolicy { first, seeded };

struct KeyClass {
  Composition mu;
  Permutation key;
};

struct KeySystem {
  KeyPolicy policy = KeyPolicy::first;
  std::optional<std::uint64_t> seed;
  // Sorted by composition; compositions pairwise distinct.
  std::vector<KeyClass> classes;

  // Throws std::out_of_range when mu has no key.
  const Permutation& key_for(const Composition& mu) const;
};

// Picks one key per distinct composition. `first` takes position 0 of the
// crossover order; `seeded` draws uniformly from a 64-bit Mersenne Twister
// seeded with `seed`, one draw per composition in sorted order.
KeySystem select_keys(std::vector<Composition> mus, KeyPolicy policy,
                      std::optional<std::uint64_t> seed = std::nullopt,
                      CrossoverRegistry& registry = CrossoverRegistry::shared());

struct FlatInjection {
  KeySystem keys;
  std::map<std::pair<Permutation, Permutation>, MidpointPair> map;

  bool is_injective() const;
};

struct CurvedInjection {
  KeySystem keys;
  // derived_key() of each key, same order as keys.classes.
  std::vector<Permutation> derived_keys;
  std::map<std::tuple<Permutation, Permutation, int>, MidpointPair> map;

  bool is_injective() const;
};

// Classes of A x B by ordered cycle type of a^{-1} b, each encoded with its
// key. Throws std::invalid_argument on an empty input.
FlatInjection flat_injection(const PermutationSet& A, const PermutationSet& B,
                             KeyPolicy policy = KeyPolicy::first,
                             std::optional<std::uint64_t> seed = std::nullopt,
                             CrossoverRegistry& registry = CrossoverRegistry::shared());

// Copy 0 uses the keys, copy 1 the derived keys. Requires A and B disjoint
// (throws std::invalid_argument otherwise).
CurvedInjection curved_injection(const PermutationSet& A, const PermutationSet& B,
                                 KeyPolicy policy = KeyPolicy::first,
                                 std::optional<std::uint64_t> seed = std::nullopt,
                                 CrossoverRegistry& registry = CrossoverRegistry::shared());

// D(x, y): crossovers d of the type of x^{-1} y with encode_pair(d, x, y) in
// A x B, in crossover order.
std::vector<Permutation> fibre_set(const Permutation& x, const Permutation& y,
                                   const PermutationSet& A, const PermutationSet& B,
                                   CrossoverRegistry& registry = CrossoverRegistry::shared());

std::string to_string(KeyPolicy policy);
nlohmann::ordered_json to_json(const KeySystem& keys);
nlohmann::ordered_json to_json(const FlatInjection& injection);
nlohmann::ordered_json to_json(const CurvedInjection& injection);

}  // namespace midpoint
