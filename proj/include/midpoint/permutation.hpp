#pragma once

// Permutations of {1,...,n}, ordered cycle structure, and the transposition
// word metric on S(n).
//
// Product convention: compose(a, b) is the map x -> a(b(x)), i.e. b acts
// first. operator* is an alias, so a * b * c reads like the usual product
// notation for the group.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "midpoint/error.hpp"

namespace midpoint {

inline constexpr int kDefaultEnumerationLimit = 9;
inline constexpr int kDefaultBfsLimit = 8;

class Permutation {
 public:
  // images[i] = p(i+1), 1-based. Throws std::invalid_argument unless the
  // images form a bijection of {1,...,n}.
  explicit Permutation(std::span<const int> images);
  Permutation(std::initializer_list<int> images);

  static Permutation identity(int n);
  // Builds a permutation from disjoint cycles (1-based points); points not
  // mentioned are fixed.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);
  // Transposition swapping i and j (1-based, i != j).
  static Permutation transposition(int n, int i, int j);

  int degree() const { return static_cast<int>(images_.size()); }
  // p(point), 1-based.
  int operator()(int point) const { return images_[static_cast<std::size_t>(point - 1)] + 1; }
  // 1-based image sequence p(1),...,p(n).
  std::vector<int> images() const;
  bool is_identity() const;
  // Number of cycles, fixed points included.
  int cycle_count() const;

  // Lexicographic on image sequences; the enumeration order of S(n).
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

  std::size_t hash() const noexcept;

 private:
  struct ZeroBased {};
  Permutation(ZeroBased, std::vector<std::uint8_t> images) : images_(std::move(images)) {}

  friend Permutation compose(const Permutation& a, const Permutation& b);
  friend Permutation inverse(const Permutation& p);
  friend struct PermutationAccess;

  // 0-based: images_[i] = p(i+1) - 1.
  std::vector<std::uint8_t> images_;
};

inline constexpr int kMaxDegree = 255;

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept { return p.hash(); }
};

// An ordered cycle type: a composition of n.
class Composition {
 public:
  // Throws std::invalid_argument on an empty sequence or a nonpositive part.
  explicit Composition(std::vector<int> parts);
  Composition(std::initializer_list<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int n() const { return n_; }
  int length() const { return static_cast<int>(parts_.size()); }
  // n - length: the level of the class in the Cayley graph.
  int rank() const { return n_ - length(); }

  // True when every part is 1 or 2.
  bool is_hypercube_type() const;

  // "2,2"
  std::string to_string() const;
  // Parses comma-separated positive integers; throws std::invalid_argument.
  static Composition parse(std::string_view text);

  friend auto operator<=>(const Composition&, const Composition&) = default;
  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

struct OrderedCycleFactorization {
  int n = 0;
  // Each cycle starts at its minimum; cycles sorted by minima; fixed points
  // are singleton cycles.
  std::vector<std::vector<int>> cycles;

  // Concatenation of all cycles.
  std::vector<int> reading_order() const;
  Permutation to_permutation() const;
};

Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
// u p u^{-1}: sends each mapping i -> j of p to u(i) -> u(j).
Permutation conjugate(const Permutation& u, const Permutation& p);

inline Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }

OrderedCycleFactorization ordered_cycle_factorization(const Permutation& p);
Composition ordered_cycle_type(const Permutation& p);
std::vector<int> cycle_minima(const Permutation& p);

// p_mu: cycles the consecutive intervals of lengths mu_1, mu_2, ...
Permutation canonical_permutation(const Composition& mu);

// u_p: the unique permutation conjugating p_mu to p (mu the ordered cycle
// type of p) while carrying the cycle minima of p_mu onto those of p.
Permutation transport(const Permutation& p);

// Transposition word metric: n minus the number of cycles of a^{-1} b.
int distance(const Permutation& a, const Permutation& b);

// Breadth-first search in the right Cayley graph generated by all
// transpositions. Independent of the cycle-count formula; throws
// LimitExceeded above `degree_limit`.
int distance_bfs_oracle(const Permutation& a, const Permutation& b,
                        int degree_limit = kDefaultBfsLimit);

// Breadth-first distances from `source` to every element of S(n).
std::unordered_map<Permutation, int, PermutationHash> bfs_distance_table(
    const Permutation& source, int degree_limit = kDefaultBfsLimit);

// All of S(n) in lexicographic order of image sequences. Throws
// LimitExceeded above `limit`.
std::vector<Permutation> enumerate_group(int n, int limit = kDefaultEnumerationLimit);

// Calls `visit` on each permutation of S(n) in lexicographic order without
// materializing the group. Stops early when `visit` returns false.
void for_each_permutation(int n, const std::function<bool(const Permutation&)>& visit,
                          int limit = kDefaultEnumerationLimit);

// All 2^{n-1} compositions of n. Order: lexicographic on part sequences.
std::vector<Composition> enumerate_compositions(int n);

// "(1 3)(2 4)"; singletons omitted; the identity renders as "e".
std::string to_cycle_string(const Permutation& p);
// Inverse of to_cycle_string for degree n. Accepts "e", "()" and cycles
// separated by optional whitespace; throws std::invalid_argument.
Permutation parse_cycle_string(std::string_view text, int n);

}  // namespace midpoint

template <>
struct std::hash<midpoint::Permutation> {
  std::size_t operator()(const midpoint::Permutation& p) const noexcept { return p.hash(); }
};
