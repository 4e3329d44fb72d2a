#include "midpoint/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace midpoint {

struct PermutationAccess {
  static Permutation make(std::vector<std::uint8_t> images) {
    return Permutation(Permutation::ZeroBased{}, std::move(images));
  }
  static const std::vector<std::uint8_t>& raw(const Permutation& p) { return p.images_; }
};

namespace {

void require_same_degree(const Permutation& a, const Permutation& b, const char* what) {
  if (a.degree() != b.degree()) {
    throw std::invalid_argument(std::string(what) + ": degree mismatch (" +
                                std::to_string(a.degree()) + " vs " +
                                std::to_string(b.degree()) + ")");
  }
}

std::vector<std::uint8_t> validated(std::span<const int> images) {
  const auto n = images.size();
  if (n == 0) throw std::invalid_argument("permutation: degree must be positive");
  if (n > static_cast<std::size_t>(kMaxDegree)) {
    throw std::invalid_argument("permutation: degree above " + std::to_string(kMaxDegree));
  }
  std::vector<bool> seen(n, false);
  std::vector<std::uint8_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int v = images[i];
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v - 1)]) {
      throw std::invalid_argument("permutation: images are not a bijection of {1..n}");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
    out[i] = static_cast<std::uint8_t>(v - 1);
  }
  return out;
}

}  // namespace

Permutation::Permutation(std::span<const int> images) : images_(validated(images)) {}

Permutation::Permutation(std::initializer_list<int> images)
    : images_(validated(std::span<const int>(images.begin(), images.size()))) {}

Permutation Permutation::identity(int n) {
  if (n < 1 || n > kMaxDegree) throw std::invalid_argument("identity: bad degree");
  std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), std::uint8_t{0});
  return Permutation(ZeroBased{}, std::move(img));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  if (n < 1 || n > kMaxDegree) throw std::invalid_argument("from_cycles: bad degree");
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const int from = cycle[k];
      const int to = cycle[(k + 1) % cycle.size()];
      if (from < 1 || from > n || to < 1 || to > n) {
        throw std::invalid_argument("from_cycles: point out of range");
      }
      if (used[static_cast<std::size_t>(from - 1)]) {
        throw std::invalid_argument("from_cycles: cycles are not disjoint");
      }
      used[static_cast<std::size_t>(from - 1)] = true;
      img[static_cast<std::size_t>(from - 1)] = to;
    }
  }
  return Permutation(std::span<const int>(img));
}

Permutation Permutation::transposition(int n, int i, int j) {
  if (i == j) throw std::invalid_argument("transposition: points must differ");
  return from_cycles(n, {{i, j}});
}

std::vector<int> Permutation::images() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

int Permutation::cycle_count() const {
  const auto n = images_.size();
  std::uint64_t small_seen[4] = {0, 0, 0, 0};
  int cycles = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (small_seen[i >> 6] & (std::uint64_t{1} << (i & 63))) continue;
    ++cycles;
    std::size_t j = i;
    do {
      small_seen[j >> 6] |= std::uint64_t{1} << (j & 63);
      j = images_[j];
    } while (j != i);
  }
  return cycles;
}

std::size_t Permutation::hash() const noexcept {
  // FNV-1a
  std::uint64_t h = 1469598103934665603ULL;
  for (auto v : images_) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("composition: no parts");
  for (int p : parts_) {
    if (p < 1) throw std::invalid_argument("composition: parts must be positive");
    n_ += p;
  }
}

Composition::Composition(std::initializer_list<int> parts)
    : Composition(std::vector<int>(parts)) {}

bool Composition::is_hypercube_type() const {
  return std::all_of(parts_.begin(), parts_.end(), [](int p) { return p == 1 || p == 2; });
}

std::string Composition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

Composition Composition::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    auto token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                  : comma - pos);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front())))
      token.remove_prefix(1);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back())))
      token.remove_suffix(1);
    int value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size() || value < 1) {
      throw std::invalid_argument("composition: cannot parse '" + std::string(text) +
                                  "' (expected comma-separated positive integers)");
    }
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Composition(std::move(parts));
}

std::vector<int> OrderedCycleFactorization::reading_order() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  for (const auto& c : cycles) out.insert(out.end(), c.begin(), c.end());
  return out;
}

Permutation OrderedCycleFactorization::to_permutation() const {
  return Permutation::from_cycles(n, cycles);
}

Permutation compose(const Permutation& a, const Permutation& b) {
  require_same_degree(a, b, "compose");
  std::vector<std::uint8_t> out(a.images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.images_[b.images_[i]];
  return Permutation(Permutation::ZeroBased{}, std::move(out));
}

Permutation inverse(const Permutation& p) {
  std::vector<std::uint8_t> out(p.images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[p.images_[i]] = static_cast<std::uint8_t>(i);
  return Permutation(Permutation::ZeroBased{}, std::move(out));
}

Permutation conjugate(const Permutation& u, const Permutation& p) {
  require_same_degree(u, p, "conjugate");
  // (u p u^{-1})(u(i)) = u(p(i))
  const auto& ur = PermutationAccess::raw(u);
  const auto& pr = PermutationAccess::raw(p);
  std::vector<std::uint8_t> out(ur.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[ur[i]] = ur[pr[i]];
  return PermutationAccess::make(std::move(out));
}

OrderedCycleFactorization ordered_cycle_factorization(const Permutation& p) {
  OrderedCycleFactorization f;
  f.n = p.degree();
  std::vector<bool> seen(static_cast<std::size_t>(f.n), false);
  // Scanning points in increasing order opens each cycle at its minimum and
  // visits the minima in increasing order.
  for (int start = 1; start <= f.n; ++start) {
    if (seen[static_cast<std::size_t>(start - 1)]) continue;
    std::vector<int> cycle;
    int x = start;
    do {
      seen[static_cast<std::size_t>(x - 1)] = true;
      cycle.push_back(x);
      x = p(x);
    } while (x != start);
    f.cycles.push_back(std::move(cycle));
  }
  return f;
}

Composition ordered_cycle_type(const Permutation& p) {
  const auto f = ordered_cycle_factorization(p);
  std::vector<int> parts;
  parts.reserve(f.cycles.size());
  for (const auto& c : f.cycles) parts.push_back(static_cast<int>(c.size()));
  return Composition(std::move(parts));
}

std::vector<int> cycle_minima(const Permutation& p) {
  const auto f = ordered_cycle_factorization(p);
  std::vector<int> out;
  out.reserve(f.cycles.size());
  for (const auto& c : f.cycles) out.push_back(c.front());
  return out;
}

Permutation canonical_permutation(const Composition& mu) {
  std::vector<std::vector<int>> cycles;
  int next = 1;
  for (int part : mu.parts()) {
    std::vector<int> cycle(static_cast<std::size_t>(part));
    std::iota(cycle.begin(), cycle.end(), next);
    next += part;
    cycles.push_back(std::move(cycle));
  }
  return Permutation::from_cycles(mu.n(), cycles);
}

Permutation transport(const Permutation& p) {
  // The reading order of p_mu is 1,2,...,n, so u_p sends k to the k-th entry
  // of the reading order of p.
  const auto order = ordered_cycle_factorization(p).reading_order();
  return Permutation(std::span<const int>(order));
}

int distance(const Permutation& a, const Permutation& b) {
  require_same_degree(a, b, "distance");
  return a.degree() - compose(inverse(a), b).cycle_count();
}

int distance_bfs_oracle(const Permutation& a, const Permutation& b, int degree_limit) {
  require_same_degree(a, b, "distance_bfs_oracle");
  const int n = a.degree();
  if (n > degree_limit) {
    throw LimitExceeded("distance_bfs_oracle: degree " + std::to_string(n) + " above limit " +
                        std::to_string(degree_limit));
  }
  if (a == b) return 0;
  std::vector<Permutation> generators;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) generators.push_back(Permutation::transposition(n, i, j));

  std::unordered_map<Permutation, int, PermutationHash> dist;
  std::deque<Permutation> queue;
  dist.emplace(a, 0);
  queue.push_back(a);
  while (!queue.empty()) {
    const Permutation cur = queue.front();
    queue.pop_front();
    const int d = dist.at(cur);
    for (const auto& t : generators) {
      // Right Cayley graph: cur -- cur * t.
      Permutation next = compose(cur, t);
      if (next == b) return d + 1;
      if (dist.emplace(next, d + 1).second) queue.push_back(std::move(next));
    }
  }
  throw std::logic_error("distance_bfs_oracle: target unreachable");
}

std::unordered_map<Permutation, int, PermutationHash> bfs_distance_table(
    const Permutation& source, int degree_limit) {
  const int n = source.degree();
  if (n > degree_limit) {
    throw LimitExceeded("bfs_distance_table: degree " + std::to_string(n) + " above limit " +
                        std::to_string(degree_limit));
  }
  std::vector<Permutation> generators;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) generators.push_back(Permutation::transposition(n, i, j));
  std::unordered_map<Permutation, int, PermutationHash> dist;
  std::deque<Permutation> queue{source};
  dist.emplace(source, 0);
  while (!queue.empty()) {
    const Permutation cur = queue.front();
    queue.pop_front();
    const int d = dist.at(cur);
    for (const auto& t : generators) {
      Permutation next = compose(cur, t);
      if (dist.emplace(next, d + 1).second) queue.push_back(std::move(next));
    }
  }
  return dist;
}

void for_each_permutation(int n, const std::function<bool(const Permutation&)>& visit,
                          int limit) {
  if (n < 1) throw std::invalid_argument("enumerate_group: n must be positive");
  if (n > limit) {
    throw LimitExceeded("enumerate_group: n = " + std::to_string(n) + " above limit " +
                        std::to_string(limit));
  }
  std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), std::uint8_t{0});
  do {
    if (!visit(PermutationAccess::make(img))) return;
  } while (std::next_permutation(img.begin(), img.end()));
}

std::vector<Permutation> enumerate_group(int n, int limit) {
  std::vector<Permutation> out;
  for_each_permutation(
      n,
      [&](const Permutation& p) {
        out.push_back(p);
        return true;
      },
      limit);
  return out;
}

std::vector<Composition> enumerate_compositions(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_compositions: n must be positive");
  std::vector<Composition> out;
  std::vector<int> parts;
  // Depth-first with parts tried in increasing order gives lexicographic
  // order on part sequences.
  std::function<void(int)> extend = [&](int remaining) {
    if (remaining == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int part = 1; part <= remaining; ++part) {
      parts.push_back(part);
      extend(remaining - part);
      parts.pop_back();
    }
  };
  extend(n);
  return out;
}

std::string to_cycle_string(const Permutation& p) {
  if (p.is_identity()) return "e";
  std::ostringstream out;
  for (const auto& cycle : ordered_cycle_factorization(p).cycles) {
    if (cycle.size() == 1) continue;
    out << '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k) out << ' ';
      out << cycle[k];
    }
    out << ')';
  }
  return out.str();
}

Permutation parse_cycle_string(std::string_view text, int n) {
  auto fail = [&]() -> Permutation {
    throw std::invalid_argument("cannot parse cycle string '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i < text.size() && text[i] == 'e') {
    ++i;
    skip_ws();
    if (i != text.size()) return fail();
    return Permutation::identity(n);
  }
  std::vector<std::vector<int>> cycles;
  while (true) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') return fail();
    ++i;
    std::vector<int> cycle;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      int value = 0;
      const auto [end, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
      if (ec != std::errc{}) return fail();
      i = static_cast<std::size_t>(end - text.data());
      cycle.push_back(value);
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
  }
  return Permutation::from_cycles(n, cycles);
}

}  // namespace midpoint
