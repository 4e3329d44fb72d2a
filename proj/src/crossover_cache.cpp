#include "midpoint/crossover_cache.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace midpoint {

namespace {

constexpr const char* kSchema = "midpoint.crossovers/1";

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

nlohmann::ordered_json payload(const CrossoverSet& set) {
  nlohmann::ordered_json j;
  j["mu"] = set.mu().parts();
  auto elements = nlohmann::ordered_json::array();
  for (const auto& c : set.elements()) elements.push_back(to_json(c));
  j["elements"] = std::move(elements);
  j["dual_index"] = std::vector<std::size_t>(set.dual_indices().begin(), set.dual_indices().end());
  return j;
}

}  // namespace

nlohmann::ordered_json to_json(const Permutation& p) {
  nlohmann::ordered_json j;
  j["n"] = p.degree();
  j["images"] = p.images();
  return j;
}

Permutation permutation_from_json(const nlohmann::ordered_json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto images = j.at("images").get<std::vector<int>>();
    if (static_cast<int>(images.size()) != n) {
      throw std::invalid_argument("permutation json: images length differs from n");
    }
    return Permutation(std::span<const int>(images));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("permutation json: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const CrossoverSet& set) {
  nlohmann::ordered_json j;
  j["schema"] = kSchema;
  const auto body = payload(set);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

CrossoverSet crossover_set_from_json(const nlohmann::ordered_json& j) {
  try {
    Composition mu(j.at("mu").get<std::vector<int>>());
    std::vector<Permutation> elements;
    for (const auto& e : j.at("elements")) elements.push_back(permutation_from_json(e));
    const auto dual_index = j.at("dual_index").get<std::vector<std::size_t>>();
    // Stored order must already be the canonical order.
    if (!std::is_sorted(elements.begin(), elements.end())) {
      throw std::invalid_argument("crossover json: elements out of order");
    }
    CrossoverSet set(std::move(mu), std::move(elements));
    if (dual_index.size() != set.size() ||
        !std::equal(dual_index.begin(), dual_index.end(), set.dual_indices().begin())) {
      throw std::invalid_argument("crossover json: dual_index inconsistent");
    }
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("crossover json: ") + e.what());
  }
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::filesystem::path cache_file_for(const std::filesystem::path& dir, const Composition& mu) {
  std::string key = "cr_v1_";
  for (std::size_t i = 0; i < mu.parts().size(); ++i) {
    if (i) key += '-';
    key += std::to_string(mu.parts()[i]);
  }
  return dir / (key + ".json");
}

std::optional<CrossoverSet> load_cached(const std::filesystem::path& dir, const Composition& mu) {
  std::ifstream in(cache_file_for(dir, mu));
  if (!in) return std::nullopt;
  try {
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto j = nlohmann::ordered_json::parse(buffer.str());
    if (!j.is_object() || j.value("schema", "") != kSchema || !j.contains("checksum")) {
      return std::nullopt;
    }
    const auto checksum = j.at("checksum").get<std::string>();
    j.erase("checksum");
    j.erase("schema");
    if (hex64(fnv1a64(j.dump())) != checksum) return std::nullopt;
    auto set = crossover_set_from_json(j);
    if (set.mu() != mu) return std::nullopt;
    return set;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void store_cached(const std::filesystem::path& dir, const CrossoverSet& set) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("crossover cache: cannot create " + dir.string());
  auto body = payload(set);
  nlohmann::ordered_json j;
  j["schema"] = kSchema;
  for (auto& [k, v] : body.items()) j[k] = v;
  j["checksum"] = hex64(fnv1a64(body.dump()));

  // Write then rename, so a concurrent reader never sees a partial file.
  const auto target = cache_file_for(dir, set.mu());
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("crossover cache: cannot write " + tmp.string());
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw std::runtime_error("crossover cache: cannot rename into " + target.string());
}

}  // namespace midpoint
