#pragma once

// JSON form of crossover sets and the on-disk cache keyed by composition.
//
// File layout: {"schema": "midpoint.crossovers/1", "mu": [...],
// "elements": [{"n":..,"images":[..]}, ...], "dual_index": [...],
// "checksum": "<16 hex digits>"}. The checksum is FNV-1a over the canonical
// compact dump of the other fields; a mismatch or any structural defect
// makes load_cached() report a miss.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "midpoint/geodesic.hpp"

namespace midpoint {

nlohmann::ordered_json to_json(const Permutation& p);
Permutation permutation_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const CrossoverSet& set);
// Throws std::invalid_argument on malformed input or a failed validation.
CrossoverSet crossover_set_from_json(const nlohmann::ordered_json& j);

std::uint64_t fnv1a64(std::string_view bytes);

std::filesystem::path cache_file_for(const std::filesystem::path& dir, const Composition& mu);

// Empty on a missing, unreadable, corrupted or mismatched file.
std::optional<CrossoverSet> load_cached(const std::filesystem::path& dir, const Composition& mu);
void store_cached(const std::filesystem::path& dir, const CrossoverSet& set);

}  // namespace midpoint
