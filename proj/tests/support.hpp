#pragma once

#include <vector>

#include "midpoint/permutation.hpp"
#include "oracles.hpp"

namespace support {

inline oracle::Images to_oracle(const midpoint::Permutation& p) {
  auto images = p.images();
  for (auto& v : images) --v;
  return images;
}

inline midpoint::Permutation from_oracle(const oracle::Images& images) {
  std::vector<int> one_based(images);
  for (auto& v : one_based) ++v;
  return midpoint::Permutation(std::span<const int>(one_based));
}

}  // namespace support
