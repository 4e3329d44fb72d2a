#pragma once

#include <stdexcept>

namespace midpoint {

// Raised when a request would exceed a configured enumeration or search
// limit (factorial blowup guards, exact-search size caps).
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace midpoint
