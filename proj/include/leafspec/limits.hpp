#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "leafspec/errors.hpp"

namespace leafspec {

/// Caps on generated sizes and enumeration work. Exceeding either raises
/// LimitError instead of truncating output.
struct Limits {
  std::uint64_t max_vertices = std::uint64_t{1} << 24;
  std::uint64_t max_work = std::uint64_t{4} << 30;
};

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

constexpr std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

constexpr std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

constexpr std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == kSaturated || r == 0) break;
  }
  return r;
}

inline void require_vertices(std::uint64_t count, const Limits& limits, const std::string& what) {
  if (count > limits.max_vertices) {
    throw LimitError(what + " would have " +
                     (count == kSaturated ? std::string("more than 2^64") : std::to_string(count)) +
                     " vertices, above the work limit of " + std::to_string(limits.max_vertices));
  }
}

inline void require_work(std::uint64_t work, const Limits& limits, const std::string& what) {
  if (work > limits.max_work) {
    throw LimitError(what + " needs " +
                     (work == kSaturated ? std::string("more than 2^64") : std::to_string(work)) +
                     " units of work, above the limit of " + std::to_string(limits.max_work));
  }
}

}  // namespace leafspec
