#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "leafspec/errors.hpp"

namespace leafspec {

/// Smallest r with r*r >= x.
constexpr std::int64_t ceil_sqrt(std::int64_t x) {
  std::int64_t r = 0;
  while (r * r < x) ++r;
  return r;
}

enum class Direction { increasing, decreasing };

inline const char* to_string(Direction d) { return d == Direction::increasing ? "increasing" : "decreasing"; }

struct MonotoneSubsequence {
  Direction direction = Direction::increasing;
  std::vector<std::size_t> indices;  // 0-based positions, strictly increasing
};

namespace detail {

// Longest non-decreasing subsequence by patience sorting, O(n log n).
inline std::vector<std::size_t> longest_non_decreasing(std::span<const std::int64_t> a) {
  std::vector<std::size_t> tails;  // tails[k]: index ending the best run of length k+1
  std::vector<std::size_t> prev(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto it = std::upper_bound(tails.begin(), tails.end(), a[i],
                               [&](std::int64_t value, std::size_t idx) { return value < a[idx]; });
    if (it != tails.begin()) prev[i] = *(it - 1);
    if (it == tails.end()) {
      tails.push_back(i);
    } else {
      *it = i;
    }
  }
  std::vector<std::size_t> out;
  if (tails.empty()) return out;
  for (std::size_t i = tails.back(); i != a.size(); i = prev[i]) out.push_back(i);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// The longer of a longest non-decreasing and a longest non-increasing
/// subsequence (ties go to increasing). Its length is at least ceil(sqrt(n)).
inline MonotoneSubsequence erdos_szekeres(std::span<const std::int64_t> a) {
  if (a.empty()) throw InputError("erdos_szekeres needs a non-empty sequence");
  auto up = detail::longest_non_decreasing(a);
  std::vector<std::int64_t> negated(a.begin(), a.end());
  for (auto& x : negated) x = -x;
  auto down = detail::longest_non_decreasing(negated);
  if (up.size() >= down.size()) return {Direction::increasing, std::move(up)};
  return {Direction::decreasing, std::move(down)};
}

enum class Side { plus, minus };

inline const char* to_string(Side s) { return s == Side::plus ? "plus" : "minus"; }

/// A set of distinct shifted values a_i + i (plus) or a_i - i (minus).
/// Indices are 1-based positions because they enter the values.
struct ShiftSetResult {
  Side side = Side::plus;
  std::vector<std::int64_t> indices;  // strictly increasing, 1-based
  std::vector<std::int64_t> values;   // values[k] = a_{indices[k]} +/- indices[k]
  std::int64_t guarantee = 0;         // floor-exact lower bound on |values|
  double smooth_bound = 0.0;          // n / (4 sqrt(m)), informational only
  bool blocked = false;               // true when the block argument was used
};

/// Floor-exact guarantee: ceil(floor(n/2m)/2) * ceil(sqrt(m)) when 2m <= n,
/// otherwise ceil(sqrt(n)).
constexpr std::int64_t shift_set_guarantee(std::int64_t n, std::int64_t m) {
  if (2 * m <= n) {
    const std::int64_t blocks = n / (2 * m);
    return (blocks + 1) / 2 * ceil_sqrt(m);
  }
  return ceil_sqrt(n);
}

namespace detail {

inline std::int64_t shifted(std::span<const std::int64_t> a, std::int64_t i, Side side) {
  const auto x = a[static_cast<std::size_t>(i - 1)];
  return side == Side::plus ? x + i : x - i;
}

}  // namespace detail

/// For 0 <= a_i <= m, picks a side and an index set whose shifted values are
/// pairwise distinct. With 2m <= n the sequence is cut into blocks
/// [2(k-1)m+1, (2k-1)m], each contributing one monotone run; the majority
/// direction wins (ties to plus). Otherwise a single monotone run is used.
inline ShiftSetResult shift_set(std::span<const std::int64_t> a, std::int64_t m) {
  const auto n = static_cast<std::int64_t>(a.size());
  if (n < 1) throw InputError("shift_set needs a non-empty sequence");
  if (m < 1) throw InputError("shift_set needs m >= 1");
  for (std::int64_t i = 0; i < n; ++i) {
    const auto x = a[static_cast<std::size_t>(i)];
    if (x < 0 || x > m) {
      throw InputError("term " + std::to_string(i + 1) + " = " + std::to_string(x) + " outside [0, " +
                       std::to_string(m) + "]");
    }
  }
  ShiftSetResult r;
  r.guarantee = shift_set_guarantee(n, m);
  r.smooth_bound = static_cast<double>(n) / (4.0 * std::sqrt(static_cast<double>(m)));
  if (2 * m <= n) {
    r.blocked = true;
    const std::int64_t blocks = n / (2 * m);
    std::vector<std::vector<std::int64_t>> up, down;
    for (std::int64_t k = 1; k <= blocks; ++k) {
      const std::int64_t first = 2 * (k - 1) * m + 1;
      const auto run = erdos_szekeres(a.subspan(static_cast<std::size_t>(first - 1), static_cast<std::size_t>(m)));
      std::vector<std::int64_t> idx;
      for (auto j : run.indices) idx.push_back(first + static_cast<std::int64_t>(j));
      (run.direction == Direction::increasing ? up : down).push_back(std::move(idx));
    }
    r.side = up.size() >= down.size() ? Side::plus : Side::minus;
    for (const auto& block : (r.side == Side::plus ? up : down)) {
      r.indices.insert(r.indices.end(), block.begin(), block.end());
    }
  } else {
    const auto run = erdos_szekeres(a);
    r.side = run.direction == Direction::increasing ? Side::plus : Side::minus;
    for (auto j : run.indices) r.indices.push_back(static_cast<std::int64_t>(j) + 1);
  }
  for (auto i : r.indices) r.values.push_back(detail::shifted(a, i, r.side));

  auto sorted = r.values;
  std::sort(sorted.begin(), sorted.end());
  check_invariant(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "shift set values not distinct");
  check_invariant(static_cast<std::int64_t>(r.values.size()) >= r.guarantee, "shift set below guarantee");
  return r;
}

}  // namespace leafspec
