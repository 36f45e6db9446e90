#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "leafspec/limits.hpp"
#include "leafspec/parallel.hpp"
#include "leafspec/tree.hpp"

namespace leafspec {

/// A strictly increasing set of non-negative path lengths.
class LengthSet {
 public:
  LengthSet() = default;
  LengthSet(std::initializer_list<int> values) : LengthSet(std::vector<int>(values)) {}
  explicit LengthSet(std::vector<int> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    if (!values_.empty() && values_.front() < 0) throw InputError("path lengths must be non-negative");
  }

  /// From a membership mask: length i is present iff mask[i].
  static LengthSet from_mask(const std::vector<char>& mask) {
    LengthSet s;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) s.values_.push_back(static_cast<int>(i));
    }
    return s;
  }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  int max() const { return values_.back(); }
  bool contains(int length) const { return std::binary_search(values_.begin(), values_.end(), length); }
  const std::vector<int>& values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  /// Members in [0, bound].
  LengthSet clipped(int bound) const {
    LengthSet s;
    for (int v : values_) {
      if (v <= bound) s.values_.push_back(v);
    }
    return s;
  }

  bool is_subset_of(const LengthSet& other) const {
    return std::includes(other.values_.begin(), other.values_.end(), values_.begin(), values_.end());
  }

  friend bool operator==(const LengthSet&, const LengthSet&) = default;

 private:
  std::vector<int> values_;
};

struct SpectrumOptions {
  Limits limits{};
  unsigned workers = 1;
};

/// Every d(u, v) over leaf pairs u, v (0 included). One BFS per leaf;
/// refuses inputs whose leaves x vertices exceed the work limit.
inline LengthSet leaf_spectrum(const Tree& t, const SpectrumOptions& options = {}) {
  const auto leaf_ids = leaves(t);
  require_work(sat_mul(leaf_ids.size(), static_cast<std::uint64_t>(t.size())), options.limits, "leaf spectrum");
  const auto n = static_cast<std::size_t>(t.size());
  const unsigned workers = std::max(1u, options.workers);
  std::vector<std::vector<char>> masks(workers);
  parallel_chunks(workers, leaf_ids.size(), [&](unsigned w, std::size_t begin, std::size_t end) {
    auto& mask = masks[w];
    mask.assign(n, 0);
    for (std::size_t i = begin; i < end; ++i) {
      const auto dist = bfs_distances(t, leaf_ids[i]);
      // Pairs are unordered; scanning only later leaves halves the work.
      for (std::size_t j = i; j < leaf_ids.size(); ++j) mask[static_cast<std::size_t>(dist[static_cast<std::size_t>(leaf_ids[j])])] = 1;
    }
  });
  std::vector<char> merged(n, 0);
  for (const auto& mask : masks) {
    for (std::size_t i = 0; i < mask.size(); ++i) merged[i] |= mask[i];
  }
  return LengthSet::from_mask(merged);
}

/// Lengths witnessed by leaf v: {0} and every d(v, u) for another leaf u.
inline LengthSet witnessed(const Tree& t, Vertex v) {
  check_vertex(t, v, "witness");
  if (!t.is_leaf(v)) throw InputError("vertex " + std::to_string(v) + " is not a leaf");
  const auto dist = bfs_distances(t, v);
  std::vector<char> mask(static_cast<std::size_t>(t.size()), 0);
  mask[0] = 1;
  for (Vertex u = 0; u < t.size(); ++u) {
    if (t.is_leaf(u)) mask[static_cast<std::size_t>(dist[static_cast<std::size_t>(u)])] = 1;
  }
  return LengthSet::from_mask(mask);
}

inline LengthSet witnessed_in_range(const Tree& t, Vertex v, int bound) {
  if (bound < 0) throw InputError("length bound must be non-negative");
  return witnessed(t, v).clipped(bound);
}

inline LengthSet spectrum_in_range(const Tree& t, int bound, const SpectrumOptions& options = {}) {
  if (bound < 0) throw InputError("length bound must be non-negative");
  return leaf_spectrum(t, options).clipped(bound);
}

struct SpectrumReport {
  Vertex n = 0;
  std::size_t leaf_count = 0;
  int max_degree = 0;
  int diameter = 0;
  LengthSet spectrum;
};

inline SpectrumReport spectrum_report(const Tree& t, const SpectrumOptions& options = {}) {
  return {t.size(), leaves(t).size(), t.max_degree(), diameter(t), leaf_spectrum(t, options)};
}

}  // namespace leafspec
