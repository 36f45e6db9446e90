#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "leafspec/constructions.hpp"
#include "leafspec/enumeration.hpp"
#include "leafspec/limits.hpp"
#include "leafspec/parallel.hpp"
#include "leafspec/sequences.hpp"
#include "leafspec/spectrum.hpp"
#include "leafspec/witness.hpp"

namespace leafspec {

// ---------------------------------------------------------------------------
// Distinct pair lengths a_i + a_j + (j - i)
// ---------------------------------------------------------------------------

/// A sequence of non-negative integers bounded by `cap`.
struct PairLengthInstance {
  std::vector<std::int64_t> a;
  std::int64_t cap = 0;

  void validate() const {
    for (auto x : a) {
      if (x < 0 || x > cap) throw InputError("sequence term " + std::to_string(x) + " outside [0, cap]");
    }
  }
};

/// |{a_i + a_j + (j - i) : i < j}| by direct evaluation.
inline std::int64_t pair_length_count(std::span<const std::int64_t> a) {
  if (a.size() < 2) throw InputError("need at least two terms");
  std::int64_t top = 0;
  for (auto x : a) {
    if (x < 0) throw InputError("terms must be non-negative");
    top = std::max(top, x);
  }
  const auto n = static_cast<std::int64_t>(a.size());
  std::vector<char> seen(static_cast<std::size_t>(2 * top + n), 0);
  std::int64_t count = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      auto& s = seen[static_cast<std::size_t>(a[static_cast<std::size_t>(i)] + a[static_cast<std::size_t>(j)] + (j - i))];
      if (!s) {
        s = 1;
        ++count;
      }
    }
  }
  return count;
}

inline std::int64_t pair_length_count(const PairLengthInstance& inst) {
  inst.validate();
  return pair_length_count(inst.a);
}

enum class SearchMode { exhaustive, random };

struct PairLengthSearch {
  std::int64_t n = 2;
  std::int64_t cap = 0;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t budget = 1'000'000;  // sequences to evaluate
  std::uint64_t seed = 0x5eed;
  unsigned workers = 1;
};

struct PairLengthMinimum {
  std::int64_t value = 0;
  std::vector<std::int64_t> argmin;  // lexicographically smallest among those found
  std::uint64_t evaluated = 0;
};

namespace detail {

inline void offer(PairLengthMinimum& best, std::int64_t value, const std::vector<std::int64_t>& a) {
  if (best.argmin.empty() || value < best.value || (value == best.value && a < best.argmin)) {
    best.value = value;
    best.argmin = a;
  }
}

inline PairLengthMinimum reduce(std::vector<PairLengthMinimum>& parts) {
  PairLengthMinimum out;
  for (const auto& p : parts) {
    if (!p.argmin.empty()) offer(out, p.value, p.argmin);
    out.evaluated += p.evaluated;
  }
  return out;
}

inline constexpr std::uint64_t kRandomChunk = 4096;

}  // namespace detail

/// Minimum of pair_length_count over sequences of length n with terms in
/// [0, cap]. Exhaustive mode walks all (cap+1)^n sequences in lexicographic
/// order; random mode draws `budget` sequences from chunked generators
/// seeded by (seed, chunk), so the result does not depend on `workers`.
inline PairLengthMinimum pair_length_min(const PairLengthSearch& s) {
  if (s.n < 2) throw InputError("n must be at least 2");
  if (s.cap < 0) throw InputError("cap must be non-negative");
  const unsigned workers = std::max(1u, s.workers);
  std::vector<PairLengthMinimum> parts(workers);
  const auto base = static_cast<std::uint64_t>(s.cap + 1);

  if (s.mode == SearchMode::exhaustive) {
    const auto total = sat_pow(base, static_cast<std::uint64_t>(s.n));
    if (total > s.budget) {
      throw LimitError("exhaustive search needs " + std::to_string(s.cap + 1) + "^" + std::to_string(s.n) +
                       " sequences, above the budget of " + std::to_string(s.budget));
    }
    parallel_chunks(workers, static_cast<std::size_t>(total), [&](unsigned w, std::size_t begin, std::size_t end) {
      std::vector<std::int64_t> a(static_cast<std::size_t>(s.n));
      std::uint64_t rank = begin;
      for (std::int64_t i = s.n - 1; i >= 0; --i) {
        a[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rank % base);
        rank /= base;
      }
      for (std::size_t r = begin; r < end; ++r) {
        detail::offer(parts[w], pair_length_count(a), a);
        ++parts[w].evaluated;
        for (std::int64_t i = s.n - 1; i >= 0; --i) {
          auto& x = a[static_cast<std::size_t>(i)];
          if (x < s.cap) {
            ++x;
            break;
          }
          x = 0;
        }
      }
    });
    return detail::reduce(parts);
  }

  if (s.budget == 0) throw InputError("random search needs a positive budget");
  const auto chunks = (s.budget + detail::kRandomChunk - 1) / detail::kRandomChunk;
  parallel_chunks(workers, static_cast<std::size_t>(chunks), [&](unsigned w, std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> a(static_cast<std::size_t>(s.n));
    for (std::size_t c = begin; c < end; ++c) {
      std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                        static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
      std::mt19937_64 rng(seq);
      const auto first = c * detail::kRandomChunk;
      const auto last = std::min<std::uint64_t>(s.budget, first + detail::kRandomChunk);
      for (auto k = first; k < last; ++k) {
        // Plain modulo; distribution objects differ between standard libraries.
        for (auto& x : a) x = static_cast<std::int64_t>(rng() % base);
        detail::offer(parts[w], pair_length_count(a), a);
        ++parts[w].evaluated;
      }
    }
  });
  return detail::reduce(parts);
}

/// Pair lengths certified through a shift set: all pairs (1, j) on the plus
/// side or (i, n) on the minus side. A lower bound for pair_length_count.
inline std::int64_t shift_set_pair_bound(std::span<const std::int64_t> a, std::int64_t cap) {
  const auto r = shift_set(a, std::max<std::int64_t>(1, cap));
  return static_cast<std::int64_t>(r.values.size()) - 1;
}

// ---------------------------------------------------------------------------
// Short lengths in a given tree
// ---------------------------------------------------------------------------

struct ShortSpectrumReport {
  std::int64_t N = 0;
  std::size_t count = 0;  // |spectrum within [0, N]|
  double ratio = 0.0;     // count / (N + 1)
  int diameter = 0;
  LengthSet in_range;
  std::size_t max_witnessed = 0;  // largest |witnessed_in_range| over leaves
  Vertex max_witness_leaf = 0;
  std::optional<ShortPathResult> witness;  // when the short-path preconditions hold
  std::string witness_skipped;             // reason when they do not
};

inline ShortSpectrumReport short_spectrum_report(const Tree& t, std::int64_t N, const SpectrumOptions& options = {}) {
  if (N < 0) throw InputError("N must be non-negative");
  const auto leaf_ids = leaves(t);
  require_work(sat_mul(leaf_ids.size(), static_cast<std::uint64_t>(t.size())), options.limits, "short spectrum report");
  const auto n = static_cast<std::size_t>(t.size());
  const auto bound = static_cast<std::size_t>(std::min<std::int64_t>(N, static_cast<std::int64_t>(n)));
  const unsigned workers = std::max(1u, options.workers);
  std::vector<std::vector<char>> masks(workers, std::vector<char>(bound + 1, 0));
  std::vector<std::size_t> per_leaf(leaf_ids.size(), 0);
  parallel_chunks(workers, leaf_ids.size(), [&](unsigned w, std::size_t begin, std::size_t end) {
    std::vector<char> mine(bound + 1);
    for (std::size_t i = begin; i < end; ++i) {
      const auto dist = bfs_distances(t, leaf_ids[i]);
      std::fill(mine.begin(), mine.end(), 0);
      for (Vertex u : leaf_ids) {
        const auto d = static_cast<std::size_t>(dist[static_cast<std::size_t>(u)]);
        if (d <= bound) mine[d] = 1;
      }
      per_leaf[i] = static_cast<std::size_t>(std::count(mine.begin(), mine.end(), 1));
      for (std::size_t d = 0; d <= bound; ++d) masks[w][d] |= mine[d];
    }
  });
  std::vector<char> merged(bound + 1, 0);
  for (const auto& m : masks) {
    for (std::size_t d = 0; d <= bound; ++d) merged[d] |= m[d];
  }

  ShortSpectrumReport r;
  r.N = N;
  r.in_range = LengthSet::from_mask(merged);
  r.count = r.in_range.size();
  r.ratio = static_cast<double>(r.count) / static_cast<double>(N + 1);
  r.diameter = diameter(t);
  for (std::size_t i = 0; i < leaf_ids.size(); ++i) {
    if (per_leaf[i] > r.max_witnessed) {
      r.max_witnessed = per_leaf[i];
      r.max_witness_leaf = leaf_ids[i];
    }
  }
  bool has_degree_two = false;
  for (Vertex v = 0; v < t.size(); ++v) has_degree_two = has_degree_two || t.degree(v) == 2;
  if (N < 1) {
    r.witness_skipped = "N < 1";
  } else if (has_degree_two) {
    r.witness_skipped = "tree has a vertex of degree 2";
  } else if (r.diameter < N) {
    r.witness_skipped = "diameter below N";
  } else {
    r.witness = short_path_witness(t, N);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Exhaustive audit of the leaf-count bound over 1-3 trees
// ---------------------------------------------------------------------------

struct AuditRow {
  int n = 0;
  std::size_t class_count = 0;
  std::size_t leaf_count = 0;            // (n + 2) / 2
  std::size_t min_spectrum = 0;
  std::size_t max_spectrum = 0;
  std::size_t bound = 0;                 // smallest k with 2^k >= leaves
  std::size_t violations = 0;            // classes with 2^k < leaves
  std::size_t certificate_failures = 0;  // certificates missing their bound
  std::size_t min_certificate = 0;
  std::vector<CanonicalCode> tight;      // classes attaining min_spectrum
};

struct AuditReport {
  std::vector<AuditRow> rows;
  std::size_t total_classes = 0;
  std::size_t total_violations = 0;
  std::size_t total_certificate_failures = 0;
};

inline AuditReport spectrum_audit(int n_max, const EnumerationOptions& options = {}) {
  if (n_max < 2 || n_max % 2 != 0) throw InputError("audit bound must be an even n >= 2");
  AuditReport report;
  for (int n = 2; n <= n_max; n += 2) {
    AuditRow row;
    row.n = n;
    row.leaf_count = static_cast<std::size_t>((n + 2) / 2);
    while ((std::size_t{1} << row.bound) < row.leaf_count) ++row.bound;
    const auto codes = one_three_codes(n, options);
    row.class_count = codes.size();
    row.min_spectrum = static_cast<std::size_t>(-1);
    row.min_certificate = static_cast<std::size_t>(-1);
    for (const auto& code : codes) {
      const Tree t = tree_from_code(code);
      check_invariant(leaves(t).size() == row.leaf_count, "1-3 tree with the wrong leaf count");
      const auto k = leaf_spectrum(t).size();
      if ((std::uint64_t{1} << std::min<std::size_t>(k, 63)) < row.leaf_count) ++row.violations;
      if (k < row.min_spectrum) {
        row.min_spectrum = k;
        row.tight.clear();
      }
      if (k == row.min_spectrum) row.tight.push_back(code);
      row.max_spectrum = std::max(row.max_spectrum, k);
      const auto cert = spectrum_certificate(t);
      if (!cert.bound_holds || cert.certificate.size() > k) ++row.certificate_failures;
      row.min_certificate = std::min(row.min_certificate, cert.certificate.size());
    }
    report.total_classes += row.class_count;
    report.total_violations += row.violations;
    report.total_certificate_failures += row.certificate_failures;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace leafspec
