#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leafspec/limits.hpp"
#include "leafspec/tree.hpp"

namespace leafspec {

namespace detail {

// Appends a perfect binary tree on `layers` layers whose vertices get ids
// first, first+1, ... in BFS order (children of local k are 2k+1, 2k+2).
inline void append_perfect_binary(std::vector<Edge>& edges, Vertex first, int layers) {
  const std::int64_t count = (std::int64_t{1} << layers) - 1;
  for (std::int64_t k = 1; k < count; ++k) {
    edges.push_back({static_cast<Vertex>(first + (k - 1) / 2), static_cast<Vertex>(first + k)});
  }
}

inline bool is_one_three(const Tree& t) {
  if (t.size() < 2) return false;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (t.degree(v) != 1 && t.degree(v) != 3) return false;
  }
  return true;
}

}  // namespace detail

/// Perfect binary tree on `layers` layers, rooted at vertex 0; children of
/// k are 2k+1 and 2k+2.
inline RootedTree perfect_binary(int layers, const Limits& limits = {}) {
  if (layers < 1) throw InputError("perfect_binary needs at least one layer");
  if (layers > 62) throw LimitError("perfect_binary: too many layers");
  const auto count = (std::uint64_t{1} << layers) - 1;
  require_vertices(count, limits, "perfect binary tree");
  std::vector<Edge> edges;
  edges.reserve(count - 1);
  detail::append_perfect_binary(edges, 0, layers);
  return RootedTree::make(Tree::from_edges(static_cast<Vertex>(count), std::move(edges)), 0);
}

inline std::uint64_t regular_extremal_size(int delta, int d) {
  std::uint64_t total = 1;
  std::uint64_t layer = static_cast<std::uint64_t>(delta);
  for (int depth = 1; depth <= d; ++depth) {
    total = sat_add(total, layer);
    layer = sat_mul(layer, static_cast<std::uint64_t>(delta - 1));
  }
  return total;
}

/// Every internal vertex has degree `delta` and every leaf sits at distance
/// exactly `d` from vertex 0. Ids are assigned in BFS order.
inline Tree perfect_regular_extremal(int delta, int d, const Limits& limits = {}) {
  if (delta < 3) throw InputError("extremal tree needs delta >= 3");
  if (d < 1) throw InputError("extremal tree needs d >= 1");
  const auto count = regular_extremal_size(delta, d);
  require_vertices(count, limits, "extremal tree");
  std::vector<Edge> edges;
  edges.reserve(count - 1);
  std::vector<int> depth{0};
  Vertex next = 1;
  for (Vertex v = 0; v < static_cast<Vertex>(depth.size()); ++v) {
    const int dv = depth[static_cast<std::size_t>(v)];
    if (dv == d) continue;
    const int children = v == 0 ? delta : delta - 1;
    for (int c = 0; c < children; ++c) {
      edges.push_back({v, next++});
      depth.push_back(dv + 1);
    }
  }
  return Tree::from_edges(next, std::move(edges));
}

/// The extremal tree with sister leaves removed until `leaf_target` leaves
/// remain. At most delta-2 leaves go from each group of sisters, taken from
/// the groups in ascending parent order, highest ids first.
inline Tree trimmed_extremal(int delta, int d, std::uint64_t leaf_target, const Limits& limits = {}) {
  if (delta < 3 || d < 1) throw InputError("trimmed extremal tree needs delta >= 3 and d >= 1");
  const auto full = sat_mul(static_cast<std::uint64_t>(delta), sat_pow(static_cast<std::uint64_t>(delta - 1),
                                                                      static_cast<std::uint64_t>(d - 1)));
  // delta (delta-1)^(d-2) < target, multiplied through by (delta-1).
  if (sat_mul(leaf_target, static_cast<std::uint64_t>(delta - 1)) <= full || leaf_target > full) {
    throw InputError("leaf target " + std::to_string(leaf_target) + " outside (" +
                     "delta (delta-1)^(d-2), delta (delta-1)^(d-1)]");
  }
  const Tree base = perfect_regular_extremal(delta, d, limits);
  if (d == 1) {
    // The root is the only parent; keep the first leaf_target leaves.
    std::vector<Vertex> keep;
    for (Vertex v = 1; v <= static_cast<Vertex>(leaf_target); ++v) keep.push_back(v);
    return minimal_spanning_subtree(base, keep).tree;
  }
  std::uint64_t to_delete = full - leaf_target;
  std::vector<char> removed(static_cast<std::size_t>(base.size()), 0);
  // In BFS order the sister groups are consecutive runs of delta-1 leaves.
  const auto leaf_ids = leaves(base);
  for (std::size_t g = 0; g < leaf_ids.size() && to_delete > 0; g += static_cast<std::size_t>(delta - 1)) {
    for (int k = 0; k < delta - 2 && to_delete > 0; ++k) {
      removed[static_cast<std::size_t>(leaf_ids[g + static_cast<std::size_t>(delta - 2 - k)])] = 1;
      --to_delete;
    }
  }
  std::vector<Vertex> keep;
  for (Vertex v : leaf_ids) {
    if (!removed[static_cast<std::size_t>(v)]) keep.push_back(v);
  }
  return minimal_spanning_subtree(base, keep).tree;
}

/// Star with `delta` edges, one of them subdivided n-delta-1 times. Vertex 0
/// is the centre, 1..delta-1 the short leaves, delta..n-1 the long arm.
inline Tree subdivided_star(Vertex n, int delta, const Limits& limits = {}) {
  if (delta < 3) throw InputError("subdivided star needs delta >= 3");
  if (n <= delta + 1) {
    throw InputError("subdivided star needs n > delta + 1 (n = delta + 1 is the plain star)");
  }
  require_vertices(static_cast<std::uint64_t>(n), limits, "subdivided star");
  std::vector<Edge> edges;
  for (Vertex v = 1; v < delta; ++v) edges.push_back({0, v});
  edges.push_back({0, static_cast<Vertex>(delta)});
  for (Vertex v = delta + 1; v < n; ++v) edges.push_back({v - 1, v});
  return Tree::from_edges(n, std::move(edges));
}

// ---------------------------------------------------------------------------
// Tree in which every leaf witnesses few short lengths
// ---------------------------------------------------------------------------

/// i-th term (1-based) of the base sequence for block size m:
/// ceil(i/m) * m - (i mod m). Lies in [1, m^2] and a_i + i = 0 (mod m).
inline std::int64_t sparse_witness_term(std::int64_t m, std::int64_t i) {
  return (i + m - 1) / m * m - i % m;
}

inline std::int64_t integer_cbrt(std::int64_t x) {
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) * (r + 1) <= x) ++r;
  return r;
}

struct SparseWitnessParams {
  std::int64_t N = 0;
  std::int64_t n = 0;
  std::int64_t m = 0;                // floor(N^(1/3))
  std::vector<std::int64_t> base;    // a_1..a_{m^2}
  std::int64_t t = 0;                // number of decorated spine vertices
  std::int64_t L = 0;                // vertex count of the last (trimmed) subtree
  std::int64_t s_before_last = 0;    // 2 + sum_{i<t} 2^{a'_i}
  std::int64_t last_exponent = 0;    // a'_t
  std::int64_t last_layers = 0;      // layers of the tree trimmed down to L
  std::optional<std::uint64_t> S;    // s_before_last + 2^{a'_t} when it fits in 64 bits
  std::vector<std::int64_t> prefix;  // a'_1..a'_t

  std::int64_t term(std::int64_t i) const { return base[static_cast<std::size_t>((i - 1) % (m * m))]; }
};

struct SparseWitnessTree {
  Tree tree;
  SparseWitnessParams params;
};

/// Computes the construction's bookkeeping without building anything.
inline SparseWitnessParams sparse_witness_params(std::int64_t N, std::int64_t n, const Limits& limits = {}) {
  if (n < 6 || n % 2 != 0) throw InputError("vertex count must be even and at least 6");
  SparseWitnessParams p;
  p.N = N;
  p.n = n;
  p.m = integer_cbrt(N);
  if (p.m < 2) throw InputError("N must be at least 8 so that floor(N^(1/3)) >= 2");
  require_vertices(static_cast<std::uint64_t>(n), limits, "sparse witness tree");
  require_work(static_cast<std::uint64_t>(p.m * p.m), limits, "base sequence");
  p.base.reserve(static_cast<std::size_t>(p.m * p.m));
  for (std::int64_t i = 1; i <= p.m * p.m; ++i) p.base.push_back(sparse_witness_term(p.m, i));

  std::uint64_t s = 2;
  std::uint64_t before_last = 2;
  while (s < static_cast<std::uint64_t>(n)) {
    ++p.t;
    const auto a = p.term(p.t);
    p.prefix.push_back(a);
    before_last = s;
    s = sat_add(s, a >= 63 ? kSaturated : std::uint64_t{1} << a);
  }
  p.s_before_last = static_cast<std::int64_t>(before_last);
  p.last_exponent = p.prefix.back();
  if (p.last_exponent < 63 && s != kSaturated) p.S = s;
  p.L = n - (p.s_before_last + 1);
  int layers = 1;
  while ((std::int64_t{1} << layers) - 1 < p.L) ++layers;
  p.last_layers = layers;
  check_invariant(p.L >= 1 && p.L % 2 == 1 && layers <= p.last_exponent, "sparse witness bookkeeping");
  return p;
}

/// Spine v_0..v_{t+1} (ids 0..t+1); v_i carries a perfect binary tree on
/// a'_i layers for i < t, and v_t a binary tree of L vertices obtained by
/// deleting bottom-layer sibling pairs, in ascending parent order, from a
/// perfect binary tree. All degrees are 1 or 3.
inline SparseWitnessTree sparse_witness_tree(std::int64_t N, std::int64_t n, const Limits& limits = {}) {
  auto p = sparse_witness_params(N, n, limits);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  const auto t = static_cast<Vertex>(p.t);
  for (Vertex i = 0; i <= t; ++i) edges.push_back({i, i + 1});
  Vertex next = t + 2;
  for (Vertex i = 1; i < t; ++i) {
    const auto layers = static_cast<int>(p.term(i));
    edges.push_back({i, next});
    detail::append_perfect_binary(edges, next, layers);
    next += static_cast<Vertex>((std::int64_t{1} << layers) - 1);
  }

  const auto layers = p.last_layers;
  const std::int64_t full = (std::int64_t{1} << layers) - 1;
  const std::int64_t pairs = (full - p.L) / 2;
  // Local ids in BFS order; bottom-layer parents start at 2^(layers-2) - 1.
  std::vector<char> keep(static_cast<std::size_t>(full), 1);
  if (pairs > 0) {
    const std::int64_t first_parent = (std::int64_t{1} << (layers - 2)) - 1;
    for (std::int64_t k = 0; k < pairs; ++k) {
      keep[static_cast<std::size_t>(2 * (first_parent + k) + 1)] = 0;
      keep[static_cast<std::size_t>(2 * (first_parent + k) + 2)] = 0;
    }
  }
  std::vector<Vertex> id(static_cast<std::size_t>(full), -1);
  for (std::int64_t k = 0; k < full; ++k) {
    if (keep[static_cast<std::size_t>(k)]) id[static_cast<std::size_t>(k)] = next++;
  }
  edges.push_back({t, id[0]});
  for (std::int64_t k = 1; k < full; ++k) {
    if (keep[static_cast<std::size_t>(k)]) {
      edges.push_back({id[static_cast<std::size_t>((k - 1) / 2)], id[static_cast<std::size_t>(k)]});
    }
  }
  check_invariant(next == n, "sparse witness tree vertex count");
  return {Tree::from_edges(next, std::move(edges)), std::move(p)};
}

// ---------------------------------------------------------------------------
// Sequence embedding
// ---------------------------------------------------------------------------

inline std::uint64_t sequence_tree_size(std::span<const std::int64_t> a, std::int64_t repeats) {
  const auto n = static_cast<std::int64_t>(a.size());
  std::uint64_t total = static_cast<std::uint64_t>(n * repeats + 3);
  for (std::int64_t k = 0; k <= n * repeats; ++k) {
    const auto layers = a[static_cast<std::size_t>(k % n)];
    total = sat_add(total, layers >= 63 ? kSaturated : (std::uint64_t{1} << layers) - 1);
  }
  return total;
}

/// Spine of length n*repeats + 2 (ids 0..n*repeats+2). Interior spine vertex
/// k+1 (k = 0..n*repeats) carries a perfect binary tree on a[k mod n]
/// layers, so the sequence repeats along the spine and the nearest leaf
/// below spine vertex k+1 is at distance a[k mod n].
inline Tree sequence_to_tree(std::span<const std::int64_t> a, std::int64_t repeats, const Limits& limits = {}) {
  if (a.empty()) throw InputError("sequence must be non-empty");
  if (repeats < 1) throw InputError("repeat count must be positive");
  for (auto x : a) {
    if (x < 1) throw InputError("sequence terms must be >= 1 (shift the sequence by +1 to embed zeros)");
  }
  require_vertices(sequence_tree_size(a, repeats), limits, "sequence tree");
  const auto n = static_cast<std::int64_t>(a.size());
  const auto spine_end = static_cast<Vertex>(n * repeats + 2);
  std::vector<Edge> edges;
  for (Vertex v = 0; v < spine_end; ++v) edges.push_back({v, v + 1});
  Vertex next = spine_end + 1;
  for (std::int64_t k = 0; k <= n * repeats; ++k) {
    const auto layers = static_cast<int>(a[static_cast<std::size_t>(k % n)]);
    edges.push_back({static_cast<Vertex>(k + 1), next});
    detail::append_perfect_binary(edges, next, layers);
    next += static_cast<Vertex>((std::int64_t{1} << layers) - 1);
  }
  return Tree::from_edges(next, std::move(edges));
}

// ---------------------------------------------------------------------------
// Closure to a graph of minimum degree 3
// ---------------------------------------------------------------------------

/// A general graph as an edge list (not necessarily a tree).
struct Graph {
  Vertex n = 0;
  std::vector<Edge> edges;  // u < v, sorted
};

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.n << '\n';
  for (const auto& e : g.edges) out << e.u << ' ' << e.v << '\n';
}

/// Adds vertices A = n and B = n+1, joins both to every leaf and to each
/// other. The input must be a 1-3 tree with at least two leaves.
inline Graph degree3_closure(const Tree& t) {
  if (!detail::is_one_three(t)) throw InputError("closure needs a 1-3 tree (all degrees 1 or 3)");
  const Vertex a = t.size();
  const Vertex b = t.size() + 1;
  Graph g{t.size() + 2, t.edges()};
  for (Vertex v : leaves(t)) {
    g.edges.push_back({v, a});
    g.edges.push_back({v, b});
  }
  g.edges.push_back({a, b});
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace leafspec
