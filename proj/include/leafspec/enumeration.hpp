#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "leafspec/limits.hpp"
#include "leafspec/parallel.hpp"
#include "leafspec/tree.hpp"

namespace leafspec {

/// AHU encoding of a tree rooted at its centre: a vertex is "(" followed by
/// its children's codes in sorted order and ")". With two centres the
/// smaller of the two encodings is used. Equal codes <=> isomorphic trees.
struct CanonicalCode {
  std::string code;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

inline std::string rooted_code(const Tree& t, Vertex root) {
  const auto r = bfs(t, root);
  std::vector<std::string> code(static_cast<std::size_t>(t.size()));
  std::vector<std::vector<std::string>> pending(static_cast<std::size_t>(t.size()));
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it);
    auto& kids = pending[v];
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) s += k;
    s += ')';
    kids.clear();
    kids.shrink_to_fit();
    if (*it == root) return s;
    pending[static_cast<std::size_t>(r.parent[v])].push_back(std::move(s));
  }
  return {};
}

inline CanonicalCode canonical_code(const Tree& t) {
  const auto p = longest_path(t);
  const int m = p.length();
  if (m % 2 == 0) return {rooted_code(t, p.vertices[static_cast<std::size_t>(m / 2)])};
  auto a = rooted_code(t, p.vertices[static_cast<std::size_t>((m - 1) / 2)]);
  auto b = rooted_code(t, p.vertices[static_cast<std::size_t>((m + 1) / 2)]);
  return {std::min(a, b)};
}

/// Rebuilds a tree from its code, numbering vertices in preorder.
inline Tree tree_from_code(const CanonicalCode& c) {
  std::vector<Edge> edges;
  std::vector<Vertex> stack;
  Vertex next = 0;
  for (char ch : c.code) {
    if (ch == '(') {
      if (!stack.empty()) edges.push_back({stack.back(), next});
      stack.push_back(next++);
    } else if (ch == ')') {
      if (stack.empty()) throw InputError("unbalanced canonical code");
      stack.pop_back();
    } else {
      throw InputError("unexpected character in canonical code");
    }
  }
  if (!stack.empty() || next == 0) throw InputError("unbalanced canonical code");
  return Tree::from_edges(next, std::move(edges));
}

/// FNV-1a of the code, used to name files.
inline std::uint64_t code_hash(const CanonicalCode& c) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : c.code) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

struct EnumerationOptions {
  Limits limits{};
  unsigned workers = 1;
};

namespace detail {

// All codes of 1-3 trees with two more vertices: subdivide an edge with a
// new vertex w and hang a new leaf z from w.
inline std::set<CanonicalCode> grow_level(const std::vector<CanonicalCode>& level, const EnumerationOptions& options) {
  const unsigned workers = std::max(1u, options.workers);
  std::vector<std::set<CanonicalCode>> found(workers);
  parallel_chunks(workers, level.size(), [&](unsigned w, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Tree parent = tree_from_code(level[i]);
      const Vertex s = parent.size();
      for (const auto& split : parent.edges()) {
        std::vector<Edge> edges;
        edges.reserve(parent.edge_count() + 2);
        for (const auto& e : parent.edges()) {
          if (!(e == split)) edges.push_back(e);
        }
        edges.push_back({split.u, s});
        edges.push_back({s, split.v});
        edges.push_back({s, s + 1});
        found[w].insert(canonical_code(Tree::from_edges(s + 2, std::move(edges))));
      }
    }
  });
  std::set<CanonicalCode> merged;
  for (auto& f : found) merged.merge(f);
  return merged;
}

}  // namespace detail

/// Codes of all 1-3 trees on n vertices, one per isomorphism class, sorted.
inline std::vector<CanonicalCode> one_three_codes(int n, const EnumerationOptions& options = {}) {
  if (n < 2 || n % 2 != 0) {
    throw InputError("1-3 trees exist only for even n >= 2 (got " + std::to_string(n) + ")");
  }
  std::vector<CanonicalCode> level{canonical_code(Tree::from_edges(2, {{0, 1}}))};
  for (int size = 2; size < n; size += 2) {
    require_work(sat_mul(level.size(), static_cast<std::uint64_t>(size) * static_cast<std::uint64_t>(size)),
                 options.limits, "1-3 tree enumeration");
    auto next = detail::grow_level(level, options);
    level.assign(next.begin(), next.end());
  }
  return level;
}

/// Streams each class representative (rebuilt from its code) in code order.
inline void for_each_one_three_tree(int n, const std::function<void(const CanonicalCode&, const Tree&)>& fn,
                                    const EnumerationOptions& options = {}) {
  for (const auto& c : one_three_codes(n, options)) fn(c, tree_from_code(c));
}

inline std::vector<Tree> enumerate_one_three_trees(int n, const EnumerationOptions& options = {}) {
  std::vector<Tree> out;
  for_each_one_three_tree(n, [&](const CanonicalCode&, const Tree& t) { out.push_back(t); }, options);
  return out;
}

// ---------------------------------------------------------------------------
// Labelled oracle
// ---------------------------------------------------------------------------

/// Decodes a Pruefer sequence over vertices 0..n-1 (length n-2).
inline Tree pruefer_decode(const std::vector<Vertex>& seq) {
  const auto n = static_cast<Vertex>(seq.size() + 2);
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (Vertex x : seq) ++degree[static_cast<std::size_t>(x)];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 1) ready.push(v);
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  for (Vertex x : seq) {
    const Vertex leaf = ready.top();
    ready.pop();
    edges.push_back({leaf, x});
    if (--degree[static_cast<std::size_t>(x)] == 1) ready.push(x);
  }
  const Vertex a = ready.top();
  ready.pop();
  edges.push_back({a, ready.top()});
  return Tree::from_edges(n, std::move(edges));
}

/// Number of isomorphism classes of n-vertex trees whose degrees all lie in
/// `allowed`, by decoding labelled trees. Up to relabelling every class has
/// a representative whose degrees are non-increasing in the vertex id, so
/// only Pruefer sequences for such degree assignments are visited (each
/// distinct permutation of the multiset once).
inline std::size_t pruefer_class_count(int n, const std::set<int>& allowed, const Limits& limits = {}) {
  if (n < 1) throw InputError("n must be positive");
  if (n > 12) throw LimitError("the labelled oracle is limited to n <= 12");
  if (n == 1) return allowed.count(0) ? 1 : 0;

  // Degree sequences d_0 >= d_1 >= ... >= d_{n-1} >= 1 with sum 2n - 2.
  std::vector<std::vector<int>> degree_sequences;
  std::vector<int> current;
  std::function<void(int, int, int)> build = [&](int remaining_vertices, int remaining_sum, int cap) {
    if (remaining_vertices == 0) {
      if (remaining_sum == 0) degree_sequences.push_back(current);
      return;
    }
    for (int d = std::min(cap, remaining_sum - (remaining_vertices - 1)); d >= 1; --d) {
      if (!allowed.count(d)) continue;
      current.push_back(d);
      build(remaining_vertices - 1, remaining_sum - d, d);
      current.pop_back();
    }
  };
  build(n, 2 * n - 2, n - 1);

  std::uint64_t work = 0;
  for (const auto& ds : degree_sequences) {
    // Multinomial (n-2)! / prod (d_v - 1)!, built incrementally.
    std::uint64_t count = 1;
    std::uint64_t placed = 0;
    for (int d : ds) {
      for (int k = 1; k <= d - 1; ++k) {
        ++placed;
        count = sat_mul(count, placed) / static_cast<std::uint64_t>(k);
      }
    }
    work = sat_add(work, count);
  }
  require_work(work, limits, "labelled tree oracle");

  std::set<CanonicalCode> classes;
  for (const auto& ds : degree_sequences) {
    std::vector<Vertex> seq;
    for (std::size_t v = 0; v < ds.size(); ++v) seq.insert(seq.end(), static_cast<std::size_t>(ds[v] - 1), static_cast<Vertex>(v));
    do {
      classes.insert(canonical_code(pruefer_decode(seq)));
    } while (std::next_permutation(seq.begin(), seq.end()));
  }
  return classes.size();
}

}  // namespace leafspec
