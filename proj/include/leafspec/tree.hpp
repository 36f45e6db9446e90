#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leafspec/errors.hpp"

namespace leafspec {

using Vertex = std::int32_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Failure while reading or validating an edge list. `line` is 1-based and 0
/// when the problem is not tied to a particular line.
class ParseError : public InputError {
 public:
  enum class Kind { malformed, out_of_range, self_loop, duplicate_edge, cycle, disconnected };

  ParseError(Kind kind, int line, const std::string& what)
      : InputError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        kind_(kind),
        line_(line) {}

  Kind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }

 private:
  Kind kind_;
  int line_;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// An unrooted tree on vertices 0..n-1. Immutable once built; adjacency is
/// stored compressed with each neighbour list sorted ascending.
class Tree {
 public:
  /// Validates and builds. `lines` optionally carries the source line of
  /// each edge so errors point back into the document.
  static Tree from_edges(Vertex n, std::vector<Edge> edges, std::span<const int> lines = {}) {
    auto line_of = [&](std::size_t i) { return i < lines.size() ? lines[i] : 0; };
    if (n < 1) throw ParseError(ParseError::Kind::malformed, 0, "a tree needs at least one vertex");
    detail::DisjointSets sets(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto& e = edges[i];
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
        throw ParseError(ParseError::Kind::out_of_range, line_of(i),
                         "vertex id out of range [0, " + std::to_string(n) + ")");
      }
      if (e.u == e.v) {
        throw ParseError(ParseError::Kind::self_loop, line_of(i), "self-loop at vertex " + std::to_string(e.u));
      }
      if (e.u > e.v) std::swap(e.u, e.v);
      if (!sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) {
        const bool dup = std::find(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(i), e) !=
                         edges.begin() + static_cast<std::ptrdiff_t>(i);
        if (dup) {
          throw ParseError(ParseError::Kind::duplicate_edge, line_of(i),
                           "duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
        }
        throw ParseError(ParseError::Kind::cycle, line_of(i),
                         "cycle detected by edge " + std::to_string(e.u) + " " + std::to_string(e.v));
      }
    }
    if (edges.size() + 1 != static_cast<std::size_t>(n)) {
      throw ParseError(ParseError::Kind::disconnected, 0,
                       "disconnected input: " + std::to_string(n) + " vertices need " + std::to_string(n - 1) +
                           " edges, got " + std::to_string(edges.size()));
    }
    std::sort(edges.begin(), edges.end());
    return Tree(n, std::move(edges));
  }

  Vertex size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    const auto i = static_cast<std::size_t>(v);
    return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  int degree(Vertex v) const {
    const auto i = static_cast<std::size_t>(v);
    return static_cast<int>(offsets_[i + 1] - offsets_[i]);
  }

  int max_degree() const {
    int best = 0;
    for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
  }

  bool is_leaf(Vertex v) const { return n_ == 1 || degree(v) == 1; }

  bool adjacent(Vertex a, Vertex b) const {
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  friend bool operator==(const Tree& a, const Tree& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  Tree(Vertex n, std::vector<Edge> sorted_edges) : n_(n), edges_(std::move(sorted_edges)) {
    offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[static_cast<std::size_t>(e.u) + 1];
      ++offsets_[static_cast<std::size_t>(e.v) + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(offsets_.back());
    auto fill = offsets_;
    // Edges are sorted by (u, v), so both directions are appended in
    // ascending order and every neighbour list ends up sorted.
    for (const auto& e : edges_) adjacency_[fill[static_cast<std::size_t>(e.v)]++] = e.u;
    for (const auto& e : edges_) adjacency_[fill[static_cast<std::size_t>(e.u)]++] = e.v;
    for (Vertex v = 0; v < n; ++v) {
      auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[static_cast<std::size_t>(v)]);
      auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[static_cast<std::size_t>(v) + 1]);
      std::sort(first, last);
    }
  }

  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

// ---------------------------------------------------------------------------
// Edge-list text format
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Parses whitespace-separated integers; nullopt on any stray character.
inline std::optional<std::vector<std::int64_t>> parse_integers(std::string_view s) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i == s.size()) break;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), value);
    if (ec != std::errc{}) return std::nullopt;
    const auto next = static_cast<std::size_t>(ptr - s.data());
    if (next < s.size() && s[next] != ' ' && s[next] != '\t') return std::nullopt;
    out.push_back(value);
    i = next;
  }
  return out;
}

}  // namespace detail

/// Reads the edge-list format: '#' comment lines, then n, then n-1 lines
/// "u v". Blank lines are ignored.
inline Tree parse_tree(std::istream& in) {
  std::string raw;
  int line_no = 0;
  std::optional<std::int64_t> n;
  std::vector<Edge> edges;
  std::vector<int> lines;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto values = detail::parse_integers(line);
    if (!n) {
      if (!values || values->size() != 1) {
        throw ParseError(ParseError::Kind::malformed, line_no, "expected a single vertex count");
      }
      if ((*values)[0] < 1 || (*values)[0] > std::int64_t{1} << 30) {
        throw ParseError(ParseError::Kind::malformed, line_no, "vertex count must be in [1, 2^30]");
      }
      n = (*values)[0];
      continue;
    }
    if (!values || values->size() != 2) {
      throw ParseError(ParseError::Kind::malformed, line_no, "expected an edge \"u v\"");
    }
    const auto u = (*values)[0];
    const auto v = (*values)[1];
    if (u < 0 || u >= *n || v < 0 || v >= *n) {
      throw ParseError(ParseError::Kind::out_of_range, line_no,
                       "vertex id out of range [0, " + std::to_string(*n) + ")");
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    lines.push_back(line_no);
    if (edges.size() >= static_cast<std::size_t>(*n)) {
      // One edge too many always closes a cycle; let validation name it.
      return Tree::from_edges(static_cast<Vertex>(*n), std::move(edges), lines);
    }
  }
  if (!n) throw ParseError(ParseError::Kind::malformed, line_no, "missing vertex count");
  return Tree::from_edges(static_cast<Vertex>(*n), std::move(edges), lines);
}

inline Tree parse_tree(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tree(in);
}

/// Writes n followed by the edges in lexicographic order.
inline void write_tree(std::ostream& out, const Tree& t) {
  out << t.size() << '\n';
  for (const auto& e : t.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const Tree& t) {
  std::ostringstream out;
  write_tree(out, t);
  return out.str();
}

// ---------------------------------------------------------------------------
// Basic queries
// ---------------------------------------------------------------------------

/// Degree-1 vertices in ascending order; a lone vertex counts as a leaf.
inline std::vector<Vertex> leaves(const Tree& t) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (t.is_leaf(v)) out.push_back(v);
  }
  return out;
}

inline void check_vertex(const Tree& t, Vertex v, const char* what) {
  if (v < 0 || v >= t.size()) {
    throw InputError(std::string(what) + " " + std::to_string(v) + " is not a vertex of the tree");
  }
}

struct BfsResult {
  std::vector<int> distance;
  std::vector<Vertex> parent;  // source maps to itself
  std::vector<Vertex> order;   // visit order
};

inline BfsResult bfs(const Tree& t, Vertex source) {
  check_vertex(t, source, "source");
  const auto n = static_cast<std::size_t>(t.size());
  BfsResult r{std::vector<int>(n, -1), std::vector<Vertex>(n, -1), {}};
  r.order.reserve(n);
  r.distance[static_cast<std::size_t>(source)] = 0;
  r.parent[static_cast<std::size_t>(source)] = source;
  r.order.push_back(source);
  for (std::size_t head = 0; head < r.order.size(); ++head) {
    const Vertex v = r.order[head];
    const int next = r.distance[static_cast<std::size_t>(v)] + 1;
    for (Vertex w : t.neighbors(v)) {
      auto& d = r.distance[static_cast<std::size_t>(w)];
      if (d < 0) {
        d = next;
        r.parent[static_cast<std::size_t>(w)] = v;
        r.order.push_back(w);
      }
    }
  }
  return r;
}

inline std::vector<int> bfs_distances(const Tree& t, Vertex source) { return bfs(t, source).distance; }

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

/// An ordered vertex sequence; consecutive vertices are adjacent in the host.
struct PathRecord {
  std::vector<Vertex> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
};

inline bool is_path_of(const Tree& t, const PathRecord& p) {
  if (p.vertices.empty()) return false;
  std::vector<char> seen(static_cast<std::size_t>(t.size()), 0);
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    const Vertex v = p.vertices[i];
    if (v < 0 || v >= t.size() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
    if (i > 0 && !t.adjacent(p.vertices[i - 1], v)) return false;
  }
  return true;
}

namespace detail {

inline Vertex farthest(const std::vector<int>& distance) {
  Vertex best = 0;
  for (std::size_t v = 1; v < distance.size(); ++v) {
    if (distance[v] > distance[static_cast<std::size_t>(best)]) best = static_cast<Vertex>(v);
  }
  return best;
}

}  // namespace detail

/// Double sweep: a = farthest from 0, b = farthest from a (ties to smallest
/// id). Returns the path a..b.
inline PathRecord longest_path(const Tree& t) {
  const Vertex a = detail::farthest(bfs_distances(t, 0));
  const auto from_a = bfs(t, a);
  Vertex b = detail::farthest(from_a.distance);
  PathRecord p;
  for (Vertex v = b;; v = from_a.parent[static_cast<std::size_t>(v)]) {
    p.vertices.push_back(v);
    if (v == a) break;
  }
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

inline int diameter(const Tree& t) { return longest_path(t).length(); }

/// A vertex on every longest path, moved off a leaf when possible. For
/// diameter 1 both vertices are leaves and either may come back.
inline Vertex hub_vertex(const Tree& t) {
  if (t.size() < 2) throw InputError("hub_vertex needs at least two vertices");
  const auto p = longest_path(t);
  const int m = p.length();
  Vertex hub = p.vertices[static_cast<std::size_t>(m % 2 == 0 ? m / 2 : (m - 1) / 2)];
  if (t.degree(hub) == 1) hub = t.neighbors(hub)[0];
  return hub;
}

// ---------------------------------------------------------------------------
// Rooted trees and sub-structures
// ---------------------------------------------------------------------------

/// A tree with a distinguished root, parent pointers and depths from a BFS.
struct RootedTree {
  Tree tree;
  Vertex root = 0;
  std::vector<Vertex> parent;  // root maps to itself
  std::vector<int> depth;
  std::vector<Vertex> order;  // BFS order from the root

  static RootedTree make(Tree t, Vertex root) {
    auto r = bfs(t, root);
    return RootedTree{std::move(t), root, std::move(r.parent), std::move(r.distance), std::move(r.order)};
  }

  std::vector<Vertex> children(Vertex v) const {
    std::vector<Vertex> out;
    for (Vertex w : tree.neighbors(v)) {
      if (w != parent[static_cast<std::size_t>(v)]) out.push_back(w);
    }
    return out;
  }
};

/// A re-indexed piece of a larger tree. `original[i]` is the host id of
/// local vertex i; local ids follow ascending host ids.
struct Subtree {
  Tree tree;
  std::vector<Vertex> original;
};

namespace detail {

// Builds the subtree induced by `member` (must be connected in the host).
inline Subtree induced(const Tree& t, const std::vector<char>& member) {
  std::vector<Vertex> local(static_cast<std::size_t>(t.size()), -1);
  std::vector<Vertex> original;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (member[static_cast<std::size_t>(v)]) {
      local[static_cast<std::size_t>(v)] = static_cast<Vertex>(original.size());
      original.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : t.edges()) {
    if (member[static_cast<std::size_t>(e.u)] && member[static_cast<std::size_t>(e.v)]) {
      edges.push_back({local[static_cast<std::size_t>(e.u)], local[static_cast<std::size_t>(e.v)]});
    }
  }
  return {Tree::from_edges(static_cast<Vertex>(original.size()), std::move(edges)), std::move(original)};
}

}  // namespace detail

/// Smallest subtree containing every vertex of `keep`: strips non-kept
/// leaves until none remain. Every leaf of the result is in `keep`.
inline Subtree minimal_spanning_subtree(const Tree& t, std::span<const Vertex> keep) {
  if (keep.empty()) throw InputError("minimal_spanning_subtree needs a non-empty keep set");
  const auto n = static_cast<std::size_t>(t.size());
  std::vector<char> kept(n, 0);
  for (Vertex v : keep) {
    check_vertex(t, v, "kept vertex");
    kept[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<char> alive(n, 1);
  std::vector<int> deg(n);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < t.size(); ++v) {
    deg[static_cast<std::size_t>(v)] = t.degree(v);
    if (!kept[static_cast<std::size_t>(v)] && deg[static_cast<std::size_t>(v)] <= 1) queue.push_back(v);
  }
  while (!queue.empty()) {
    const Vertex v = queue.back();
    queue.pop_back();
    alive[static_cast<std::size_t>(v)] = 0;
    for (Vertex w : t.neighbors(v)) {
      const auto wi = static_cast<std::size_t>(w);
      if (alive[wi] && --deg[wi] == 1 && !kept[wi]) queue.push_back(w);
    }
  }
  return detail::induced(t, alive);
}

/// The piece of the host hanging off one path vertex.
struct Component {
  RootedTree rooted;           // local ids, rooted at the path vertex
  std::vector<Vertex> original;  // local -> host ids
};

/// For each vertex v_i of `p`, the component of t minus the edges of p that
/// contains v_i, rooted at v_i.
inline std::vector<Component> off_path_components(const Tree& t, const PathRecord& p) {
  if (!is_path_of(t, p)) throw InputError("off_path_components: not a path of the tree");
  const auto n = static_cast<std::size_t>(t.size());
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < p.vertices.size(); ++i) owner[static_cast<std::size_t>(p.vertices[i])] = static_cast<int>(i);

  // Flood from every path vertex without stepping onto other path vertices;
  // in a tree this is exactly removing the path edges.
  std::vector<std::vector<Vertex>> members(p.vertices.size());
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    auto& list = members[i];
    list.push_back(p.vertices[i]);
    for (std::size_t head = 0; head < list.size(); ++head) {
      for (Vertex w : t.neighbors(list[head])) {
        auto& o = owner[static_cast<std::size_t>(w)];
        if (o < 0) {
          o = static_cast<int>(i);
          list.push_back(w);
        }
      }
    }
  }

  std::vector<Component> out;
  out.reserve(p.vertices.size());
  std::vector<Vertex> local(n, -1);
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    auto ids = members[i];
    std::sort(ids.begin(), ids.end());
    for (std::size_t k = 0; k < ids.size(); ++k) local[static_cast<std::size_t>(ids[k])] = static_cast<Vertex>(k);
    std::vector<Edge> edges;
    edges.reserve(ids.size() - 1);
    for (Vertex v : ids) {
      for (Vertex w : t.neighbors(v)) {
        // Path edges join different owners, so they are skipped here.
        if (v < w && owner[static_cast<std::size_t>(w)] == static_cast<int>(i)) {
          edges.push_back({local[static_cast<std::size_t>(v)], local[static_cast<std::size_t>(w)]});
        }
      }
    }
    auto tree = Tree::from_edges(static_cast<Vertex>(ids.size()), std::move(edges));
    const Vertex root = local[static_cast<std::size_t>(p.vertices[i])];
    out.push_back({RootedTree::make(std::move(tree), root), std::move(ids)});
  }
  return out;
}

}  // namespace leafspec
