#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leafspec/limits.hpp"
#include "leafspec/sequences.hpp"
#include "leafspec/spectrum.hpp"
#include "leafspec/tree.hpp"

namespace leafspec {

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

struct WitnessEntry {
  Vertex partner;
  int length;
  friend bool operator==(const WitnessEntry&, const WitnessEntry&) = default;
};

/// A leaf together with partner leaves at pairwise distinct distances. The
/// entry of length 0 has the witness as its own partner.
struct WitnessCertificate {
  Vertex witness = 0;
  std::vector<WitnessEntry> entries;  // sorted by length

  std::size_t size() const noexcept { return entries.size(); }

  LengthSet lengths() const {
    std::vector<int> v;
    for (const auto& e : entries) v.push_back(e.length);
    return LengthSet(std::move(v));
  }
};

struct PathEntry {
  Vertex u;
  Vertex v;
  int length;
};

/// Leaf pairs with pairwise distinct distances.
struct PathCertificate {
  std::vector<PathEntry> entries;  // sorted by length

  std::size_t size() const noexcept { return entries.size(); }

  LengthSet lengths() const {
    std::vector<int> v;
    for (const auto& e : entries) v.push_back(e.length);
    return LengthSet(std::move(v));
  }
};

namespace detail {

inline void require_leaf(const Tree& t, Vertex v, const char* role) {
  check_invariant(v >= 0 && v < t.size() && t.is_leaf(v),
                  std::string("certificate ") + role + " " + std::to_string(v) + " is not a leaf");
}

}  // namespace detail

/// Recomputes every distance by BFS; throws InvariantError on any mismatch,
/// repeated length or non-leaf endpoint.
inline void verify(const Tree& t, const WitnessCertificate& c) {
  detail::require_leaf(t, c.witness, "witness");
  const auto dist = bfs_distances(t, c.witness);
  check_invariant(c.lengths().size() == c.entries.size(), "certificate lengths are not distinct");
  bool has_zero = false;
  for (const auto& e : c.entries) {
    detail::require_leaf(t, e.partner, "partner");
    check_invariant(dist[static_cast<std::size_t>(e.partner)] == e.length,
                    "certificate claims d(" + std::to_string(c.witness) + ", " + std::to_string(e.partner) +
                        ") = " + std::to_string(e.length) + " but BFS gives " +
                        std::to_string(dist[static_cast<std::size_t>(e.partner)]));
    has_zero = has_zero || (e.length == 0 && e.partner == c.witness);
  }
  check_invariant(has_zero, "certificate lacks the length-0 entry");
}

inline void verify(const Tree& t, const PathCertificate& c) {
  check_invariant(!c.entries.empty(), "empty path certificate");
  check_invariant(c.lengths().size() == c.entries.size(), "certificate lengths are not distinct");
  std::map<Vertex, std::vector<int>> cache;
  for (const auto& e : c.entries) {
    detail::require_leaf(t, e.u, "endpoint");
    detail::require_leaf(t, e.v, "endpoint");
    auto it = cache.find(e.u);
    if (it == cache.end()) it = cache.emplace(e.u, bfs_distances(t, e.u)).first;
    check_invariant(it->second[static_cast<std::size_t>(e.v)] == e.length,
                    "certificate claims d(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") = " +
                        std::to_string(e.length));
  }
}

// ---------------------------------------------------------------------------
// Many lengths from many equally deep leaves
// ---------------------------------------------------------------------------

struct EqualDepthResult {
  WitnessCertificate certificate;
  int depth = 0;                 // common depth a of the marked leaves
  std::size_t marked_count = 0;  // m
  int delta = 0;
  bool low_degree_root = false;  // root degree <= delta-1: stronger bound applies
  bool bound_holds = false;
  std::string bound_form;
};

/// (delta-1)^(k-2) * delta >= m, multiplied through by (delta-1)^2 so it
/// stays integral for k < 2.
inline bool equal_depth_bound(std::uint64_t k, std::uint64_t m, int delta) {
  const auto d1 = static_cast<std::uint64_t>(delta - 1);
  return sat_mul(sat_pow(d1, k), static_cast<std::uint64_t>(delta)) >= sat_mul(m, d1 * d1);
}

/// Walks down from the root. Whenever the marked leaves below the current
/// vertex c are split over several children, records a partner in another
/// child (their paths to the final witness meet at c, so the length is
/// 2(a - depth c)) and continues into the child holding the most marked
/// leaves. Ties go to the smallest id.
///
/// The result satisfies (delta-1)^(k-2) * delta >= m, and
/// (delta-1)^(k-1) >= m when the root has degree at most delta-1.
inline EqualDepthResult equal_depth_witness(const RootedTree& rt, std::span<const Vertex> marked, int delta) {
  const Tree& t = rt.tree;
  if (delta < 3) throw InputError("delta must be at least 3");
  if (marked.empty()) throw InputError("marked leaf set is empty");
  if (t.max_degree() > delta) {
    throw InputError("tree has maximum degree " + std::to_string(t.max_degree()) + " > delta = " +
                     std::to_string(delta));
  }
  const auto n = static_cast<std::size_t>(t.size());
  std::vector<char> is_marked(n, 0);
  const int a = rt.depth[static_cast<std::size_t>(marked.front())];
  for (Vertex x : marked) {
    check_vertex(t, x, "marked vertex");
    if (!t.is_leaf(x)) throw InputError("marked vertex " + std::to_string(x) + " is not a leaf");
    if (rt.depth[static_cast<std::size_t>(x)] != a) {
      throw InputError("marked leaves are not all at depth " + std::to_string(a));
    }
    if (is_marked[static_cast<std::size_t>(x)]) throw InputError("marked vertex listed twice");
    is_marked[static_cast<std::size_t>(x)] = 1;
  }

  // Marked counts and smallest marked id per subtree.
  std::vector<std::size_t> count(n, 0);
  std::vector<Vertex> smallest(n, t.size());
  for (auto it = rt.order.rbegin(); it != rt.order.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it);
    if (is_marked[v]) {
      ++count[v];
      smallest[v] = std::min(smallest[v], *it);
    }
    if (*it != rt.root) {
      const auto p = static_cast<std::size_t>(rt.parent[v]);
      count[p] += count[v];
      smallest[p] = std::min(smallest[p], smallest[v]);
    }
  }

  EqualDepthResult r;
  r.depth = a;
  r.marked_count = marked.size();
  r.delta = delta;
  Vertex c = rt.root;
  while (!is_marked[static_cast<std::size_t>(c)]) {
    Vertex richest = -1;
    for (Vertex w : rt.children(c)) {
      const auto cw = count[static_cast<std::size_t>(w)];
      if (cw > 0 && (richest < 0 || cw > count[static_cast<std::size_t>(richest)])) richest = w;
    }
    check_invariant(richest >= 0, "no marked leaf below an internal vertex");
    Vertex partner = t.size();
    for (Vertex w : rt.children(c)) {
      if (w != richest) partner = std::min(partner, smallest[static_cast<std::size_t>(w)]);
    }
    if (partner < t.size()) {
      r.certificate.entries.push_back({partner, 2 * (a - rt.depth[static_cast<std::size_t>(c)])});
    }
    c = richest;
  }
  r.certificate.witness = c;
  r.certificate.entries.push_back({c, 0});
  std::sort(r.certificate.entries.begin(), r.certificate.entries.end(),
            [](const WitnessEntry& x, const WitnessEntry& y) { return x.length < y.length; });
  verify(t, r.certificate);

  const auto k = static_cast<std::uint64_t>(r.certificate.size());
  const auto m = static_cast<std::uint64_t>(marked.size());
  r.low_degree_root = t.degree(rt.root) <= delta - 1;
  if (r.low_degree_root) {
    r.bound_holds = sat_pow(static_cast<std::uint64_t>(delta - 1), k - 1) >= m;
    r.bound_form = "(delta-1)^(k-1) >= m: " + std::to_string(delta - 1) + "^" + std::to_string(k - 1) +
                   " >= " + std::to_string(m);
  } else {
    r.bound_holds = equal_depth_bound(k, m, delta);
    r.bound_form = "(delta-1)^(k-2)*delta >= m: " + std::to_string(delta - 1) + "^(" + std::to_string(k) +
                   "-2)*" + std::to_string(delta) + " >= " + std::to_string(m);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Many lengths from many leaves: recursive certificate
// ---------------------------------------------------------------------------

enum class ReductionStep { base, far_side, minor_branches, equal_depth };

inline const char* to_string(ReductionStep s) {
  switch (s) {
    case ReductionStep::base: return "base";
    case ReductionStep::far_side: return "far_side";
    case ReductionStep::minor_branches: return "minor_branches";
    case ReductionStep::equal_depth: return "equal_depth";
  }
  return "?";
}

struct SpectrumCertificateResult {
  PathCertificate certificate;
  int delta = 0;               // maximum degree of the input
  std::size_t leaf_count = 0;  // of the input
  std::vector<ReductionStep> steps;
  bool bound_holds = false;
  std::string bound_form;
};

/// (delta-1)^k >= (delta-2) * leaves; vacuous for delta <= 2.
inline bool leaf_count_bound(std::uint64_t k, std::uint64_t leaf_count, int delta) {
  if (delta <= 2) return true;
  return sat_pow(static_cast<std::uint64_t>(delta - 1), k) >= sat_mul(static_cast<std::uint64_t>(delta - 2), leaf_count);
}

/// Certifies at least log_{delta-1}((delta-2) * leaves) distinct leaf-to-leaf
/// lengths by repeatedly shrinking the tree. With hub v and diameter m:
///  - far_side: some leaf is farther than m/2 from v; drop the smaller of the
///    two leaf classes at the longest-path distances from v, record m;
///  - minor_branches: every longest path has both halves of length m/2 and
///    few leaves sit at distance m/2; keep only those in the richest branch
///    at v, record m;
///  - equal_depth: many leaves at distance m/2; finish with the equal-depth
///    witness rooted at v.
/// Each shrink keeps a minimal spanning subtree of the surviving leaves, so
/// its lengths are lengths of the input and its diameter drops below m.
inline SpectrumCertificateResult spectrum_certificate(const Tree& input) {
  SpectrumCertificateResult r;
  r.delta = input.max_degree();
  r.leaf_count = leaves(input).size();
  const int delta = r.delta;
  const auto d1sq = static_cast<std::int64_t>(delta - 1) * (delta - 1);

  Subtree cur{input, {}};
  cur.original.resize(static_cast<std::size_t>(input.size()));
  std::iota(cur.original.begin(), cur.original.end(), 0);
  auto host = [&](Vertex v) { return cur.original[static_cast<std::size_t>(v)]; };
  auto& out = r.certificate.entries;

  for (;;) {
    const Tree& t = cur.tree;
    const auto leaf_ids = leaves(t);
    const auto ell = static_cast<std::int64_t>(leaf_ids.size());
    if (t.size() == 1) {
      r.steps.push_back(ReductionStep::base);
      out.push_back({host(0), host(0), 0});
      break;
    }
    const auto path = longest_path(t);
    const int m = path.length();
    if (ell <= std::max(delta, 2)) {
      r.steps.push_back(ReductionStep::base);
      out.push_back({host(path.front()), host(path.front()), 0});
      out.push_back({host(path.front()), host(path.back()), m});
      break;
    }
    const Vertex v = hub_vertex(t);
    const auto from_v = bfs(t, v);
    auto dist = [&](Vertex x) { return from_v.distance[static_cast<std::size_t>(x)]; };
    int far = 0;
    for (Vertex x : leaf_ids) far = std::max(far, dist(x));

    std::vector<char> drop(static_cast<std::size_t>(t.size()), 0);
    if (2 * far > m) {
      r.steps.push_back(ReductionStep::far_side);
      std::vector<Vertex> near_class, far_class;
      for (Vertex x : leaf_ids) {
        if (dist(x) == far) far_class.push_back(x);
        if (dist(x) == m - far) near_class.push_back(x);
      }
      const auto& smaller = far_class.size() <= near_class.size() ? far_class : near_class;
      for (Vertex x : smaller) drop[static_cast<std::size_t>(x)] = 1;
    } else {
      check_invariant(2 * far == m, "hub is not on every longest path");
      std::vector<Vertex> rim;
      for (Vertex x : leaf_ids) {
        if (dist(x) == far) rim.push_back(x);
      }
      if (static_cast<std::int64_t>(rim.size()) * d1sq < (d1sq - 1) * ell) {
        r.steps.push_back(ReductionStep::minor_branches);
        // Branch of each vertex = its first step away from v.
        std::vector<Vertex> branch(static_cast<std::size_t>(t.size()), -1);
        for (Vertex x : from_v.order) {
          if (x == v) continue;
          const Vertex p = from_v.parent[static_cast<std::size_t>(x)];
          branch[static_cast<std::size_t>(x)] = p == v ? x : branch[static_cast<std::size_t>(p)];
        }
        std::map<Vertex, std::size_t> per_branch;
        for (Vertex x : rim) ++per_branch[branch[static_cast<std::size_t>(x)]];
        Vertex richest = per_branch.begin()->first;
        for (const auto& [b, c] : per_branch) {
          if (c > per_branch[richest]) richest = b;
        }
        for (Vertex x : rim) {
          if (branch[static_cast<std::size_t>(x)] != richest) drop[static_cast<std::size_t>(x)] = 1;
        }
      } else {
        r.steps.push_back(ReductionStep::equal_depth);
        const auto sub = equal_depth_witness(RootedTree::make(t, v), rim, delta);
        for (const auto& e : sub.certificate.entries) {
          out.push_back({host(sub.certificate.witness), host(e.partner), e.length});
        }
        break;
      }
    }

    out.push_back({host(path.front()), host(path.back()), m});
    std::vector<Vertex> keep;
    for (Vertex x : leaf_ids) {
      if (!drop[static_cast<std::size_t>(x)]) keep.push_back(x);
    }
    check_invariant(!keep.empty() && keep.size() < leaf_ids.size(), "reduction step removed no leaves");
    auto next = minimal_spanning_subtree(t, keep);
    for (auto& id : next.original) id = host(id);
    cur = std::move(next);
  }

  std::sort(out.begin(), out.end(), [](const PathEntry& a, const PathEntry& b) { return a.length < b.length; });
  verify(input, r.certificate);
  const auto k = static_cast<std::uint64_t>(r.certificate.size());
  r.bound_holds = leaf_count_bound(k, r.leaf_count, delta);
  r.bound_form = "(delta-1)^k >= (delta-2)*leaves: " + std::to_string(delta - 1) + "^" + std::to_string(k) +
                 " >= " + std::to_string(delta - 2) + "*" + std::to_string(r.leaf_count);
  return r;
}

// ---------------------------------------------------------------------------
// Many short lengths in trees without degree-2 vertices
// ---------------------------------------------------------------------------

enum class Branch { deep, shallow };

inline const char* to_string(Branch b) { return b == Branch::deep ? "deep" : "shallow"; }

struct ShortPathResult {
  WitnessCertificate certificate;
  Branch branch = Branch::shallow;
  std::int64_t N = 0;
  std::int64_t pivot = 0;            // deep: the path index i used
  std::int64_t cap = 0;              // largest c with 8c^3 <= N^2
  std::vector<std::int64_t> offsets;  // shallow: a_1..a_N
  std::optional<ShiftSetResult> shift;
  int group_depth = 0;               // deep: common distance of the marked group
  std::size_t group_size = 0;
  bool bound_holds = false;          // 27 k^3 >= N^2
  bool bound_asserted = false;       // shallow and N >= 1000
  std::string bound_form;
};

/// 8 d^3 > N^2, i.e. d > N^(2/3) / 2.
constexpr bool deeper_than_threshold(std::int64_t d, std::int64_t N) {
  const auto du = static_cast<std::uint64_t>(d);
  const auto nu = static_cast<std::uint64_t>(N);
  return sat_mul(8, sat_mul(du, sat_mul(du, du))) > sat_mul(nu, nu);
}

/// Takes a longest path v_0..v_M and looks at the pieces T_1..T_N hanging off
/// v_1..v_N. If some piece has all its leaves deeper than N^(2/3)/2 (deep),
/// a binary subtree of it yields many equally deep leaves and the
/// equal-depth witness applies. Otherwise (shallow) the nearest leaves x_i
/// at distances a_i give lengths a_i + a_j + (j - i); a shift set picks
/// distinct ones witnessed by x_1 (plus side) or x_N (minus side).
/// All certified lengths are at most 2N.
inline ShortPathResult short_path_witness(const Tree& t, std::int64_t N) {
  if (N < 1) throw InputError("N must be positive");
  for (Vertex v = 0; v < t.size(); ++v) {
    if (t.degree(v) == 2) throw InputError("tree has a vertex of degree 2 (vertex " + std::to_string(v) + ")");
  }
  const auto path = longest_path(t);
  if (path.length() < N) {
    throw InputError("diameter " + std::to_string(path.length()) + " is below N = " + std::to_string(N));
  }
  const auto pieces = off_path_components(t, path);

  ShortPathResult r;
  r.N = N;
  while (!deeper_than_threshold(r.cap + 1, N)) ++r.cap;

  // Nearest leaf (other than the attachment vertex) of each piece.
  struct Nearest {
    Vertex leaf;  // host id
    std::int64_t distance;
  };
  std::vector<Nearest> nearest(static_cast<std::size_t>(N) + 1);
  std::int64_t deep_index = 0;
  for (std::int64_t i = 1; i <= N; ++i) {
    const auto& piece = pieces[static_cast<std::size_t>(i)];
    const auto& rt = piece.rooted;
    Nearest best{path.vertices[static_cast<std::size_t>(i)], 0};
    if (rt.tree.size() > 1) {
      best.distance = -1;
      for (Vertex x : rt.order) {
        if (x == rt.root || rt.tree.degree(x) != 1) continue;
        const auto d = rt.depth[static_cast<std::size_t>(x)];
        const Vertex h = piece.original[static_cast<std::size_t>(x)];
        if (best.distance < 0 || d < best.distance || (d == best.distance && h < best.leaf)) best = {h, d};
      }
      if (deep_index == 0 && deeper_than_threshold(best.distance, N)) deep_index = i;
    }
    nearest[static_cast<std::size_t>(i)] = best;
  }

  if (deep_index > 0) {
    r.branch = Branch::deep;
    r.pivot = deep_index;
    const auto& piece = pieces[static_cast<std::size_t>(deep_index)];
    const auto& rt = piece.rooted;
    const Tree& pt = rt.tree;
    // Binary subtree: root -> u, then the two smallest-id children of every
    // internal vertex below u.
    Vertex u = -1;
    for (Vertex w : pt.neighbors(rt.root)) {
      if (pt.degree(w) > 1) {
        u = w;
        break;
      }
    }
    if (u < 0) u = pt.neighbors(rt.root)[0];
    std::vector<Vertex> members{rt.root, u};
    std::vector<Edge> local_edges;
    std::vector<Vertex> index(static_cast<std::size_t>(pt.size()), -1);
    index[static_cast<std::size_t>(rt.root)] = 0;
    index[static_cast<std::size_t>(u)] = 1;
    local_edges.push_back({0, 1});
    for (std::size_t head = 1; head < members.size(); ++head) {
      const Vertex x = members[head];
      int taken = 0;
      for (Vertex w : pt.neighbors(x)) {
        if (w == rt.parent[static_cast<std::size_t>(x)] || taken == 2) continue;
        ++taken;
        index[static_cast<std::size_t>(w)] = static_cast<Vertex>(members.size());
        local_edges.push_back({index[static_cast<std::size_t>(x)], index[static_cast<std::size_t>(w)]});
        members.push_back(w);
      }
    }
    auto binary = RootedTree::make(Tree::from_edges(static_cast<Vertex>(members.size()), std::move(local_edges)), 0);
    std::map<int, std::vector<Vertex>> by_depth;
    for (Vertex x = 1; x < binary.tree.size(); ++x) {
      if (binary.tree.degree(x) == 1) by_depth[binary.depth[static_cast<std::size_t>(x)]].push_back(x);
    }
    auto group = by_depth.begin();
    for (auto it = by_depth.begin(); it != by_depth.end(); ++it) {
      if (it->second.size() > group->second.size()) group = it;
    }
    r.group_depth = group->first;
    r.group_size = group->second.size();
    const auto sub = equal_depth_witness(binary, group->second, 3);
    auto to_host = [&](Vertex x) {
      return piece.original[static_cast<std::size_t>(members[static_cast<std::size_t>(x)])];
    };
    r.certificate.witness = to_host(sub.certificate.witness);
    for (const auto& e : sub.certificate.entries) r.certificate.entries.push_back({to_host(e.partner), e.length});
  } else {
    r.branch = Branch::shallow;
    for (std::int64_t i = 1; i <= N; ++i) r.offsets.push_back(nearest[static_cast<std::size_t>(i)].distance);
    r.shift = shift_set(r.offsets, std::max<std::int64_t>(1, r.cap));
    const bool plus = r.shift->side == Side::plus;
    const std::int64_t anchor = plus ? 1 : N;
    const auto a_anchor = r.offsets[static_cast<std::size_t>(anchor - 1)];
    r.certificate.witness = nearest[static_cast<std::size_t>(anchor)].leaf;
    r.certificate.entries.push_back({r.certificate.witness, 0});
    for (std::size_t k = 0; k < r.shift->indices.size(); ++k) {
      const auto i = r.shift->indices[k];
      if (i == anchor) continue;
      const auto length = plus ? a_anchor - 1 + r.shift->values[k] : a_anchor + N + r.shift->values[k];
      r.certificate.entries.push_back({nearest[static_cast<std::size_t>(i)].leaf, static_cast<int>(length)});
    }
    std::sort(r.certificate.entries.begin(), r.certificate.entries.end(),
              [](const WitnessEntry& x, const WitnessEntry& y) { return x.length < y.length; });
  }

  verify(t, r.certificate);
  for (const auto& e : r.certificate.entries) {
    check_invariant(e.length <= 2 * N, "certified length exceeds 2N");
    check_invariant(r.branch == Branch::shallow || e.length % 2 == 0, "deep-branch length is odd");
  }
  const auto k = static_cast<std::uint64_t>(r.certificate.size());
  const auto nu = static_cast<std::uint64_t>(N);
  r.bound_holds = sat_mul(27, sat_mul(k, sat_mul(k, k))) >= sat_mul(nu, nu);
  r.bound_asserted = r.branch == Branch::shallow && N >= 1000;
  r.bound_form = "27*k^3 >= N^2: 27*" + std::to_string(k) + "^3 >= " + std::to_string(N) + "^2";
  return r;
}

}  // namespace leafspec
