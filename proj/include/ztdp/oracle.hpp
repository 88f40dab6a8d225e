#pragma once

// Brute-force references. Nothing here uses transforms or decompositions;
// they enumerate the combinatorial objects directly and refuse inputs that
// are too large to enumerate.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "ring.hpp"

namespace ztdp {

class OracleBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleBudget {
  std::size_t max_vertices = 20;            // perfect matchings
  std::size_t max_edges = 64;               // matchings by size
  std::size_t max_sets = 22;                // set covers, packings
  std::size_t max_universe = 64;            // set covers, packings
  std::size_t max_tree_depth_vertices = 12;  // exact tree-depth
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw OracleBudgetError("oracle budget exceeded: " + what);
}

inline std::vector<std::uint64_t> set_masks(const Hypergraph& hg) {
  std::vector<std::uint64_t> masks;
  for (const auto& e : hg.hyperedges()) {
    std::uint64_t m = 0;
    for (Vertex v : e) m |= std::uint64_t{1} << v;
    masks.push_back(m);
  }
  return masks;
}

}  // namespace detail

/// Pairs the lowest uncovered vertex with each uncovered neighbour in turn.
inline BigInt bf_perfect_matchings(const Graph& g, const OracleBudget& budget = {}) {
  const std::size_t n = g.vertex_count();
  detail::require(n <= budget.max_vertices, std::to_string(n) + " vertices");
  if (n % 2) return 0;
  // incident edge lists so parallel edges count separately
  std::vector<std::vector<Vertex>> other(n);
  for (const auto& e : g.edges()) {
    other[e.u].push_back(e.v);
    other[e.v].push_back(e.u);
  }
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1u;
  auto rec = [&](auto& self, std::uint32_t covered) -> BigInt {
    if (covered == full) return 1;
    const Vertex v = static_cast<Vertex>(std::countr_one(covered));
    BigInt total = 0;
    for (Vertex w : other[v])
      if (!(covered >> w & 1u)) total += self(self, covered | (1u << v) | (1u << w));
    return total;
  };
  return rec(rec, 0);
}

/// Entry i counts matchings with i edges, for i = 0..⌊n/2⌋. Walks edge
/// subsets in index order, abandoning a branch as soon as two chosen edges
/// share a vertex.
inline std::vector<BigInt> bf_matchings_by_size(const Graph& g, const OracleBudget& budget = {}) {
  detail::require(g.edge_count() <= budget.max_edges, std::to_string(g.edge_count()) + " edges");
  detail::require(g.vertex_count() <= 64, std::to_string(g.vertex_count()) + " vertices");
  std::vector<BigInt> counts(g.vertex_count() / 2 + 1, 0);
  const auto& edges = g.edges();
  auto rec = [&](auto& self, std::size_t next, std::uint64_t used, std::size_t size) -> void {
    if (next == edges.size()) {
      counts[size] += 1;
      return;
    }
    self(self, next + 1, used, size);
    const std::uint64_t both = (std::uint64_t{1} << edges[next].u) | (std::uint64_t{1} << edges[next].v);
    if (!(used & both)) self(self, next + 1, used | both, size + 1);
  };
  rec(rec, 0, 0, 0);
  return counts;
}

/// Number of subcollections (by index) whose union is the whole universe.
inline BigInt bf_set_covers(const Hypergraph& hg, const OracleBudget& budget = {}) {
  detail::require(hg.edge_count() <= budget.max_sets, std::to_string(hg.edge_count()) + " sets");
  detail::require(hg.universe_size() <= budget.max_universe && hg.universe_size() <= 64,
                  "universe of " + std::to_string(hg.universe_size()));
  const auto masks = detail::set_masks(hg);
  const std::uint64_t universe =
      hg.universe_size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << hg.universe_size()) - 1;
  std::uint64_t count = 0;
  const std::uint64_t subsets = std::uint64_t{1} << masks.size();
  for (std::uint64_t pick = 0; pick < subsets; ++pick) {
    std::uint64_t cover = 0;
    for (std::size_t i = 0; i < masks.size(); ++i)
      if (pick >> i & 1u) cover |= masks[i];
    if (cover == universe) ++count;
  }
  return count;
}

/// Number of l-element subcollections (by index) of pairwise disjoint sets.
inline BigInt bf_l_packings(const Hypergraph& hg, std::size_t l, const OracleBudget& budget = {}) {
  detail::require(hg.edge_count() <= budget.max_sets, std::to_string(hg.edge_count()) + " sets");
  detail::require(hg.universe_size() <= budget.max_universe && hg.universe_size() <= 64,
                  "universe of " + std::to_string(hg.universe_size()));
  const auto masks = detail::set_masks(hg);
  std::uint64_t count = 0;
  const std::uint64_t subsets = std::uint64_t{1} << masks.size();
  for (std::uint64_t pick = 0; pick < subsets; ++pick) {
    if (static_cast<std::size_t>(std::popcount(pick)) != l) continue;
    std::uint64_t seen = 0;
    bool disjoint = true;
    for (std::size_t i = 0; i < masks.size() && disjoint; ++i)
      if (pick >> i & 1u) {
        disjoint = !(seen & masks[i]);
        seen |= masks[i];
      }
    if (disjoint) ++count;
  }
  return count;
}

/// td(G): 0 for the empty graph, the maximum over components when
/// disconnected, otherwise 1 + min over v of td(G - v). Memoised on vertex
/// subsets.
inline std::size_t exact_tree_depth(const Graph& g, const OracleBudget& budget = {}) {
  const std::size_t n = g.vertex_count();
  detail::require(n <= budget.max_tree_depth_vertices && n < 32, std::to_string(n) + " vertices");
  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  constexpr std::uint8_t unknown = 0xff;
  std::vector<std::uint8_t> memo(std::size_t{1} << n, unknown);
  auto component_of = [&](std::uint32_t set, std::uint32_t seed) {
    std::uint32_t comp = seed, frontier = seed;
    while (frontier) {
      std::uint32_t grow = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) grow |= adj[std::countr_zero(f)];
      grow &= set & ~comp;
      comp |= grow;
      frontier = grow;
    }
    return comp;
  };
  auto td = [&](auto& self, std::uint32_t set) -> std::uint8_t {
    if (set == 0) return 0;
    if (memo[set] != unknown) return memo[set];
    std::uint8_t best;
    const std::uint32_t first = component_of(set, set & -set);
    if (first != set) {
      best = std::max(self(self, first), self(self, set & ~first));
    } else {
      best = unknown;
      for (std::uint32_t rest = set; rest; rest &= rest - 1) {
        const std::uint32_t v = rest & -rest;
        best = std::min<std::uint8_t>(best, static_cast<std::uint8_t>(1 + self(self, set & ~v)));
      }
    }
    return memo[set] = best;
  };
  return td(td, n == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1));
}

}  // namespace ztdp
