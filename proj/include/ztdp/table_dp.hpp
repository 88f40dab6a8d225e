#pragma once

// Exponential-space baseline: full value-space tables f_x[·] over every bag,
// computed bottom-up with the same ProblemSpec the zeta engine uses.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nice.hpp"
#include "problem.hpp"

namespace ztdp {

/// Bags larger than this are refused outright (2^25 entries per table).
inline constexpr std::size_t max_table_bag = 25;

class TableGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TableDpOptions {
  std::optional<BigInt> modulus;
  /// Rough budget for the largest single table; unset means only the
  /// hard 2^25-entry cap applies.
  std::optional<std::uint64_t> max_memory_bytes;

  /// Reads ZTDP_MAX_MEMORY (bytes) when set.
  static TableDpOptions from_environment() {
    TableDpOptions o;
    if (const char* s = std::getenv("ZTDP_MAX_MEMORY"); s && *s) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s, &end, 10);
      if (end == s || *end != '\0') throw std::invalid_argument(std::string("bad ZTDP_MAX_MEMORY: ") + s);
      o.max_memory_bytes = v;
    }
    return o;
  }
};

namespace detail {

inline std::uint32_t insert_bit(std::uint32_t mask, std::size_t pos, bool bit) {
  const std::uint32_t low = (1u << pos) - 1u;
  return (mask & low) | (static_cast<std::uint32_t>(bit) << pos) | ((mask & ~low) << 1);
}

inline std::uint32_t remove_bit(std::uint32_t mask, std::size_t pos) {
  const std::uint32_t low = (1u << pos) - 1u;
  return (mask & low) | ((mask >> (pos + 1)) << pos);
}

inline std::size_t position_in(const Bag& bag, Vertex v) {
  auto it = std::lower_bound(bag.begin(), bag.end(), v);
  if (it == bag.end() || *it != v) throw std::logic_error("vertex " + std::to_string(v) + " missing from bag");
  return static_cast<std::size_t>(it - bag.begin());
}

inline std::uint64_t value_bytes(const IntegerRing&) { return sizeof(BigInt); }
inline std::uint64_t value_bytes(const PolynomialRing& r) { return sizeof(Polynomial) + (r.cap() + 1) * sizeof(BigInt); }

}  // namespace detail

template <CountingRing Ring>
Evaluation<typename Ring::value_type> table_dp_evaluate(const ModifiedNiceDecomposition& nice,
                                                        const ProblemSpec<Ring>& spec,
                                                        const TableDpOptions& options = {}) {
  using Value = typename Ring::value_type;
  using Table = std::vector<Value>;
  const auto start = std::chrono::steady_clock::now();

  if (!nice.node(nice.root()).bag.empty()) throw std::invalid_argument("decomposition root bag is not empty");
  std::size_t widest = 0;
  for (const auto& n : nice.nodes()) widest = std::max(widest, n.bag.size());
  if (widest > max_table_bag)
    throw TableGuardError("bag of " + std::to_string(widest) + " vertices exceeds the table limit of " +
                          std::to_string(max_table_bag));
  const ProblemSpec<Ring> p = with_modulus(spec, options.modulus);
  const Ring& ring = p.ring;
  if (options.max_memory_bytes) {
    const std::uint64_t need = (std::uint64_t{1} << widest) * detail::value_bytes(ring);
    if (need > *options.max_memory_bytes)
      throw TableGuardError("largest table needs about " + std::to_string(need) + " bytes, limit is " +
                            std::to_string(*options.max_memory_bytes));
  }

  EvalStats stats;
  std::uint64_t live = 0;
  std::vector<Table> tables(nice.size());
  auto publish = [&](std::size_t x, Table t) {
    live += t.size();
    stats.table_entries_total += t.size();
    stats.largest_table = std::max<std::uint64_t>(stats.largest_table, t.size());
    stats.table_entries_peak = std::max(stats.table_entries_peak, live);
    tables[x] = std::move(t);
  };
  auto consume = [&](std::size_t c) {
    live -= tables[c].size();
    return std::move(tables[c]);
  };

  // post-order without recursion
  std::vector<std::pair<std::size_t, bool>> stack{{nice.root(), false}};
  while (!stack.empty()) {
    auto [x, expanded] = stack.back();
    stack.pop_back();
    const NiceNode& n = nice.node(x);
    if (!expanded) {
      stack.push_back({x, true});
      for (auto c : n.children) stack.push_back({c, false});
      continue;
    }
    const std::uint32_t size = 1u << n.bag.size();
    Table out(size, ring.zero());
    switch (n.kind) {
      case NodeKind::leaf:
        ++stats.leaf_evaluations;
        out[0] = p.leaf_value;
        break;
      case NodeKind::aux_leaf: {
        ++stats.leaf_evaluations;
        auto [empty_value, edge_value] = p.aux_value(n.edge);
        std::uint32_t emask = 0;
        for (Vertex v : n.members) emask |= 1u << detail::position_in(n.bag, v);
        out[0] = empty_value;
        ring.add_to(out[emask], edge_value);
        break;
      }
      case NodeKind::introduce_vertex: {
        Table child = consume(n.children[0]);
        const std::size_t pos = detail::position_in(n.bag, n.vertex);
        for (std::uint32_t m = 0; m < size; ++m)
          if (!(m >> pos & 1u)) out[m] = std::move(child[detail::remove_bit(m, pos)]);
        break;
      }
      case NodeKind::forget_vertex: {
        Table child = consume(n.children[0]);
        const std::size_t pos = detail::position_in(nice.node(n.children[0]).bag, n.vertex);
        for (std::uint32_t m = 0; m < size; ++m) {
          out[m] = child[detail::insert_bit(m, pos, true)];
          if (p.forget_mode == ForgetMode::may_skip) ring.add_to(out[m], child[detail::insert_bit(m, pos, false)]);
        }
        break;
      }
      case NodeKind::join:
      case NodeKind::introduce_edge: {
        Table left = consume(n.children[0]);
        Table right = consume(n.children[1]);
        std::vector<std::uint32_t> support;
        for (std::uint32_t b = 0; b < size; ++b)
          if (!ring.is_zero(right[b])) support.push_back(b);
        for (std::uint32_t a = 0; a < size; ++a) {
          if (ring.is_zero(left[a])) continue;
          for (auto b : support) {
            if (p.join_mode == JoinMode::disjoint_ranked) {
              if ((a & b) == 0) ring.mul_add(out[a | b], left[a], right[b]);
            } else {
              ring.mul_add(out[a | b], left[a], right[b]);
            }
          }
        }
        break;
      }
    }
    publish(x, std::move(out));
  }
  stats.peak_live_values = stats.table_entries_peak;
  stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(tables[nice.root()][0]), stats};
}

}  // namespace ztdp
