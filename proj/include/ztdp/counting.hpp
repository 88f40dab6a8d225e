#pragma once

// The four counting problems as ProblemSpecs, plus one-call wrappers that
// pick a decomposition, convert it to modified nice form and evaluate.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "decompose.hpp"
#include "engine.hpp"
#include "graph.hpp"
#include "nice.hpp"
#include "problem.hpp"
#include "table_dp.hpp"
#include "tree_decomposition.hpp"

namespace ztdp {

/// Grid graphs get the hyperplane construction, everything else the BFS
/// separator recursion.
inline TreeDecomposition default_decomposition(const Graph& g) {
  if (g.grid()) return grid_balanced_td(*g.grid());
  return balanced_td(g, bfs_separator);
}

/// Decomposes the primal graph; every hyperedge is a clique there, so some
/// bag contains it.
inline TreeDecomposition default_decomposition(const Hypergraph& hg) {
  return balanced_td(primal_graph(hg), bfs_separator);
}

inline ProblemSpec<IntegerRing> perfect_matching_spec() {
  IntegerRing ring;
  return {"pm", ring, JoinMode::disjoint_ranked, ForgetMode::must_cover,
          [ring](std::size_t) { return std::pair{ring.one(), ring.one()}; }, ring.one(), std::nullopt};
}

/// Edges weighted by λ; the root value is Σ_i m^i λ^i.
inline ProblemSpec<PolynomialRing> matching_polynomial_spec(std::size_t vertex_count) {
  PolynomialRing ring(vertex_count / 2);
  return {"matchpoly", ring, JoinMode::disjoint_ranked, ForgetMode::may_skip,
          [ring](std::size_t) { return std::pair{ring.one(), ring.monomial(1, 1)}; }, ring.one(), std::nullopt};
}

inline ProblemSpec<IntegerRing> set_cover_spec() {
  IntegerRing ring;
  return {"setcover", ring, JoinMode::union_rank_free, ForgetMode::must_cover,
          [ring](std::size_t) { return std::pair{ring.one(), ring.one()}; }, ring.one(), std::nullopt};
}

inline ProblemSpec<PolynomialRing> packing_spec(std::size_t l) {
  PolynomialRing ring(l);
  return {"packings", ring, JoinMode::disjoint_ranked, ForgetMode::may_skip,
          [ring](std::size_t) { return std::pair{ring.one(), ring.monomial(1, 1)}; }, ring.one(), l};
}

enum class EngineKind { zeta, table };

struct CountOptions {
  std::optional<TreeDecomposition> td;
  EngineKind engine = EngineKind::zeta;
  EvalOptions eval;
  TableDpOptions table;
};

template <class Answer>
struct CountRun {
  Answer answer;
  EvalStats stats;
  DecompositionMetrics metrics;  // of the modified nice decomposition
  std::size_t leaves = 0;
};

/// leaf_evaluations ≤ leaves · 2^h.
inline bool path_bound_holds(std::uint64_t leaf_evaluations, std::size_t leaves, std::size_t h) {
  if (h >= 63) return true;
  const BigInt bound = BigInt(leaves) << static_cast<unsigned>(h);
  return BigInt(leaf_evaluations) <= bound;
}

template <CountingRing Ring>
Evaluation<typename Ring::value_type> run_engine(const ModifiedNiceDecomposition& nice, const ProblemSpec<Ring>& spec,
                                                 const CountOptions& options) {
  if (options.engine == EngineKind::table) {
    TableDpOptions t = options.table;
    if (!t.modulus) t.modulus = options.eval.modulus;
    return table_dp_evaluate(nice, spec, t);
  }
  return evaluate(nice, spec, options.eval);
}

namespace detail {

template <class Input, CountingRing Ring, class Extract>
auto count_with(const Input& input, const ProblemSpec<Ring>& spec, const CountOptions& options, Extract extract) {
  const TreeDecomposition td = options.td ? *options.td : default_decomposition(input);
  const auto nice = to_modified_nice(td, input);
  auto ev = run_engine(nice, spec, options);
  using Answer = decltype(extract(std::move(ev.value)));
  CountRun<Answer> run{extract(std::move(ev.value)), ev.stats, metrics(nice), nice.leaf_count()};
  return run;
}

}  // namespace detail

inline CountRun<BigInt> count_perfect_matchings(const Graph& g, const CountOptions& options = {}) {
  return detail::count_with(g, perfect_matching_spec(), options, [](BigInt v) { return v; });
}

/// Coefficients m^0..m^{⌊n/2⌋}, m^i = number of matchings with i edges.
inline CountRun<std::vector<BigInt>> matching_polynomial(const Graph& g, const CountOptions& options = {}) {
  return detail::count_with(g, matching_polynomial_spec(g.vertex_count()), options,
                            [](Polynomial p) { return std::move(p.coeffs); });
}

inline CountRun<BigInt> count_set_covers(const Hypergraph& hg, const CountOptions& options = {}) {
  std::vector<char> covered(hg.universe_size(), 0);
  for (const auto& e : hg.hyperedges())
    for (Vertex v : e) covered[v] = 1;
  for (char c : covered)
    if (!c) return {BigInt(0), {}, {}, 0};
  return detail::count_with(hg, set_cover_spec(), options, [](BigInt v) { return v; });
}

/// Dominating sets of g = set covers of the closed neighbourhoods. A
/// supplied decomposition must be valid for that hypergraph.
inline CountRun<BigInt> count_dominating_sets(const Graph& g, const CountOptions& options = {}) {
  return count_set_covers(closed_neighborhood_hypergraph(g), options);
}

inline CountRun<BigInt> count_l_packings(const Hypergraph& hg, std::size_t l, const CountOptions& options = {}) {
  if (l > hg.edge_count())
    throw std::invalid_argument("l = " + std::to_string(l) + " exceeds the " + std::to_string(hg.edge_count()) +
                                " available sets");
  return detail::count_with(hg, packing_spec(l), options, [l](Polynomial p) { return std::move(p.coeffs.at(l)); });
}

}  // namespace ztdp
