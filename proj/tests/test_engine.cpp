#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "support.hpp"

using namespace ztdp;

namespace {

CountOptions with_td(const TreeDecomposition& td, EngineKind engine = EngineKind::zeta) {
  CountOptions o;
  o.td = td;
  o.engine = engine;
  return o;
}

CountOptions table_engine() {
  CountOptions o;
  o.engine = EngineKind::table;
  return o;
}

// Space bound from the engine contract with C = 2.
template <class Run>
void expect_space_contract(const Run& run, std::size_t cap) {
  const std::uint64_t bound = 2 * run.metrics.longest_path_nodes * static_cast<std::uint64_t>(run.metrics.width + 2) * (cap + 1);
  EXPECT_LE(run.stats.peak_live_values, bound);
}

}  // namespace

TEST(Evaluate, Examples) {
  auto k2 = make_graph(2, {{0, 1}});
  auto nice = to_modified_nice(single_bag_td(2), k2);
  EXPECT_EQ(evaluate(nice, perfect_matching_spec()).value, 1);

  auto square = grid_graph(GridSpec({2, 2}));
  auto sq_nice = to_modified_nice(grid_balanced_td(GridSpec({2, 2})), square);
  EXPECT_EQ(evaluate(sq_nice, perfect_matching_spec()).value, bf_perfect_matchings(square));

  auto triangle = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(evaluate(to_modified_nice(single_bag_td(3), triangle), perfect_matching_spec()).value, 0);
}

TEST(Evaluate, RejectsBadModulusAndRoot) {
  auto k2 = make_graph(2, {{0, 1}});
  auto nice = to_modified_nice(single_bag_td(2), k2);
  EvalOptions bad;
  bad.modulus = BigInt(1);
  EXPECT_THROW(evaluate(nice, perfect_matching_spec(), bad), std::invalid_argument);

  std::vector<NiceNode> nodes{{NodeKind::leaf, {}, 0, no_node, {}, {}},
                              {NodeKind::introduce_vertex, {0}, 0, no_node, {}, {0}}};
  EXPECT_THROW(evaluate(ModifiedNiceDecomposition(nodes, 1, 1), perfect_matching_spec()), std::invalid_argument);
}

TEST(Evaluate, RankMismatchIsAnInternalError) {
  // a join whose children disagree on bag size
  std::vector<NiceNode> nodes{{NodeKind::leaf, {}, 0, no_node, {}, {}},
                              {NodeKind::introduce_vertex, {0}, 0, no_node, {}, {0}},
                              {NodeKind::leaf, {}, 0, no_node, {}, {}},
                              {NodeKind::join, {0}, 0, no_node, {}, {1, 2}},
                              {NodeKind::forget_vertex, {}, 0, no_node, {}, {3}}};
  EXPECT_THROW(evaluate(ModifiedNiceDecomposition(nodes, 4, 1), perfect_matching_spec()), std::logic_error);
}

TEST(CountPerfectMatchings, Grids) {
  auto cube = grid_graph(GridSpec({2, 2, 2}));
  EXPECT_EQ(count_perfect_matchings(cube).answer, bf_perfect_matchings(cube));
  auto g44 = grid_graph(GridSpec({4, 4}));
  EXPECT_EQ(count_perfect_matchings(g44).answer, count_perfect_matchings(g44, table_engine()).answer);
  EXPECT_EQ(count_perfect_matchings(grid_graph(GridSpec({3, 3}))).answer, 0);
  EXPECT_EQ(count_perfect_matchings(make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}})).answer, 0);
}

TEST(CountPerfectMatchings, EmptyGraphHasOneMatching) {
  EXPECT_EQ(count_perfect_matchings(make_graph(0, {})).answer, 1);
  EXPECT_EQ(count_perfect_matchings(make_graph(0, {}), table_engine()).answer, 1);
}

TEST(CountPerfectMatchings, MultigraphCountsParallelEdges) {
  auto g = make_graph(2, {{0, 1}, {0, 1}}, EdgeMultiplicity::multigraph);
  EXPECT_EQ(count_perfect_matchings(g, with_td(single_bag_td(2))).answer, 2);
  EXPECT_EQ(bf_perfect_matchings(g), 2);
}

TEST(MatchingPolynomial, Examples) {
  EXPECT_EQ(matching_polynomial(make_graph(2, {{0, 1}})).answer, (std::vector<BigInt>{1, 1}));
  auto path = make_graph(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(matching_polynomial(path).answer, bf_matchings_by_size(path));
  auto square = grid_graph(GridSpec({2, 2}));
  EXPECT_EQ(matching_polynomial(square).answer, bf_matchings_by_size(square));
  EXPECT_EQ(matching_polynomial(square).answer, (std::vector<BigInt>{1, 4, 2}));
}

TEST(SetCovers, Examples) {
  EXPECT_EQ(count_set_covers(Hypergraph(1, {{0}})).answer, 1);
  Hypergraph two(2, {{0}, {1}, {0, 1}});
  EXPECT_EQ(count_set_covers(two).answer, bf_set_covers(two));
  EXPECT_EQ(count_dominating_sets(make_graph(2, {{0, 1}})).answer, testkit::brute_dominating_sets(make_graph(2, {{0, 1}})));
  EXPECT_EQ(count_set_covers(Hypergraph(3, {{0}, {1}})).answer, 0);
  EXPECT_EQ(count_set_covers(Hypergraph(0, {})).answer, 1);
}

TEST(Packings, Examples) {
  EXPECT_EQ(count_l_packings(Hypergraph(2, {{0}, {1}}), 2).answer, 1);
  Hypergraph chain(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(count_l_packings(chain, 0).answer, 1);
  EXPECT_EQ(count_l_packings(chain, 2).answer, bf_l_packings(chain, 2));
  EXPECT_THROW(count_l_packings(chain, 4), std::invalid_argument);
}

TEST(TableDp, Examples) {
  auto g33 = GridSpec({3, 3});
  EXPECT_EQ(count_perfect_matchings(grid_graph(g33), with_td(grid_path_decomposition(g33), EngineKind::table)).answer, 0);
  auto g23 = grid_graph(GridSpec({2, 3}));
  EXPECT_EQ(count_perfect_matchings(g23, table_engine()).answer, bf_perfect_matchings(g23));
}

TEST(TableDp, MemoryGuard) {
  auto g = grid_graph(GridSpec({4, 4}));
  CountOptions o = table_engine();
  o.table.max_memory_bytes = 64;
  EXPECT_THROW(count_perfect_matchings(g, o), TableGuardError);

  ::setenv("ZTDP_MAX_MEMORY", "100", 1);
  EXPECT_EQ(TableDpOptions::from_environment().max_memory_bytes, 100u);
  ::setenv("ZTDP_MAX_MEMORY", "lots", 1);
  EXPECT_THROW(TableDpOptions::from_environment(), std::invalid_argument);
  ::unsetenv("ZTDP_MAX_MEMORY");
  EXPECT_FALSE(TableDpOptions::from_environment().max_memory_bytes.has_value());
}

TEST(Engines, AgreeWithOraclesUnderEveryDecomposition) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    auto g = testkit::random_connected_graph(1 + rng() % 9, 0.4, rng);
    const auto pm = bf_perfect_matchings(g);
    const auto mp = bf_matchings_by_size(g);
    // imported: a PACE round trip of the balanced decomposition, re-rooted
    auto balanced = balanced_td(g, bfs_separator);
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
    for (std::size_t x = 0; x < balanced.size(); ++x)
      if (balanced.parent(x) != no_parent) tree_edges.push_back({balanced.parent(x), x});
    auto imported = root_tree(balanced.bags(), tree_edges, balanced.size() - 1);
    for (const auto& td : {single_bag_td(g.vertex_count()), balanced, imported}) {
      for (auto engine : {EngineKind::zeta, EngineKind::table}) {
        auto run = count_perfect_matchings(g, with_td(td, engine));
        ASSERT_EQ(run.answer, pm) << "trial " << trial;
        auto poly = matching_polynomial(g, with_td(td, engine));
        ASSERT_EQ(poly.answer, mp) << "trial " << trial;
        EXPECT_EQ(poly.answer[0], 1);
        if (g.vertex_count() >= 2) {
          EXPECT_EQ(poly.answer[1], g.edge_count());
        }
        if (g.vertex_count() % 2 == 0) {
          EXPECT_EQ(poly.answer[g.vertex_count() / 2], run.answer);
        }
        if (engine == EngineKind::zeta) {
          EXPECT_TRUE(path_bound_holds(run.stats.leaf_evaluations, run.leaves, run.metrics.tree_depth_h));
          expect_space_contract(run, 0);
          expect_space_contract(poly, g.vertex_count() / 2);
        }
      }
    }
  }
}

TEST(Engines, SetCoversAndPackingsAgreeWithOracles) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 80; ++trial) {
    auto hg = testkit::random_hypergraph(1 + rng() % 6, 1 + rng() % 6, rng);
    for (auto engine : {EngineKind::zeta, EngineKind::table}) {
      CountOptions o;
      o.engine = engine;
      auto covers = count_set_covers(hg, o);
      ASSERT_EQ(covers.answer, bf_set_covers(hg));
      for (std::size_t l = 0; l <= hg.edge_count(); ++l) {
        auto run = count_l_packings(hg, l, o);
        ASSERT_EQ(run.answer, bf_l_packings(hg, l));
        if (engine == EngineKind::zeta) expect_space_contract(run, l);
      }
    }
  }
}

TEST(Engines, ModularAnswersMatchExactOnes) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testkit::random_connected_graph(2 + rng() % 8, 0.5, rng);
    BigInt m = 2 + rng() % 97;
    CountOptions o;
    o.eval.modulus = m;
    EXPECT_EQ(count_perfect_matchings(g, o).answer, count_perfect_matchings(g).answer % m);
    auto exact = matching_polynomial(g).answer;
    auto mod = matching_polynomial(g, o).answer;
    for (std::size_t i = 0; i < exact.size(); ++i) EXPECT_EQ(mod[i], exact[i] % m);
    o.engine = EngineKind::table;
    EXPECT_EQ(count_perfect_matchings(g, o).answer, count_perfect_matchings(g).answer % m);
  }
}

TEST(Engines, ParallelRunsMatchSerialRuns) {
  auto g = grid_graph(GridSpec({4, 4}));
  auto serial = count_perfect_matchings(g);
  auto poly_serial = matching_polynomial(g);
  for (unsigned threads : {2u, 3u, 8u}) {
    CountOptions o;
    o.eval.threads = threads;
    auto par = count_perfect_matchings(g, o);
    EXPECT_EQ(par.answer, serial.answer);
    EXPECT_EQ(par.stats.leaf_evaluations, serial.stats.leaf_evaluations);
    EXPECT_EQ(par.stats.peak_live_values, serial.stats.peak_live_values);
    auto poly = matching_polynomial(g, o);
    EXPECT_EQ(poly.answer, poly_serial.answer);
    EXPECT_EQ(poly.stats.peak_live_values, poly_serial.stats.peak_live_values);
  }
}

TEST(Engines, PathDecompositionsRespectTheSpaceContract) {
  // the baseline's largest table doubles with n
  for (std::size_t n = 2; n <= 4; ++n) {
    GridSpec spec({n, n});
    auto g = grid_graph(spec);
    auto td = grid_path_decomposition(spec);
    auto zeta = count_perfect_matchings(g, with_td(td));
    auto table = count_perfect_matchings(g, with_td(td, EngineKind::table));
    EXPECT_EQ(table.stats.largest_table, std::uint64_t{1} << (n + 1));
    expect_space_contract(zeta, 0);
  }
}
