#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "support.hpp"

using namespace ztdp;

namespace {

template <class T, class Write, class Read>
T round_trip(const T& value, Write write, Read read) {
  std::stringstream buf;
  write(buf, value);
  return read(buf);
}

Graph graph_trip(const Graph& g) {
  return round_trip(g, [](std::ostream& o, const Graph& x) { write_graph(o, x); },
                    [](std::istream& i) { return read_graph(i); });
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

TdFile parse_td(const std::string& text) {
  std::istringstream in(text);
  return read_td(in);
}

}  // namespace

TEST(GraphFormat, Examples) {
  auto g = parse_graph("c a path\np gr 3 2\n1 2\n2 3\n");
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_FALSE(g.grid().has_value());
}

TEST(GraphFormat, RoundTrips) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testkit::random_connected_graph(1 + rng() % 12, 0.3, rng);
    EXPECT_EQ(graph_trip(g), g);
  }
  auto grid = grid_graph(GridSpec({3, 4}));
  auto back = graph_trip(grid);
  EXPECT_EQ(back, grid);
  ASSERT_TRUE(back.grid().has_value());
  EXPECT_EQ(*back.grid(), GridSpec({3, 4}));

  auto multi = make_graph(2, {{0, 1}, {0, 1}}, EdgeMultiplicity::multigraph);
  auto mback = graph_trip(multi);
  EXPECT_EQ(mback.multiplicity(), EdgeMultiplicity::multigraph);
  EXPECT_EQ(mback.edge_count(), 2u);
}

TEST(GraphFormat, GridCommentIsIgnoredWhenEdgesDisagree) {
  auto g = parse_graph("c grid 2 2\np gr 4 1\n1 2\n");
  EXPECT_FALSE(g.grid().has_value());
}

TEST(GraphFormat, ParseErrorsCarryLineNumbers) {
  try {
    parse_graph("p gr 3 2\n1 2\n2 7\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_graph("1 2\n"), ParseError);
  EXPECT_THROW(parse_graph("p gr 2 2\n1 2\n"), ParseError);
  EXPECT_THROW(parse_graph("p gr 2 1\n1 x\n"), ParseError);
  EXPECT_THROW(parse_graph(""), ParseError);
  EXPECT_THROW(parse_graph("p gr 2 2\n1 2\n2 1\n"), std::invalid_argument);
}

TEST(HypergraphFormat, RoundTrips) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    auto hg = testkit::random_hypergraph(1 + rng() % 8, 1 + rng() % 8, rng);
    auto back = round_trip(hg, [](std::ostream& o, const Hypergraph& x) { write_hypergraph(o, x); },
                           [](std::istream& i) { return read_hypergraph(i); });
    EXPECT_EQ(back, hg);
  }
}

TEST(InputSniffing, Kinds) {
  std::istringstream g("c x\np gr 1 0\n"), h("p hg 2 1\n1 2\n"), none("c nothing\n");
  EXPECT_EQ(sniff_input(g), InputKind::graph);
  EXPECT_EQ(sniff_input(h), InputKind::hypergraph);
  EXPECT_THROW(sniff_input(none), ParseError);
}

TEST(TdFormat, Examples) {
  auto f = parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
  EXPECT_EQ(f.vertex_count, 3u);
  ASSERT_EQ(f.td.size(), 2u);
  EXPECT_EQ(f.td.root(), 0u);
  EXPECT_EQ(f.td.bag(1), (Bag{1, 2}));

  auto rooted = parse_td("s td 2 2 3\nc root 2\nb 1 1 2\nb 2 2 3\n1 2\n");
  EXPECT_EQ(rooted.td.root(), 1u);
  EXPECT_EQ(rooted.td.parent(0), 1u);
}

TEST(TdFormat, RoundTripsKeepRootAndBags) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testkit::random_connected_graph(1 + rng() % 12, 0.3, rng);
    auto td = balanced_td(g, bfs_separator);
    std::stringstream buf;
    write_td(buf, td, g.vertex_count());
    auto back = read_td(buf);
    EXPECT_EQ(back.vertex_count, g.vertex_count());
    EXPECT_EQ(back.td.bags(), td.bags());
    EXPECT_EQ(back.td.root(), td.root());
    for (std::size_t x = 0; x < td.size(); ++x) EXPECT_EQ(back.td.parent(x), td.parent(x));
  }
}

TEST(TdFormat, ParseErrors) {
  EXPECT_THROW(parse_td("b 1 1\n"), ParseError);
  EXPECT_THROW(parse_td("s td 2 1 2\nb 1 1\n"), ParseError);
  EXPECT_THROW(parse_td("s td 1 1 2\nb 1 3\n"), ParseError);
  EXPECT_THROW(parse_td("s td 2 1 2\nb 1 1\nb 2 2\n1 3\n"), ParseError);
  EXPECT_THROW(parse_td("s td 1 1 1\nc root 4\nb 1 1\n"), ParseError);
  // two bags without a connecting edge do not form a tree
  EXPECT_THROW(parse_td("s td 2 1 2\nb 1 1\nb 2 2\n"), ParseError);
}

TEST(NiceJson, RoundTrips) {
  auto grid = GridSpec({3, 3});
  auto g = grid_graph(grid);
  auto nice = to_modified_nice(grid_balanced_td(grid), g);
  auto doc = nice_to_json(nice);
  EXPECT_EQ(doc["schema"], "ztdp.nice/1");
  EXPECT_EQ(nice_from_json(nlohmann::json::parse(doc.dump())), nice);

  auto hg = Hypergraph(3, {{0, 1, 2}, {1}});
  auto hnice = to_modified_nice(single_bag_td(3), hg);
  EXPECT_EQ(nice_from_json(nice_to_json(hnice)), hnice);

  doc["schema"] = "other";
  EXPECT_THROW(nice_from_json(doc), std::invalid_argument);
}
