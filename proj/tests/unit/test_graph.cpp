#include <doctest.h>

#include <cmath>
#include <vector>

#include "streamcut/generators.hpp"
#include "streamcut/graph.hpp"
#include "support.hpp"

using namespace streamcut;

TEST_CASE("vertex set basics") {
  auto s = VertexSet::singleton(70, 65);
  CHECK(s.count() == 1);
  CHECK(s.test(65));
  CHECK_FALSE(s.test(64));
  CHECK(s.proper());
  auto c = s.complement();
  CHECK(c.count() == 69);
  CHECK(c.canonical() == c);
  CHECK(s.canonical() == c);
  CHECK(c.complement() == s);
  std::vector<Vertex> vs{3, 1, 2};
  auto t = VertexSet::from_vertices(5, vs);
  CHECK(t.vertices() == std::vector<Vertex>{1, 2, 3});
  CHECK(VertexSetHash{}(t) == VertexSetHash{}(VertexSet::from_vertices(5, vs)));
  CHECK_FALSE(VertexSet(4).proper());
}

TEST_CASE("edge insertion validates input") {
  WeightedGraph g(3);
  CHECK(g.add_edge(0, 1, 2.5) == 0);
  CHECK(g.add_edge(0, 1) == 1);
  CHECK(g.m() == 2);
  CHECK_FALSE(g.is_simple());
  CHECK_FALSE(g.integral());
  CHECK_CODE(g.add_edge(1, 1), ErrorCode::kInvalidArgument);
  CHECK_CODE(g.add_edge(0, 3), ErrorCode::kInvalidArgument);
  CHECK_CODE(g.add_edge(0, 2, -1.0), ErrorCode::kInvalidArgument);
  CHECK_CODE(g.add_edge(0, 2, std::nan("")), ErrorCode::kInvalidArgument);
  CHECK_CODE(g.add_edge(0, 2, 2e12), ErrorCode::kInvalidArgument);

  WeightedGraph s(3, GraphMode::kSimple);
  s.add_edge(0, 1);
  CHECK_CODE(s.add_edge(1, 0), ErrorCode::kInvalidArgument);
  CHECK_CODE(s.add_edge(1, 2, 2.0), ErrorCode::kInvalidArgument);
  CHECK(s.is_simple());
}

TEST_CASE("degrees, incidence and totals") {
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 2.0);
  g.add_edge(2, 3, 3.0);
  g.add_edge(3, 0, 4.0);
  CHECK(g.total_weight() == doctest::Approx(10.0));
  auto d = g.weighted_degrees();
  CHECK(d == std::vector<double>{5.0, 3.0, 5.0, 7.0});
  CHECK(g.incident(1).size() == 2);
  CHECK(g.other(1, 1) == 2);
  auto rows = g.incidence_rows();
  REQUIRE(rows.size() == 4);
  CHECK(rows[3].sqrt_w == doctest::Approx(2.0));
}

TEST_CASE("cut values and quadratic forms") {
  auto c = gen_cycle(10);
  std::vector<Vertex> arc{2, 3, 4, 5};
  CHECK(cut_value(c, VertexSet::from_vertices(10, arc)) == doctest::Approx(2.0));
  CHECK_CODE(cut_value(c, VertexSet(10)), ErrorCode::kDomain);
  CHECK_CODE(cut_value(c, VertexSet(9)), ErrorCode::kInvalidArgument);

  WeightedGraph g(3);
  g.add_edge(0, 1, 2.0);
  g.add_edge(1, 2, 0.5);
  std::vector<double> x{1.0, -1.0, 3.0};
  // 2 * (1 - (-1))^2 + 0.5 * (-1 - 3)^2
  CHECK(quadratic_form(g, x) == doctest::Approx(16.0));
  // On a 0/1 indicator the quadratic form is the cut value.
  auto gg = gen_gnp(30, 0.3, 5);
  std::vector<double> ind(30, 0.0);
  VertexSet side(30);
  for (Vertex v = 0; v < 30; v += 3) {
    ind[v] = 1.0;
    side.set(v);
  }
  CHECK(quadratic_form(gg, ind) == doctest::Approx(cut_value(gg, side)));
}

TEST_CASE("minimum degree cut and components") {
  auto d = gen_dumbbell(6);
  auto mc = min_degree_cut(d);
  CHECK(mc.value == doctest::Approx(5.0));
  CHECK(mc.side.count() == 1);

  WeightedGraph g(5);
  g.add_edge(0, 1);
  g.add_edge(3, 4);
  std::vector<std::uint32_t> label;
  CHECK(connected_components(g, label) == 3);
  CHECK(label[0] == label[1]);
  CHECK(label[3] == label[4]);
  CHECK(label[2] != label[0]);
}

TEST_CASE("text format round trip and parse errors") {
  WeightedGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3, 0.25);
  g.add_edge(1, 2, 7.0);
  auto text = format_graph(g);
  auto h = parse_graph(text);
  CHECK(h.n() == 4);
  REQUIRE(h.m() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(h.edge(i).u == g.edge(i).u);
    CHECK(h.edge(i).v == g.edge(i).v);
    CHECK(h.edge(i).w == g.edge(i).w);
  }
  CHECK(format_graph(h) == text);

  auto comments = parse_graph("# header\n3 2\n0 1\n\n1 2 2\n");
  CHECK(comments.m() == 2);

  CHECK_CODE(parse_graph(""), ErrorCode::kParse);
  CHECK_CODE(parse_graph("3 2\n0 1\n"), ErrorCode::kParse);
  CHECK_CODE(parse_graph("3 1\n0 x\n"), ErrorCode::kParse);
  CHECK_CODE(parse_graph("3 1\n0 5\n"), ErrorCode::kInvalidArgument);
  CHECK_CODE(parse_graph("3 2\n0 1\n1 0\n", GraphMode::kSimple),
             ErrorCode::kInvalidArgument);
  CHECK_CODE(read_graph_file("/nonexistent/graph.txt"), ErrorCode::kIo);
}
