#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

#include "streamcut/generators.hpp"
#include "streamcut/graph.hpp"
#include "streamcut/stream.hpp"
#include "support.hpp"

using namespace streamcut;

namespace {

std::vector<EdgeId> drain(EdgeStream& s) {
  std::vector<EdgeId> ids;
  while (auto e = s.next()) ids.push_back(e->id);
  return ids;
}

}  // namespace

TEST_CASE("stream order and shuffles") {
  auto g = gen_gnp(30, 0.3, 2);
  auto s = EdgeStream::from_graph(g);
  CHECK(s.length() == g.m());
  auto ids = drain(s);
  std::vector<EdgeId> expect(g.m());
  std::iota(expect.begin(), expect.end(), 0);
  CHECK(ids == expect);
  CHECK_FALSE(s.next().has_value());
  CHECK(s.position() == g.m());
  for (auto c : s.visit_counts()) CHECK(c == 1);

  auto a = EdgeStream::from_graph(g, 5);
  auto b = EdgeStream::from_graph(g, 5);
  auto c = EdgeStream::from_graph(g, 6);
  auto ia = drain(a);
  CHECK(ia == drain(b));
  CHECK(ia != drain(c));
  CHECK(ia != expect);
  std::sort(ia.begin(), ia.end());
  CHECK(ia == expect);

  auto r = a.restart();
  CHECK(r.position() == 0);
  CHECK(drain(r).size() == g.m());
}

TEST_CASE("stream edges carry endpoints") {
  WeightedGraph g(3);
  g.add_edge(0, 1, 2.0);
  g.add_edge(1, 2, 3.0);
  auto s = EdgeStream::from_graph(g);
  auto e = s.next();
  REQUIRE(e);
  CHECK(e->u == 0);
  CHECK(e->v == 1);
  CHECK(e->w == 2.0);
  CHECK(s.n() == 3);
}

TEST_CASE("space meter") {
  SpaceMeter m;
  m.record_series(true);
  m.set("a", 10);
  m.set("b", 5);
  CHECK(m.live() == 15);
  m.advance();
  m.set("a", 2);
  CHECK(m.live() == 7);
  CHECK(m.peak() == 15);
  m.release("b");
  CHECK(m.live() == 2);
  CHECK(m.component_peaks().at("b") == 5);
  CHECK(m.series().size() >= 4);
  std::ostringstream out;
  m.write_csv(out);
  CHECK(out.str().rfind("step,live_words,peak_words,component\n", 0) == 0);
}

TEST_CASE("tower accuracy telescopes") {
  for (std::size_t n : {10u, 100u, 1000u}) {
    for (double eps : {0.1, 0.5}) {
      auto levels = tower_levels(n, eps);
      CHECK(levels == static_cast<std::size_t>(std::ceil(std::log2(n / eps))));
      double blk = tower_block_eps(n, eps);
      CHECK(std::pow(1.0 + blk, double(levels + 1)) == doctest::Approx(1.0 + eps));
    }
  }
}

TEST_CASE("block tower with an identity reducer keeps every edge") {
  Reducer keep = [](const WeightedGraph& g, double eps, std::uint64_t seed,
                    std::span<const EdgeId> ids) {
    Sparsifier s;
    s.graph = g;
    s.eps = eps;
    s.seed = seed;
    s.source_edge_ids.assign(ids.begin(), ids.end());
    return s;
  };
  TowerConfig cfg;
  cfg.m_space = 8;
  SpaceMeter meter;
  BlockTower t(20, 0.5, 1, Guarantee::kForEach, keep, cfg, &meter);
  auto g = gen_gnp(20, 0.4, 3);
  for (std::size_t i = 0; i < g.m(); ++i) {
    const auto& e = g.edge(i);
    t.push(i, e.u, e.v, e.w);
  }
  CHECK(t.pushed() == g.m());
  CHECK_FALSE(t.trace().empty());
  CHECK(t.stored_edges() == g.m());
  CHECK(meter.peak() > 0);
  auto s = t.finish();
  CHECK(s.graph.m() == g.m());
  std::set<EdgeId> ids(s.source_edge_ids.begin(), s.source_edge_ids.end());
  CHECK(ids.size() == g.m());
  CHECK(*ids.rbegin() == g.m() - 1);
}

TEST_CASE("online sampler keeps tree edges with certainty") {
  OnlineSampler s(10, 0.5, 1);
  for (Vertex v = 0; v + 1 < 10; ++v) {
    auto d = s.offer(StreamEdge{v, v, Vertex(v + 1), 1.0});
    CHECK(d.kept);
    CHECK(d.p == 1.0);
    CHECK(d.weight == 1.0);
  }
  CHECK(s.kept_count() == 9);
  CHECK(s.state_words() > 0);
}

TEST_CASE("streamed sparsifiers track the input") {
  auto g = gen_gnp(80, 0.5, 12);
  for (auto kind : {Guarantee::kForAll, Guarantee::kForEach}) {
    auto stream = EdgeStream::from_graph(g, 3);
    SpaceMeter meter;
    auto r = kind == Guarantee::kForAll ? stream_forall_sparsifier(stream, 0.5, 4, {}, &meter)
                                        : stream_foreach_sparsifier(stream, 0.5, 4, {}, &meter);
    for (auto c : stream.visit_counts()) CHECK(c == 1);
    CHECK(r.sparsifier.kind == kind);
    CHECK(r.sparsifier.graph.m() > 0);
    CHECK(r.sparsifier.graph.m() <= g.m());
    CHECK(meter.peak() > 0);
    Rng rng = make_rng(1);
    for (int t = 0; t < 10; ++t) {
      std::vector<double> x(80);
      for (auto& xi : x) xi = uniform01(rng) < 0.5 ? 1.0 : 0.0;
      double truth = quadratic_form(g, x);
      if (truth > 0.0) {
        CHECK(std::abs(quadratic_form(r.sparsifier.graph, x) / truth - 1.0) < 0.5);
      }
    }
  }
}
