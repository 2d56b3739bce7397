#include <doctest.h>

#include <cmath>
#include <vector>

#include "streamcut/effres.hpp"
#include "streamcut/generators.hpp"
#include "streamcut/oracles.hpp"
#include "streamcut/stream.hpp"
#include "support.hpp"

using namespace streamcut;

namespace {

double fraction_within(const ERSketch& sk, const WeightedGraph& g, double eps) {
  auto r = dense_er_matrix(g);
  const std::size_t n = g.n();
  std::size_t ok = 0, total = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      double truth = r[std::size_t{u} * n + v];
      ok += std::abs(query_er(sk, u, v) - truth) <= eps * truth;
      ++total;
    }
  }
  return double(ok) / double(total);
}

}  // namespace

TEST_CASE("sketch over the graph itself") {
  auto g = gen_gnp(40, 0.3, 2);
  auto sk = build_er_sketch(g, 0.3, 5);
  CHECK(sk.copies() == 9);
  CHECK(sk.n() == 40);
  CHECK(sk.k() == jl_rows(4.0, 40, 0.3));
  CHECK_CODE(query_er(sk, 7, 7), ErrorCode::kDomain);
  CHECK(query_er(sk, 3, 9) == query_er(sk, 9, 3));
  CHECK(fraction_within(sk, g, 0.3) >= 0.97);
}

TEST_CASE("median beats a single copy") {
  auto g = gen_gnp(30, 0.4, 7);
  ERConfig cfg;
  cfg.c_jl = 1.0;
  auto sk = build_er_sketch(g, 0.3, 1, cfg);
  auto r = dense_er_matrix(g);
  double single = 0.0, med = 0.0;
  for (Vertex u = 0; u < 30; ++u) {
    for (Vertex v = u + 1; v < 30; ++v) {
      double t = r[std::size_t{u} * 30 + v];
      single += std::abs(sk.query_copy(0, u, v) / t - 1.0);
      med += std::abs(sk.query(u, v) / t - 1.0);
    }
  }
  CHECK(med < single);
}

TEST_CASE("streamed sketch pipeline") {
  auto g = gen_gnp(60, 0.3, 3);
  auto stream = EdgeStream::from_graph(g);
  auto h = stream_foreach_sparsifier(stream, 0.3, 4);
  auto sk = build_er_sketch(h.sparsifier, 0.3, 9);
  CHECK(fraction_within(sk, g, 0.3) >= 0.95);
}

TEST_CASE("strict mode streams one sparsifier per copy") {
  auto g = gen_gnp(30, 0.4, 8);
  ERConfig cfg;
  cfg.copies = 5;
  auto sk = build_er_sketch_strict(g, 0.3, 2, cfg);
  CHECK(sk.copies() == 5);
  CHECK(fraction_within(sk, g, 0.3) >= 0.9);
}

TEST_CASE("disconnected sparsifier is rejected") {
  WeightedGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  CHECK_CODE(build_er_sketch(g, 0.3, 1), ErrorCode::kDisconnected);
}
