#include <doctest.h>

#include <cmath>
#include <vector>

#include "streamcut/generators.hpp"
#include "streamcut/graph.hpp"
#include "streamcut/linalg.hpp"
#include "streamcut/oracles.hpp"
#include "support.hpp"

using namespace streamcut;

TEST_CASE("resistances on paths and cycles") {
  WeightedGraph path(6);
  for (Vertex v = 0; v + 1 < 6; ++v) path.add_edge(v, v + 1);
  LaplacianSolver ps(path);
  CHECK(ps.effective_resistance(0, 5) == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(ps.effective_resistance(1, 3) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK_CODE(ps.effective_resistance(2, 2), ErrorCode::kDomain);

  auto cyc = gen_cycle(12);
  LaplacianSolver cs(cyc);
  for (Vertex k = 1; k < 12; ++k) {
    double expect = static_cast<double>(k) * (12 - k) / 12.0;
    CHECK(cs.effective_resistance(0, k) == doctest::Approx(expect).epsilon(1e-6));
  }

  // Parallel conductances add.
  WeightedGraph par(2);
  par.add_edge(0, 1, 1.0);
  par.add_edge(0, 1, 3.0);
  CHECK(LaplacianSolver(par).effective_resistance(0, 1) == doctest::Approx(0.25));
}

TEST_CASE("solver matches the dense pseudoinverse") {
  auto g = gen_gnp(40, 0.2, 11);
  auto r = dense_er_matrix(g);
  LaplacianSolver s(g);
  for (Vertex u = 0; u < 40; u += 7) {
    for (Vertex v = u + 1; v < 40; v += 5) {
      CHECK(s.effective_resistance(u, v) ==
            doctest::Approx(r[std::size_t{u} * 40 + v]).epsilon(1e-6));
    }
  }
  std::vector<double> b(40, 0.0);
  b[3] = 1.0;
  b[17] = -1.0;
  auto res = s.try_solve(b);
  CHECK(res.converged);
  std::vector<double> lx(40);
  s.apply(res.x, lx);
  for (std::size_t i = 0; i < 40; ++i) CHECK(lx[i] == doctest::Approx(b[i]).epsilon(1e-6));
}

TEST_CASE("disconnected and ridge handling") {
  WeightedGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  CHECK_CODE(LaplacianSolver(g).solve(std::vector<double>{1, -1, 0, 0}),
             ErrorCode::kDisconnected);
  SolverOptions split;
  split.allow_disconnected = true;
  CHECK(LaplacianSolver(g, split).effective_resistance(0, 1) == doctest::Approx(1.0));

  SolverOptions ridge;
  ridge.ridge = 1e-3;
  LaplacianSolver rs(g, ridge);
  double far = rs.effective_resistance(0, 2);
  CHECK(far > 1000.0);
  CHECK(far >= resistance_lower_bound(1.0, 1.0, 1e-3) - 1e-9);
}

TEST_CASE("JL entries are deterministic signs") {
  const std::size_t k = 16;
  std::vector<double> col(k);
  jl_column(42, 7, col);
  for (std::size_t r = 0; r < k; ++r) {
    CHECK(std::abs(col[r]) == doctest::Approx(0.25));
    CHECK(col[r] == jl_entry(42, 7, r, k));
  }
  std::vector<double> other(k);
  jl_column(43, 7, other);
  CHECK(col != other);
  CHECK(jl_rows(4.0, 100, 0.5) ==
        static_cast<std::size_t>(std::ceil(4.0 * std::log(100.0) / 0.25)));
  // Vertex counts below 2 are treated as 2.
  CHECK(jl_rows(4.0, 1, 0.5) == jl_rows(4.0, 2, 0.5));
}

TEST_CASE("sketched cut estimates") {
  auto g = gen_gnp(30, 0.4, 3);
  JLIncidenceSketch sk(400, 30, 99);
  sk.absorb_graph(g);
  CHECK(sk.edge_counter() == g.m());
  // Incidence columns of a graph sum to zero.
  std::vector<double> total(400, 0.0);
  for (Vertex v = 0; v < 30; ++v) {
    auto c = sk.column(v);
    for (std::size_t r = 0; r < 400; ++r) total[r] += c[r];
  }
  for (double t : total) CHECK(std::abs(t) < 1e-9);

  VertexSet side(30);
  for (Vertex v = 0; v < 12; ++v) side.set(v);
  double truth = cut_value(g, side);
  CHECK(sk.estimate_side(side) == doctest::Approx(truth).epsilon(0.25));

  // Contract everything into two supernodes matching `side`.
  for (Vertex v = 1; v < 12; ++v) sk.merge_columns(0, v);
  for (Vertex v = 13; v < 30; ++v) sk.merge_columns(12, v);
  CHECK(sk.live_columns() == 2);
  CHECK(sk.live(0));
  CHECK_FALSE(sk.live(5));
  CHECK(sk.cut_estimate() == doctest::Approx(sk.estimate_side(side)));
}

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK(median({5.0}) == 5.0);
}
