#include "streamcut/effres.hpp"

#include <cmath>

#include "streamcut/linalg.hpp"
#include "streamcut/rng.hpp"

namespace streamcut {

namespace {

std::vector<double> sketch_copy(const WeightedGraph& h,
                                const LaplacianSolver& solver, std::size_t k,
                                std::uint64_t seed) {
  const std::size_t n = h.n();
  std::vector<std::vector<double>> y(k, std::vector<double>(n, 0.0));
  std::vector<double> col(k);
  for (std::size_t j = 0; j < h.m(); ++j) {
    const auto& e = h.edge(j);
    jl_column(seed, j, col);
    const double s = std::sqrt(e.w);
    for (std::size_t r = 0; r < k; ++r) {
      y[r][e.u] += s * col[r];
      y[r][e.v] -= s * col[r];
    }
  }
  std::vector<double> z(n * k);
  for (std::size_t r = 0; r < k; ++r) {
    auto x = solver.solve(y[r]);
    for (std::size_t v = 0; v < n; ++v) z[v * k + r] = x[v];
  }
  return z;
}

}  // namespace

double ERSketch::query_copy(std::size_t copy, Vertex u, Vertex v) const {
  require(copy < z_.size(), ErrorCode::kInvalidArgument, "no such copy");
  require(u < n_ && v < n_, ErrorCode::kInvalidArgument,
          "vertex id out of range");
  require(u != v, ErrorCode::kDomain, "resistance query needs u != v");
  auto a = column(copy, u);
  auto b = column(copy, v);
  double s = 0.0;
  for (std::size_t i = 0; i < k_; ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double ERSketch::query(Vertex u, Vertex v) const {
  require(!z_.empty(), ErrorCode::kInvalidArgument, "empty sketch");
  std::vector<double> est(z_.size());
  for (std::size_t c = 0; c < z_.size(); ++c) est[c] = query_copy(c, u, v);
  return median(std::move(est));
}

double query_er(const ERSketch& sk, Vertex u, Vertex v) {
  return sk.query(u, v);
}

ERSketch build_er_sketch(const WeightedGraph& h, double eps,
                         std::uint64_t seed, const ERConfig& cfg) {
  require(h.n() >= 2, ErrorCode::kInvalidArgument,
          "resistance sketch needs n >= 2");
  SolverOptions opts;
  opts.tolerance = cfg.solver_tolerance;
  LaplacianSolver solver(h, opts);
  const std::size_t k = jl_rows(cfg.c_jl, h.n(), eps);
  ERSketch sk(h.n(), k);
  for (std::size_t c = 0; c < std::max<std::size_t>(cfg.copies, 1); ++c) {
    sk.add_copy(sketch_copy(h, solver, k, derive_seed(seed, 0xe7000 + c)));
  }
  return sk;
}

ERSketch build_er_sketch_strict(const WeightedGraph& g, double eps,
                                std::uint64_t seed, const ERConfig& cfg,
                                const StreamConfig& stream_cfg) {
  require(g.n() >= 2, ErrorCode::kInvalidArgument,
          "resistance sketch needs n >= 2");
  const std::size_t k = jl_rows(cfg.c_jl, g.n(), eps);
  ERSketch sk(g.n(), k);
  SolverOptions opts;
  opts.tolerance = cfg.solver_tolerance;
  for (std::size_t c = 0; c < std::max<std::size_t>(cfg.copies, 1); ++c) {
    auto stream = EdgeStream::from_graph(g);
    auto h = stream_foreach_sparsifier(stream, eps,
                                       derive_seed(seed, 0x57000 + c),
                                       stream_cfg);
    LaplacianSolver solver(h.sparsifier.graph, opts);
    sk.add_copy(sketch_copy(h.sparsifier.graph, solver, k,
                            derive_seed(seed, 0xe7000 + c)));
  }
  return sk;
}

}  // namespace streamcut
