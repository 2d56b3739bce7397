#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "streamcut/graph.hpp"

namespace streamcut {

// ---------------------------------------------------------------------------
// Laplacian solves
// ---------------------------------------------------------------------------

struct SolverOptions {
  double tolerance = 1e-8;
  std::size_t max_iters = 0;  // 0 means 10 * n
  // Adds ridge * I to the Laplacian. With ridge > 0 the system is positive
  // definite and no projection happens.
  double ridge = 0.0;
  // Solve per connected component instead of rejecting disconnected input.
  bool allow_disconnected = false;
};

struct SolveResult {
  std::vector<double> x;
  double relative_residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Jacobi-preconditioned conjugate gradient on L (or L + ridge*I). The graph
// must outlive the solver. Thread-safe for concurrent solves.
class LaplacianSolver {
 public:
  explicit LaplacianSolver(const WeightedGraph& g, SolverOptions opts = {});

  // Throws Error(kNotConverged) carrying the final residual on failure.
  std::vector<double> solve(std::span<const double> b) const;
  SolveResult try_solve(std::span<const double> b) const;

  // chi_{u,v}^T L^+ chi_{u,v}.
  double effective_resistance(Vertex u, Vertex v) const;

  void apply(std::span<const double> x, std::span<double> out) const;
  std::size_t n() const { return n_; }
  const SolverOptions& options() const { return opts_; }

 private:
  void project(std::span<double> x) const;

  std::size_t n_;
  SolverOptions opts_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> nbr_;
  std::vector<double> wt_;
  std::vector<double> diag_;
  std::vector<std::uint32_t> component_;
  std::vector<std::size_t> component_size_;
};

// Cheap certificate: chi^T (L + ridge I)^{-1} chi >= this value, from the
// test vectors 1_u, 1_v and 1_u - 1_v.
inline double resistance_lower_bound(double deg_u, double deg_v,
                                     double ridge = 0.0) {
  double a = deg_u + ridge > 0 ? 1.0 / (deg_u + ridge) : 1e300;
  double b = deg_v + ridge > 0 ? 1.0 / (deg_v + ridge) : 1e300;
  double c = deg_u + deg_v + 2 * ridge > 0 ? 4.0 / (deg_u + deg_v + 2 * ridge)
                                           : 1e300;
  return std::max(a, std::max(b, c));
}

// ---------------------------------------------------------------------------
// Johnson-Lindenstrauss sketched incidence columns
// ---------------------------------------------------------------------------

// Entry (row, edge) of a k-row Rademacher JL matrix: +-1/sqrt(k), regenerated
// from (seed, edge_id) by a counter hash.
double jl_entry(std::uint64_t seed, EdgeId edge_id, std::size_t row,
                std::size_t k);
// Fills out[0..k) with the column t_e.
void jl_column(std::uint64_t seed, EdgeId edge_id, std::span<double> out);

// ceil(c * ln(n) / eps^2), at least 1.
std::size_t jl_rows(double c_jl, std::size_t n_logical, double eps);

class JLIncidenceSketch {
 public:
  JLIncidenceSketch() = default;
  JLIncidenceSketch(std::size_t k, std::size_t n, std::uint64_t seed);

  // Adds sqrt(w) t_e to column u and subtracts it from column v.
  void absorb_edge(EdgeId edge_id, Vertex u, Vertex v, double w);
  void absorb_graph(const WeightedGraph& g);
  // Column a becomes the sum of a and b; b is retired.
  void merge_columns(Vertex a, Vertex b);
  // ||col||^2 of a live column when exactly two columns are live.
  double cut_estimate() const;

  std::size_t k() const { return k_; }
  std::size_t n() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t edge_counter() const { return edge_counter_; }
  std::size_t live_columns() const { return live_count_; }
  bool live(Vertex c) const { return live_[c] != 0; }
  std::span<const double> column(Vertex c) const {
    return {data_.data() + std::size_t{c} * k_, k_};
  }
  std::vector<Vertex> live_ids() const;

  // ||sum of the columns in `side`||^2, the estimate of w(side, rest).
  double estimate_side(const VertexSet& side) const;

 private:
  std::span<double> column_mut(Vertex c) {
    return {data_.data() + std::size_t{c} * k_, k_};
  }

  std::size_t k_ = 0;
  std::size_t n_ = 0;
  std::uint64_t seed_ = 0;
  std::size_t edge_counter_ = 0;
  std::size_t live_count_ = 0;
  std::vector<double> data_;  // column-major, k_ entries per column
  std::vector<std::uint8_t> live_;
};

// Median of an odd or even sample (mean of the middle pair for even sizes).
double median(std::vector<double> values);

}  // namespace streamcut
