#include "streamcut/linalg.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "streamcut/rng.hpp"

namespace streamcut {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

LaplacianSolver::LaplacianSolver(const WeightedGraph& g, SolverOptions opts)
    : n_(g.n()), opts_(opts) {
  if (opts_.max_iters == 0) opts_.max_iters = std::max<std::size_t>(10 * n_, 50);
  offsets_.assign(n_ + 1, 0);
  for (const auto& e : g.edges()) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  nbr_.resize(offsets_[n_]);
  wt_.resize(offsets_[n_]);
  diag_.assign(n_, opts_.ridge);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : g.edges()) {
    nbr_[fill[e.u]] = e.v;
    wt_[fill[e.u]++] = e.w;
    nbr_[fill[e.v]] = e.u;
    wt_[fill[e.v]++] = e.w;
    diag_[e.u] += e.w;
    diag_[e.v] += e.w;
  }
  auto count = connected_components(g, component_);
  component_size_.assign(count, 0);
  for (auto c : component_) ++component_size_[c];
}

void LaplacianSolver::apply(std::span<const double> x,
                            std::span<double> out) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double s = diag_[i] * x[i];
    for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) {
      s -= wt_[p] * x[nbr_[p]];
    }
    out[i] = s;
  }
}

void LaplacianSolver::project(std::span<double> x) const {
  if (opts_.ridge > 0.0) return;
  std::vector<double> sum(component_size_.size(), 0.0);
  for (std::size_t i = 0; i < n_; ++i) sum[component_[i]] += x[i];
  for (std::size_t i = 0; i < n_; ++i) {
    x[i] -= sum[component_[i]] /
            static_cast<double>(component_size_[component_[i]]);
  }
}

SolveResult LaplacianSolver::try_solve(std::span<const double> b_in) const {
  require(b_in.size() == n_, ErrorCode::kInvalidArgument,
          "right-hand side length does not match vertex count");
  if (opts_.ridge == 0.0 && !opts_.allow_disconnected &&
      component_size_.size() > 1) {
    std::ostringstream msg;
    msg << "graph is disconnected; vertices {";
    std::size_t shown = 0;
    const auto far = component_[n_ - 1];
    for (std::size_t i = 0; i < n_ && shown < 16; ++i) {
      if (component_[i] == far) {
        msg << (shown ? ", " : "") << i;
        ++shown;
      }
    }
    msg << (component_size_[far] > shown ? ", ...}" : "}")
        << " are separated from vertex 0";
    fail(ErrorCode::kDisconnected, msg.str());
  }
  SolveResult res;
  res.x.assign(n_, 0.0);
  std::vector<double> b(b_in.begin(), b_in.end());
  project(b);
  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  std::vector<double> r = b;
  std::vector<double> z(n_), p(n_), q(n_);
  auto precondition = [&]() {
    for (std::size_t i = 0; i < n_; ++i) {
      z[i] = diag_[i] > 0 ? r[i] / diag_[i] : r[i];
    }
    project(z);
  };
  precondition();
  p = z;
  double rz = dot(r, z);
  double rnorm = bnorm;
  std::size_t it = 0;
  while (it < opts_.max_iters && rnorm > opts_.tolerance * bnorm) {
    apply(p, q);
    double pq = dot(p, q);
    if (pq <= 0.0) break;
    double alpha = rz / pq;
    for (std::size_t i = 0; i < n_; ++i) {
      res.x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    rnorm = std::sqrt(dot(r, r));
    ++it;
    if (rnorm <= opts_.tolerance * bnorm) break;
    precondition();
    double rz_next = dot(r, z);
    double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n_; ++i) p[i] = z[i] + beta * p[i];
  }
  project(res.x);
  // Report the true residual, not the recursively updated one.
  apply(res.x, q);
  double true_res = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    true_res += (q[i] - b[i]) * (q[i] - b[i]);
  }
  res.relative_residual = std::sqrt(true_res) / bnorm;
  res.iterations = it;
  res.converged =
      res.relative_residual <= std::max(opts_.tolerance * 10, 1e-12);
  return res;
}

std::vector<double> LaplacianSolver::solve(std::span<const double> b) const {
  auto res = try_solve(b);
  if (!res.converged) {
    std::ostringstream msg;
    msg << "conjugate gradient did not converge in " << res.iterations
        << " iterations; relative residual " << res.relative_residual;
    fail(ErrorCode::kNotConverged, msg.str());
  }
  return std::move(res.x);
}

double LaplacianSolver::effective_resistance(Vertex u, Vertex v) const {
  require(u < n_ && v < n_, ErrorCode::kInvalidArgument, "vertex out of range");
  require(u != v, ErrorCode::kDomain, "effective resistance needs u != v");
  if (opts_.ridge == 0.0 && component_[u] != component_[v]) {
    fail(ErrorCode::kDisconnected, "vertices " + std::to_string(u) + " and " +
                                       std::to_string(v) +
                                       " lie in different components");
  }
  std::vector<double> b(n_, 0.0);
  b[u] = 1.0;
  b[v] = -1.0;
  auto x = solve(b);
  return x[u] - x[v];
}

double jl_entry(std::uint64_t seed, EdgeId edge_id, std::size_t row,
                std::size_t k) {
  std::uint64_t bits = counter_hash(seed, edge_id, row / 64);
  double s = 1.0 / std::sqrt(static_cast<double>(k));
  return ((bits >> (row % 64)) & 1U) ? s : -s;
}

void jl_column(std::uint64_t seed, EdgeId edge_id, std::span<double> out) {
  const std::size_t k = out.size();
  const double s = 1.0 / std::sqrt(static_cast<double>(k));
  for (std::size_t block = 0; block * 64 < k; ++block) {
    std::uint64_t bits = counter_hash(seed, edge_id, block);
    std::size_t end = std::min(k, block * 64 + 64);
    for (std::size_t row = block * 64; row < end; ++row) {
      out[row] = (bits & 1U) ? s : -s;
      bits >>= 1;
    }
  }
}

std::size_t jl_rows(double c_jl, std::size_t n_logical, double eps) {
  require(eps > 0.0, ErrorCode::kInvalidArgument, "eps must be positive");
  double ln = std::log(static_cast<double>(std::max<std::size_t>(n_logical, 2)));
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(c_jl * ln / (eps * eps))));
}

JLIncidenceSketch::JLIncidenceSketch(std::size_t k, std::size_t n,
                                     std::uint64_t seed)
    : k_(k), n_(n), seed_(seed), live_count_(n), data_(k * n, 0.0),
      live_(n, 1) {
  require(k > 0, ErrorCode::kInvalidArgument, "sketch needs at least one row");
}

void JLIncidenceSketch::absorb_edge(EdgeId edge_id, Vertex u, Vertex v,
                                    double w) {
  require(u < n_ && v < n_ && u != v, ErrorCode::kInvalidArgument,
          "invalid sketch columns");
  std::vector<double> t(k_);
  jl_column(seed_, edge_id, t);
  const double s = std::sqrt(w);
  auto cu = column_mut(u);
  auto cv = column_mut(v);
  for (std::size_t i = 0; i < k_; ++i) {
    cu[i] += s * t[i];
    cv[i] -= s * t[i];
  }
  ++edge_counter_;
}

void JLIncidenceSketch::absorb_graph(const WeightedGraph& g) {
  require(g.n() == n_, ErrorCode::kInvalidArgument, "graph size mismatch");
  for (std::size_t i = 0; i < g.m(); ++i) {
    const auto& e = g.edge(i);
    absorb_edge(i, e.u, e.v, e.w);
  }
}

void JLIncidenceSketch::merge_columns(Vertex a, Vertex b) {
  require(a < n_ && b < n_, ErrorCode::kInvalidArgument, "column out of range");
  require(a != b, ErrorCode::kDomain, "cannot merge a column with itself");
  require(live_[a] && live_[b], ErrorCode::kDomain, "merging retired column");
  auto ca = column_mut(a);
  auto cb = column_mut(b);
  for (std::size_t i = 0; i < k_; ++i) {
    ca[i] += cb[i];
    cb[i] = 0.0;
  }
  live_[b] = 0;
  --live_count_;
}

double JLIncidenceSketch::cut_estimate() const {
  require(live_count_ == 2, ErrorCode::kDomain,
          "cut estimate needs exactly two live columns, have " +
              std::to_string(live_count_));
  for (Vertex c = 0; c < n_; ++c) {
    if (live_[c]) {
      auto col = column(c);
      return dot(col, col);
    }
  }
  return 0.0;
}

std::vector<Vertex> JLIncidenceSketch::live_ids() const {
  std::vector<Vertex> out;
  for (Vertex c = 0; c < n_; ++c) {
    if (live_[c]) out.push_back(c);
  }
  return out;
}

double JLIncidenceSketch::estimate_side(const VertexSet& side) const {
  require(side.universe() == n_, ErrorCode::kInvalidArgument,
          "cut universe does not match sketch");
  std::vector<double> acc(k_, 0.0);
  // The two sides sum to negatives of each other; walk the smaller one.
  const bool use_complement = side.count() * 2 > n_;
  for (Vertex c = 0; c < n_; ++c) {
    if (side.test(c) == use_complement) continue;
    auto col = column(c);
    for (std::size_t i = 0; i < k_; ++i) acc[i] += col[i];
  }
  return dot(acc, acc);
}

double median(std::vector<double> values) {
  require(!values.empty(), ErrorCode::kInvalidArgument, "median of empty set");
  auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  double hi = *mid;
  double lo = *std::max_element(values.begin(), mid);
  return 0.5 * (lo + hi);
}

}  // namespace streamcut
