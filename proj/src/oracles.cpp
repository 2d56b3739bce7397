#include "streamcut/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace streamcut {

namespace {

VertexSet component_of_zero(const WeightedGraph& g,
                            const std::vector<std::uint32_t>& comp) {
  VertexSet s(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    if (comp[v] == comp[0]) s.set(v);
  }
  return s;
}

}  // namespace

Cut stoer_wagner_min_cut(const WeightedGraph& g) {
  const std::size_t n = g.n();
  require(n >= 2, ErrorCode::kInvalidArgument, "min cut needs n >= 2");
  std::vector<std::uint32_t> comp;
  if (connected_components(g, comp) > 1) return {component_of_zero(g, comp), 0.0};

  std::vector<double> w(n * n, 0.0);
  for (const auto& e : g.edges()) {
    w[e.u * n + e.v] += e.w;
    w[e.v * n + e.u] += e.w;
  }
  // members[i]: original vertices merged into i.
  std::vector<std::vector<Vertex>> members(n);
  for (Vertex v = 0; v < n; ++v) members[v] = {v};
  std::vector<std::size_t> alive(n);
  for (std::size_t i = 0; i < n; ++i) alive[i] = i;

  double best = std::numeric_limits<double>::infinity();
  std::vector<Vertex> best_side;
  std::vector<double> key(n);
  std::vector<std::uint8_t> added(n);
  while (alive.size() > 1) {
    std::fill(key.begin(), key.end(), 0.0);
    std::fill(added.begin(), added.end(), 0);
    std::size_t prev = alive[0], last = alive[0];
    for (std::size_t step = 0; step < alive.size(); ++step) {
      std::size_t pick = n;
      for (auto v : alive) {
        if (!added[v] && (pick == n || key[v] > key[pick])) pick = v;
      }
      added[pick] = 1;
      prev = last;
      last = pick;
      if (step + 1 == alive.size()) {
        if (key[pick] < best) {
          best = key[pick];
          best_side = members[pick];
        }
        break;
      }
      for (auto v : alive) {
        if (!added[v]) key[v] += w[pick * n + v];
      }
    }
    // Merge last into prev.
    members[prev].insert(members[prev].end(), members[last].begin(),
                         members[last].end());
    for (auto v : alive) {
      w[prev * n + v] += w[last * n + v];
      w[v * n + prev] = w[prev * n + v];
    }
    w[prev * n + prev] = 0.0;
    alive.erase(std::find(alive.begin(), alive.end(), last));
  }
  return {VertexSet::from_vertices(n, best_side), best};
}

CutFamily brute_force_cut_family(const WeightedGraph& g, double alpha) {
  const std::size_t n = g.n();
  require(n >= 2, ErrorCode::kInvalidArgument, "cut family needs n >= 2");
  require(n <= kBruteForceMaxN, ErrorCode::kUnsupported,
          "brute-force cut family is limited to n <= 26");
  require(alpha >= 1.0, ErrorCode::kInvalidArgument, "alpha must be >= 1");
  // Vertex 0 stays outside; bit (v - 1) of `mask` puts v inside. Two
  // Gray-code passes: the first finds the minimum, the second collects.
  std::vector<std::vector<std::pair<Vertex, double>>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].push_back({e.v, e.w});
    adj[e.v].push_back({e.u, e.w});
  }
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  auto walk = [&](auto&& visit) {
    std::uint64_t mask = 0;
    double cur = 0.0;
    for (std::uint64_t i = 1; i < total; ++i) {
      const int bit = std::countr_zero(i);
      const Vertex v = static_cast<Vertex>(bit + 1);
      const bool was_in = (mask >> bit) & 1U;
      for (const auto& [x, w] : adj[v]) {
        bool x_in = x > 0 && ((mask >> (x - 1)) & 1U);
        cur += (x_in == was_in) ? w : -w;
      }
      mask ^= std::uint64_t{1} << bit;
      visit(mask, cur);
    }
  };
  double best = std::numeric_limits<double>::infinity();
  walk([&](std::uint64_t, double value) { best = std::min(best, value); });
  CutFamily family(alpha);
  const double limit = alpha * best * (1.0 + 1e-12) + 1e-9;
  walk([&](std::uint64_t mask, double value) {
    if (value > limit) return;
    VertexSet side(n);
    side.set(0);
    for (Vertex v = 1; v < n; ++v) {
      if (!((mask >> (v - 1)) & 1U)) side.set(v);
    }
    // Incremental sums drift; store the exact value.
    family.offer(side, cut_value(g, side));
  });
  family.prune();
  return family;
}

Cut brute_force_min_cut(const WeightedGraph& g) {
  auto fam = brute_force_cut_family(g, 1.0);
  auto cuts = fam.sorted();
  return cuts.front();
}

std::vector<double> dense_laplacian(const WeightedGraph& g) {
  const std::size_t n = g.n();
  std::vector<double> l(n * n, 0.0);
  for (const auto& e : g.edges()) {
    l[e.u * n + e.u] += e.w;
    l[e.v * n + e.v] += e.w;
    l[e.u * n + e.v] -= e.w;
    l[e.v * n + e.u] -= e.w;
  }
  return l;
}

std::vector<double> dense_er_matrix(const WeightedGraph& g) {
  const std::size_t n = g.n();
  require(n >= 1, ErrorCode::kInvalidArgument, "empty graph");
  require(n <= kDenseMaxN, ErrorCode::kUnsupported,
          "dense resistance oracle is limited to n <= 500");
  std::vector<std::uint32_t> comp;
  require(connected_components(g, comp) == 1, ErrorCode::kDisconnected,
          "dense resistance oracle needs a connected graph");
  auto dense = dense_laplacian(g);
  Eigen::MatrixXd lap(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lap(i, j) = dense[i * n + j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap);
  require(eig.info() == Eigen::Success, ErrorCode::kInternal,
          "eigendecomposition failed");
  const auto& vals = eig.eigenvalues();
  const auto& vecs = eig.eigenvectors();
  const double cutoff = 1e-9 * std::max(1.0, vals.cwiseAbs().maxCoeff());
  Eigen::VectorXd inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv(i) = vals(i) > cutoff ? 1.0 / vals(i) : 0.0;
  }
  Eigen::MatrixXd pinv = vecs * inv.asDiagonal() * vecs.transpose();
  std::vector<double> r(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      r[i * n + j] = i == j ? 0.0 : pinv(i, i) + pinv(j, j) - 2.0 * pinv(i, j);
    }
  }
  return r;
}

std::vector<double> exact_leverage_scores(const WeightedGraph& g) {
  auto r = dense_er_matrix(g);
  const std::size_t n = g.n();
  std::vector<double> lev(g.m());
  for (std::size_t i = 0; i < g.m(); ++i) {
    const auto& e = g.edge(i);
    lev[i] = e.w * r[e.u * n + e.v];
  }
  return lev;
}

}  // namespace streamcut
