#pragma once

#include <cstddef>
#include <vector>

#include "streamcut/graph.hpp"
#include "streamcut/mincut.hpp"

namespace streamcut {

// Exact global minimum cut, O(n^3) on a dense matrix. Disconnected input
// returns value 0 with the component of vertex 0.
Cut stoer_wagner_min_cut(const WeightedGraph& g);

inline constexpr std::size_t kBruteForceMaxN = 26;
inline constexpr std::size_t kDenseMaxN = 500;

// Every bipartition by Gray-code walk; n <= 26, else Error(kUnsupported).
// Values are exact; the family keeps those <= alpha * min.
CutFamily brute_force_cut_family(const WeightedGraph& g, double alpha);
Cut brute_force_min_cut(const WeightedGraph& g);

// Row-major n x n Laplacian.
std::vector<double> dense_laplacian(const WeightedGraph& g);

// Row-major n x n matrix of r(u, v) from a dense eigendecomposition.
// Requires a connected graph with n <= 500.
std::vector<double> dense_er_matrix(const WeightedGraph& g);

// w_e * r(u_e, v_e) per edge, from the dense resistance matrix.
std::vector<double> exact_leverage_scores(const WeightedGraph& g);

}  // namespace streamcut
