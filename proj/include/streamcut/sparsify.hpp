#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "streamcut/graph.hpp"
#include "streamcut/rng.hpp"

namespace streamcut {

enum class Guarantee { kForAll, kForEach };

const char* to_string(Guarantee g);

struct SparsifyConfig {
  // For-all sampling: p_e = min(1, c0 * w_e * r_e * ln n / eps^2).
  double c0 = 2.0;
  // Rows of the JL resistance estimator: ceil(leverage_jl_const * ln n).
  // Graphs with n at most this many rows get exact resistances instead.
  double leverage_jl_const = 24.0;
  // For-each edge target: c_each * n * ln^3 n / eps.
  double c_each = 4.0;
  // Heavy-edge threshold: eps / (heavy_const * L_max).
  double heavy_const = 4.0;
  // Overrides the for-each target when nonzero.
  std::size_t target_override = 0;
  double solver_tolerance = 1e-8;
};

struct SketchDiagnostics {
  std::size_t rounds = 0;
  std::vector<std::size_t> edges_per_round;  // edge count entering each round
  std::size_t cycles_sampled = 0;
  std::size_t parity_fixes = 0;
  // Largest |deg_after - deg_before| over all buckets, rounds and vertices.
  double max_bucket_degree_drift = 0.0;
};

// A reweighted subgraph of some input, tagged with its guarantee.
struct Sparsifier {
  WeightedGraph graph;
  Guarantee kind = Guarantee::kForAll;
  double eps = 0.0;
  std::uint64_t seed = 0;
  // source_edge_ids[i] identifies the input edge behind graph.edge(i).
  std::vector<EdgeId> source_edge_ids;
  bool fallback = false;
  SketchDiagnostics diagnostics;
  // Per-level accuracy factors composed by a streaming tower, if any.
  std::vector<double> level_factors;
};

std::string metadata_json(const Sparsifier& s);

// Approximate leverage scores w_e * r_e of the edges of `g`, where the
// resistances are measured in `substrate` (usually a sparsifier of g; pass g
// itself for direct estimates). Pairs split across substrate components get
// leverage 1.
std::vector<double> estimate_leverage(const WeightedGraph& g,
                                      const WeightedGraph& substrate,
                                      std::uint64_t seed,
                                      const SparsifyConfig& cfg = {});

// Independent leverage-score sampling. `source_ids` defaults to edge indices.
Sparsifier forall_sparsify(const WeightedGraph& g, double eps,
                           std::uint64_t seed, const SparsifyConfig& cfg = {},
                           std::span<const EdgeId> source_ids = {});

// ---------------------------------------------------------------------------
// Short-cycle decomposition
// ---------------------------------------------------------------------------

struct CycleDecomposition {
  // Each cycle lists edge indices in cyclic order; consecutive entries (and
  // the last/first pair) share a vertex. All cycles have even length.
  std::vector<std::vector<std::uint32_t>> cycles;
  std::vector<std::uint32_t> leftover;
  std::size_t parity_fixes = 0;
  std::size_t length_cap = 0;
};

// 2 * ceil(log2 n) + 1.
std::size_t cycle_length_cap(std::size_t n);

// Weights are ignored; parallel edges are allowed.
CycleDecomposition short_cycle_decompose(std::size_t n,
                                         std::span<const Edge> edges);

// Degree-preserving resampling of every cycle: one parity class moves up and
// the other down by the smaller class minimum, with probabilities that keep
// each edge's expected weight. On equal weights this keeps either the odd or
// the even edges at doubled weight. Returns the new weights (0 = dropped).
std::vector<double> sample_cycle_weights(std::span<const Edge> edges,
                                         const CycleDecomposition& dec,
                                         Rng& rng);

std::size_t foreach_target(std::size_t n, double eps,
                           const SparsifyConfig& cfg = {});
double heavy_threshold(std::size_t n, double eps,
                       const SparsifyConfig& cfg = {});

// Graphical for-each sparsifier by repeated cycle halving.
Sparsifier spectral_sketch(const WeightedGraph& g, double eps,
                           std::uint64_t seed, const SparsifyConfig& cfg = {},
                           std::span<const EdgeId> source_ids = {});

}  // namespace streamcut
