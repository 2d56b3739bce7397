#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "streamcut/graph.hpp"
#include "streamcut/stream.hpp"

namespace streamcut {

struct RandomOrderConfig {
  // Freeze once the prefix min cut exceeds c_thresh * ln n.
  double c_thresh = 20.0;
  // Multiplier on the prefix sampler's probabilities.
  double oversample = 4.0;
  // Suffix family radius relative to the prefix min cut.
  double family_radius = 1.21;
  std::size_t reps = 0;  // contraction repetitions, 0 = pipeline_reps(n)
  StreamConfig stream;
};

struct RandomOrderCut {
  VertexSet side;
  std::vector<EdgeId> crossing_edges;  // sorted stream ids
  // False when some crossing edges could not be retained.
  bool complete = true;
};

struct RandomOrderResult {
  double value = 0.0;
  std::vector<RandomOrderCut> cuts;
  std::size_t t_size = 0;
  std::size_t t_peak = 0;
  std::size_t space_words_peak = 0;
  std::optional<std::size_t> froze_at;  // stream position of the freeze
  std::size_t family_size = 0;          // suffix family (non-singleton)
  std::size_t checkpoints = 0;
  std::size_t enumerations = 0;
  // The prefix sparsifier kept every prefix edge at its own weight.
  bool prefix_exact = true;
  // Sampling happened and eps1 * value >= 1/2, so rounding is not certified.
  bool rounding_unverified = false;
  double eps1 = 0.0;
  double threshold = 0.0;
  std::size_t degree_sum = 0;
};

// Single pass over a simple, unit-weight stream. Throws
// Error(kInvalidArgument) on non-simple input.
RandomOrderResult exact_min_cut_random_order(EdgeStream& stream,
                                             std::uint64_t seed,
                                             const RandomOrderConfig& cfg = {},
                                             SpaceMeter* meter = nullptr);

std::string to_json(const RandomOrderResult& r);

struct ProbeRow {
  double ell = 0.0;
  std::size_t prefix_size = 0;  // for the first probed cut
  std::size_t trials = 0;
  std::size_t failures = 0;
  double failure_rate = 0.0;
  double mean_abs_deviation = 0.0;
};

// For each ell: `trials` times pick a cut from `cuts` uniformly, draw a
// uniformly random prefix of round(m * ell / w(S)) edges (capped at m) and
// count a failure when |w_prefix(S) - ell| > 0.1 * ell.
std::vector<ProbeRow> prefix_concentration_probe(
    const WeightedGraph& g, std::span<const VertexSet> cuts,
    std::span<const double> ells, std::size_t trials, std::uint64_t seed);

}  // namespace streamcut
