#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "streamcut/graph.hpp"
#include "streamcut/linalg.hpp"
#include "streamcut/stream.hpp"

namespace streamcut {

// Union-find over the vertices plus the contracted multigraph between the
// roots, with an optional attached sketch whose columns follow the merges.
class ContractionState {
 public:
  explicit ContractionState(const WeightedGraph& g,
                            JLIncidenceSketch sketch = {});

  // Merges the supernodes holding a and b. Throws Error(kDomain) when they
  // already coincide (the edge would be a self-loop).
  void contract(Vertex a, Vertex b);

  Vertex root(Vertex v) const;
  std::size_t supernodes() const { return count_; }
  // Accumulated weight between the supernodes holding a and b.
  double weight_between(Vertex a, Vertex b) const;
  double degree(Vertex a) const;
  // One edge per adjacent pair of roots, u < v.
  std::vector<Edge> contracted_edges() const;
  VertexSet members(Vertex a) const;

  bool has_sketch() const { return sketch_.k() > 0; }
  const JLIncidenceSketch& sketch() const { return sketch_; }

 private:
  std::size_t n_;
  std::size_t count_;
  mutable std::vector<Vertex> parent_;
  std::vector<std::unordered_map<Vertex, double>> adj_;
  JLIncidenceSketch sketch_;
};

// Deduplicated cut collection keyed by the side containing vertex 0.
class CutFamily {
 public:
  explicit CutFamily(double alpha = 1.0) : alpha_(alpha) {}

  // Keeps the smaller value for a repeated cut; ignores values above
  // alpha times the best seen so far.
  void offer(const VertexSet& side, double value);
  // Drops members above alpha * min_value.
  void prune();

  double alpha() const { return alpha_; }
  double min_value() const { return min_value_; }
  std::size_t size() const { return cuts_.size(); }
  bool contains(const VertexSet& side) const;
  double value_of(const VertexSet& side) const;
  // Members ordered by value, then by their vertex lists.
  std::vector<Cut> sorted() const;

 private:
  double alpha_;
  double min_value_ = std::numeric_limits<double>::infinity();
  std::unordered_map<VertexSet, double, VertexSetHash> cuts_;
};

struct EnumerateOptions {
  double alpha = 1.0;
  std::size_t reps = 0;  // 0 selects ceil(8 ln^2 n)
  std::uint64_t seed = 0;
  // Leaf values come from this sketch (absorbed over the same graph) when
  // set; otherwise from exact multigraph boundary weights.
  const JLIncidenceSketch* sketch = nullptr;
};

struct EnumerateStats {
  std::size_t reps = 0;
  std::size_t leaves = 0;
  std::size_t leaf_cuts = 0;
  // max over leaves of ||sum(side cols) + sum(other cols)|| / ||sum(side)||.
  double max_negation_residual = 0.0;
};

std::size_t default_reps(std::size_t n);
// ceil(2 ln n): the streaming pipelines' default repetition count.
std::size_t pipeline_reps(std::size_t n);
// Supernode count after one contraction phase from `count`.
std::size_t contraction_target(std::size_t count, double alpha);
std::size_t contraction_base(double alpha);

// Recursive contraction with two-way branching, repeated `reps` times.
// Disconnected input yields its component cuts at value 0.
CutFamily enumerate_approx_min_cuts(const WeightedGraph& g,
                                    const EnumerateOptions& opts,
                                    EnumerateStats* stats = nullptr);

struct MinCutConfig {
  double c_alpha = 1.0;
  std::size_t reps = 0;  // 0 selects pipeline_reps(n)
  std::size_t sketch_copies = 9;
  double c_jl = 4.0;
  // Coarse for-all accuracy 0.5 and 1.5-approximate candidates.
  bool simple_variant = false;
  StreamConfig stream;
};

struct MinCutResult {
  double value = 0.0;
  VertexSet side;
  // Source ids of for-each sparsifier edges crossing the returned cut.
  std::vector<EdgeId> crossing_edges;
  std::size_t space_words_peak = 0;
  std::size_t family_size = 0;
  bool disconnected = false;
  double alpha = 1.0;
  double forall_eps = 0.0;
  std::size_t reps = 0;
  std::size_t sketch_rows = 0;
};

// One pass over `stream`; candidates from the for-all sparsifier, values
// from median JL estimates over the for-each sparsifier.
MinCutResult approx_min_cut_stream(EdgeStream& stream, double eps,
                                   std::uint64_t seed,
                                   const MinCutConfig& cfg = {},
                                   SpaceMeter* meter = nullptr);

std::string to_json(const MinCutResult& r);

}  // namespace streamcut
