#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "streamcut/graph.hpp"
#include "streamcut/sparsify.hpp"

namespace streamcut {

// ---------------------------------------------------------------------------
// Edge streams
// ---------------------------------------------------------------------------

struct StreamEdge {
  EdgeId id = 0;  // position of the edge in the source file
  Vertex u = 0;
  Vertex v = 0;
  double w = 1.0;
};

// Forward-only iterator over edge insertions. There is no way to revisit a
// delivered element; each iterator counts its own deliveries.
class EdgeStream {
 public:
  // Line order of `g`, or a seeded uniform permutation of it.
  static EdgeStream from_graph(const WeightedGraph& g,
                               std::optional<std::uint64_t> shuffle_seed = {});

  std::optional<StreamEdge> next();

  std::size_t n() const { return n_; }
  std::size_t length() const { return order_ ? order_->size() : 0; }
  std::size_t position() const { return pos_; }
  bool simple() const { return simple_; }

  // A fresh iterator over the same arrival order, for an independent engine.
  EdgeStream restart() const;

  // Deliveries per source edge id through this iterator.
  const std::vector<std::uint32_t>& visit_counts() const { return visits_; }

 private:
  std::size_t n_ = 0;
  bool simple_ = false;
  std::shared_ptr<const std::vector<Edge>> edges_;
  std::shared_ptr<const std::vector<std::uint32_t>> order_;
  std::size_t pos_ = 0;
  std::vector<std::uint32_t> visits_;
};

// ---------------------------------------------------------------------------
// Space accounting
// ---------------------------------------------------------------------------

class SpaceMeter {
 public:
  struct Sample {
    std::size_t step;
    std::size_t live;
    std::size_t peak;
    std::string component;
  };

  void set(const std::string& component, std::size_t words);
  void release(const std::string& component) { set(component, 0); }
  void advance() { ++step_; }

  std::size_t live() const { return live_; }
  std::size_t peak() const { return peak_; }
  std::size_t step() const { return step_; }
  const std::map<std::string, std::size_t>& breakdown() const {
    return components_;
  }
  const std::map<std::string, std::size_t>& component_peaks() const {
    return component_peaks_;
  }

  void record_series(bool on) { recording_ = on; }
  const std::vector<Sample>& series() const { return series_; }
  // CSV with header "step,live_words,peak_words,component".
  void write_csv(std::ostream& out) const;

 private:
  std::map<std::string, std::size_t> components_;
  std::map<std::string, std::size_t> component_peaks_;
  std::size_t live_ = 0;
  std::size_t peak_ = 0;
  std::size_t step_ = 0;
  bool recording_ = false;
  std::vector<Sample> series_;
};

// Words charged for one stored edge: endpoints, weight, source id.
inline constexpr std::size_t kWordsPerEdge = 3;

// ---------------------------------------------------------------------------
// Online leverage-score sampling
// ---------------------------------------------------------------------------

struct OnlineSamplerConfig {
  double c0 = 2.0;
  // Multiplies every probability (before clamping at 1).
  double oversample = 1.0;
  // Ridge lambda = 1 / weight_cap.
  double weight_cap = kDefaultWeightCap;
  double solver_tolerance = 1e-6;
};

struct SampleDecision {
  bool kept = false;
  double p = 1.0;
  double weight = 0.0;     // reweighted weight when kept
  bool certified = false;  // p = 1 decided without a solve
  bool solver_failed = false;
};

class OnlineSampler {
 public:
  OnlineSampler(std::size_t n, double eps, std::uint64_t seed,
                OnlineSamplerConfig cfg = {});

  // Graph used for resistance solves. Without a provider the sampler stores
  // its kept edges and solves on them.
  void set_substrate(std::function<WeightedGraph()> provider);

  SampleDecision offer(const StreamEdge& e);

  std::size_t n() const { return n_; }
  double eps() const { return eps_; }
  double ridge() const { return ridge_; }
  std::size_t kept_count() const { return kept_count_; }
  std::size_t solver_failures() const { return solver_failures_; }
  // Stored kept edges (empty when an external substrate is set).
  const WeightedGraph& kept() const { return kept_; }
  const std::vector<EdgeId>& kept_ids() const { return kept_ids_; }
  std::size_t state_words() const;

 private:
  Vertex find(Vertex x);

  std::size_t n_;
  double eps_;
  std::uint64_t seed_;
  OnlineSamplerConfig cfg_;
  double ridge_;
  double scale_;
  std::vector<double> degree_;
  std::vector<Vertex> uf_;
  std::function<WeightedGraph()> provider_;
  WeightedGraph kept_;
  std::vector<EdgeId> kept_ids_;
  std::size_t kept_count_ = 0;
  std::size_t solver_failures_ = 0;
};

// ---------------------------------------------------------------------------
// Merge-and-reduce block tower
// ---------------------------------------------------------------------------

using Reducer = std::function<Sparsifier(const WeightedGraph&, double eps,
                                         std::uint64_t seed,
                                         std::span<const EdgeId> ids)>;

struct TowerConfig {
  // Block capacity; 0 selects n * ln^log_power(n) / eps^eps_power.
  std::size_t m_space = 0;
  double log_power = 3.0;
  double eps_power = 1.0;
};

struct CascadeEvent {
  std::size_t arrival;  // edges pushed before the cascade
  std::size_t level;    // block that received the reduction
  std::size_t edges_in;
  std::size_t edges_out;
};

class BlockTower {
 public:
  BlockTower(std::size_t n, double eps, std::uint64_t seed, Guarantee kind,
             Reducer reducer, TowerConfig cfg = {},
             SpaceMeter* meter = nullptr, std::string meter_prefix = "");

  void push(EdgeId id, Vertex u, Vertex v, double w);
  // Final reduction over the union of all blocks.
  Sparsifier finish();

  // Union of all blocks without reducing.
  WeightedGraph union_graph(std::vector<EdgeId>* ids = nullptr) const;
  std::size_t stored_edges() const;

  std::size_t levels() const { return levels_; }
  double eps_block() const { return eps_block_; }
  std::size_t m_space() const { return m_space_; }
  std::size_t pushed() const { return pushed_; }
  const std::vector<CascadeEvent>& trace() const { return trace_; }
  // Edge count of block i (0 = raw block).
  std::size_t block_size(std::size_t i) const { return blocks_[i].edges.size(); }

 private:
  struct Block {
    std::vector<Edge> edges;
    std::vector<EdgeId> ids;
    std::size_t generation = 0;
  };

  void cascade();
  void meter_update();

  std::size_t n_;
  double eps_;
  std::uint64_t seed_;
  Guarantee kind_;
  Reducer reducer_;
  SpaceMeter* meter_;
  std::string meter_prefix_;
  std::size_t levels_;
  double eps_block_;
  std::size_t m_space_;
  std::size_t pushed_ = 0;
  std::size_t reductions_ = 0;
  std::vector<Block> blocks_;
  std::vector<CascadeEvent> trace_;
};

// Number of tower levels ceil(log2(n / eps)) and the per-stage accuracy
// (1 + eps)^(1 / (levels + 1)) - 1; the final reduction is the extra stage.
std::size_t tower_levels(std::size_t n, double eps);
double tower_block_eps(std::size_t n, double eps);

// ---------------------------------------------------------------------------
// Streaming sparsifiers
// ---------------------------------------------------------------------------

struct StreamConfig {
  OnlineSamplerConfig sampler;
  SparsifyConfig sparsify;
  TowerConfig tower;
  bool use_sampler = true;
};

struct StreamResult {
  Sparsifier sparsifier;
  std::size_t sampled_edges = 0;
  std::size_t solver_failures = 0;
  std::vector<CascadeEvent> trace;
  std::size_t levels = 0;
  double eps_block = 0.0;
  std::size_t m_space = 0;
};

// Drains `stream` once.
StreamResult stream_foreach_sparsifier(EdgeStream& stream, double eps,
                                       std::uint64_t seed,
                                       const StreamConfig& cfg = {},
                                       SpaceMeter* meter = nullptr);
StreamResult stream_forall_sparsifier(EdgeStream& stream, double eps,
                                      std::uint64_t seed,
                                      const StreamConfig& cfg = {},
                                      SpaceMeter* meter = nullptr);

// Incremental form of the two streaming sparsifiers, for callers that run
// several engines over one pass.
class StreamingSparsifier {
 public:
  StreamingSparsifier(std::size_t n, Guarantee kind, double eps,
                      std::uint64_t seed, const StreamConfig& cfg = {},
                      SpaceMeter* meter = nullptr,
                      const std::string& meter_prefix = "");
  StreamingSparsifier(const StreamingSparsifier&) = delete;
  StreamingSparsifier& operator=(const StreamingSparsifier&) = delete;

  // Returns the weight stored for `e`, or 0 when the sampler dropped it.
  double push(const StreamEdge& e);
  // Reduced output; the engine must not be used afterwards.
  StreamResult finish();
  // Current union of the blocks (a sparsifier of the prefix so far).
  WeightedGraph snapshot(std::vector<EdgeId>* ids = nullptr) const {
    return tower_.union_graph(ids);
  }
  const BlockTower& tower() const { return tower_; }
  const OnlineSampler& sampler() const { return sampler_; }

 private:
  StreamConfig cfg_;
  SpaceMeter* meter_;
  std::string sampler_key_;
  std::size_t sampled_ = 0;
  BlockTower tower_;
  OnlineSampler sampler_;
};

}  // namespace streamcut
