#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "streamcut/graph.hpp"
#include "streamcut/sparsify.hpp"
#include "streamcut/stream.hpp"

namespace streamcut {

struct ERConfig {
  double c_jl = 4.0;
  std::size_t copies = 9;
  double solver_tolerance = 1e-10;
};

// Z = Q W^{1/2} B L^+ for one or more independent projections Q. Each copy
// stores Z column-major so a query reads two contiguous columns.
class ERSketch {
 public:
  ERSketch() = default;
  ERSketch(std::size_t n, std::size_t k) : n_(n), k_(k) {}

  // Median over copies of ||Z[:,u] - Z[:,v]||^2.
  double query(Vertex u, Vertex v) const;
  // Single-copy estimate.
  double query_copy(std::size_t copy, Vertex u, Vertex v) const;

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t copies() const { return z_.size(); }
  std::span<const double> column(std::size_t copy, Vertex v) const {
    return {z_[copy].data() + std::size_t{v} * k_, k_};
  }
  void add_copy(std::vector<double> z) { z_.push_back(std::move(z)); }

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<std::vector<double>> z_;
};

// Sketch copies over one sparsifier `h`. Throws Error(kDisconnected) for a
// disconnected h and Error(kNotConverged) when a solve fails.
ERSketch build_er_sketch(const WeightedGraph& h, double eps,
                         std::uint64_t seed, const ERConfig& cfg = {});
inline ERSketch build_er_sketch(const Sparsifier& h, double eps,
                                std::uint64_t seed, const ERConfig& cfg = {}) {
  return build_er_sketch(h.graph, eps, seed, cfg);
}

// One single-copy sketch per independently streamed for-each sparsifier of
// g; the median then runs across sparsifier copies.
ERSketch build_er_sketch_strict(const WeightedGraph& g, double eps,
                                std::uint64_t seed, const ERConfig& cfg = {},
                                const StreamConfig& stream_cfg = {});

double query_er(const ERSketch& sk, Vertex u, Vertex v);

}  // namespace streamcut
