#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "streamcut/error.hpp"

namespace streamcut {

using Vertex = std::uint32_t;
using EdgeId = std::uint64_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 1.0;
};

// Fixed-size bitset over the vertex set. Cut families can hold O(n^2)
// members, so membership tests are word-parallel probes.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static VertexSet singleton(std::size_t n, Vertex v);
  static VertexSet from_vertices(std::size_t n, std::span<const Vertex> vs);

  std::size_t universe() const { return n_; }
  bool test(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void set(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool proper() const {
    auto c = count();
    return c > 0 && c < n_;
  }

  VertexSet complement() const;
  // The side containing vertex 0; used as the deduplication key of a cut.
  VertexSet canonical() const { return test(0) ? *this : complement(); }
  std::vector<Vertex> vertices() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::size_t hash() const;

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

// A row b_e of the weighted incidence matrix: +sqrt(w) at u, -sqrt(w) at v.
struct IncidenceRow {
  Vertex u;
  Vertex v;
  double sqrt_w;
};

enum class GraphMode {
  kMulti,   // parallel edges allowed (contraction, reweighted sparsifiers)
  kSimple,  // unit weights, no repeated unordered pair
};

inline constexpr double kDefaultWeightCap = 1e12;

class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n, GraphMode mode = GraphMode::kMulti,
                         double weight_cap = kDefaultWeightCap);

  std::size_t add_edge(Vertex u, Vertex v, double w = 1.0);

  std::size_t n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  GraphMode mode() const { return mode_; }
  double weight_cap() const { return weight_cap_; }

  const Edge& edge(std::size_t i) const { return edges_[i]; }
  std::span<const Edge> edges() const { return edges_; }
  // Edge indices incident to v.
  std::span<const std::uint32_t> incident(Vertex v) const { return adj_[v]; }
  Vertex other(std::size_t edge_index, Vertex v) const {
    const Edge& e = edges_[edge_index];
    return e.u == v ? e.v : e.u;
  }

  bool integral() const { return integral_; }
  // Unit weights and no repeated unordered pair, regardless of mode.
  bool is_simple() const;
  double total_weight() const;
  std::vector<double> weighted_degrees() const;

  std::vector<IncidenceRow> incidence_rows() const;

 private:
  std::size_t n_ = 0;
  GraphMode mode_ = GraphMode::kMulti;
  double weight_cap_ = kDefaultWeightCap;
  bool integral_ = true;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::unordered_set<std::uint64_t> simple_pairs_;  // simple mode only
};

inline std::uint64_t pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

// A cut is a proper nonempty vertex subset together with its (optional) value.
struct Cut {
  VertexSet side;
  double value = 0.0;
};

double cut_value(const WeightedGraph& g, const VertexSet& side);
double quadratic_form(const WeightedGraph& g, std::span<const double> x);
Cut min_degree_cut(const WeightedGraph& g);

// Connected components as a label per vertex; returns the component count.
std::size_t connected_components(const WeightedGraph& g,
                                 std::vector<std::uint32_t>& label);

// Text format: "n m" then m lines "u v [w]". Line order is arrival order.
WeightedGraph read_graph(std::istream& in, GraphMode mode = GraphMode::kMulti);
WeightedGraph read_graph_file(const std::string& path,
                              GraphMode mode = GraphMode::kMulti);
WeightedGraph parse_graph(const std::string& text,
                          GraphMode mode = GraphMode::kMulti);
void write_graph(std::ostream& out, const WeightedGraph& g);
std::string format_graph(const WeightedGraph& g);

}  // namespace streamcut
