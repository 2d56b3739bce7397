#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "streamcut/graph.hpp"

namespace streamcut {

// ---------------------------------------------------------------------------
// Random families. Every generator is a pure function of its arguments.
// ---------------------------------------------------------------------------

WeightedGraph gen_gnp(std::size_t n, double p, std::uint64_t seed);
// Two K_k joined by the single edge (k-1, k).
WeightedGraph gen_dumbbell(std::size_t k);
WeightedGraph gen_cycle(std::size_t n);
// Two halves of G(n/2, p_in) plus `cross` distinct random edges between them.
WeightedGraph gen_planted_bisection(std::size_t n, double p_in,
                                    std::size_t cross, std::uint64_t seed);
// `layers` cliques of `width` vertices in a row; consecutive layers joined by
// k distinct random edges.
WeightedGraph gen_kedge_layered(std::size_t layers, std::size_t width,
                                std::size_t k, std::uint64_t seed);
// Union of `cycles` random Hamiltonian cycles, duplicates skipped.
WeightedGraph gen_hamiltonian_union(std::size_t n, std::size_t cycles,
                                    std::uint64_t seed);
// Uniform simple graph with exactly m distinct edges.
WeightedGraph gen_gnm(std::size_t n, std::size_t m, std::uint64_t seed);

struct CorpusEntry {
  std::string name;
  std::string kind;
  std::string params_json;
  std::uint64_t seed = 0;
  WeightedGraph graph;
};

// kind in {gnp, dumbbell, cycle, planted-bisection, kedge-layered,
// hamiltonian-union}; params
// is a JSON object, e.g. {"n": 20, "p": 0.5}. Missing keys take defaults.
CorpusEntry gen_corpus_entry(const std::string& kind,
                             const std::string& params_json,
                             std::uint64_t seed);

// Writes <dir>/<name>.txt for each entry and <dir>/manifest.json.
void write_corpus(const std::string& dir, const std::vector<CorpusEntry>& entries);

// ---------------------------------------------------------------------------
// Adversarial gadgets
// ---------------------------------------------------------------------------

struct HardInstance {
  WeightedGraph graph;  // simple; the first alice_edges edges encode the bits
  std::size_t alice_edges = 0;
  Vertex a = 0;
  Vertex b = 0;
  Vertex c = 0;
  bool bit = false;
  std::size_t deg_a = 0;
  std::size_t deg_b = 0;
  double c1_value = 0.0;  // (L plus S-side blocks) against the rest
  double c2_value = 0.0;  // {c} alone
  double expected_min_cut = 0.0;
  VertexSet c1_side;
  // Approximate gadget only.
  double eps = 0.0;
  std::size_t block_size = 0;
  std::size_t clique_size = 0;
  std::size_t blocks = 0;

  std::string ground_truth_json() const;
};

// Index i in [0, n(n-1)/2) names the pair (a, b), a < b, in row-major
// upper-triangle order.
std::pair<Vertex, Vertex> triangle_pair(std::size_t n, std::size_t index);

// Vertices: G on 0..n-1, clique S on n..4n-1, clique T on 4n..7n-1, c = 7n.
// Throws Error(kDomain) when deg(a) + deg(b) <= 1.
HardInstance gen_hard_exact(std::size_t n, std::span<const std::uint8_t> bits,
                            std::size_t index);

// Largest eps' <= eps with 1/(4 eps') integral.
double snap_gadget_eps(double eps);

// `blocks` disjoint blocks of 1/(4 eps) vertices, bits over the pairs of each
// block in block order; cliques S and T of 3/(4 eps) vertices; vertex c last.
// Non-target blocks alternate between S and T in block order.
HardInstance gen_hard_approx(double eps, std::size_t blocks,
                             std::span<const std::uint8_t> bits,
                             std::size_t index);

std::size_t hard_approx_bits(double eps, std::size_t blocks);

std::vector<std::uint8_t> random_bits(std::size_t count, std::uint64_t seed);

}  // namespace streamcut
