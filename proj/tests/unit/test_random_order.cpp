#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "streamcut/generators.hpp"
#include "streamcut/oracles.hpp"
#include "streamcut/random_order.hpp"
#include "streamcut/stream.hpp"
#include "support.hpp"

using namespace streamcut;

namespace {

double log_choose(double n, double k) {
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

// P(|X - ell| > 0.1 ell) for X ~ Hypergeometric(total, good, draws).
double hypergeometric_failure(int total, int good, int draws, double ell) {
  double fail = 0.0;
  for (int x = std::max(0, draws - (total - good)); x <= std::min(good, draws); ++x) {
    if (std::abs(x - ell) <= 0.1 * ell) continue;
    fail += std::exp(log_choose(good, x) + log_choose(total - good, draws - x) -
                     log_choose(total, draws));
  }
  return fail;
}

std::vector<EdgeId> crossing(const WeightedGraph& g, const VertexSet& side) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < g.m(); ++i) {
    const auto& e = g.edge(i);
    if (side.test(e.u) != side.test(e.v)) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST_CASE("prefix probe matches the hypergeometric law") {
  auto k20 = gen_gnp(20, 1.0, 0);
  std::vector<VertexSet> cuts;
  for (Vertex v = 0; v < 20; ++v) cuts.push_back(VertexSet::singleton(20, v));
  std::vector<double> ells{10.0, 20.0, 40.0};
  const std::size_t trials = 10000;
  auto rows = prefix_concentration_probe(k20, cuts, ells, trials, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].prefix_size == 100);
  double p = hypergeometric_failure(190, 19, 100, 10.0);
  double sd = std::sqrt(p * (1 - p) / trials);
  CHECK(std::abs(rows[0].failure_rate - p) < 5 * sd);
  // Longer prefixes cap at m, where the count is exactly w(S) = 19.
  CHECK(rows[1].prefix_size == 190);
  CHECK(rows[1].failure_rate == 0.0);
  CHECK(rows[2].failure_rate == 1.0);
  for (const auto& r : rows) CHECK(r.trials == trials);
}

TEST_CASE("exact minimum cut in random order") {
  auto g = gen_hamiltonian_union(60, 2, 4);
  auto opt = stoer_wagner_min_cut(g).value;
  for (std::uint64_t s = 0; s < 3; ++s) {
    auto stream = EdgeStream::from_graph(g, s);
    auto r = exact_min_cut_random_order(stream, s);
    CHECK(r.value == opt);
    CHECK_FALSE(r.cuts.empty());
    CHECK(r.t_size <= 8 * g.n());
    for (const auto& c : r.cuts) CHECK(cut_value(g, c.side) == opt);
  }
}

TEST_CASE("small graphs: every minimum cut with its crossing edges") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto g = gen_gnp(14, 0.4, seed + 100);
    std::vector<std::uint32_t> label;
    if (connected_components(g, label) != 1) continue;
    auto fam = brute_force_cut_family(g, 1.0);
    auto stream = EdgeStream::from_graph(g, seed);
    auto r = exact_min_cut_random_order(stream, seed);
    CHECK(r.value == fam.min_value());
    CHECK(r.cuts.size() == fam.size());
    for (const auto& c : r.cuts) {
      CHECK(fam.contains(c.side));
      CHECK(c.complete);
      CHECK(c.crossing_edges == crossing(g, c.side));
    }
  }
}

TEST_CASE("random order rejects non-simple streams") {
  WeightedGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  auto s = EdgeStream::from_graph(g);
  CHECK_CODE(exact_min_cut_random_order(s, 1), ErrorCode::kInvalidArgument);
}
