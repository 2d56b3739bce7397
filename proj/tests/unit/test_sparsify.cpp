#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <json.hpp>

#include "streamcut/generators.hpp"
#include "streamcut/graph.hpp"
#include "streamcut/sparsify.hpp"
#include "support.hpp"

using namespace streamcut;

namespace {

bool share_vertex(const Edge& a, const Edge& b) {
  return a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
}

// Structural contract of a decomposition of `edges`.
void check_decomposition(std::size_t n, std::span<const Edge> edges,
                         const CycleDecomposition& d) {
  std::vector<int> seen(edges.size(), 0);
  for (const auto& c : d.cycles) {
    CHECK(c.size() % 2 == 0);
    CHECK(c.size() >= 2);
    CHECK(c.size() <= d.length_cap);
    std::vector<int> deg(n, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      ++seen[c[i]];
      const auto& e = edges[c[i]];
      ++deg[e.u];
      ++deg[e.v];
      CHECK(share_vertex(e, edges[c[(i + 1) % c.size()]]));
    }
    for (int x : deg) CHECK(x % 2 == 0);
  }
  for (auto id : d.leftover) ++seen[id];
  for (int s : seen) CHECK(s == 1);
  CHECK(d.leftover.size() <= 2 * n + d.cycles.size());
}

double weighted_degree_gap(const WeightedGraph& g, std::span<const double> w) {
  std::vector<double> before(g.n(), 0.0), after(g.n(), 0.0);
  for (std::size_t i = 0; i < g.m(); ++i) {
    const auto& e = g.edge(i);
    before[e.u] += e.w;
    before[e.v] += e.w;
    after[e.u] += w[i];
    after[e.v] += w[i];
  }
  double gap = 0.0;
  for (std::size_t v = 0; v < g.n(); ++v) gap = std::max(gap, std::abs(before[v] - after[v]));
  return gap;
}

}  // namespace

TEST_CASE("cycle length cap") {
  CHECK(cycle_length_cap(16) == 9);
  CHECK(cycle_length_cap(17) == 11);
  CHECK(cycle_length_cap(2) == 3);
}

TEST_CASE("even cycle decomposes into itself") {
  auto c = gen_cycle(6);
  auto d = short_cycle_decompose(6, c.edges());
  REQUIRE(d.cycles.size() == 1);
  CHECK(d.cycles[0].size() == 6);
  CHECK(d.leftover.empty());
  check_decomposition(6, c.edges(), d);
}

TEST_CASE("odd cycle leaves its edges over") {
  auto c = gen_cycle(7);
  auto d = short_cycle_decompose(7, c.edges());
  CHECK(d.cycles.empty());
  CHECK(d.leftover.size() == 7);
}

TEST_CASE("decomposition contract on random and parallel-edge graphs") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = gen_gnp(60, 0.15 + 0.05 * seed, seed);
    check_decomposition(g.n(), g.edges(), short_cycle_decompose(g.n(), g.edges()));
  }
  WeightedGraph multi(5);
  for (int r = 0; r < 3; ++r) {
    multi.add_edge(0, 1);
    multi.add_edge(1, 2);
    multi.add_edge(3, 4);
  }
  check_decomposition(5, multi.edges(), short_cycle_decompose(5, multi.edges()));
  auto db = gen_dumbbell(12);
  check_decomposition(db.n(), db.edges(), short_cycle_decompose(db.n(), db.edges()));
}

TEST_CASE("cycle sampling preserves weighted degrees") {
  auto g = gen_gnp(50, 0.3, 8);
  WeightedGraph w(50);
  Rng wr = make_rng(8, 1);
  for (const auto& e : g.edges()) w.add_edge(e.u, e.v, 1.0 + 3.0 * uniform01(wr));
  auto d = short_cycle_decompose(w.n(), w.edges());
  Rng rng = make_rng(4);
  auto nw = sample_cycle_weights(w.edges(), d, rng);
  REQUIRE(nw.size() == w.m());
  CHECK(weighted_degree_gap(w, nw) < 1e-9);
  std::size_t dropped = std::count(nw.begin(), nw.end(), 0.0);
  CHECK(dropped >= d.cycles.size());
  for (auto id : d.leftover) CHECK(nw[id] == w.edge(id).w);
}

TEST_CASE("cycle sampling is unbiased per edge") {
  auto g = gen_cycle(8);
  auto d = short_cycle_decompose(8, g.edges());
  std::vector<double> mean(8, 0.0);
  const int trials = 4000;
  Rng rng = make_rng(21);
  for (int t = 0; t < trials; ++t) {
    auto nw = sample_cycle_weights(g.edges(), d, rng);
    for (std::size_t i = 0; i < 8; ++i) mean[i] += nw[i] / trials;
  }
  // Each edge is 0 or 2 with probability 1/2: sd of the mean is 1/sqrt(trials).
  for (double m : mean) CHECK(std::abs(m - 1.0) < 5.0 / std::sqrt(double(trials)));
}

TEST_CASE("for-all sparsifier keeps quadratic forms") {
  auto g = gen_gnp(120, 0.9, 2);
  auto s = forall_sparsify(g, 0.9, 5);
  CHECK(s.kind == Guarantee::kForAll);
  CHECK(s.graph.m() < g.m());
  REQUIRE(s.source_edge_ids.size() == s.graph.m());
  for (std::size_t i = 0; i < s.graph.m(); ++i) {
    const auto& src = g.edge(s.source_edge_ids[i]);
    CHECK(src.u == s.graph.edge(i).u);
    CHECK(src.v == s.graph.edge(i).v);
  }
  Rng rng = make_rng(6);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x(120);
    for (auto& xi : x) xi = uniform01(rng) < 0.5 ? 1.0 : 0.0;
    double truth = quadratic_form(g, x);
    if (truth == 0.0) continue;
    CHECK(std::abs(quadratic_form(s.graph, x) / truth - 1.0) <= 0.9);
  }
  CHECK(std::abs(s.graph.total_weight() / g.total_weight() - 1.0) < 0.1);
}

TEST_CASE("leverage estimates sum to about n - 1") {
  auto g = gen_gnp(80, 0.2, 9);
  auto lev = estimate_leverage(g, g, 3);
  double sum = 0.0;
  for (double l : lev) sum += l;
  CHECK(sum == doctest::Approx(79.0).epsilon(0.15));
}

TEST_CASE("spectral sketch halves while preserving degrees") {
  auto g = gen_gnp(100, 0.2, 11);
  SparsifyConfig cfg;
  cfg.target_override = g.m() / 2;
  // Small graphs have only heavy edges under the default threshold.
  cfg.heavy_const = 0.05;
  auto s = spectral_sketch(g, 0.5, 7, cfg);
  CHECK(s.kind == Guarantee::kForEach);
  CHECK_FALSE(s.fallback);
  CHECK(s.graph.m() <= g.m() / 2);
  CHECK(s.diagnostics.rounds >= 1);
  CHECK(s.diagnostics.cycles_sampled > 0);
  CHECK(s.diagnostics.max_bucket_degree_drift < 1e-9);
  auto before = g.weighted_degrees();
  auto after = s.graph.weighted_degrees();
  for (std::size_t v = 0; v < g.n(); ++v) CHECK(after[v] == doctest::Approx(before[v]));
  std::set<EdgeId> ids(s.source_edge_ids.begin(), s.source_edge_ids.end());
  CHECK(ids.size() == s.source_edge_ids.size());
}

TEST_CASE("heavy edges fall back to leverage sampling") {
  auto g = gen_gnp(60, 0.5, 4);
  SparsifyConfig cfg;
  cfg.target_override = g.m() / 2;
  auto s = spectral_sketch(g, 0.5, 7, cfg);
  CHECK(s.fallback);
  CHECK(s.graph.m() < g.m());
}

TEST_CASE("for-each target above m returns the input") {
  auto g = gen_gnp(40, 0.3, 1);
  CHECK(foreach_target(40, 0.5) >= g.m());
  auto s = spectral_sketch(g, 0.5, 1);
  CHECK(s.graph.m() == g.m());
  CHECK(s.diagnostics.rounds == 0);
  double ln = std::log(40.0);
  CHECK(foreach_target(40, 0.5) ==
        static_cast<std::size_t>(std::ceil(4.0 * 40 * ln * ln * ln / 0.5)));
}

TEST_CASE("metadata json") {
  auto g = gen_cycle(5);
  auto s = forall_sparsify(g, 0.5, 3);
  auto j = nlohmann::json::parse(metadata_json(s));
  CHECK(j["kind"] == "FOR_ALL");
  CHECK(j["eps"] == 0.5);
  CHECK(j["source_edge_ids"].size() == s.graph.m());
  CHECK(std::string(to_string(Guarantee::kForEach)) == "FOR_EACH");
}
