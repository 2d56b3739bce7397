#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "streamcut/generators.hpp"
#include "streamcut/graph.hpp"
#include "streamcut/mincut.hpp"
#include "streamcut/oracles.hpp"
#include "support.hpp"

using namespace streamcut;

TEST_CASE("Stoer-Wagner on known graphs") {
  CHECK(stoer_wagner_min_cut(gen_cycle(9)).value == doctest::Approx(2.0));
  auto db = stoer_wagner_min_cut(gen_dumbbell(7));
  CHECK(db.value == doctest::Approx(1.0));
  CHECK(db.side.count() == 7);
  CHECK(stoer_wagner_min_cut(gen_gnp(9, 1.0, 0)).value == doctest::Approx(8.0));

  WeightedGraph split(4);
  split.add_edge(0, 1, 3.0);
  split.add_edge(2, 3, 3.0);
  auto c = stoer_wagner_min_cut(split);
  CHECK(c.value == 0.0);
  CHECK(c.side.proper());
}

TEST_CASE("Stoer-Wagner agrees with brute force on weighted graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng = make_rng(seed);
    auto base = gen_gnp(12, 0.45, seed);
    WeightedGraph g(12);
    for (const auto& e : base.edges()) g.add_edge(e.u, e.v, 0.5 + 2.0 * uniform01(rng));
    std::vector<std::uint32_t> label;
    if (connected_components(g, label) != 1) continue;
    auto sw = stoer_wagner_min_cut(g);
    auto bf = brute_force_min_cut(g);
    CHECK(sw.value == doctest::Approx(bf.value));
    CHECK(cut_value(g, sw.side) == doctest::Approx(sw.value));
  }
}

TEST_CASE("brute-force family on a cycle") {
  auto fam = brute_force_cut_family(gen_cycle(8), 1.0);
  CHECK(fam.min_value() == 2.0);
  CHECK(fam.size() == 28);
  // A value-4 cut removes four edges; the four arcs alternate sides.
  auto wide = brute_force_cut_family(gen_cycle(8), 2.0);
  CHECK(wide.size() == 28 + 70);
  for (const auto& c : wide.sorted()) CHECK(c.side.test(0));
  CHECK_CODE(brute_force_cut_family(gen_cycle(27), 1.0), ErrorCode::kUnsupported);
}

TEST_CASE("dense Laplacian and resistances") {
  auto g = gen_gnp(25, 0.3, 4);
  auto l = dense_laplacian(g);
  for (std::size_t i = 0; i < 25; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < 25; ++j) row += l[i * 25 + j];
    CHECK(std::abs(row) < 1e-12);
  }
  auto r = dense_er_matrix(g);
  for (std::size_t i = 0; i < 25; ++i) {
    CHECK(r[i * 25 + i] == doctest::Approx(0.0));
    for (std::size_t j = 0; j < 25; ++j) CHECK(r[i * 25 + j] == doctest::Approx(r[j * 25 + i]));
  }
  // Triangle inequality: resistance is a metric.
  for (std::size_t a = 0; a < 25; a += 4)
    for (std::size_t b = 0; b < 25; b += 3)
      for (std::size_t c = 0; c < 25; c += 5)
        CHECK(r[a * 25 + c] <= r[a * 25 + b] + r[b * 25 + c] + 1e-9);

  auto cyc = dense_er_matrix(gen_cycle(10));
  CHECK(cyc[3] == doctest::Approx(3.0 * 7.0 / 10.0));

  WeightedGraph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_CODE(dense_er_matrix(split), ErrorCode::kDisconnected);
}

TEST_CASE("leverage scores: Foster and trees") {
  auto g = gen_gnp(40, 0.25, 6);
  auto lev = exact_leverage_scores(g);
  CHECK(std::accumulate(lev.begin(), lev.end(), 0.0) == doctest::Approx(39.0).epsilon(1e-9));
  for (double l : lev) {
    CHECK(l > 0.0);
    CHECK(l <= 1.0 + 1e-9);
  }
  WeightedGraph tree(6);
  for (Vertex v = 1; v < 6; ++v) tree.add_edge(v / 2, v, double(v));
  for (double l : exact_leverage_scores(tree)) CHECK(l == doctest::Approx(1.0));
}
