#include <doctest.h>

#include <cmath>
#include <vector>

#include "streamcut/generators.hpp"
#include "streamcut/mincut.hpp"
#include "streamcut/oracles.hpp"
#include "streamcut/stream.hpp"
#include "support.hpp"

using namespace streamcut;

TEST_CASE("cut family bookkeeping") {
  CutFamily fam(1.5);
  auto a = VertexSet::singleton(5, 2);
  fam.offer(a, 4.0);
  fam.offer(a.complement(), 3.0);
  CHECK(fam.size() == 1);
  CHECK(fam.value_of(a) == 3.0);
  CHECK(fam.contains(a.complement()));
  fam.offer(VertexSet::singleton(5, 3), 10.0);
  CHECK(fam.size() == 1);
  fam.offer(VertexSet::singleton(5, 4), 4.4);
  fam.offer(VertexSet::singleton(5, 1), 2.0);
  CHECK(fam.min_value() == 2.0);
  fam.prune();
  CHECK(fam.size() == 2);
  auto sorted = fam.sorted();
  CHECK(sorted.front().value == 2.0);
  CHECK_FALSE(fam.contains(VertexSet::singleton(5, 4)));
}

TEST_CASE("contraction state") {
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 2.0);
  g.add_edge(2, 3, 3.0);
  g.add_edge(3, 0, 4.0);
  ContractionState cs(g);
  cs.contract(0, 1);
  CHECK(cs.supernodes() == 3);
  CHECK(cs.root(0) == cs.root(1));
  CHECK(cs.weight_between(0, 2) == 2.0);
  CHECK(cs.weight_between(1, 3) == 4.0);
  CHECK(cs.degree(0) == 6.0);
  CHECK_CODE(cs.contract(1, 0), ErrorCode::kDomain);
  cs.contract(2, 3);
  CHECK(cs.contracted_edges().size() == 1);
  CHECK(cs.contracted_edges()[0].w == 6.0);
  CHECK(cs.members(1).count() == 2);
}

TEST_CASE("contraction schedule") {
  CHECK(pipeline_reps(100) == static_cast<std::size_t>(std::ceil(2 * std::log(100.0))));
  double ln = std::log(16.0);
  CHECK(default_reps(16) == static_cast<std::size_t>(std::ceil(8 * ln * ln)));
  for (double alpha : {1.0, 1.1, 1.5}) {
    CHECK(contraction_base(alpha) >= 2);
    for (std::size_t c = contraction_base(alpha) + 1; c < 200; c += 17) {
      CHECK(contraction_target(c, alpha) < c);
    }
  }
}

TEST_CASE("enumeration finds the brute-force family") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto g = gen_gnp(12, 0.5, seed + 40);
    std::vector<std::uint32_t> label;
    if (connected_components(g, label) != 1) continue;
    auto truth = brute_force_cut_family(g, 1.1);
    EnumerateOptions o;
    o.alpha = 1.1;
    o.seed = seed;
    EnumerateStats st;
    auto fam = enumerate_approx_min_cuts(g, o, &st);
    CHECK(st.reps == default_reps(12));
    CHECK(st.leaves > 0);
    CHECK(fam.min_value() == doctest::Approx(truth.min_value()));
    for (const auto& c : truth.sorted()) CHECK(fam.contains(c.side));
    for (const auto& c : fam.sorted()) CHECK(truth.contains(c.side));
  }
  auto cyc = enumerate_approx_min_cuts(gen_cycle(8), EnumerateOptions{});
  CHECK(cyc.size() == 28);
}

TEST_CASE("enumeration with sketched leaf values") {
  auto g = gen_gnp(14, 0.5, 3);
  JLIncidenceSketch sk(200, 14, 8);
  sk.absorb_graph(g);
  EnumerateOptions o;
  o.alpha = 1.1;
  o.sketch = &sk;
  o.seed = 2;
  EnumerateStats st;
  auto fam = enumerate_approx_min_cuts(g, o, &st);
  CHECK(fam.size() > 0);
  CHECK(st.max_negation_residual < 1e-6);
}

TEST_CASE("disconnected input yields zero cuts") {
  WeightedGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  auto fam = enumerate_approx_min_cuts(g, EnumerateOptions{});
  CHECK(fam.min_value() == 0.0);
  auto s = EdgeStream::from_graph(g);
  auto r = approx_min_cut_stream(s, 0.2, 1);
  CHECK(r.disconnected);
  CHECK(r.value == 0.0);
}

TEST_CASE("streaming approximate minimum cut") {
  struct Case {
    WeightedGraph g;
    double eps;
  };
  std::vector<Case> cases{{gen_dumbbell(10), 0.2},
                          {gen_gnp(60, 0.25, 5), 0.2},
                          {gen_planted_bisection(64, 0.4, 6, 2), 0.2}};
  for (auto& c : cases) {
    auto opt = stoer_wagner_min_cut(c.g).value;
    auto s = EdgeStream::from_graph(c.g, 9);
    SpaceMeter meter;
    auto r = approx_min_cut_stream(s, c.eps, 3, {}, &meter);
    CHECK(std::abs(r.value - opt) <= c.eps * opt);
    CHECK(cut_value(c.g, r.side) <= (1.0 + c.eps) * opt + 1e-9);
    CHECK(r.space_words_peak == meter.peak());
    CHECK(r.family_size >= 1);
    for (auto id : r.crossing_edges) {
      const auto& e = c.g.edge(id);
      CHECK(r.side.test(e.u) != r.side.test(e.v));
    }
  }
}
