#include "streamcut/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include <json.hpp>

#include "streamcut/effres.hpp"
#include "streamcut/linalg.hpp"
#include "streamcut/mincut.hpp"
#include "streamcut/oracles.hpp"
#include "streamcut/random_order.hpp"
#include "streamcut/rng.hpp"
#include "streamcut/sparsify.hpp"
#include "streamcut/stream.hpp"

namespace streamcut {

namespace {

using nlohmann::json;

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double ratio(std::size_t a, std::size_t b) {
  return b ? static_cast<double>(a) / static_cast<double>(b) : 0.0;
}

bool within(double est, double truth, double eps) {
  return std::abs(est - truth) <= eps * std::abs(truth) + 1e-9;
}

void note(const AcceptOptions& o, const std::string& line) {
  if (o.progress) o.progress(line);
}

std::vector<EdgeId> crossing_ids(const WeightedGraph& g, const VertexSet& s) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < g.m(); ++i) {
    const auto& e = g.edge(i);
    if (s.test(e.u) != s.test(e.v)) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

CriterionResult approx_min_cut(const AcceptOptions& o) {
  CriterionResult r;
  const double eps = 0.2;
  std::size_t value_ok = 0, side_ok = 0, total = 0;
  json rows = json::array();
  for (const auto& entry : acceptance_corpus(o.seed)) {
    if (entry.kind == "cycle" || entry.kind == "kedge-layered" ||
        entry.kind == "hamiltonian-union" ||
        (entry.kind == "gnp" && entry.graph.n() < 100)) {
      continue;
    }
    const auto& g = entry.graph;
    auto truth = stoer_wagner_min_cut(g);
    auto stream = EdgeStream::from_graph(g);
    auto res = approx_min_cut_stream(stream, eps, derive_seed(o.seed, total));
    const double side_value = cut_value(g, res.side);
    const bool v_ok = within(res.value, truth.value, eps);
    const bool s_ok = side_value <= (1.0 + eps) * truth.value + 1e-9;
    value_ok += v_ok;
    side_ok += s_ok;
    ++total;
    rows.push_back({{"instance", entry.name},
                    {"oracle", truth.value},
                    {"reported", res.value},
                    {"side_value", side_value}});
    note(o, entry.name + " oracle=" + fmt("%g", truth.value) +
                " reported=" + fmt("%.4g", res.value) +
                " side=" + fmt("%g", side_value));
  }
  const double fv = ratio(value_ok, total), fs = ratio(side_ok, total);
  r.pass = total == 50 && fv >= 0.95 && fs >= 0.95;
  r.summary = std::to_string(total) + " instances, value within 1+-0.2: " +
              fmt("%.0f%%", 100 * fv) + ", side <= 1.2 opt: " +
              fmt("%.0f%%", 100 * fs);
  r.metrics_json = json{{"instances", total},
                        {"value_fraction", fv},
                        {"side_fraction", fs},
                        {"rows", rows}}
                       .dump();
  return r;
}

// ---------------------------------------------------------------------------

CriterionResult foreach_query(const AcceptOptions& o) {
  CriterionResult r;
  const double eps = 0.5;
  const std::size_t n = 200, vectors = 1000, seeds = 30, copies = 9;
  auto g = gen_gnp(n, 0.2, derive_seed(o.seed, 0xc2));
  auto vrng = make_rng(o.seed, 0xc2f);
  std::vector<std::vector<double>> xs(vectors, std::vector<double>(n));
  std::vector<double> truth(vectors);
  for (std::size_t i = 0; i < vectors; ++i) {
    for (auto& x : xs[i]) x = uniform01(vrng) < 0.5 ? 1.0 : 0.0;
    truth[i] = quadratic_form(g, xs[i]);
  }
  std::size_t single_ok = 0;
  std::vector<std::vector<double>> est(vectors);
  std::size_t edges_max = 0;
  for (std::size_t s = 0; s < seeds; ++s) {
    auto stream = EdgeStream::from_graph(g);
    auto res = stream_foreach_sparsifier(stream, eps, derive_seed(o.seed, 0xc200 + s));
    edges_max = std::max(edges_max, res.sparsifier.graph.m());
    for (std::size_t i = 0; i < vectors; ++i) {
      double q = quadratic_form(res.sparsifier.graph, xs[i]);
      single_ok += within(q, truth[i], eps);
      if (s < copies) est[i].push_back(q);
    }
  }
  std::size_t median_ok = 0;
  for (std::size_t i = 0; i < vectors; ++i) {
    median_ok += within(median(est[i]), truth[i], eps);
  }
  const double fs = ratio(single_ok, vectors * seeds);
  const double fm = ratio(median_ok, vectors);
  r.pass = fs >= 2.0 / 3.0 && fm >= 0.99;
  r.summary = "G(200,0.2) m=" + std::to_string(g.m()) +
              ", single copy in 1+-0.5: " + fmt("%.1f%%", 100 * fs) +
              ", median of 9: " + fmt("%.1f%%", 100 * fm) +
              ", sparsifier edges <= " + std::to_string(edges_max);
  r.metrics_json = json{{"m", g.m()},
                        {"single_fraction", fs},
                        {"median_fraction", fm},
                        {"sparsifier_edges_max", edges_max}}
                       .dump();
  return r;
}

// ---------------------------------------------------------------------------

std::size_t foreach_peak(std::size_t n, double eps, std::uint64_t seed) {
  auto g = gen_gnm(n, 20 * n, seed);
  auto stream = EdgeStream::from_graph(g);
  SpaceMeter meter;
  stream_foreach_sparsifier(stream, eps, derive_seed(seed, 1), {}, &meter);
  return meter.peak();
}

CriterionResult space_scaling(const AcceptOptions& o) {
  CriterionResult r;
  const std::vector<std::size_t> ns = {100, 200, 400, 800};
  std::vector<double> lx, ly;
  json peaks = json::object();
  for (auto n : ns) {
    auto peak = foreach_peak(n, 0.5, derive_seed(o.seed, n));
    peaks[std::to_string(n)] = peak;
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(static_cast<double>(peak)));
    note(o, "n=" + std::to_string(n) + " peak=" + std::to_string(peak));
  }
  const double mx = (lx[0] + lx[1] + lx[2] + lx[3]) / 4;
  const double my = (ly[0] + ly[1] + ly[2] + ly[3]) / 4;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  const std::size_t n_eps = 200;
  auto half = foreach_peak(n_eps, 0.5, derive_seed(o.seed, n_eps));
  auto quarter = foreach_peak(n_eps, 0.25, derive_seed(o.seed, n_eps));
  const double growth = static_cast<double>(quarter) / static_cast<double>(half);
  r.pass = slope >= 0.9 && slope <= 1.35 && growth <= 2.8;
  r.summary = "log-log slope in n: " + fmt("%.3f", slope) +
              ", peak(eps=0.25)/peak(eps=0.5): " + fmt("%.3f", growth);
  r.metrics_json = json{{"peaks", peaks},
                        {"slope", slope},
                        {"eps_half_peak", half},
                        {"eps_quarter_peak", quarter},
                        {"eps_growth", growth}}
                       .dump();
  return r;
}

// ---------------------------------------------------------------------------

struct ShuffleTally {
  std::size_t runs = 0;
  std::size_t exact = 0;
  std::size_t t_violations = 0;
  std::size_t t_max = 0;
  std::size_t family_checked = 0;
  std::size_t family_mismatch = 0;
  std::size_t unverified = 0;
};

void shuffle_runs(const WeightedGraph& g, std::size_t shuffles,
                  std::uint64_t seed, bool check_family, ShuffleTally& t) {
  auto truth = stoer_wagner_min_cut(g);
  std::set<std::vector<Vertex>> oracle_sides;
  std::map<std::vector<Vertex>, std::vector<EdgeId>> oracle_cross;
  if (check_family) {
    for (const auto& c : brute_force_cut_family(g, 1.0).sorted()) {
      auto key = c.side.canonical().vertices();
      oracle_sides.insert(key);
      oracle_cross[key] = crossing_ids(g, c.side);
    }
  }
  for (std::size_t s = 0; s < shuffles; ++s) {
    auto stream = EdgeStream::from_graph(g, derive_seed(seed, s));
    auto res = exact_min_cut_random_order(stream, derive_seed(seed, 0x1000 + s));
    ++t.runs;
    t.t_max = std::max(t.t_max, res.t_peak);
    t.t_violations += res.t_peak > 8 * g.n();
    t.unverified += res.rounding_unverified;
    const bool ok = res.value == truth.value;
    t.exact += ok;
    if (!ok || !check_family) continue;
    ++t.family_checked;
    std::set<std::vector<Vertex>> got;
    bool match = true;
    for (const auto& c : res.cuts) {
      auto key = c.side.canonical().vertices();
      got.insert(key);
      auto it = oracle_cross.find(key);
      if (it == oracle_cross.end() || it->second != c.crossing_edges ||
          !c.complete) {
        match = false;
      }
    }
    if (!match || got != oracle_sides) ++t.family_mismatch;
  }
}

CriterionResult random_order_exact(const AcceptOptions& o) {
  CriterionResult r;
  ShuffleTally planted, sparse, small;
  const std::size_t np = 256;
  auto cross = static_cast<std::size_t>(std::ceil(3.0 * std::log(np)));
  auto gp = gen_planted_bisection(np, 0.4, cross, derive_seed(o.seed, 0xc4a));
  shuffle_runs(gp, 100, derive_seed(o.seed, 0xc4b), false, planted);
  note(o, "planted: " + std::to_string(planted.exact) + "/100 exact");
  auto gs = gen_hamiltonian_union(200, 2, derive_seed(o.seed, 0xc4c));
  shuffle_runs(gs, 100, derive_seed(o.seed, 0xc4d), false, sparse);
  note(o, "sparse: " + std::to_string(sparse.exact) + "/100 exact");
  for (std::size_t i = 0; i < 3; ++i) {
    auto gh = gen_hamiltonian_union(20, 2, derive_seed(o.seed, 0xc4e0 + i));
    shuffle_runs(gh, 20, derive_seed(o.seed, 0xc4f0 + i), true, small);
    auto gg = gen_gnp(16, 0.5, derive_seed(o.seed, 0xc500 + i));
    std::vector<std::uint32_t> comp;
    if (connected_components(gg, comp) == 1) {
      shuffle_runs(gg, 20, derive_seed(o.seed, 0xc510 + i), true, small);
    }
  }
  note(o, "small: " + std::to_string(small.exact) + "/" +
              std::to_string(small.runs) + " exact, " +
              std::to_string(small.family_mismatch) + " family mismatches");
  const double fp = ratio(planted.exact, planted.runs);
  const double fs = ratio(sparse.exact, sparse.runs);
  const std::size_t t_viol =
      planted.t_violations + sparse.t_violations + small.t_violations;
  const std::size_t t_max = std::max({planted.t_max, sparse.t_max, small.t_max});
  r.pass = fp >= 0.95 && fs >= 0.95 && small.family_mismatch == 0 &&
           small.family_checked > 0 && t_viol == 0;
  r.summary = "planted(256) exact " + fmt("%.0f%%", 100 * fp) +
              ", sparse(200) exact " + fmt("%.0f%%", 100 * fs) +
              ", small-n family mismatches " +
              std::to_string(small.family_mismatch) + "/" +
              std::to_string(small.family_checked) + ", max |T| " +
              std::to_string(t_max);
  r.metrics_json =
      json{{"planted_exact_fraction", fp},
           {"sparse_exact_fraction", fs},
           {"planted_min_cut", stoer_wagner_min_cut(gp).value},
           {"sparse_min_cut", stoer_wagner_min_cut(gs).value},
           {"small_runs", small.runs},
           {"small_exact", small.exact},
           {"family_checked", small.family_checked},
           {"family_mismatch", small.family_mismatch},
           {"t_max", t_max},
           {"t_violations", t_viol},
           {"rounding_unverified",
            planted.unverified + sparse.unverified + small.unverified}}
          .dump();
  return r;
}

// ---------------------------------------------------------------------------

CriterionResult prefix_concentration(const AcceptOptions& o) {
  CriterionResult r;
  const std::size_t n = 20;
  WeightedGraph k20(n, GraphMode::kSimple);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) k20.add_edge(u, v);
  }
  std::vector<VertexSet> cuts;
  for (Vertex v = 0; v < n; ++v) cuts.push_back(VertexSet::singleton(n, v));
  const std::vector<double> ells = {10, 20, 40};
  auto rows = prefix_concentration_probe(k20, cuts, ells, 10000,
                                         derive_seed(o.seed, 0xc5));
  json table = json::array();
  std::string s;
  for (const auto& row : rows) {
    table.push_back({{"ell", row.ell},
                     {"prefix_size", row.prefix_size},
                     {"failure_rate", row.failure_rate},
                     {"mean_abs_deviation", row.mean_abs_deviation}});
    if (!s.empty()) s += ", ";
    s += "l=" + fmt("%g", row.ell) + " (prefix " +
         std::to_string(row.prefix_size) + "): " +
         fmt("%.4f", row.failure_rate);
  }
  const bool decreasing = rows[0].failure_rate > rows[1].failure_rate &&
                          rows[1].failure_rate > rows[2].failure_rate;
  r.pass = decreasing && rows[2].failure_rate <= 0.05;
  r.summary = "failure rates " + s +
              (decreasing ? "" : "; not strictly decreasing");
  r.metrics_json = json{{"rows", table}, {"strictly_decreasing", decreasing}}.dump();
  return r;
}

// ---------------------------------------------------------------------------

CriterionResult all_pairs_er(const AcceptOptions& o) {
  CriterionResult r;
  const double eps = 0.3;
  auto g = gen_gnp(100, 0.3, derive_seed(o.seed, 0xc6));
  const std::size_t n = g.n();
  auto oracle = dense_er_matrix(g);
  double foster = 0.0;
  for (const auto& e : g.edges()) foster += e.w * oracle[e.u * n + e.v];
  const double foster_err = std::abs(foster - static_cast<double>(n - 1));
  auto stream = EdgeStream::from_graph(g);
  auto h = stream_foreach_sparsifier(stream, eps, derive_seed(o.seed, 0xc61));
  auto sketch = build_er_sketch(h.sparsifier, eps, derive_seed(o.seed, 0xc62));
  std::size_t ok = 0, pairs = 0;
  double worst = 0.0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const double truth = oracle[u * n + v];
      const double est = sketch.query(u, v);
      ok += within(est, truth, eps);
      worst = std::max(worst, std::abs(est / truth - 1.0));
      ++pairs;
    }
  }
  const double f = ratio(ok, pairs);
  r.pass = f >= 0.99 && foster_err <= 1e-6;
  r.summary = "G(100,0.3) pairs within 1+-0.3: " + fmt("%.2f%%", 100 * f) +
              ", worst relative error " + fmt("%.3f", worst) +
              ", Foster |sum - (n-1)| = " + fmt("%.2e", foster_err);
  r.metrics_json = json{{"pairs", pairs},
                        {"fraction", f},
                        {"worst_relative_error", worst},
                        {"sketch_rows", sketch.k()},
                        {"copies", sketch.copies()},
                        {"foster_error", foster_err}}
                       .dump();
  return r;
}

// ---------------------------------------------------------------------------

// Empty string when the decomposition is well formed.
std::string check_decomposition(std::size_t n, std::span<const Edge> edges,
                                const CycleDecomposition& dec) {
  std::vector<std::uint32_t> seen(edges.size(), 0);
  const std::size_t cap = cycle_length_cap(n);
  for (const auto& cyc : dec.cycles) {
    if (cyc.size() < 2 || cyc.size() % 2 != 0) return "odd or short cycle";
    if (cyc.size() > cap) return "cycle longer than cap";
    std::map<Vertex, int> deg;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (cyc[i] >= edges.size()) return "edge index out of range";
      ++seen[cyc[i]];
      const auto& a = edges[cyc[i]];
      const auto& b = edges[cyc[(i + 1) % cyc.size()]];
      if (a.u != b.u && a.u != b.v && a.v != b.u && a.v != b.v) {
        return "consecutive cycle edges share no vertex";
      }
      ++deg[a.u];
      ++deg[a.v];
    }
    for (const auto& [v, d] : deg) {
      if (d != 2) return "cycle is not a simple closed walk";
    }
  }
  for (auto i : dec.leftover) {
    if (i >= edges.size()) return "edge index out of range";
    ++seen[i];
  }
  for (auto c : seen) {
    if (c != 1) return "edges not partitioned";
  }
  if (dec.leftover.size() > 2 * n + dec.cycles.size()) return "leftover too large";
  return {};
}

CriterionResult cycle_decomposition(const AcceptOptions& o) {
  CriterionResult r;
  std::size_t graphs = 0, structural_fail = 0, degree_fail = 0, cycles = 0;
  double worst_drift = 0.0;
  std::string first_problem;
  auto rng = make_rng(o.seed, 0xc7);
  for (const auto& entry : acceptance_corpus(o.seed)) {
    const auto& g = entry.graph;
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (auto& e : edges) e.w = 1.0 + uniform01(rng);
    auto dec = short_cycle_decompose(g.n(), edges);
    ++graphs;
    cycles += dec.cycles.size();
    auto problem = check_decomposition(g.n(), edges, dec);
    if (!problem.empty()) {
      ++structural_fail;
      if (first_problem.empty()) first_problem = entry.name + ": " + problem;
    }
    auto w = sample_cycle_weights(edges, dec, rng);
    std::vector<double> before(g.n(), 0.0), after(g.n(), 0.0), scale(g.n(), 0.0);
    for (const auto& cyc : dec.cycles) {
      for (auto i : cyc) {
        const auto& e = edges[i];
        before[e.u] += e.w;
        before[e.v] += e.w;
        after[e.u] += w[i];
        after[e.v] += w[i];
        if (w[i] < 0.0) ++degree_fail;
      }
    }
    bool bad = false;
    for (Vertex v = 0; v < g.n(); ++v) {
      double drift = std::abs(after[v] - before[v]);
      worst_drift = std::max(worst_drift, drift);
      if (drift > 1e-9 * (1.0 + before[v])) bad = true;
    }
    degree_fail += bad;
  }
  // Bucketed degree preservation inside the sketch. At this size every edge
  // clears the default heavy threshold, so the target and the threshold are
  // both forced to make the halving rounds sample cycles.
  double sketch_drift = 0.0;
  std::size_t sketch_rounds = 0, sketch_cycles = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    auto g = gen_gnp(100, 0.2, derive_seed(o.seed, 0xc70 + i));
    SparsifyConfig cfg;
    cfg.target_override = g.m() / 2;
    cfg.heavy_const = 0.05;
    auto sk = spectral_sketch(g, 0.5, derive_seed(o.seed, 0xc72 + i), cfg);
    sketch_drift = std::max(sketch_drift, sk.diagnostics.max_bucket_degree_drift);
    sketch_rounds += sk.diagnostics.rounds;
    sketch_cycles += sk.diagnostics.cycles_sampled;
  }
  r.pass = structural_fail == 0 && degree_fail == 0 && sketch_drift <= 1e-9 &&
           sketch_rounds > 0 && sketch_cycles > 0;
  r.summary = std::to_string(graphs) + " graphs, " + std::to_string(cycles) +
              " cycles, structural failures " + std::to_string(structural_fail) +
              ", degree failures " + std::to_string(degree_fail) +
              ", max drift " + fmt("%.1e", std::max(worst_drift, sketch_drift)) +
              (first_problem.empty() ? "" : " (" + first_problem + ")");
  r.metrics_json = json{{"graphs", graphs},
                        {"cycles", cycles},
                        {"structural_failures", structural_fail},
                        {"degree_failures", degree_fail},
                        {"max_cycle_drift", worst_drift},
                        {"max_bucket_drift", sketch_drift},
                        {"sketch_rounds", sketch_rounds},
                        {"sketch_cycles", sketch_cycles}}
                       .dump();
  return r;
}

// ---------------------------------------------------------------------------

CriterionResult contraction_enumeration(const AcceptOptions& o) {
  CriterionResult r;
  const double alpha = 1.1;
  std::vector<WeightedGraph> graphs;
  for (std::size_t n : {10, 12, 14, 16}) {
    auto g = gen_gnp(n, 0.5, derive_seed(o.seed, 0xc80 + n));
    std::vector<std::uint32_t> comp;
    if (connected_components(g, comp) == 1) graphs.push_back(std::move(g));
  }
  graphs.push_back(gen_cycle(12));
  graphs.push_back(gen_dumbbell(6));
  graphs.push_back(gen_kedge_layered(3, 5, 2, derive_seed(o.seed, 0xc81)));
  graphs.push_back(gen_hamiltonian_union(16, 2, derive_seed(o.seed, 0xc82)));
  const std::size_t seeds = 20;
  std::size_t runs = 0, contained = 0, oversize = 0;
  double residual = 0.0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto& g = graphs[gi];
    auto oracle = brute_force_cut_family(g, alpha);
    for (std::size_t s = 0; s < seeds; ++s) {
      EnumerateOptions eo;
      eo.alpha = alpha;
      eo.seed = derive_seed(o.seed, (gi << 16) + s);
      auto fam = enumerate_approx_min_cuts(g, eo);
      ++runs;
      oversize += fam.size() > oracle.size();
      bool all = true;
      for (const auto& c : oracle.sorted()) all = all && fam.contains(c.side);
      contained += all;
    }
    JLIncidenceSketch sk(jl_rows(4.0, g.n(), 0.5), g.n(),
                         derive_seed(o.seed, 0xc8f + gi));
    sk.absorb_graph(g);
    EnumerateOptions eo;
    eo.alpha = alpha;
    eo.seed = derive_seed(o.seed, 0xc8e + gi);
    eo.sketch = &sk;
    EnumerateStats st;
    enumerate_approx_min_cuts(g, eo, &st);
    residual = std::max(residual, st.max_negation_residual);
  }
  const double f = ratio(contained, runs);
  r.pass = f >= 0.95 && oversize == 0 && residual <= 1e-6;
  r.summary = std::to_string(graphs.size()) + " graphs x " +
              std::to_string(seeds) + " seeds, family contains oracle: " +
              fmt("%.1f%%", 100 * f) + ", oversize " + std::to_string(oversize) +
              ", max negation residual " + fmt("%.1e", residual);
  r.metrics_json = json{{"runs", runs},
                        {"contained_fraction", f},
                        {"oversize", oversize},
                        {"max_negation_residual", residual}}
                       .dump();
  return r;
}

// ---------------------------------------------------------------------------

CriterionResult gadgets(const AcceptOptions& o) {
  CriterionResult r;
  auto rng = make_rng(o.seed, 0xc9);
  std::size_t exact_ok = 0, exact_total = 0, degenerate = 0;
  const std::size_t n = 6;
  while (exact_total < 50) {
    auto bits = random_bits(n * (n - 1) / 2, rng());
    std::size_t index = std::uniform_int_distribution<std::size_t>(
        0, bits.size() - 1)(rng);
    HardInstance h;
    try {
      h = gen_hard_exact(n, bits, index);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDomain) throw;
      ++degenerate;
      continue;
    }
    ++exact_total;
    auto sw = stoer_wagner_min_cut(h.graph);
    exact_ok += sw.value == h.expected_min_cut &&
                cut_value(h.graph, h.c1_side) == h.c1_value &&
                h.graph.weighted_degrees()[h.c] == h.c2_value;
  }
  note(o, "exact gadget: " + std::to_string(exact_ok) + "/50");

  const double eps = snap_gadget_eps(1.0 / 12.0);
  const std::size_t blocks = 2;
  std::size_t approx_ok = 0, approx_total = 0, recovered = 0, floor_checked = 0;
  std::size_t floor_violations = 0, third_cut = 0;
  double floor = 0.0;
  while (approx_total < 50) {
    auto bits = random_bits(hard_approx_bits(eps, blocks), rng());
    std::size_t index = std::uniform_int_distribution<std::size_t>(
        0, bits.size() - 1)(rng);
    HardInstance h;
    try {
      h = gen_hard_approx(eps, blocks, bits, index);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDomain) throw;
      ++degenerate;
      continue;
    }
    ++approx_total;
    auto sw = stoer_wagner_min_cut(h.graph);
    approx_ok += sw.value == h.expected_min_cut &&
                 cut_value(h.graph, h.c1_side) == h.c1_value;
    floor = static_cast<double>(h.clique_size) - 1.0;
    if (floor_checked < 10) {
      ++floor_checked;
      // Every cut strictly below the floor must be C1 or C2.
      auto fam = brute_force_cut_family(h.graph, (floor - 0.5) / sw.value);
      auto c1 = h.c1_side.canonical();
      auto c2 = VertexSet::singleton(h.graph.n(), h.c).canonical();
      auto with_c = h.c1_side;
      with_c.set(h.c);
      auto c3 = with_c.canonical();
      for (const auto& c : fam.sorted()) {
        auto side = c.side.canonical();
        if (c.value < floor && !(side == c1) && !(side == c2)) {
          ++floor_violations;
          third_cut += side == c3;
        }
      }
    }
    auto stream = EdgeStream::from_graph(h.graph);
    auto res = approx_min_cut_stream(stream, eps, derive_seed(o.seed, 0xc900 + approx_total));
    const double d = static_cast<double>(h.deg_a + h.deg_b);
    const bool guess = res.value < d - 1.5;
    recovered += guess == h.bit;
  }
  note(o, "approx gadget: " + std::to_string(approx_ok) + "/50, recovered " +
              std::to_string(recovered));
  const double fr = ratio(recovered, approx_total);
  r.pass = exact_ok == exact_total && approx_ok == approx_total &&
           floor_violations == 0 && fr >= 0.95;
  r.summary = "exact gadget truth " + std::to_string(exact_ok) + "/" +
              std::to_string(exact_total) + ", approx gadget (eps=" +
              fmt("%.4g", eps) + ") truth " + std::to_string(approx_ok) + "/" +
              std::to_string(approx_total) + ", floor " + fmt("%g", floor) +
              " violations " + std::to_string(floor_violations) + " (" +
              std::to_string(third_cut) + " are the cut L+c | R)" +
              ", bit recovered " + fmt("%.0f%%", 100 * fr);
  r.metrics_json = json{{"exact_ok", exact_ok},
                        {"exact_total", exact_total},
                        {"approx_ok", approx_ok},
                        {"approx_total", approx_total},
                        {"eps", eps},
                        {"floor", floor},
                        {"floor_checked", floor_checked},
                        {"floor_violations", floor_violations},
                        {"floor_violations_third_cut", third_cut},
                        {"recovered_fraction", fr},
                        {"degenerate_redraws", degenerate}}
                       .dump();
  return r;
}

}  // namespace

const char* criterion_name(int id) {
  switch (id) {
    case 1: return "approx-min-cut";
    case 2: return "foreach-query";
    case 3: return "space-scaling";
    case 4: return "random-order-exact";
    case 5: return "prefix-concentration";
    case 6: return "all-pairs-er";
    case 7: return "cycle-decomposition";
    case 8: return "contraction-enumeration";
    case 9: return "gadgets";
    default: return "unknown";
  }
}

std::vector<CorpusEntry> acceptance_corpus(std::uint64_t seed) {
  std::vector<CorpusEntry> out;
  auto add = [&](const std::string& kind, const json& params, std::uint64_t s) {
    out.push_back(gen_corpus_entry(kind, params.dump(), s));
  };
  // 50 min-cut instances: 20 + 10 G(n, p), 10 dumbbells, 10 bisections.
  for (std::size_t i = 0; i < 20; ++i) {
    add("gnp", {{"n", 100}, {"p", 0.1 + 0.05 * static_cast<double>(i % 4)}},
        derive_seed(seed, 0x100 + i));
  }
  for (std::size_t i = 0; i < 10; ++i) {
    add("gnp", {{"n", 300}, {"p", 0.05}}, derive_seed(seed, 0x200 + i));
  }
  for (std::size_t k = 10; k < 20; ++k) add("dumbbell", {{"k", k}}, 0);
  for (std::size_t i = 0; i < 10; ++i) {
    add("planted-bisection", {{"n", 128}, {"p_in", 0.4}},
        derive_seed(seed, 0x300 + i));
  }
  // Extra structure for the decomposition checks.
  add("cycle", {{"n", 16}}, 0);
  add("cycle", {{"n", 33}}, 0);
  add("kedge-layered", {{"layers", 4}, {"width", 8}, {"k", 3}},
      derive_seed(seed, 0x400));
  add("hamiltonian-union", {{"n", 200}, {"cycles", 2}}, derive_seed(seed, 0x401));
  add("gnp", {{"n", 20}, {"p", 0.5}}, derive_seed(seed, 0x402));
  return out;
}

CriterionResult run_criterion(int id, const AcceptOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = approx_min_cut(opts); break;
      case 2: r = foreach_query(opts); break;
      case 3: r = space_scaling(opts); break;
      case 4: r = random_order_exact(opts); break;
      case 5: r = prefix_concentration(opts); break;
      case 6: r = all_pairs_er(opts); break;
      case 7: r = cycle_decomposition(opts); break;
      case 8: r = contraction_enumeration(opts); break;
      case 9: r = gadgets(opts); break;
      default: fail(ErrorCode::kInvalidArgument, "no criterion " + std::to_string(id));
    }
  } catch (const Error& e) {
    if (id < 1 || id > kCriteriaCount) throw;
    r.pass = false;
    r.summary = std::string("error: ") + e.what();
    r.metrics_json = "{}";
  }
  r.id = id;
  r.name = criterion_name(id);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptOptions& opts) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteriaCount; ++id) {
    if (!opts.only.empty() &&
        std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) {
      continue;
    }
    out.push_back(run_criterion(id, opts));
    note(opts, format_line(out.back()));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "%s  %d  %-24s ", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str());
  return head + r.summary + fmt(" [%.1fs]", r.seconds);
}

std::string to_json(const std::vector<CriterionResult>& results) {
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"summary", r.summary},
                   {"seconds", r.seconds},
                   {"metrics", json::parse(r.metrics_json.empty() ? "{}" : r.metrics_json)}});
  }
  return json{{"criteria", arr}, {"all_pass", all}}.dump(2);
}

}  // namespace streamcut
