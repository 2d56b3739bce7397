#include "streamcut/random_order.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include <json.hpp>

#include "streamcut/mincut.hpp"
#include "streamcut/rng.hpp"

namespace streamcut {

namespace {

bool is_unit_copy(const WeightedGraph& h, std::size_t raw_count) {
  if (h.m() != raw_count) return false;
  for (const auto& e : h.edges()) {
    if (e.w != 1.0) return false;
  }
  return true;
}

void add_crossing(const std::vector<StreamEdge>& edges, const VertexSet& side,
                  std::vector<EdgeId>& out) {
  for (const auto& e : edges) {
    if (side.test(e.u) != side.test(e.v)) out.push_back(e.id);
  }
}

std::size_t set_words(std::size_t n) { return (n + 63) / 64; }

}  // namespace

RandomOrderResult exact_min_cut_random_order(EdgeStream& stream,
                                             std::uint64_t seed,
                                             const RandomOrderConfig& cfg,
                                             SpaceMeter* meter) {
  require(stream.simple(), ErrorCode::kInvalidArgument,
          "random-order min cut needs a simple unit-weight graph");
  const std::size_t n = stream.n();
  require(n >= 2, ErrorCode::kInvalidArgument, "min cut needs n >= 2");
  SpaceMeter local;
  if (!meter) meter = &local;

  RandomOrderResult res;
  const double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 3)));
  res.eps1 = std::min(0.5, 1.0 / (ln * ln));
  res.threshold = cfg.c_thresh * ln;

  StreamConfig sc = cfg.stream;
  sc.sampler.oversample *= cfg.oversample;
  auto alg1 = std::make_unique<StreamingSparsifier>(
      n, Guarantee::kForAll, res.eps1, derive_seed(seed, 0xa161), sc, meter,
      "prefix/");

  std::vector<std::size_t> degree(n, 0);
  meter->set("degrees", n);
  std::vector<StreamEdge> raw;  // sampled prefix edges, verbatim
  bool sampled_exactly = true;

  bool frozen = false;
  WeightedGraph h1;
  std::vector<VertexSet> family;
  std::vector<double> family_h1;
  std::vector<std::size_t> counter;
  std::vector<std::uint8_t> light;  // singleton candidates after the freeze
  std::vector<StreamEdge> t_edges;
  std::size_t next_checkpoint = 1;

  EnumerateOptions exact;
  exact.alpha = 1.0;
  exact.reps = cfg.reps ? cfg.reps : pipeline_reps(n);

  while (auto e = stream.next()) {
    ++degree[e->u];
    ++degree[e->v];
    const std::size_t pos = stream.position();
    if (!frozen) {
      double w = alg1->push(*e);
      if (w > 0.0) {
        raw.push_back(*e);
        if (w != 1.0) sampled_exactly = false;
      } else {
        sampled_exactly = false;
      }
      meter->set("prefix_store", kWordsPerEdge * raw.size());
      if (pos == next_checkpoint) {
        next_checkpoint *= 2;
        ++res.checkpoints;
        auto h = alg1->snapshot();
        std::vector<std::uint32_t> comp;
        bool connected = connected_components(h, comp) == 1;
        auto deg = h.weighted_degrees();
        double min_deg = *std::min_element(deg.begin(), deg.end());
        if (connected && min_deg > res.threshold) {
          exact.seed = derive_seed(seed, 0xc4ec + res.checkpoints);
          auto fam = enumerate_approx_min_cuts(h, exact);
          ++res.enumerations;
          if (fam.min_value() > res.threshold) {
            frozen = true;
            res.froze_at = pos;
            h1 = alg1->finish().sparsifier.graph;
            alg1.reset();
            res.prefix_exact = sampled_exactly && is_unit_copy(h1, raw.size());
            EnumerateOptions wide;
            wide.alpha = cfg.family_radius;
            wide.reps = exact.reps;
            wide.seed = derive_seed(seed, 0xfa3);
            for (const auto& c : enumerate_approx_min_cuts(h1, wide).sorted()) {
              auto size = c.side.count();
              if (size < 2 || size > n - 2) continue;
              family.push_back(c.side);
              family_h1.push_back(c.value);
            }
            counter.assign(family.size(), 0);
            res.family_size = family.size();
            std::size_t min_prefix_deg =
                *std::min_element(degree.begin(), degree.end());
            light.assign(n, 0);
            for (Vertex v = 0; v < n; ++v) {
              light[v] = static_cast<double>(degree[v]) <=
                         cfg.family_radius * static_cast<double>(min_prefix_deg);
            }
            meter->set("family",
                       family.size() * (set_words(n) + 2) + n);
          }
        }
      }
    } else {
      bool keep = light[e->u] || light[e->v];
      for (std::size_t j = 0; j < family.size(); ++j) {
        if (family[j].test(e->u) != family[j].test(e->v)) {
          ++counter[j];
          keep = true;
        }
      }
      if (keep) {
        t_edges.push_back(*e);
        res.t_peak = std::max(res.t_peak, t_edges.size());
        meter->set("T", kWordsPerEdge * t_edges.size());
      }
    }
    meter->advance();
  }
  res.t_size = t_edges.size();
  res.degree_sum = std::accumulate(degree.begin(), degree.end(), std::size_t{0});
  const std::size_t min_deg = *std::min_element(degree.begin(), degree.end());

  std::vector<RandomOrderCut> cuts;
  double worst_rounded = 0.0;
  if (!frozen) {
    h1 = alg1->finish().sparsifier.graph;
    res.prefix_exact = sampled_exactly && is_unit_copy(h1, raw.size());
    exact.seed = derive_seed(seed, 0xf1a1);
    auto fam = enumerate_approx_min_cuts(h1, exact);
    ++res.enumerations;
    const double hmin = std::round(fam.min_value());
    res.value = std::min(hmin, static_cast<double>(min_deg));
    for (const auto& c : fam.sorted()) {
      if (std::round(c.value) != res.value) continue;
      worst_rounded = std::max(worst_rounded, c.value);
      RandomOrderCut rc{c.side, {}, res.prefix_exact};
      add_crossing(raw, c.side, rc.crossing_edges);
      cuts.push_back(std::move(rc));
    }
    for (Vertex v = 0; v < n; ++v) {
      if (static_cast<double>(degree[v]) != res.value) continue;
      auto side = VertexSet::singleton(n, v);
      RandomOrderCut rc{side, {}, res.prefix_exact};
      add_crossing(raw, side, rc.crossing_edges);
      cuts.push_back(std::move(rc));
    }
  } else {
    std::vector<double> v_s(family.size());
    double best = static_cast<double>(min_deg);
    for (std::size_t j = 0; j < family.size(); ++j) {
      v_s[j] = std::round(family_h1[j]) + static_cast<double>(counter[j]);
      best = std::min(best, v_s[j]);
    }
    res.value = best;
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (v_s[j] != best) continue;
      worst_rounded = std::max(worst_rounded, family_h1[j]);
      RandomOrderCut rc{family[j], {}, res.prefix_exact};
      add_crossing(raw, family[j], rc.crossing_edges);
      add_crossing(t_edges, family[j], rc.crossing_edges);
      cuts.push_back(std::move(rc));
    }
    for (Vertex v = 0; v < n; ++v) {
      if (static_cast<double>(degree[v]) != best) continue;
      auto side = VertexSet::singleton(n, v);
      RandomOrderCut rc{side, {}, res.prefix_exact && light[v] != 0};
      add_crossing(raw, side, rc.crossing_edges);
      add_crossing(t_edges, side, rc.crossing_edges);
      cuts.push_back(std::move(rc));
    }
  }
  res.rounding_unverified = !res.prefix_exact && res.eps1 * worst_rounded >= 0.5;

  // Deduplicate by canonical side; singleton and family hits can coincide.
  std::vector<std::pair<std::vector<Vertex>, std::size_t>> order;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    order.emplace_back(cuts[i].side.canonical().vertices(), i);
  }
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && order[i].first == order[i - 1].first) continue;
    auto& c = cuts[order[i].second];
    std::sort(c.crossing_edges.begin(), c.crossing_edges.end());
    c.crossing_edges.erase(
        std::unique(c.crossing_edges.begin(), c.crossing_edges.end()),
        c.crossing_edges.end());
    res.cuts.push_back(std::move(c));
  }
  res.space_words_peak = meter->peak();
  return res;
}

std::string to_json(const RandomOrderResult& r) {
  nlohmann::json j;
  j["value"] = r.value;
  j["cuts"] = nlohmann::json::array();
  for (const auto& c : r.cuts) {
    j["cuts"].push_back({{"side", c.side.vertices()},
                         {"crossing_edges", c.crossing_edges},
                         {"complete", c.complete}});
  }
  j["T_size"] = r.t_size;
  j["space_words_peak"] = r.space_words_peak;
  j["froze_at"] = r.froze_at ? nlohmann::json(*r.froze_at) : nlohmann::json();
  j["family_size"] = r.family_size;
  j["checkpoints"] = r.checkpoints;
  j["prefix_exact"] = r.prefix_exact;
  return j.dump();
}

std::vector<ProbeRow> prefix_concentration_probe(
    const WeightedGraph& g, std::span<const VertexSet> cuts,
    std::span<const double> ells, std::size_t trials, std::uint64_t seed) {
  require(!cuts.empty(), ErrorCode::kInvalidArgument, "no cuts to probe");
  require(g.m() > 0, ErrorCode::kInvalidArgument, "graph has no edges");
  const std::size_t m = g.m();
  std::vector<double> cut_w(cuts.size());
  std::vector<std::vector<std::uint8_t>> crossing(cuts.size());
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    cut_w[c] = cut_value(g, cuts[c]);
    require(cut_w[c] > 0.0, ErrorCode::kDomain, "probed cut has no edges");
    crossing[c].resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& e = g.edge(i);
      crossing[c][i] = cuts[c].test(e.u) != cuts[c].test(e.v);
    }
  }
  std::vector<std::uint32_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0U);
  std::vector<ProbeRow> rows;
  for (std::size_t li = 0; li < ells.size(); ++li) {
    const double ell = ells[li];
    auto rng = make_rng(seed, 0x9b0be + li);
    ProbeRow row;
    row.ell = ell;
    row.trials = trials;
    auto prefix_len = [&](std::size_t c) {
      double k = std::round(static_cast<double>(m) * ell / cut_w[c]);
      return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(m)));
    };
    row.prefix_size = prefix_len(0);
    double dev_sum = 0.0;
    std::uniform_int_distribution<std::size_t> pick_cut(0, cuts.size() - 1);
    for (std::size_t t = 0; t < trials; ++t) {
      std::size_t c = pick_cut(rng);
      std::size_t k = prefix_len(c);
      double x = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, m - 1);
        std::swap(perm[i], perm[pick(rng)]);
        if (crossing[c][perm[i]]) x += g.edge(perm[i]).w;
      }
      double dev = std::abs(x - ell);
      dev_sum += dev;
      if (dev > 0.1 * ell) ++row.failures;
    }
    row.failure_rate =
        trials ? static_cast<double>(row.failures) / static_cast<double>(trials) : 0.0;
    row.mean_abs_deviation = trials ? dev_sum / static_cast<double>(trials) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace streamcut
