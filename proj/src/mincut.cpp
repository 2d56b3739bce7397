#include "streamcut/mincut.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "streamcut/rng.hpp"

namespace streamcut {

// ---------------------------------------------------------------------------
// ContractionState

ContractionState::ContractionState(const WeightedGraph& g,
                                   JLIncidenceSketch sketch)
    : n_(g.n()), count_(g.n()), parent_(g.n()), adj_(g.n()),
      sketch_(std::move(sketch)) {
  require(!has_sketch() || sketch_.n() == n_, ErrorCode::kInvalidArgument,
          "sketch column count does not match graph");
  std::iota(parent_.begin(), parent_.end(), Vertex{0});
  for (const auto& e : g.edges()) {
    adj_[e.u][e.v] += e.w;
    adj_[e.v][e.u] += e.w;
  }
}

Vertex ContractionState::root(Vertex v) const {
  require(v < n_, ErrorCode::kInvalidArgument, "vertex out of range");
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

void ContractionState::contract(Vertex a, Vertex b) {
  Vertex ra = root(a), rb = root(b);
  require(ra != rb, ErrorCode::kDomain,
          "contracting a self-loop: both endpoints are in supernode " +
              std::to_string(ra));
  if (adj_[ra].size() < adj_[rb].size()) std::swap(ra, rb);
  adj_[ra].erase(rb);
  adj_[rb].erase(ra);
  for (const auto& [x, w] : adj_[rb]) {
    adj_[ra][x] += w;
    auto& back = adj_[x];
    back.erase(rb);
    back[ra] += w;
  }
  adj_[rb].clear();
  parent_[rb] = ra;
  --count_;
  if (has_sketch()) sketch_.merge_columns(ra, rb);
}

double ContractionState::weight_between(Vertex a, Vertex b) const {
  Vertex ra = root(a), rb = root(b);
  auto it = adj_[ra].find(rb);
  return it == adj_[ra].end() ? 0.0 : it->second;
}

double ContractionState::degree(Vertex a) const {
  double s = 0.0;
  for (const auto& [x, w] : adj_[root(a)]) s += w;
  return s;
}

std::vector<Edge> ContractionState::contracted_edges() const {
  std::vector<Edge> out;
  for (Vertex r = 0; r < n_; ++r) {
    if (parent_[r] != r) continue;
    for (const auto& [x, w] : adj_[r]) {
      if (r < x) out.push_back({r, x, w});
    }
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return out;
}

VertexSet ContractionState::members(Vertex a) const {
  Vertex ra = root(a);
  VertexSet s(n_);
  for (Vertex v = 0; v < n_; ++v) {
    if (root(v) == ra) s.set(v);
  }
  return s;
}

// ---------------------------------------------------------------------------
// CutFamily

void CutFamily::offer(const VertexSet& side, double value) {
  if (value > alpha_ * min_value_ * (1.0 + 1e-12)) return;
  auto key = side.canonical();
  auto [it, inserted] = cuts_.emplace(std::move(key), value);
  if (!inserted) it->second = std::min(it->second, value);
  min_value_ = std::min(min_value_, value);
}

void CutFamily::prune() {
  const double limit = alpha_ * min_value_ * (1.0 + 1e-12);
  for (auto it = cuts_.begin(); it != cuts_.end();) {
    it = it->second > limit ? cuts_.erase(it) : std::next(it);
  }
}

bool CutFamily::contains(const VertexSet& side) const {
  return cuts_.count(side.canonical()) > 0;
}

double CutFamily::value_of(const VertexSet& side) const {
  auto it = cuts_.find(side.canonical());
  require(it != cuts_.end(), ErrorCode::kInvalidArgument, "cut not in family");
  return it->second;
}

std::vector<Cut> CutFamily::sorted() const {
  std::vector<Cut> out;
  out.reserve(cuts_.size());
  for (const auto& [side, value] : cuts_) out.push_back({side, value});
  std::sort(out.begin(), out.end(), [](const Cut& a, const Cut& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.side.vertices() < b.side.vertices();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Recursive contraction

std::size_t default_reps(std::size_t n) {
  double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(8 * ln * ln)));
}

std::size_t pipeline_reps(std::size_t n) {
  double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2 * ln)));
}

std::size_t contraction_base(double alpha) {
  return 2 * static_cast<std::size_t>(std::ceil(2 * alpha));
}

std::size_t contraction_target(std::size_t count, double alpha) {
  double shrink = std::pow(2.0, 1.0 / (2.0 * alpha));
  auto t = static_cast<std::size_t>(
               std::ceil(static_cast<double>(count) / shrink)) + 1;
  t = std::min(t, count - 1);
  return std::max(t, contraction_base(alpha));
}

namespace {

struct Level {
  std::uint32_t count = 0;
  std::vector<Edge> edges;         // between labels, parallel edges merged
  std::vector<std::uint32_t> map;  // parent label -> label
  std::vector<double> cols;        // count * k, sketch mode only
};

void merge_parallel(std::vector<Edge>& edges) {
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (out > 0 && edges[out - 1].u == edges[i].u &&
        edges[out - 1].v == edges[i].v) {
      edges[out - 1].w += edges[i].w;
    } else {
      edges[out++] = edges[i];
    }
  }
  edges.resize(out);
}

constexpr std::size_t kStampLimit = std::size_t{1} << 22;

class Enumerator {
 public:
  Enumerator(std::size_t n, const EnumerateOptions& opts, CutFamily& family,
             EnumerateStats& stats)
      : n_(n), alpha_(opts.alpha), base_(contraction_base(opts.alpha)),
        k_(opts.sketch ? opts.sketch->k() : 0), family_(family),
        stats_(stats), pool_(n + 1) {
    if (n_ * n_ <= kStampLimit) {
      stamp_.assign(n_ * n_, 0);
      slot_.resize(n_ * n_);
    }
  }

  void run(const Level& top, Rng& rng) {
    walk(top, 0, rng);
  }

 private:
  void walk(const Level& lv, std::size_t depth, Rng& rng) {
    if (lv.count <= base_) {
      leaf(lv, depth);
      return;
    }
    auto target = static_cast<std::uint32_t>(contraction_target(lv.count, alpha_));
    for (int branch = 0; branch < 2; ++branch) {
      Level& child = pool_[depth + 1];
      contract(lv, child, target, rng);
      walk(child, depth + 1, rng);
    }
  }

  std::uint32_t find(std::uint32_t x) {
    while (uf_[x] != x) {
      uf_[x] = uf_[uf_[x]];
      x = uf_[x];
    }
    return x;
  }

  void contract(const Level& lv, Level& out, std::uint32_t target, Rng& rng) {
    // Exponential keys: ascending key order is a weighted random permutation.
    keys_.resize(lv.edges.size());
    for (std::size_t i = 0; i < lv.edges.size(); ++i) {
      double u = 1.0 - uniform01(rng);
      keys_[i] = {-std::log(u) / lv.edges[i].w, static_cast<std::uint32_t>(i)};
    }
    std::make_heap(keys_.begin(), keys_.end(), std::greater<>());
    uf_.resize(lv.count);
    std::iota(uf_.begin(), uf_.end(), 0U);
    std::uint32_t comps = lv.count;
    auto heap_end = keys_.end();
    while (comps > target && heap_end != keys_.begin()) {
      std::pop_heap(keys_.begin(), heap_end, std::greater<>());
      --heap_end;
      const auto& e = lv.edges[heap_end->second];
      auto a = find(e.u), b = find(e.v);
      if (a != b) {
        uf_[b] = a;
        --comps;
      }
    }
    constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
    out.map.assign(lv.count, kUnset);
    out.count = 0;
    for (std::uint32_t l = 0; l < lv.count; ++l) {
      auto r = find(l);
      if (out.map[r] == kUnset) out.map[r] = out.count++;
      out.map[l] = out.map[r];
    }
    out.edges.clear();
    const std::size_t c = out.count;
    if (!stamp_.empty() && c * c <= stamp_.size()) {
      if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
      }
      for (const auto& e : lv.edges) {
        auto a = out.map[e.u], b = out.map[e.v];
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        const std::size_t key = std::size_t{a} * c + b;
        if (stamp_[key] != epoch_) {
          stamp_[key] = epoch_;
          slot_[key] = static_cast<std::uint32_t>(out.edges.size());
          out.edges.push_back({a, b, e.w});
        } else {
          out.edges[slot_[key]].w += e.w;
        }
      }
    } else {
      for (const auto& e : lv.edges) {
        auto a = out.map[e.u], b = out.map[e.v];
        if (a != b) out.edges.push_back({a, b, e.w});
      }
      merge_parallel(out.edges);
    }
    if (k_ > 0) {
      out.cols.assign(c * k_, 0.0);
      for (std::uint32_t l = 0; l < lv.count; ++l) {
        const double* src = lv.cols.data() + std::size_t{l} * k_;
        double* dst = out.cols.data() + std::size_t{out.map[l]} * k_;
        for (std::size_t i = 0; i < k_; ++i) dst[i] += src[i];
      }
    }
  }

  // Leaf label of every original vertex, composed through the level maps.
  void resolve_labels(std::size_t depth) {
    leaf_label_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      auto l = static_cast<std::uint32_t>(v);
      for (std::size_t d = 1; d <= depth; ++d) l = pool_[d].map[l];
      leaf_label_[v] = l;
    }
  }

  void leaf(const Level& lv, std::size_t depth) {
    ++stats_.leaves;
    if (k_ > 0) {
      sketch_leaf(lv, depth);
      return;
    }
    // Gray-code walk; label 0 stays outside. in_w[x] = w(x, inside).
    const std::uint32_t count = lv.count;
    w_.assign(std::size_t{count} * count, 0.0);
    deg_.assign(count, 0.0);
    for (const auto& e : lv.edges) {
      w_[std::size_t{e.u} * count + e.v] += e.w;
      w_[std::size_t{e.v} * count + e.u] += e.w;
      deg_[e.u] += e.w;
      deg_[e.v] += e.w;
    }
    in_w_.assign(count, 0.0);
    bool resolved = false;
    std::uint64_t mask = 0;
    double value = 0.0;
    const std::uint64_t total = std::uint64_t{1} << (count - 1);
    for (std::uint64_t i = 1; i < total; ++i) {
      const int bit = std::countr_zero(i);
      const std::uint32_t v = static_cast<std::uint32_t>(bit) + 1;
      const double* row = w_.data() + std::size_t{v} * count;
      if ((mask >> bit) & 1U) {
        value -= deg_[v] - 2.0 * in_w_[v];
        for (std::uint32_t x = 0; x < count; ++x) in_w_[x] -= row[x];
      } else {
        value += deg_[v] - 2.0 * in_w_[v];
        for (std::uint32_t x = 0; x < count; ++x) in_w_[x] += row[x];
      }
      mask ^= std::uint64_t{1} << bit;
      ++stats_.leaf_cuts;
      if (value > alpha_ * family_.min_value() * (1.0 + 1e-12)) continue;
      if (!resolved) {
        resolve_labels(depth);
        resolved = true;
      }
      offer_mask(mask, value);
    }
  }

  void offer_mask(std::uint64_t mask, double value) {
    VertexSet s(n_);
    for (Vertex v = 0; v < n_; ++v) {
      const auto l = leaf_label_[v];
      if (l > 0 && ((mask >> (l - 1)) & 1U)) s.set(v);
    }
    family_.offer(s, value);
  }

  void sketch_leaf(const Level& lv, std::size_t depth) {
    const std::uint32_t count = lv.count;
    side_.assign(k_, 0.0);
    rest_.assign(k_, 0.0);
    bool resolved = false;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (count - 1));
         ++mask) {
      auto inside = [&](std::uint32_t l) {
        return l > 0 && ((mask >> (l - 1)) & 1U);
      };
      std::fill(side_.begin(), side_.end(), 0.0);
      std::fill(rest_.begin(), rest_.end(), 0.0);
      for (std::uint32_t l = 0; l < count; ++l) {
        auto& acc = inside(l) ? side_ : rest_;
        const double* col = lv.cols.data() + std::size_t{l} * k_;
        for (std::size_t i = 0; i < k_; ++i) acc[i] += col[i];
      }
      double value = 0.0, sum_sq = 0.0;
      for (std::size_t i = 0; i < k_; ++i) {
        value += side_[i] * side_[i];
        double s = side_[i] + rest_[i];
        sum_sq += s * s;
      }
      if (value > 0.0) {
        stats_.max_negation_residual = std::max(
            stats_.max_negation_residual, std::sqrt(sum_sq / value));
      }
      ++stats_.leaf_cuts;
      if (value > alpha_ * family_.min_value() * (1.0 + 1e-12)) continue;
      if (!resolved) {
        resolve_labels(depth);
        resolved = true;
      }
      offer_mask(mask, value);
    }
  }

  std::size_t n_;
  double alpha_;
  std::size_t base_;
  std::size_t k_;
  CutFamily& family_;
  EnumerateStats& stats_;
  // pool_[d] holds the current level at depth d; depth never exceeds n.
  std::vector<Level> pool_;
  std::vector<std::pair<double, std::uint32_t>> keys_;
  std::vector<std::uint32_t> uf_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> slot_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> leaf_label_;
  std::vector<double> side_, rest_;
  std::vector<double> w_, deg_, in_w_;
};

}  // namespace

CutFamily enumerate_approx_min_cuts(const WeightedGraph& g,
                                    const EnumerateOptions& opts,
                                    EnumerateStats* stats_out) {
  require(g.n() >= 2, ErrorCode::kInvalidArgument,
          "cut enumeration needs at least 2 vertices");
  require(opts.alpha >= 1.0, ErrorCode::kInvalidArgument, "alpha must be >= 1");
  require(!opts.sketch || opts.sketch->n() == g.n(),
          ErrorCode::kInvalidArgument, "sketch does not match graph");
  CutFamily family(opts.alpha);
  EnumerateStats stats;
  std::vector<std::uint32_t> comp;
  auto comps = connected_components(g, comp);
  if (comps > 1) {
    for (std::uint32_t c = 0; c < comps; ++c) {
      VertexSet s(g.n());
      for (Vertex v = 0; v < g.n(); ++v) {
        if (comp[v] == c) s.set(v);
      }
      family.offer(s, 0.0);
    }
    if (stats_out) *stats_out = stats;
    return family;
  }

  Level top;
  top.count = static_cast<std::uint32_t>(g.n());
  top.edges.assign(g.edges().begin(), g.edges().end());
  merge_parallel(top.edges);
  if (opts.sketch) {
    const auto k = opts.sketch->k();
    top.cols.resize(g.n() * k);
    for (Vertex v = 0; v < g.n(); ++v) {
      auto col = opts.sketch->column(v);
      std::copy(col.begin(), col.end(), top.cols.begin() + std::size_t{v} * k);
    }
  }
  Enumerator walker(g.n(), opts, family, stats);
  stats.reps = opts.reps ? opts.reps : default_reps(g.n());
  if (top.count <= contraction_base(opts.alpha)) stats.reps = 1;
  for (std::size_t r = 0; r < stats.reps; ++r) {
    auto rng = make_rng(opts.seed, 0xc0de0000ULL + r);
    walker.run(top, rng);
  }
  family.prune();
  if (stats_out) *stats_out = stats;
  return family;
}

// ---------------------------------------------------------------------------
// Streaming pipeline

MinCutResult approx_min_cut_stream(EdgeStream& stream, double eps,
                                   std::uint64_t seed, const MinCutConfig& cfg,
                                   SpaceMeter* meter) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::kInvalidArgument,
          "eps must lie in (0, 1)");
  const std::size_t n = stream.n();
  require(n >= 2, ErrorCode::kInvalidArgument, "min cut needs n >= 2");
  SpaceMeter local;
  if (!meter) meter = &local;
  const double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 3)));

  MinCutResult res;
  res.forall_eps = cfg.simple_variant ? 0.5 : std::min(0.5, 1.0 / ln);
  res.alpha = cfg.simple_variant ? 1.5 : 1.0 + cfg.c_alpha / ln;

  StreamingSparsifier forall(n, Guarantee::kForAll, res.forall_eps,
                             derive_seed(seed, 0xa1), cfg.stream, meter,
                             "forall/");
  StreamingSparsifier foreach(n, Guarantee::kForEach, eps,
                              derive_seed(seed, 0xe4), cfg.stream, meter,
                              "foreach/");
  std::vector<Vertex> uf(n);
  std::iota(uf.begin(), uf.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };
  meter->set("components", n);
  while (auto e = stream.next()) {
    forall.push(*e);
    foreach.push(*e);
    auto a = find(e->u), b = find(e->v);
    if (a != b) uf[a] = b;
    meter->advance();
  }
  auto k_graph = forall.finish().sparsifier;
  auto h = foreach.finish().sparsifier;

  std::size_t roots = 0;
  for (Vertex v = 0; v < n; ++v) roots += find(v) == v;
  if (roots > 1) {
    res.disconnected = true;
    res.value = 0.0;
    res.side = VertexSet(n);
    const Vertex r0 = find(0);
    for (Vertex v = 0; v < n; ++v) {
      if (find(v) == r0) res.side.set(v);
    }
    res.family_size = 1;
    res.space_words_peak = meter->peak();
    return res;
  }

  EnumerateOptions eo;
  eo.alpha = res.alpha;
  eo.reps = cfg.reps ? cfg.reps : pipeline_reps(n);
  eo.seed = derive_seed(seed, 0xe9);
  EnumerateStats stats;
  auto family = enumerate_approx_min_cuts(k_graph.graph, eo, &stats);
  res.reps = stats.reps;
  res.family_size = family.size();

  res.sketch_rows = jl_rows(cfg.c_jl, n, eps);
  std::vector<JLIncidenceSketch> sketches;
  for (std::size_t c = 0; c < std::max<std::size_t>(cfg.sketch_copies, 1); ++c) {
    sketches.emplace_back(res.sketch_rows, n, derive_seed(seed, 0x5c00 + c));
    for (std::size_t i = 0; i < h.graph.m(); ++i) {
      const auto& e = h.graph.edge(i);
      sketches.back().absorb_edge(h.source_edge_ids[i], e.u, e.v, e.w);
    }
  }
  meter->set("sketches", sketches.size() * res.sketch_rows * n);

  bool first = true;
  for (const auto& cut : family.sorted()) {
    std::vector<double> est;
    est.reserve(sketches.size());
    for (const auto& sk : sketches) est.push_back(sk.estimate_side(cut.side));
    double value = median(std::move(est));
    if (first || value < res.value) {
      res.value = value;
      res.side = cut.side;
      first = false;
    }
  }
  if (res.side.count() * 2 > n ||
      (res.side.count() * 2 == n && !res.side.test(0))) {
    res.side = res.side.complement();
  }
  for (std::size_t i = 0; i < h.graph.m(); ++i) {
    const auto& e = h.graph.edge(i);
    if (res.side.test(e.u) != res.side.test(e.v)) {
      res.crossing_edges.push_back(h.source_edge_ids[i]);
    }
  }
  std::sort(res.crossing_edges.begin(), res.crossing_edges.end());
  res.space_words_peak = meter->peak();
  return res;
}

std::string to_json(const MinCutResult& r) {
  nlohmann::json j;
  j["value"] = r.value;
  j["side"] = r.side.vertices();
  j["crossing_edges"] = r.crossing_edges;
  j["space_words_peak"] = r.space_words_peak;
  j["family_size"] = r.family_size;
  j["disconnected"] = r.disconnected;
  j["alpha"] = r.alpha;
  j["reps"] = r.reps;
  return j.dump();
}

}  // namespace streamcut
