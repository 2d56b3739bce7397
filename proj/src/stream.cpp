#include "streamcut/stream.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "streamcut/linalg.hpp"
#include "streamcut/rng.hpp"

namespace streamcut {

namespace {

constexpr double kNoCap = std::numeric_limits<double>::infinity();

double log_n(std::size_t n) {
  return std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
}

double hash_unit(std::uint64_t seed, EdgeId id) {
  return static_cast<double>(counter_hash(seed, id, 0x0b5) >> 11) * 0x1.0p-53;
}

}  // namespace

// ---------------------------------------------------------------------------

EdgeStream EdgeStream::from_graph(const WeightedGraph& g,
                                  std::optional<std::uint64_t> shuffle_seed) {
  EdgeStream s;
  s.n_ = g.n();
  s.simple_ = g.is_simple();
  s.edges_ = std::make_shared<const std::vector<Edge>>(g.edges().begin(),
                                                       g.edges().end());
  std::vector<std::uint32_t> order(g.m());
  std::iota(order.begin(), order.end(), 0U);
  if (shuffle_seed) {
    auto rng = make_rng(*shuffle_seed, 0x5e0f);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(order[i - 1], order[pick(rng)]);
    }
  }
  s.order_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(order));
  s.visits_.assign(g.m(), 0);
  return s;
}

std::optional<StreamEdge> EdgeStream::next() {
  if (!order_ || pos_ >= order_->size()) return std::nullopt;
  auto id = (*order_)[pos_++];
  ++visits_[id];
  const auto& e = (*edges_)[id];
  return StreamEdge{id, e.u, e.v, e.w};
}

EdgeStream EdgeStream::restart() const {
  EdgeStream s = *this;
  s.pos_ = 0;
  std::fill(s.visits_.begin(), s.visits_.end(), 0U);
  return s;
}

// ---------------------------------------------------------------------------

void SpaceMeter::set(const std::string& component, std::size_t words) {
  auto& slot = components_[component];
  live_ = live_ - slot + words;
  slot = words;
  peak_ = std::max(peak_, live_);
  auto& cp = component_peaks_[component];
  cp = std::max(cp, words);
  if (recording_) series_.push_back({step_, live_, peak_, component});
}

void SpaceMeter::write_csv(std::ostream& out) const {
  out << "step,live_words,peak_words,component\n";
  for (const auto& s : series_) {
    out << s.step << ',' << s.live << ',' << s.peak << ',' << s.component
        << '\n';
  }
}

// ---------------------------------------------------------------------------

OnlineSampler::OnlineSampler(std::size_t n, double eps, std::uint64_t seed,
                             OnlineSamplerConfig cfg)
    : n_(n), eps_(eps), seed_(seed), cfg_(cfg),
      kept_(n, GraphMode::kMulti, kNoCap) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::kInvalidArgument,
          "eps must lie in (0, 1)");
  require(cfg.weight_cap > 0.0, ErrorCode::kInvalidArgument,
          "weight cap must be positive");
  ridge_ = 1.0 / cfg.weight_cap;
  const double ln = log_n(n);
  scale_ = cfg.c0 * ln * ln / (eps * eps) * cfg.oversample;
  degree_.assign(n, 0.0);
  uf_.resize(n);
  std::iota(uf_.begin(), uf_.end(), Vertex{0});
}

void OnlineSampler::set_substrate(std::function<WeightedGraph()> provider) {
  provider_ = std::move(provider);
}

Vertex OnlineSampler::find(Vertex x) {
  while (uf_[x] != x) {
    uf_[x] = uf_[uf_[x]];
    x = uf_[x];
  }
  return x;
}

SampleDecision OnlineSampler::offer(const StreamEdge& e) {
  require(e.u < n_ && e.v < n_ && e.u != e.v, ErrorCode::kInvalidArgument,
          "stream edge out of range");
  SampleDecision d;
  Vertex ru = find(e.u), rv = find(e.v);
  if (ru != rv ||
      scale_ * e.w * resistance_lower_bound(degree_[e.u], degree_[e.v],
                                            ridge_) >= 1.0) {
    d.p = 1.0;
    d.certified = true;
  } else {
    WeightedGraph sub = provider_ ? provider_() : WeightedGraph();
    const WeightedGraph& g = provider_ ? sub : kept_;
    SolverOptions opts;
    opts.tolerance = cfg_.solver_tolerance;
    opts.ridge = ridge_;
    LaplacianSolver solver(g, opts);
    std::vector<double> b(n_, 0.0);
    b[e.u] = 1.0;
    b[e.v] = -1.0;
    auto res = solver.try_solve(b);
    if (!res.converged) {
      d.solver_failed = true;
      ++solver_failures_;
      d.p = 1.0;
    } else {
      double r = res.x[e.u] - res.x[e.v];
      d.p = std::min(1.0, scale_ * e.w * std::max(r, 0.0));
    }
  }
  d.kept = d.p >= 1.0 || hash_unit(seed_, e.id) < d.p;
  if (!d.kept) return d;
  d.weight = e.w / d.p;
  degree_[e.u] += d.weight;
  degree_[e.v] += d.weight;
  if (ru != rv) uf_[ru] = rv;
  ++kept_count_;
  if (!provider_) {
    kept_.add_edge(e.u, e.v, d.weight);
    kept_ids_.push_back(e.id);
  }
  return d;
}

std::size_t OnlineSampler::state_words() const {
  return 2 * n_ + kWordsPerEdge * kept_ids_.size();
}

// ---------------------------------------------------------------------------

std::size_t tower_levels(std::size_t n, double eps) {
  double x = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)) / eps);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(x)));
}

double tower_block_eps(std::size_t n, double eps) {
  double stages = static_cast<double>(tower_levels(n, eps) + 1);
  return std::pow(1.0 + eps, 1.0 / stages) - 1.0;
}

BlockTower::BlockTower(std::size_t n, double eps, std::uint64_t seed,
                       Guarantee kind, Reducer reducer, TowerConfig cfg,
                       SpaceMeter* meter, std::string meter_prefix)
    : n_(n), eps_(eps), seed_(seed), kind_(kind), reducer_(std::move(reducer)),
      meter_(meter), meter_prefix_(std::move(meter_prefix)) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::kInvalidArgument,
          "eps must lie in (0, 1)");
  levels_ = tower_levels(n, eps);
  eps_block_ = tower_block_eps(n, eps);
  if (cfg.m_space != 0) {
    m_space_ = cfg.m_space;
  } else {
    double m = static_cast<double>(n) * std::pow(log_n(n), cfg.log_power) /
               std::pow(eps, cfg.eps_power);
    m_space_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(m)));
  }
  blocks_.resize(levels_ + 1);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i].generation = i;
}

std::size_t BlockTower::stored_edges() const {
  std::size_t s = 0;
  for (const auto& b : blocks_) s += b.edges.size();
  return s;
}

void BlockTower::meter_update() {
  if (meter_) {
    meter_->set(meter_prefix_ + "tower",
                kWordsPerEdge * stored_edges() + blocks_.size());
  }
}

void BlockTower::push(EdgeId id, Vertex u, Vertex v, double w) {
  if (blocks_[0].edges.size() >= m_space_) cascade();
  blocks_[0].edges.push_back({u, v, w});
  blocks_[0].ids.push_back(id);
  ++pushed_;
  meter_update();
}

void BlockTower::cascade() {
  std::size_t target = 1;
  while (target < blocks_.size() && !blocks_[target].edges.empty()) ++target;
  const bool overflow = target == blocks_.size();
  if (overflow) target = levels_;
  WeightedGraph merged(n_, GraphMode::kMulti, kNoCap);
  std::vector<EdgeId> ids;
  const std::size_t last = overflow ? levels_ : target - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    for (std::size_t j = 0; j < blocks_[i].edges.size(); ++j) {
      const auto& e = blocks_[i].edges[j];
      merged.add_edge(e.u, e.v, e.w);
      ids.push_back(blocks_[i].ids[j]);
    }
  }
  if (meter_) meter_->set(meter_prefix_ + "reduce", kWordsPerEdge * merged.m());
  auto out = reducer_(merged, eps_block_, derive_seed(seed_, reductions_++),
                      ids);
  if (meter_) {
    meter_->set(meter_prefix_ + "reduce",
                kWordsPerEdge * (merged.m() + out.graph.m()));
  }
  trace_.push_back({pushed_, target, merged.m(), out.graph.m()});
  for (std::size_t i = 0; i <= last; ++i) {
    blocks_[i].edges.clear();
    blocks_[i].ids.clear();
  }
  auto& dst = blocks_[target];
  dst.edges.assign(out.graph.edges().begin(), out.graph.edges().end());
  dst.ids = std::move(out.source_edge_ids);
  if (meter_) meter_->release(meter_prefix_ + "reduce");
  meter_update();
}

WeightedGraph BlockTower::union_graph(std::vector<EdgeId>* ids) const {
  WeightedGraph g(n_, GraphMode::kMulti, kNoCap);
  if (ids) ids->clear();
  for (const auto& b : blocks_) {
    for (std::size_t j = 0; j < b.edges.size(); ++j) {
      g.add_edge(b.edges[j].u, b.edges[j].v, b.edges[j].w);
      if (ids) ids->push_back(b.ids[j]);
    }
  }
  return g;
}

Sparsifier BlockTower::finish() {
  std::vector<EdgeId> ids;
  auto merged = union_graph(&ids);
  std::size_t depth = 0;
  for (const auto& b : blocks_) {
    if (!b.edges.empty()) depth = std::max(depth, b.generation);
  }
  if (meter_) meter_->set(meter_prefix_ + "reduce", kWordsPerEdge * merged.m());
  auto out = reducer_(merged, eps_block_, derive_seed(seed_, reductions_++),
                      ids);
  if (meter_) {
    meter_->set(meter_prefix_ + "reduce",
                kWordsPerEdge * (merged.m() + out.graph.m()));
    meter_->release(meter_prefix_ + "reduce");
  }
  out.kind = kind_;
  out.eps = eps_;
  out.seed = seed_;
  out.level_factors.assign(depth + 1, 1.0 + eps_block_);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Reducer make_reducer(Guarantee kind, const SparsifyConfig& cfg) {
  if (kind == Guarantee::kForEach) {
    return [cfg](const WeightedGraph& g, double eps, std::uint64_t seed,
                 std::span<const EdgeId> ids) {
      return spectral_sketch(g, eps, seed, cfg, ids);
    };
  }
  return [cfg](const WeightedGraph& g, double eps, std::uint64_t seed,
               std::span<const EdgeId> ids) {
    return forall_sparsify(g, eps, seed, cfg, ids);
  };
}

TowerConfig tower_config(Guarantee kind, TowerConfig cfg) {
  if (kind == Guarantee::kForAll) cfg.eps_power = std::max(cfg.eps_power, 2.0);
  return cfg;
}

}  // namespace

StreamingSparsifier::StreamingSparsifier(std::size_t n, Guarantee kind,
                                         double eps, std::uint64_t seed,
                                         const StreamConfig& cfg,
                                         SpaceMeter* meter,
                                         const std::string& meter_prefix)
    : cfg_(cfg), meter_(meter), sampler_key_(meter_prefix + "sampler"),
      tower_(n, eps, derive_seed(seed, 0x70e7), kind,
             make_reducer(kind, cfg.sparsify), tower_config(kind, cfg.tower),
             meter, meter_prefix),
      sampler_(n, eps, derive_seed(seed, 0x5a3b), cfg.sampler) {
  sampler_.set_substrate([this]() { return tower_.union_graph(); });
  if (meter_ && cfg_.use_sampler) meter_->set(sampler_key_, sampler_.state_words());
}

double StreamingSparsifier::push(const StreamEdge& e) {
  if (!cfg_.use_sampler) {
    tower_.push(e.id, e.u, e.v, e.w);
    ++sampled_;
    return e.w;
  }
  auto d = sampler_.offer(e);
  if (!d.kept) return 0.0;
  tower_.push(e.id, e.u, e.v, d.weight);
  ++sampled_;
  return d.weight;
}

StreamResult StreamingSparsifier::finish() {
  StreamResult r;
  r.sparsifier = tower_.finish();
  r.sampled_edges = sampled_;
  r.solver_failures = sampler_.solver_failures();
  r.trace = tower_.trace();
  r.levels = tower_.levels();
  r.eps_block = tower_.eps_block();
  r.m_space = tower_.m_space();
  return r;
}

namespace {

StreamResult run_stream(EdgeStream& stream, Guarantee kind, double eps,
                        std::uint64_t seed, const StreamConfig& cfg,
                        SpaceMeter* meter) {
  StreamingSparsifier engine(stream.n(), kind, eps, seed, cfg, meter);
  while (auto e = stream.next()) {
    engine.push(*e);
    if (meter) meter->advance();
  }
  return engine.finish();
}

}  // namespace

StreamResult stream_foreach_sparsifier(EdgeStream& stream, double eps,
                                       std::uint64_t seed,
                                       const StreamConfig& cfg,
                                       SpaceMeter* meter) {
  return run_stream(stream, Guarantee::kForEach, eps, seed, cfg, meter);
}

StreamResult stream_forall_sparsifier(EdgeStream& stream, double eps,
                                      std::uint64_t seed,
                                      const StreamConfig& cfg,
                                      SpaceMeter* meter) {
  return run_stream(stream, Guarantee::kForAll, eps, seed, cfg, meter);
}

}  // namespace streamcut
