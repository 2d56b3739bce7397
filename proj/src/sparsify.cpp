#include "streamcut/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include <json.hpp>

#include "streamcut/linalg.hpp"

namespace streamcut {

namespace {

constexpr double kNoCap = std::numeric_limits<double>::infinity();

double log_n(std::size_t n) {
  return std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
}

std::vector<EdgeId> default_ids(std::size_t m, std::span<const EdgeId> ids) {
  if (!ids.empty()) {
    require(ids.size() == m, ErrorCode::kInvalidArgument,
            "source id list does not match edge count");
    return {ids.begin(), ids.end()};
  }
  std::vector<EdgeId> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = i;
  return out;
}

Sparsifier copy_as(const WeightedGraph& g, Guarantee kind, double eps,
                   std::uint64_t seed, std::vector<EdgeId> ids) {
  Sparsifier s;
  s.graph = WeightedGraph(g.n(), GraphMode::kMulti, kNoCap);
  for (const auto& e : g.edges()) s.graph.add_edge(e.u, e.v, e.w);
  s.kind = kind;
  s.eps = eps;
  s.seed = seed;
  s.source_edge_ids = std::move(ids);
  return s;
}

void check_eps(double eps) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::kInvalidArgument,
          "eps must lie in (0, 1)");
}

// Samples edge i with probability p[i] and reweights by 1/p[i].
void sample_into(const WeightedGraph& g, std::span<const double> p,
                 std::span<const EdgeId> ids, Rng& rng, Sparsifier& out) {
  out.graph = WeightedGraph(g.n(), GraphMode::kMulti, kNoCap);
  out.source_edge_ids.clear();
  for (std::size_t i = 0; i < g.m(); ++i) {
    const auto& e = g.edge(i);
    if (p[i] >= 1.0 || uniform01(rng) < p[i]) {
      out.graph.add_edge(e.u, e.v, p[i] >= 1.0 ? e.w : e.w / p[i]);
      out.source_edge_ids.push_back(ids[i]);
    }
  }
}

}  // namespace

const char* to_string(Guarantee g) {
  return g == Guarantee::kForAll ? "FOR_ALL" : "FOR_EACH";
}

std::string metadata_json(const Sparsifier& s) {
  nlohmann::json j;
  j["kind"] = to_string(s.kind);
  j["eps"] = s.eps;
  j["seed"] = s.seed;
  j["n"] = s.graph.n();
  j["m"] = s.graph.m();
  j["fallback"] = s.fallback;
  j["rounds"] = s.diagnostics.rounds;
  j["edges_per_round"] = s.diagnostics.edges_per_round;
  j["source_edge_ids"] = s.source_edge_ids;
  if (!s.level_factors.empty()) j["level_factors"] = s.level_factors;
  return j.dump();
}

std::vector<double> estimate_leverage(const WeightedGraph& g,
                                      const WeightedGraph& substrate,
                                      std::uint64_t seed,
                                      const SparsifyConfig& cfg) {
  require(g.n() == substrate.n(), ErrorCode::kInvalidArgument,
          "substrate has a different vertex count");
  const std::size_t n = g.n();
  std::vector<double> lev(g.m(), 1.0);
  if (g.m() == 0 || n < 2) return lev;

  SolverOptions opts;
  opts.tolerance = cfg.solver_tolerance;
  opts.allow_disconnected = true;
  LaplacianSolver solver(substrate, opts);
  std::vector<std::uint32_t> comp;
  connected_components(substrate, comp);

  const auto k = static_cast<std::size_t>(
      std::ceil(cfg.leverage_jl_const * log_n(n)));
  std::vector<std::vector<double>> z;
  if (n <= k) {
    // Exact: columns of the pseudoinverse, r(u,v) = (e_u - e_v)^T X (e_u - e_v).
    z.resize(n);
    std::vector<double> b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] = 1.0;
      z[i] = solver.try_solve(b).x;
      b[i] = 0.0;
    }
    for (std::size_t i = 0; i < g.m(); ++i) {
      const auto& e = g.edge(i);
      if (comp[e.u] != comp[e.v]) continue;
      double r = z[e.u][e.u] + z[e.v][e.v] - z[e.u][e.v] - z[e.v][e.u];
      lev[i] = e.w * std::max(r, 0.0);
    }
    return lev;
  }

  z.resize(k);
  std::vector<double> b(n), col(k);
  std::vector<std::vector<double>> rhs(k, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < substrate.m(); ++j) {
    const auto& e = substrate.edge(j);
    jl_column(seed, j, col);
    const double s = std::sqrt(e.w);
    for (std::size_t r = 0; r < k; ++r) {
      rhs[r][e.u] += s * col[r];
      rhs[r][e.v] -= s * col[r];
    }
  }
  for (std::size_t r = 0; r < k; ++r) z[r] = solver.try_solve(rhs[r]).x;
  for (std::size_t i = 0; i < g.m(); ++i) {
    const auto& e = g.edge(i);
    if (comp[e.u] != comp[e.v]) continue;
    double acc = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
      double d = z[r][e.u] - z[r][e.v];
      acc += d * d;
    }
    lev[i] = e.w * acc;
  }
  return lev;
}

Sparsifier forall_sparsify(const WeightedGraph& g, double eps,
                           std::uint64_t seed, const SparsifyConfig& cfg,
                           std::span<const EdgeId> source_ids) {
  check_eps(eps);
  auto ids = default_ids(g.m(), source_ids);
  const double scale = cfg.c0 * log_n(g.n()) / (eps * eps);
  auto deg = g.weighted_degrees();
  std::vector<double> p(g.m(), 1.0);
  bool need_solve = false;
  for (std::size_t i = 0; i < g.m(); ++i) {
    const auto& e = g.edge(i);
    if (scale * e.w * resistance_lower_bound(deg[e.u], deg[e.v]) < 1.0) {
      need_solve = true;
      break;
    }
  }
  if (need_solve) {
    auto lev = estimate_leverage(g, g, derive_seed(seed, 0x1e7), cfg);
    for (std::size_t i = 0; i < g.m(); ++i) {
      p[i] = std::min(1.0, scale * lev[i]);
    }
  }
  Sparsifier out;
  out.kind = Guarantee::kForAll;
  out.eps = eps;
  out.seed = seed;
  auto rng = make_rng(seed, 0xa11);
  sample_into(g, p, ids, rng, out);
  return out;
}

std::size_t cycle_length_cap(std::size_t n) {
  std::size_t lg = 0;
  while ((std::size_t{1} << lg) < n) ++lg;
  return 2 * lg + 1;
}

CycleDecomposition short_cycle_decompose(std::size_t n,
                                         std::span<const Edge> edges) {
  CycleDecomposition out;
  out.length_cap = cycle_length_cap(n);
  const std::size_t m = edges.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& e = edges[i];
    require(e.u < n && e.v < n && e.u != e.v, ErrorCode::kInvalidArgument,
            "invalid edge in cycle decomposition input");
    adj[e.u].push_back(static_cast<std::uint32_t>(i));
    adj[e.v].push_back(static_cast<std::uint32_t>(i));
  }
  std::vector<std::uint8_t> alive(m, 1);
  std::vector<std::size_t> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = adj[v].size();
  std::size_t live_edges = m;

  auto other = [&](std::uint32_t id, Vertex x) {
    return edges[id].u == x ? edges[id].v : edges[id].u;
  };
  auto kill = [&](std::uint32_t id) {
    alive[id] = 0;
    --deg[edges[id].u];
    --deg[edges[id].v];
    --live_edges;
  };
  auto to_leftover = [&](std::uint32_t id) {
    kill(id);
    out.leftover.push_back(id);
  };
  auto peel = [&]() {
    std::vector<Vertex> stack;
    for (Vertex v = 0; v < n; ++v) {
      if (deg[v] == 1) stack.push_back(v);
    }
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      if (deg[x] != 1) continue;
      for (auto id : adj[x]) {
        if (!alive[id]) continue;
        Vertex y = other(id, x);
        to_leftover(id);
        if (deg[y] == 1) stack.push_back(y);
      }
    }
  };

  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> depth(n, kUnseen), parent(n, kUnseen),
      odd_at(n, kUnseen);
  std::vector<Vertex> touched;
  Vertex start = 0;
  peel();
  while (live_edges > 0) {
    while (deg[start] == 0) ++start;
    // BFS until a non-tree edge closes an even cycle: endpoints on adjacent
    // levels, or two same-level closures meeting at a vertex. A lone
    // same-level closure (odd cycle) is the fallback.
    for (auto v : touched) depth[v] = parent[v] = odd_at[v] = kUnseen;
    touched.clear();
    std::deque<Vertex> queue{start};
    depth[start] = 0;
    touched.push_back(start);
    // Cycle = tree path end_a -> lca -> end_b, then `tail` back to end_a.
    Vertex end_a = 0, end_b = 0;
    std::vector<std::uint32_t> tail;
    std::uint32_t odd_closing = kUnseen;
    Vertex ox = 0, oy = 0;
    const std::size_t max_depth = out.length_cap / 2;
    while (!queue.empty() && tail.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      if (depth[x] > max_depth) break;
      for (auto id : adj[x]) {
        if (!alive[id] || id == parent[x]) continue;
        Vertex y = other(id, x);
        if (depth[y] == kUnseen) {
          depth[y] = depth[x] + 1;
          parent[y] = id;
          touched.push_back(y);
          queue.push_back(y);
        } else if (depth[y] != depth[x]) {
          end_a = x;
          end_b = y;
          tail = {id};
          break;
        } else if (odd_at[x] != kUnseen && odd_at[x] != id) {
          end_a = other(odd_at[x], x);
          end_b = y;
          tail = {id, odd_at[x]};
          break;
        } else if (odd_at[y] != kUnseen && odd_at[y] != id) {
          end_a = x;
          end_b = other(odd_at[y], y);
          tail = {odd_at[y], id};
          break;
        } else {
          odd_at[x] = odd_at[y] = id;
          if (odd_closing == kUnseen) {
            odd_closing = id;
            ox = x;
            oy = y;
          }
        }
      }
    }
    if (tail.empty() && odd_closing != kUnseen) {
      end_a = ox;
      end_b = oy;
      tail = {odd_closing};
    }
    if (tail.empty()) {
      // No closure within reach: a forest, or only cycles longer than the
      // cap through `start`. Its edges go to leftover.
      for (auto id : adj[start]) {
        if (alive[id]) to_leftover(id);
      }
      peel();
      continue;
    }
    std::vector<std::uint32_t> up_x, up_y;
    Vertex a = end_a, b = end_b;
    while (depth[a] > depth[b]) {
      up_x.push_back(parent[a]);
      a = other(parent[a], a);
    }
    while (depth[b] > depth[a]) {
      up_y.push_back(parent[b]);
      b = other(parent[b], b);
    }
    while (a != b) {
      up_x.push_back(parent[a]);
      a = other(parent[a], a);
      up_y.push_back(parent[b]);
      b = other(parent[b], b);
    }
    std::vector<std::uint32_t> cycle = up_x;
    cycle.insert(cycle.end(), up_y.rbegin(), up_y.rend());
    cycle.insert(cycle.end(), tail.begin(), tail.end());
    const std::uint32_t closing = tail.front();
    if (cycle.size() <= out.length_cap) {
      if (cycle.size() % 2 == 1) {
        to_leftover(closing);
        ++out.parity_fixes;
      } else {
        for (auto id : cycle) kill(id);
        out.cycles.push_back(std::move(cycle));
      }
    } else {
      // Only possible while a degree-2 vertex survives; drop the first one.
      Vertex victim = start;
      bool found = false;
      for (Vertex v = 0; v < n && !found; ++v) {
        if (deg[v] == 2) {
          victim = v;
          found = true;
        }
      }
      if (!found) {
        for (Vertex v = 0; v < n; ++v) {
          if (deg[v] > 0 && deg[v] < deg[victim]) victim = v;
        }
      }
      for (auto id : adj[victim]) {
        if (alive[id]) to_leftover(id);
      }
    }
    peel();
  }
  return out;
}

std::vector<double> sample_cycle_weights(std::span<const Edge> edges,
                                         const CycleDecomposition& dec,
                                         Rng& rng) {
  std::vector<double> w(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) w[i] = edges[i].w;
  for (const auto& cycle : dec.cycles) {
    require(cycle.size() % 2 == 0, ErrorCode::kInvalidArgument,
            "cycle sampling needs even cycles");
    double m_even = std::numeric_limits<double>::infinity();
    double m_odd = m_even;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      double x = w[cycle[i]];
      if (i % 2 == 0) {
        m_even = std::min(m_even, x);
      } else {
        m_odd = std::min(m_odd, x);
      }
    }
    const bool even_down = uniform01(rng) < m_odd / (m_even + m_odd);
    const double delta = even_down ? m_even : m_odd;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      auto& x = w[cycle[i]];
      bool down = (i % 2 == 0) == even_down;
      if (down) {
        x = x == delta ? 0.0 : x - delta;
      } else {
        x += delta;
      }
    }
  }
  return w;
}

std::size_t foreach_target(std::size_t n, double eps,
                           const SparsifyConfig& cfg) {
  if (cfg.target_override != 0) return cfg.target_override;
  double ln = log_n(n);
  return static_cast<std::size_t>(
      std::ceil(cfg.c_each * static_cast<double>(n) * ln * ln * ln / eps));
}

double heavy_threshold(std::size_t n, double eps, const SparsifyConfig& cfg) {
  return eps / (cfg.heavy_const * static_cast<double>(cycle_length_cap(n)));
}

Sparsifier spectral_sketch(const WeightedGraph& g, double eps,
                           std::uint64_t seed, const SparsifyConfig& cfg,
                           std::span<const EdgeId> source_ids) {
  check_eps(eps);
  const std::size_t n = g.n();
  const std::size_t target = foreach_target(n, eps, cfg);
  Sparsifier cur = copy_as(g, Guarantee::kForEach, eps, seed,
                           default_ids(g.m(), source_ids));
  if (g.m() <= target) return cur;

  const double tau = heavy_threshold(n, eps, cfg);
  std::size_t lg_m = 0;
  while ((std::size_t{1} << lg_m) < g.m()) ++lg_m;
  const std::size_t round_cap = lg_m + 8;
  auto& diag = cur.diagnostics;

  for (std::size_t round = 0; round < round_cap && cur.graph.m() > target;
       ++round) {
    const auto& h = cur.graph;
    diag.edges_per_round.push_back(h.m());
    ++diag.rounds;
    auto k = forall_sparsify(h, 0.25, derive_seed(seed, 2 * round + 1), cfg);
    auto lev = estimate_leverage(h, k.graph, derive_seed(seed, 2 * round + 2),
                                 cfg);
    std::map<int, std::vector<std::uint32_t>> buckets;
    Sparsifier next;
    next.graph = WeightedGraph(n, GraphMode::kMulti, kNoCap);
    for (std::size_t i = 0; i < h.m(); ++i) {
      const auto& e = h.edge(i);
      if (lev[i] >= tau) {
        next.graph.add_edge(e.u, e.v, e.w);
        next.source_edge_ids.push_back(cur.source_edge_ids[i]);
      } else {
        buckets[static_cast<int>(std::floor(std::log2(e.w)))].push_back(
            static_cast<std::uint32_t>(i));
      }
    }
    auto rng = make_rng(seed, 0xc7c1e000 + round);
    for (const auto& [cls, members] : buckets) {
      std::vector<Edge> local;
      local.reserve(members.size());
      for (auto id : members) local.push_back(h.edge(id));
      auto dec = short_cycle_decompose(n, local);
      auto w = sample_cycle_weights(local, dec, rng);
      diag.cycles_sampled += dec.cycles.size();
      diag.parity_fixes += dec.parity_fixes;
      std::vector<double> before(n, 0.0), after(n, 0.0);
      for (std::size_t i = 0; i < local.size(); ++i) {
        before[local[i].u] += local[i].w;
        before[local[i].v] += local[i].w;
        after[local[i].u] += w[i];
        after[local[i].v] += w[i];
        if (w[i] > 0.0) {
          next.graph.add_edge(local[i].u, local[i].v, w[i]);
          next.source_edge_ids.push_back(cur.source_edge_ids[members[i]]);
        }
      }
      for (std::size_t v = 0; v < n; ++v) {
        diag.max_bucket_degree_drift = std::max(
            diag.max_bucket_degree_drift, std::abs(after[v] - before[v]));
      }
    }
    if (next.graph.m() >= h.m()) break;
    cur.graph = std::move(next.graph);
    cur.source_edge_ids = std::move(next.source_edge_ids);
  }
  if (cur.graph.m() <= target) return cur;

  // Leverage-score tail down to the target edge count.
  cur.fallback = true;
  const auto& h = cur.graph;
  auto k = forall_sparsify(h, 0.25, derive_seed(seed, 0xfa11), cfg);
  auto lev = estimate_leverage(h, k.graph, derive_seed(seed, 0xfa12), cfg);
  auto expected = [&](double s) {
    double sum = 0.0;
    for (double l : lev) sum += std::min(1.0, s * l);
    return sum;
  };
  double lo = 0.0, hi = 1.0;
  while (expected(hi) < static_cast<double>(target) && hi < 1e300) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (expected(mid) < static_cast<double>(target) ? lo : hi) = mid;
  }
  std::vector<double> p(h.m());
  for (std::size_t i = 0; i < h.m(); ++i) {
    p[i] = std::min(1.0, lo * std::max(lev[i], 1e-300));
  }
  auto rng = make_rng(seed, 0xfa13);
  auto ids = cur.source_edge_ids;
  WeightedGraph src = std::move(cur.graph);
  sample_into(src, p, ids, rng, cur);
  return cur;
}

}  // namespace streamcut
