#include "streamcut/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "streamcut/rng.hpp"

namespace streamcut {

WeightedGraph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  require(p >= 0.0 && p <= 1.0, ErrorCode::kInvalidArgument,
          "edge probability must lie in [0, 1]");
  WeightedGraph g(n, GraphMode::kSimple);
  auto rng = make_rng(seed, 0x6e70);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (uniform01(rng) < p) g.add_edge(u, v);
    }
  }
  return g;
}

WeightedGraph gen_dumbbell(std::size_t k) {
  require(k >= 2, ErrorCode::kInvalidArgument, "dumbbell needs cliques of size >= 2");
  WeightedGraph g(2 * k, GraphMode::kSimple);
  for (std::size_t side = 0; side < 2; ++side) {
    const auto base = static_cast<Vertex>(side * k);
    for (Vertex u = 0; u < k; ++u) {
      for (Vertex v = u + 1; v < k; ++v) g.add_edge(base + u, base + v);
    }
  }
  g.add_edge(static_cast<Vertex>(k - 1), static_cast<Vertex>(k));
  return g;
}

WeightedGraph gen_cycle(std::size_t n) {
  require(n >= 3, ErrorCode::kInvalidArgument, "cycle needs n >= 3");
  WeightedGraph g(n, GraphMode::kSimple);
  for (Vertex v = 0; v < n; ++v) {
    g.add_edge(v, static_cast<Vertex>((v + 1) % n));
  }
  return g;
}

WeightedGraph gen_planted_bisection(std::size_t n, double p_in,
                                    std::size_t cross, std::uint64_t seed) {
  require(n >= 4 && n % 2 == 0, ErrorCode::kInvalidArgument,
          "planted bisection needs an even n >= 4");
  const std::size_t h = n / 2;
  require(cross <= h * h, ErrorCode::kInvalidArgument,
          "more cross edges than vertex pairs");
  WeightedGraph g(n, GraphMode::kSimple);
  auto rng = make_rng(seed, 0xb15);
  for (std::size_t side = 0; side < 2; ++side) {
    const auto base = static_cast<Vertex>(side * h);
    for (Vertex u = 0; u < h; ++u) {
      for (Vertex v = u + 1; v < h; ++v) {
        if (uniform01(rng) < p_in) g.add_edge(base + u, base + v);
      }
    }
  }
  std::unordered_set<std::uint64_t> used;
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(h - 1));
  while (used.size() < cross) {
    Vertex u = pick(rng);
    Vertex v = static_cast<Vertex>(h) + pick(rng);
    if (used.insert(pair_key(u, v)).second) g.add_edge(u, v);
  }
  return g;
}

WeightedGraph gen_kedge_layered(std::size_t layers, std::size_t width,
                                std::size_t k, std::uint64_t seed) {
  require(layers >= 2 && width >= 2, ErrorCode::kInvalidArgument,
          "layered graph needs >= 2 layers of width >= 2");
  require(k >= 1 && k <= width * width, ErrorCode::kInvalidArgument,
          "k must lie in [1, width^2]");
  WeightedGraph g(layers * width, GraphMode::kSimple);
  auto rng = make_rng(seed, 0x1a7e);
  for (std::size_t l = 0; l < layers; ++l) {
    const auto base = static_cast<Vertex>(l * width);
    for (Vertex u = 0; u < width; ++u) {
      for (Vertex v = u + 1; v < width; ++v) g.add_edge(base + u, base + v);
    }
  }
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(width - 1));
  for (std::size_t l = 0; l + 1 < layers; ++l) {
    const auto lo = static_cast<Vertex>(l * width);
    const auto hi = static_cast<Vertex>((l + 1) * width);
    std::unordered_set<std::uint64_t> used;
    while (used.size() < k) {
      Vertex u = lo + pick(rng), v = hi + pick(rng);
      if (used.insert(pair_key(u, v)).second) g.add_edge(u, v);
    }
  }
  return g;
}

WeightedGraph gen_hamiltonian_union(std::size_t n, std::size_t cycles,
                                    std::uint64_t seed) {
  require(n >= 3, ErrorCode::kInvalidArgument, "need n >= 3");
  WeightedGraph g(n, GraphMode::kSimple);
  std::unordered_set<std::uint64_t> used;
  auto rng = make_rng(seed, 0x4a3);
  std::vector<Vertex> perm(n);
  for (std::size_t c = 0; c < cycles; ++c) {
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < n; ++i) {
      Vertex u = perm[i], v = perm[(i + 1) % n];
      if (used.insert(pair_key(u, v)).second) g.add_edge(u, v);
    }
  }
  return g;
}

WeightedGraph gen_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  require(n >= 2 && m <= n * (n - 1) / 2, ErrorCode::kInvalidArgument,
          "too many edges for n");
  WeightedGraph g(n, GraphMode::kSimple);
  std::unordered_set<std::uint64_t> used;
  auto rng = make_rng(seed, 0x6e3);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  while (g.m() < m) {
    Vertex u = pick(rng), v = pick(rng);
    if (u == v || !used.insert(pair_key(u, v)).second) continue;
    g.add_edge(u, v);
  }
  return g;
}

CorpusEntry gen_corpus_entry(const std::string& kind,
                             const std::string& params_json,
                             std::uint64_t seed) {
  nlohmann::json p;
  try {
    p = params_json.empty() ? nlohmann::json::object()
                            : nlohmann::json::parse(params_json);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("bad generator parameters: ") + e.what());
  }
  require(p.is_object(), ErrorCode::kInvalidArgument,
          "generator parameters must be a JSON object");
  CorpusEntry out;
  out.kind = kind;
  out.seed = seed;
  auto get_n = [&](const char* key, std::size_t def) {
    return p.value(key, def);
  };
  if (kind == "gnp") {
    p["n"] = get_n("n", 20);
    p["p"] = p.value("p", 0.5);
    out.graph = gen_gnp(p["n"], p["p"], seed);
  } else if (kind == "dumbbell") {
    p["k"] = get_n("k", 15);
    out.graph = gen_dumbbell(p["k"]);
  } else if (kind == "cycle") {
    p["n"] = get_n("n", 16);
    out.graph = gen_cycle(p["n"]);
  } else if (kind == "planted-bisection") {
    p["n"] = get_n("n", 256);
    p["p_in"] = p.value("p_in", 0.4);
    std::size_t n = p["n"];
    auto def_cross = static_cast<std::size_t>(
        std::ceil(3.0 * std::log(static_cast<double>(n))));
    p["cross"] = get_n("cross", def_cross);
    out.graph = gen_planted_bisection(n, p["p_in"], p["cross"], seed);
  } else if (kind == "kedge-layered") {
    p["layers"] = get_n("layers", 4);
    p["width"] = get_n("width", 8);
    p["k"] = get_n("k", 3);
    out.graph = gen_kedge_layered(p["layers"], p["width"], p["k"], seed);
  } else if (kind == "hamiltonian-union") {
    p["n"] = get_n("n", 200);
    p["cycles"] = get_n("cycles", 2);
    out.graph = gen_hamiltonian_union(p["n"], p["cycles"], seed);
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown generator kind '" + kind + "'");
  }
  out.params_json = p.dump();
  std::string name = kind;
  for (const auto& [key, val] : p.items()) name += "_" + key + val.dump();
  name += "_s" + std::to_string(seed);
  for (auto& ch : name) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
          ch == '-' || ch == '.')) {
      ch = '_';
    }
  }
  out.name = name;
  return out;
}

void write_corpus(const std::string& dir,
                  const std::vector<CorpusEntry>& entries) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorCode::kIo, "cannot create directory " + dir);
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& e : entries) {
    const std::string file = e.name + ".txt";
    std::ofstream out(std::filesystem::path(dir) / file);
    require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + file);
    write_graph(out, e.graph);
    manifest.push_back({{"name", e.name},
                        {"file", file},
                        {"kind", e.kind},
                        {"params", nlohmann::json::parse(e.params_json)},
                        {"seed", e.seed},
                        {"n", e.graph.n()},
                        {"m", e.graph.m()}});
  }
  std::ofstream out(std::filesystem::path(dir) / "manifest.json");
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot write manifest");
  out << manifest.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

std::string HardInstance::ground_truth_json() const {
  nlohmann::json j;
  j["n"] = graph.n();
  j["m"] = graph.m();
  j["alice_edges"] = alice_edges;
  j["a"] = a;
  j["b"] = b;
  j["c"] = c;
  j["bit"] = bit ? 1 : 0;
  j["deg_a"] = deg_a;
  j["deg_b"] = deg_b;
  j["c1_value"] = c1_value;
  j["c2_value"] = c2_value;
  j["expected_min_cut"] = expected_min_cut;
  j["c1_side"] = c1_side.vertices();
  if (eps > 0.0) {
    j["eps"] = eps;
    j["block_size"] = block_size;
    j["clique_size"] = clique_size;
    j["blocks"] = blocks;
  }
  return j.dump();
}

std::pair<Vertex, Vertex> triangle_pair(std::size_t n, std::size_t index) {
  require(index < n * (n - 1) / 2, ErrorCode::kInvalidArgument,
          "pair index out of range");
  Vertex a = 0;
  std::size_t row = n - 1;
  while (index >= row) {
    index -= row;
    ++a;
    --row;
  }
  return {a, static_cast<Vertex>(a + 1 + index)};
}

namespace {

void add_clique(WeightedGraph& g, Vertex base, std::size_t size) {
  for (Vertex u = 0; u < size; ++u) {
    for (Vertex v = u + 1; v < size; ++v) g.add_edge(base + u, base + v);
  }
}

// Fills in a, b, bit, degrees and the c-gadget for one block of vertices
// [lo, lo + size) whose pair is local index `pair`.
void wire_target(HardInstance& h, Vertex lo, std::size_t size,
                 std::size_t pair, Vertex s_base, Vertex t_base,
                 std::size_t clique, std::span<const std::uint8_t> block_bits) {
  auto [la, lb] = triangle_pair(size, pair);
  h.a = lo + la;
  h.b = lo + lb;
  h.bit = block_bits[pair] != 0;
  // Degrees inside the block.
  std::size_t idx = 0;
  std::vector<std::size_t> deg(size, 0);
  for (Vertex u = 0; u < size; ++u) {
    for (Vertex v = u + 1; v < size; ++v, ++idx) {
      if (block_bits[idx]) {
        ++deg[u];
        ++deg[v];
      }
    }
  }
  h.deg_a = deg[la];
  h.deg_b = deg[lb];
  require(h.deg_a + h.deg_b >= 2, ErrorCode::kDomain,
          "degenerate instance: deg(a) + deg(b) <= 1");
  auto& g = h.graph;
  for (Vertex s = 0; s < clique; ++s) {
    g.add_edge(s_base + s, h.a);
    g.add_edge(s_base + s, h.b);
  }
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < size; ++v) {
    if (lo + v != h.a && lo + v != h.b) rest.push_back(lo + v);
  }
  for (Vertex t = 0; t < clique; ++t) {
    for (Vertex v : rest) g.add_edge(t_base + t, v);
  }
  // c joins deg(a) + deg(b) - 1 vertices of the R side, lowest ids first,
  // spilling into T when the block is too small.
  std::size_t need = h.deg_a + h.deg_b - 1;
  std::vector<Vertex> pool = rest;
  for (Vertex t = 0; t < clique; ++t) pool.push_back(t_base + t);
  require(need <= pool.size(), ErrorCode::kDomain,
          "not enough vertices to attach c");
  for (std::size_t i = 0; i < need; ++i) g.add_edge(h.c, pool[i]);
  h.c1_value = static_cast<double>(h.deg_a + h.deg_b) - (h.bit ? 2.0 : 0.0);
  h.c2_value = static_cast<double>(h.deg_a + h.deg_b - 1);
  h.expected_min_cut = std::min(h.c1_value, h.c2_value);
}

}  // namespace

HardInstance gen_hard_exact(std::size_t n, std::span<const std::uint8_t> bits,
                            std::size_t index) {
  require(n >= 3, ErrorCode::kInvalidArgument, "gadget needs n >= 3");
  const std::size_t pairs = n * (n - 1) / 2;
  require(bits.size() == pairs, ErrorCode::kInvalidArgument,
          "bit vector must have n(n-1)/2 entries");
  require(index < pairs, ErrorCode::kInvalidArgument, "index out of range");
  HardInstance h;
  h.graph = WeightedGraph(7 * n + 1, GraphMode::kSimple);
  std::size_t idx = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++idx) {
      if (bits[idx]) h.graph.add_edge(u, v);
    }
  }
  h.alice_edges = h.graph.m();
  const auto s_base = static_cast<Vertex>(n);
  const auto t_base = static_cast<Vertex>(4 * n);
  h.c = static_cast<Vertex>(7 * n);
  add_clique(h.graph, s_base, 3 * n);
  add_clique(h.graph, t_base, 3 * n);
  wire_target(h, 0, n, index, s_base, t_base, 3 * n, bits);
  h.c1_side = VertexSet(h.graph.n());
  h.c1_side.set(h.a);
  h.c1_side.set(h.b);
  for (Vertex s = 0; s < 3 * n; ++s) h.c1_side.set(s_base + s);
  return h;
}

double snap_gadget_eps(double eps) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::kInvalidArgument,
          "eps must lie in (0, 1)");
  auto s = static_cast<std::size_t>(std::ceil(1.0 / (4.0 * eps) - 1e-9));
  return 1.0 / (4.0 * static_cast<double>(std::max<std::size_t>(s, 1)));
}

std::size_t hard_approx_bits(double eps, std::size_t blocks) {
  auto s = static_cast<std::size_t>(std::llround(1.0 / (4.0 * eps)));
  return blocks * s * (s - 1) / 2;
}

HardInstance gen_hard_approx(double eps, std::size_t blocks,
                             std::span<const std::uint8_t> bits,
                             std::size_t index) {
  const double snapped = snap_gadget_eps(eps);
  const auto s = static_cast<std::size_t>(std::llround(1.0 / (4.0 * snapped)));
  const std::size_t q = 3 * s;
  require(s >= 3, ErrorCode::kDomain,
          "block size 1/(4 eps) must be at least 3; smaller blocks leave T "
          "detached from the target block");
  require(blocks >= 1, ErrorCode::kInvalidArgument, "need at least one block");
  const std::size_t per_block = s * (s - 1) / 2;
  require(bits.size() == blocks * per_block, ErrorCode::kInvalidArgument,
          "bit vector must have blocks * s(s-1)/2 entries");
  require(index < bits.size(), ErrorCode::kInvalidArgument, "index out of range");
  HardInstance h;
  h.eps = snapped;
  h.block_size = s;
  h.clique_size = q;
  h.blocks = blocks;
  const std::size_t gn = blocks * s;
  h.graph = WeightedGraph(gn + 2 * q + 1, GraphMode::kSimple);
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    std::size_t idx = blk * per_block;
    const auto lo = static_cast<Vertex>(blk * s);
    for (Vertex u = 0; u < s; ++u) {
      for (Vertex v = u + 1; v < s; ++v, ++idx) {
        if (bits[idx]) h.graph.add_edge(lo + u, lo + v);
      }
    }
  }
  h.alice_edges = h.graph.m();
  const auto s_base = static_cast<Vertex>(gn);
  const auto t_base = static_cast<Vertex>(gn + q);
  h.c = static_cast<Vertex>(gn + 2 * q);
  add_clique(h.graph, s_base, q);
  add_clique(h.graph, t_base, q);
  const std::size_t target = index / per_block;
  h.c1_side = VertexSet(h.graph.n());
  std::size_t other = 0;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    if (blk == target) continue;
    const bool to_s = other++ % 2 == 0;
    const Vertex base = to_s ? s_base : t_base;
    for (Vertex v = 0; v < s; ++v) {
      const auto x = static_cast<Vertex>(blk * s + v);
      for (Vertex k = 0; k < q; ++k) h.graph.add_edge(x, base + k);
      if (to_s) h.c1_side.set(x);
    }
  }
  wire_target(h, static_cast<Vertex>(target * s), s, index % per_block, s_base,
              t_base, q, bits.subspan(target * per_block, per_block));
  h.c1_side.set(h.a);
  h.c1_side.set(h.b);
  for (Vertex k = 0; k < q; ++k) h.c1_side.set(s_base + k);
  return h;
}

std::vector<std::uint8_t> random_bits(std::size_t count, std::uint64_t seed) {
  std::vector<std::uint8_t> bits(count);
  for (std::size_t i = 0; i < count; ++i) {
    bits[i] = static_cast<std::uint8_t>(counter_hash(seed, i, 0xb175) & 1U);
  }
  return bits;
}

}  // namespace streamcut
