#include "streamcut/streamcut.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <string>

#include <json.hpp>

#include "streamcut/acceptance.hpp"
#include "streamcut/effres.hpp"
#include "streamcut/generators.hpp"
#include "streamcut/mincut.hpp"
#include "streamcut/oracles.hpp"
#include "streamcut/random_order.hpp"
#include "streamcut/sparsify.hpp"
#include "streamcut/stream.hpp"

struct sc_graph {
  streamcut::WeightedGraph g;
};

struct sc_er_sketch {
  streamcut::ERSketch sk;
};

namespace {

using streamcut::ErrorCode;
using nlohmann::json;

thread_local std::string last_error;

sc_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::kInvalidArgument: return SC_INVALID_ARGUMENT;
    case ErrorCode::kDomain: return SC_DOMAIN;
    case ErrorCode::kParse: return SC_PARSE;
    case ErrorCode::kIo: return SC_IO;
    case ErrorCode::kDisconnected: return SC_DISCONNECTED;
    case ErrorCode::kNotConverged: return SC_NOT_CONVERGED;
    case ErrorCode::kUnsupported: return SC_UNSUPPORTED;
    case ErrorCode::kInternal: return SC_INTERNAL;
  }
  return SC_INTERNAL;
}

template <typename F>
sc_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return SC_OK;
  } catch (const streamcut::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return SC_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SC_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SC_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  streamcut::require(p != nullptr, ErrorCode::kInvalidArgument,
                     std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sc_run_options defaults() {
  sc_run_options o;
  sc_run_options_init(&o);
  return o;
}

streamcut::EdgeStream make_stream(const streamcut::WeightedGraph& g,
                                  const sc_run_options& o) {
  std::optional<std::uint64_t> shuffle;
  if (o.shuffle) shuffle = o.shuffle_seed;
  return streamcut::EdgeStream::from_graph(g, shuffle);
}

void write_space_log(const streamcut::SpaceMeter& meter, const sc_run_options& o) {
  if (!o.space_log || !*o.space_log) return;
  std::ofstream out(o.space_log);
  streamcut::require(static_cast<bool>(out), ErrorCode::kIo,
                     std::string("cannot write ") + o.space_log);
  meter.write_csv(out);
}

streamcut::Guarantee parse_kind(const char* kind) {
  need(kind, "kind");
  std::string k = kind;
  if (k == "forall") return streamcut::Guarantee::kForAll;
  if (k == "foreach") return streamcut::Guarantee::kForEach;
  streamcut::fail(ErrorCode::kInvalidArgument,
                  "sparsifier kind must be 'forall' or 'foreach'");
}

json cut_family_json(const streamcut::CutFamily& fam) {
  json cuts = json::array();
  for (const auto& c : fam.sorted()) {
    cuts.push_back({{"side", c.side.canonical().complement().vertices()},
                    {"value", c.value}});
  }
  return json{{"alpha", fam.alpha()}, {"min_value", fam.min_value()},
              {"cuts", cuts}};
}

std::vector<std::uint8_t> bits_from(const json& p, std::size_t count,
                                    std::uint64_t seed) {
  if (!p.contains("bits")) return streamcut::random_bits(count, seed);
  std::string s = p.at("bits").get<std::string>();
  std::vector<std::uint8_t> bits;
  for (char ch : s) {
    streamcut::require(ch == '0' || ch == '1', ErrorCode::kParse,
                       "bits must be a 0/1 string");
    bits.push_back(ch == '1');
  }
  return bits;
}

}  // namespace

extern "C" {

void sc_run_options_init(sc_run_options* opts) {
  if (!opts) return;
  opts->seed = 1;
  opts->shuffle = 0;
  opts->shuffle_seed = 0;
  opts->space_log = nullptr;
  opts->reps = 0;
  opts->simple_variant = 0;
  opts->c_alpha = 0.0;
  opts->c_thresh = 0.0;
}

const char* sc_version(void) { return "0.1.0"; }

const char* sc_status_string(sc_status status) {
  switch (status) {
    case SC_OK: return "ok";
    case SC_INVALID_ARGUMENT: return "invalid argument";
    case SC_DOMAIN: return "domain error";
    case SC_PARSE: return "parse error";
    case SC_IO: return "i/o error";
    case SC_DISCONNECTED: return "disconnected graph";
    case SC_NOT_CONVERGED: return "solver did not converge";
    case SC_UNSUPPORTED: return "unsupported";
    case SC_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sc_last_error(void) { return last_error.c_str(); }

void sc_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------------------

sc_status sc_graph_new(size_t n, int simple, sc_graph** out) {
  return guard([&] {
    need(out, "out");
    *out = new sc_graph{streamcut::WeightedGraph(
        n, simple ? streamcut::GraphMode::kSimple : streamcut::GraphMode::kMulti)};
  });
}

sc_status sc_graph_add_edge(sc_graph* g, uint32_t u, uint32_t v, double w) {
  return guard([&] {
    need(g, "graph");
    g->g.add_edge(u, v, w);
  });
}

sc_status sc_graph_read_file(const char* path, int simple, sc_graph** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    auto g = streamcut::read_graph_file(
        path, simple ? streamcut::GraphMode::kSimple : streamcut::GraphMode::kMulti);
    *out = new sc_graph{std::move(g)};
  });
}

sc_status sc_graph_parse(const char* text, int simple, sc_graph** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    auto g = streamcut::parse_graph(
        text, simple ? streamcut::GraphMode::kSimple : streamcut::GraphMode::kMulti);
    *out = new sc_graph{std::move(g)};
  });
}

sc_status sc_graph_write_file(const sc_graph* g, const char* path) {
  return guard([&] {
    need(g, "graph");
    need(path, "path");
    std::ofstream out(path);
    streamcut::require(static_cast<bool>(out), ErrorCode::kIo,
                       std::string("cannot write ") + path);
    streamcut::write_graph(out, g->g);
  });
}

sc_status sc_graph_format(const sc_graph* g, char** out_text) {
  return guard([&] {
    need(g, "graph");
    need(out_text, "out");
    *out_text = dup(streamcut::format_graph(g->g));
  });
}

size_t sc_graph_n(const sc_graph* g) { return g ? g->g.n() : 0; }
size_t sc_graph_m(const sc_graph* g) { return g ? g->g.m() : 0; }
int sc_graph_is_simple(const sc_graph* g) { return g && g->g.is_simple(); }

sc_status sc_graph_edge(const sc_graph* g, size_t i, uint32_t* u, uint32_t* v,
                        double* w) {
  return guard([&] {
    need(g, "graph");
    streamcut::require(i < g->g.m(), ErrorCode::kInvalidArgument,
                       "edge index out of range");
    const auto& e = g->g.edge(i);
    if (u) *u = e.u;
    if (v) *v = e.v;
    if (w) *w = e.w;
  });
}

sc_status sc_graph_cut_value(const sc_graph* g, const uint32_t* side,
                             size_t count, double* out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    streamcut::require(count == 0 || side, ErrorCode::kInvalidArgument,
                       "side must not be NULL");
    for (size_t i = 0; i < count; ++i) {
      streamcut::require(side[i] < g->g.n(), ErrorCode::kInvalidArgument,
                         "vertex out of range");
    }
    auto s = streamcut::VertexSet::from_vertices(
        g->g.n(), std::span<const streamcut::Vertex>(side, count));
    *out = streamcut::cut_value(g->g, s);
  });
}

void sc_graph_free(sc_graph* g) { delete g; }

// ---------------------------------------------------------------------------

sc_status sc_sparsify(const sc_graph* g, const char* kind, double eps,
                      int streamed, const sc_run_options* opts,
                      sc_graph** out_graph, char** out_metadata_json) {
  return guard([&] {
    need(g, "graph");
    need(out_graph, "out_graph");
    const auto o = opts ? *opts : defaults();
    const auto k = parse_kind(kind);
    streamcut::require(eps > 0.0 && eps < 1.0, ErrorCode::kInvalidArgument,
                       "eps must lie in (0, 1)");
    streamcut::Sparsifier s;
    streamcut::SpaceMeter meter;
    meter.record_series(o.space_log != nullptr);
    if (streamed) {
      auto stream = make_stream(g->g, o);
      auto res = k == streamcut::Guarantee::kForAll
                     ? streamcut::stream_forall_sparsifier(stream, eps, o.seed, {}, &meter)
                     : streamcut::stream_foreach_sparsifier(stream, eps, o.seed, {}, &meter);
      s = std::move(res.sparsifier);
      write_space_log(meter, o);
    } else {
      s = k == streamcut::Guarantee::kForAll
              ? streamcut::forall_sparsify(g->g, eps, o.seed)
              : streamcut::spectral_sketch(g->g, eps, o.seed);
    }
    std::string meta = streamcut::metadata_json(s);
    if (streamed) {
      auto j = json::parse(meta);
      j["space_words_peak"] = meter.peak();
      meta = j.dump();
    }
    *out_graph = new sc_graph{std::move(s.graph)};
    if (out_metadata_json) *out_metadata_json = dup(meta);
  });
}

sc_status sc_mincut(const sc_graph* g, double eps, const sc_run_options* opts,
                    char** out_json) {
  return guard([&] {
    need(g, "graph");
    need(out_json, "out_json");
    const auto o = opts ? *opts : defaults();
    streamcut::MinCutConfig cfg;
    cfg.reps = o.reps;
    cfg.simple_variant = o.simple_variant != 0;
    if (o.c_alpha > 0.0) cfg.c_alpha = o.c_alpha;
    streamcut::SpaceMeter meter;
    meter.record_series(o.space_log != nullptr);
    auto stream = make_stream(g->g, o);
    auto res = streamcut::approx_min_cut_stream(stream, eps, o.seed, cfg, &meter);
    write_space_log(meter, o);
    *out_json = dup(streamcut::to_json(res));
  });
}

sc_status sc_mincut_random_order(const sc_graph* g, const sc_run_options* opts,
                                 char** out_json) {
  return guard([&] {
    need(g, "graph");
    need(out_json, "out_json");
    const auto o = opts ? *opts : defaults();
    streamcut::RandomOrderConfig cfg;
    cfg.reps = o.reps;
    if (o.c_thresh > 0.0) cfg.c_thresh = o.c_thresh;
    streamcut::SpaceMeter meter;
    meter.record_series(o.space_log != nullptr);
    auto stream = make_stream(g->g, o);
    auto res = streamcut::exact_min_cut_random_order(stream, o.seed, cfg, &meter);
    write_space_log(meter, o);
    auto j = json::parse(streamcut::to_json(res));
    j["rounding_unverified"] = res.rounding_unverified;
    j["threshold"] = res.threshold;
    *out_json = dup(j.dump());
  });
}

// ---------------------------------------------------------------------------

sc_status sc_er_sketch_build(const sc_graph* g, double eps, int strict,
                             const sc_run_options* opts, sc_er_sketch** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    const auto o = opts ? *opts : defaults();
    streamcut::require(eps > 0.0 && eps < 1.0, ErrorCode::kInvalidArgument,
                       "eps must lie in (0, 1)");
    streamcut::ERSketch sk;
    if (strict) {
      sk = streamcut::build_er_sketch_strict(g->g, eps, o.seed);
    } else {
      streamcut::SpaceMeter meter;
      meter.record_series(o.space_log != nullptr);
      auto stream = make_stream(g->g, o);
      auto h = streamcut::stream_foreach_sparsifier(stream, eps, o.seed, {}, &meter);
      write_space_log(meter, o);
      sk = streamcut::build_er_sketch(h.sparsifier, eps,
                                      streamcut::derive_seed(o.seed, 0xe5));
    }
    *out = new sc_er_sketch{std::move(sk)};
  });
}

sc_status sc_er_sketch_query(const sc_er_sketch* sk, uint32_t u, uint32_t v,
                             double* out) {
  return guard([&] {
    need(sk, "sketch");
    need(out, "out");
    *out = streamcut::query_er(sk->sk, u, v);
  });
}

size_t sc_er_sketch_rows(const sc_er_sketch* sk) { return sk ? sk->sk.k() : 0; }
size_t sc_er_sketch_copies(const sc_er_sketch* sk) {
  return sk ? sk->sk.copies() : 0;
}
void sc_er_sketch_free(sc_er_sketch* sk) { delete sk; }

// ---------------------------------------------------------------------------

sc_status sc_oracle_mincut(const sc_graph* g, char** out_json) {
  return guard([&] {
    need(g, "graph");
    need(out_json, "out_json");
    auto c = streamcut::stoer_wagner_min_cut(g->g);
    std::vector<streamcut::EdgeId> crossing;
    for (std::size_t i = 0; i < g->g.m(); ++i) {
      const auto& e = g->g.edge(i);
      if (c.side.test(e.u) != c.side.test(e.v)) crossing.push_back(i);
    }
    *out_json = dup(json{{"value", c.value},
                         {"side", c.side.vertices()},
                         {"crossing_edges", crossing}}
                        .dump());
  });
}

sc_status sc_oracle_cut_family(const sc_graph* g, double alpha, char** out_json) {
  return guard([&] {
    need(g, "graph");
    need(out_json, "out_json");
    *out_json = dup(cut_family_json(streamcut::brute_force_cut_family(g->g, alpha)).dump());
  });
}

sc_status sc_oracle_effres(const sc_graph* g, uint32_t u, uint32_t v, double* out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    const auto n = g->g.n();
    streamcut::require(u < n && v < n, ErrorCode::kInvalidArgument,
                       "vertex out of range");
    auto r = streamcut::dense_er_matrix(g->g);
    *out = r[std::size_t{u} * n + v];
  });
}

sc_status sc_oracle_effres_matrix(const sc_graph* g, double* out, size_t capacity) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    const auto n = g->g.n();
    streamcut::require(capacity >= n * n, ErrorCode::kInvalidArgument,
                       "output buffer smaller than n * n");
    auto r = streamcut::dense_er_matrix(g->g);
    std::copy(r.begin(), r.end(), out);
  });
}

sc_status sc_oracle_leverage(const sc_graph* g, char** out_json) {
  return guard([&] {
    need(g, "graph");
    need(out_json, "out_json");
    auto lev = streamcut::exact_leverage_scores(g->g);
    double sum = 0.0;
    for (double l : lev) sum += l;
    *out_json = dup(json{{"leverage", lev}, {"sum", sum}}.dump());
  });
}

// ---------------------------------------------------------------------------

sc_status sc_gen(const char* kind, const char* params_json, uint64_t seed,
                 sc_graph** out_graph, char** out_manifest_json) {
  return guard([&] {
    need(kind, "kind");
    need(out_graph, "out_graph");
    auto e = streamcut::gen_corpus_entry(kind, params_json ? params_json : "", seed);
    if (out_manifest_json) {
      *out_manifest_json = dup(json{{"name", e.name},
                                    {"kind", e.kind},
                                    {"params", json::parse(e.params_json)},
                                    {"seed", e.seed},
                                    {"n", e.graph.n()},
                                    {"m", e.graph.m()}}
                                   .dump());
    }
    *out_graph = new sc_graph{std::move(e.graph)};
  });
}

sc_status sc_gen_corpus(const char* entries_json, const char* dir) {
  return guard([&] {
    need(entries_json, "entries_json");
    need(dir, "dir");
    auto list = json::parse(entries_json);
    streamcut::require(list.is_array(), ErrorCode::kInvalidArgument,
                       "corpus entries must be a JSON array");
    std::vector<streamcut::CorpusEntry> entries;
    for (const auto& item : list) {
      entries.push_back(streamcut::gen_corpus_entry(
          item.at("kind").get<std::string>(),
          item.value("params", json::object()).dump(),
          item.value("seed", std::uint64_t{0})));
    }
    streamcut::write_corpus(dir, entries);
  });
}

sc_status sc_gen_hard(const char* kind, const char* params_json, uint64_t seed,
                      sc_graph** out_graph, char** out_truth_json) {
  return guard([&] {
    need(kind, "kind");
    need(out_graph, "out_graph");
    json p = params_json && *params_json ? json::parse(params_json) : json::object();
    std::string k = kind;
    streamcut::HardInstance h;
    if (k == "hard-exact") {
      std::size_t n = p.value("n", std::size_t{6});
      streamcut::require(n >= 3, ErrorCode::kInvalidArgument, "gadget needs n >= 3");
      auto bits = bits_from(p, n * (n - 1) / 2, seed);
      h = streamcut::gen_hard_exact(n, bits, p.value("index", std::size_t{0}));
    } else if (k == "hard-approx") {
      double eps = streamcut::snap_gadget_eps(p.value("eps", 1.0 / 12.0));
      std::size_t blocks = p.value("blocks", std::size_t{2});
      auto bits = bits_from(p, streamcut::hard_approx_bits(eps, blocks), seed);
      h = streamcut::gen_hard_approx(eps, blocks, bits, p.value("index", std::size_t{0}));
    } else {
      streamcut::fail(ErrorCode::kInvalidArgument,
                      "hard instance kind must be hard-exact or hard-approx");
    }
    if (out_truth_json) *out_truth_json = dup(h.ground_truth_json());
    *out_graph = new sc_graph{std::move(h.graph)};
  });
}

// ---------------------------------------------------------------------------

sc_status sc_accept(const int* ids, size_t count, uint64_t seed,
                    sc_progress_fn progress, void* user, char** out_json,
                    int* all_pass) {
  return guard([&] {
    streamcut::AcceptOptions o;
    o.seed = seed;
    if (ids) o.only.assign(ids, ids + count);
    for (int id : o.only) {
      streamcut::require(id >= 1 && id <= streamcut::kCriteriaCount,
                         ErrorCode::kInvalidArgument,
                         "criterion ids run from 1 to 9");
    }
    if (progress) {
      o.progress = [progress, user](const std::string& line) {
        progress(line.c_str(), user);
      };
    }
    auto results = streamcut::run_acceptance(o);
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    if (all_pass) *all_pass = all ? 1 : 0;
    if (out_json) *out_json = dup(streamcut::to_json(results));
  });
}

}  // extern "C"
