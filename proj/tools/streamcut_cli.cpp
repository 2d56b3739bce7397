// Command-line front end. Talks to the library only through streamcut.h.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "streamcut/streamcut.h"

using json = nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> shuffle;
  std::string space_log;
  bool json_out = false;
};

// Thrown to unwind with a library status; main() turns it into exit code 2.
struct ApiFailure {
  sc_status status;
  std::string message;
};

void check(sc_status s, const char* what) {
  if (s != SC_OK) {
    throw ApiFailure{s, std::string(what) + ": " + sc_status_string(s) + ": " +
                            sc_last_error()};
  }
}

struct GraphDeleter {
  void operator()(sc_graph* g) const { sc_graph_free(g); }
};
using GraphPtr = std::unique_ptr<sc_graph, GraphDeleter>;

struct SketchDeleter {
  void operator()(sc_er_sketch* s) const { sc_er_sketch_free(s); }
};
using SketchPtr = std::unique_ptr<sc_er_sketch, SketchDeleter>;

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  sc_string_free(s);
  return out;
}

GraphPtr load(const std::string& path, bool simple) {
  sc_graph* g = nullptr;
  check(sc_graph_read_file(path.c_str(), simple ? 1 : 0, &g), "reading graph");
  return GraphPtr(g);
}

sc_run_options run_options(const Globals& gl) {
  sc_run_options o;
  sc_run_options_init(&o);
  o.seed = gl.seed;
  if (gl.shuffle) {
    o.shuffle = 1;
    o.shuffle_seed = *gl.shuffle;
  }
  o.space_log = gl.space_log.empty() ? nullptr : gl.space_log.c_str();
  return o;
}

json oracle_mincut(const sc_graph* g) {
  char* out = nullptr;
  check(sc_oracle_mincut(g, &out), "oracle mincut");
  return json::parse(take(out));
}

double cut_value(const sc_graph* g, const std::vector<std::uint32_t>& side) {
  double v = 0.0;
  check(sc_graph_cut_value(g, side.data(), side.size(), &v), "cut value");
  return v;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ApiFailure{SC_IO, "cannot write " + path};
  out << text;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> read_pairs(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ApiFailure{SC_IO, "cannot read " + path};
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!(ls >> u)) continue;
    if (!(ls >> v)) throw ApiFailure{SC_PARSE, "pair line needs two vertices: " + line};
    pairs.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  return pairs;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> all_pairs(std::size_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  return pairs;
}

std::vector<double> oracle_matrix(const sc_graph* g) {
  const std::size_t n = sc_graph_n(g);
  std::vector<double> r(n * n);
  check(sc_oracle_effres_matrix(g, r.data(), r.size()), "oracle effres");
  return r;
}

void check_range(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                 std::size_t n) {
  for (auto [u, v] : pairs) {
    if (u >= n || v >= n) {
      throw ApiFailure{SC_INVALID_ARGUMENT, "vertex out of range in pairs file"};
    }
  }
}

// "key=value" pairs become a JSON object; values parse as JSON when they can.
json params_from(const std::string& params_json,
                 const std::vector<std::string>& kv) {
  json p = params_json.empty() ? json::object() : json::parse(params_json);
  for (const auto& item : kv) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ApiFailure{SC_INVALID_ARGUMENT, "parameter must be key=value: " + item};
    }
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    json parsed = json::parse(val, nullptr, false);
    p[key] = parsed.is_discarded() ? json(val) : parsed;
  }
  return p;
}

// ---------------------------------------------------------------------------

struct SparsifyArgs {
  std::string graph;
  std::string kind = "foreach";
  double eps = 0.5;
  bool offline = false;
  std::string out;
  std::string meta;
};

bool cmd_sparsify(const Globals& gl, const SparsifyArgs& a) {
  auto g = load(a.graph, false);
  auto opts = run_options(gl);
  sc_graph* h = nullptr;
  char* meta = nullptr;
  check(sc_sparsify(g.get(), a.kind.c_str(), a.eps, a.offline ? 0 : 1, &opts, &h, &meta),
        "sparsify");
  GraphPtr hp(h);
  json m = json::parse(take(meta));
  m["input_n"] = sc_graph_n(g.get());
  m["input_m"] = sc_graph_m(g.get());
  m["output_m"] = sc_graph_m(hp.get());
  if (!a.meta.empty()) write_text(a.meta, m.dump(2) + "\n");
  if (gl.json_out) {
    if (!a.out.empty()) check(sc_graph_write_file(hp.get(), a.out.c_str()), "writing graph");
    std::cout << m.dump(2) << "\n";
  } else if (!a.out.empty()) {
    check(sc_graph_write_file(hp.get(), a.out.c_str()), "writing graph");
    std::cerr << "kept " << m["output_m"] << " of " << m["input_m"] << " edges\n";
  } else {
    char* text = nullptr;
    check(sc_graph_format(hp.get(), &text), "formatting graph");
    std::cout << take(text);
  }
  return true;
}

struct MinCutArgs {
  std::string graph;
  double eps = 0.2;
  double alpha_c = 0.0;
  std::size_t reps = 0;
  bool simple = false;
  bool check = false;
};

bool cmd_mincut(const Globals& gl, const MinCutArgs& a) {
  auto g = load(a.graph, false);
  auto opts = run_options(gl);
  opts.reps = a.reps;
  opts.simple_variant = a.simple ? 1 : 0;
  opts.c_alpha = a.alpha_c;
  char* out = nullptr;
  check(sc_mincut(g.get(), a.eps, &opts, &out), "mincut");
  json r = json::parse(take(out));
  bool ok = true;
  if (a.check) {
    json o = oracle_mincut(g.get());
    double opt = o["value"];
    double reported = r["value"];
    double side_value = cut_value(g.get(), r["side"].get<std::vector<std::uint32_t>>());
    bool value_ok = opt == 0.0 ? reported == 0.0
                               : std::abs(reported - opt) <= a.eps * opt + 1e-9;
    bool side_ok = side_value <= (1.0 + a.eps) * opt + 1e-9;
    ok = value_ok && side_ok;
    r["check"] = {{"oracle_value", opt},
                  {"side_true_value", side_value},
                  {"value_within_eps", value_ok},
                  {"side_within_eps", side_ok},
                  {"pass", ok}};
  }
  std::cout << r.dump(gl.json_out ? 2 : -1) << "\n";
  return ok;
}

struct RandomOrderArgs {
  std::string graph;
  double c_thresh = 0.0;
  std::size_t reps = 0;
  bool check = false;
};

bool cmd_random_order(const Globals& gl, const RandomOrderArgs& a) {
  auto g = load(a.graph, true);
  auto opts = run_options(gl);
  opts.reps = a.reps;
  opts.c_thresh = a.c_thresh;
  char* out = nullptr;
  check(sc_mincut_random_order(g.get(), &opts, &out), "mincut-random-order");
  json r = json::parse(take(out));
  bool ok = true;
  if (a.check) {
    json o = oracle_mincut(g.get());
    double opt = o["value"];
    ok = std::abs(r["value"].get<double>() - opt) < 1e-9;
    r["check"] = {{"oracle_value", opt}, {"pass", ok}};
  }
  std::cout << r.dump(gl.json_out ? 2 : -1) << "\n";
  return ok;
}

struct EffresArgs {
  std::string graph;
  double eps = 0.3;
  std::string pairs;
  bool all = false;
  bool strict = false;
  bool check = false;
};

bool cmd_effres(const Globals& gl, const EffresArgs& a) {
  auto g = load(a.graph, false);
  auto opts = run_options(gl);
  sc_er_sketch* sk = nullptr;
  check(sc_er_sketch_build(g.get(), a.eps, a.strict ? 1 : 0, &opts, &sk), "effres sketch");
  SketchPtr skp(sk);
  auto pairs = a.pairs.empty() ? all_pairs(sc_graph_n(g.get())) : read_pairs(a.pairs);
  const std::size_t n = sc_graph_n(g.get());
  std::vector<double> exact_matrix;
  if (a.check) exact_matrix = oracle_matrix(g.get());
  std::size_t within = 0;
  json rows = json::array();
  if (!gl.json_out) std::cout << (a.check ? "u,v,estimate,exact\n" : "u,v,estimate\n");
  for (auto [u, v] : pairs) {
    double est = 0.0;
    check(sc_er_sketch_query(skp.get(), u, v, &est), "effres query");
    std::optional<double> exact;
    if (a.check) {
      double r = exact_matrix[std::size_t{u} * n + v];
      exact = r;
      if (std::abs(est - r) <= a.eps * r + 1e-12) ++within;
    }
    if (gl.json_out) {
      json row = {{"u", u}, {"v", v}, {"estimate", est}};
      if (exact) row["exact"] = *exact;
      rows.push_back(row);
    } else {
      std::cout << u << ',' << v << ',' << est;
      if (exact) std::cout << ',' << *exact;
      std::cout << '\n';
    }
  }
  bool ok = true;
  double frac = pairs.empty() ? 1.0 : static_cast<double>(within) / pairs.size();
  if (a.check) ok = frac >= 0.99;
  if (gl.json_out) {
    json r = {{"eps", a.eps},
              {"rows", sc_er_sketch_rows(skp.get())},
              {"copies", sc_er_sketch_copies(skp.get())},
              {"pairs", rows}};
    if (a.check) r["check"] = {{"fraction_within_eps", frac}, {"pass", ok}};
    std::cout << r.dump(2) << "\n";
  } else if (a.check) {
    std::cerr << "within (1+-" << a.eps << "): " << frac * 100.0 << "% of "
              << pairs.size() << " pairs" << (ok ? "" : " (below 99%)") << "\n";
  }
  return ok;
}

struct OracleArgs {
  std::string which;
  std::string graph;
  double alpha = 1.0;
  std::string pairs;
};

bool cmd_oracle(const Globals& gl, const OracleArgs& a) {
  auto g = load(a.graph, false);
  const int indent = gl.json_out ? 2 : -1;
  if (a.which == "mincut") {
    std::cout << oracle_mincut(g.get()).dump(indent) << "\n";
  } else if (a.which == "cut-family") {
    char* out = nullptr;
    check(sc_oracle_cut_family(g.get(), a.alpha, &out), "oracle cut-family");
    std::cout << json::parse(take(out)).dump(indent) << "\n";
  } else if (a.which == "leverage") {
    char* out = nullptr;
    check(sc_oracle_leverage(g.get(), &out), "oracle leverage");
    json r = json::parse(take(out));
    if (gl.json_out) {
      std::cout << r.dump(2) << "\n";
    } else {
      std::cout << "edge,u,v,weight,leverage\n";
      const auto& lev = r["leverage"];
      for (std::size_t i = 0; i < lev.size(); ++i) {
        std::uint32_t u = 0;
        std::uint32_t v = 0;
        double w = 0.0;
        check(sc_graph_edge(g.get(), i, &u, &v, &w), "edge");
        std::cout << i << ',' << u << ',' << v << ',' << w << ',' << lev[i].get<double>()
                  << '\n';
      }
    }
  } else {
    const std::size_t n = sc_graph_n(g.get());
    auto pairs = a.pairs.empty() ? all_pairs(n) : read_pairs(a.pairs);
    check_range(pairs, n);
    auto matrix = oracle_matrix(g.get());
    json rows = json::array();
    if (!gl.json_out) std::cout << "u,v,resistance\n";
    for (auto [u, v] : pairs) {
      double r = matrix[std::size_t{u} * n + v];
      if (gl.json_out) {
        rows.push_back({{"u", u}, {"v", v}, {"resistance", r}});
      } else {
        std::cout << u << ',' << v << ',' << r << '\n';
      }
    }
    if (gl.json_out) std::cout << json{{"pairs", rows}}.dump(2) << "\n";
  }
  return true;
}

struct GenArgs {
  std::string kind;
  std::string params;
  std::vector<std::string> kv;
  std::string out;
  std::string manifest;
  std::string truth;
  std::string corpus_dir;
  std::string corpus_entries;
  bool check = false;
};

bool cmd_gen(const Globals& gl, const GenArgs& a) {
  if (!a.corpus_dir.empty()) {
    std::string entries_json;
    if (a.corpus_entries.empty()) {
      json entries = json::array();
      for (const char* k : {"gnp", "dumbbell", "cycle", "planted-bisection",
                            "kedge-layered", "hamiltonian-union"}) {
        entries.push_back({{"kind", k}, {"params", json::object()}, {"seed", gl.seed}});
      }
      entries_json = entries.dump();
    } else {
      std::ifstream in(a.corpus_entries);
      if (!in) throw ApiFailure{SC_IO, "cannot read " + a.corpus_entries};
      std::stringstream ss;
      ss << in.rdbuf();
      entries_json = ss.str();
    }
    check(sc_gen_corpus(entries_json.c_str(), a.corpus_dir.c_str()), "gen corpus");
    if (!gl.json_out) std::cerr << "wrote corpus to " << a.corpus_dir << "\n";
    return true;
  }
  if (a.kind.empty()) {
    throw ApiFailure{SC_INVALID_ARGUMENT, "gen needs a kind or --corpus"};
  }
  std::string params = params_from(a.params, a.kv).dump();
  sc_graph* g = nullptr;
  json info;
  const bool hard = a.kind.rfind("hard-", 0) == 0;
  if (hard) {
    char* truth = nullptr;
    check(sc_gen_hard(a.kind.c_str(), params.c_str(), gl.seed, &g, &truth), "gen");
    info = json::parse(take(truth));
  } else {
    char* manifest = nullptr;
    check(sc_gen(a.kind.c_str(), params.c_str(), gl.seed, &g, &manifest), "gen");
    info = json::parse(take(manifest));
  }
  GraphPtr gp(g);
  bool ok = true;
  if (a.check) {
    json o = oracle_mincut(gp.get());
    json c = {{"oracle_value", o["value"]}};
    if (hard) {
      ok = std::abs(o["value"].get<double>() - info["expected_min_cut"].get<double>()) < 1e-9;
      c["expected_min_cut"] = info["expected_min_cut"];
    }
    c["pass"] = ok;
    info["check"] = c;
  }
  if (a.out.empty()) {
    char* text = nullptr;
    check(sc_graph_format(gp.get(), &text), "formatting graph");
    std::cout << take(text);
  } else {
    check(sc_graph_write_file(gp.get(), a.out.c_str()), "writing graph");
  }
  const std::string& side = hard ? a.truth : a.manifest;
  if (!side.empty()) write_text(side, info.dump(2) + "\n");
  if (gl.json_out || (a.check && side.empty())) std::cerr << info.dump(2) << "\n";
  return ok;
}

struct AcceptArgs {
  std::vector<int> only;
  std::string report;
};

void progress_to_stderr(const char* line, void*) { std::cerr << line << "\n"; }

bool cmd_accept(const Globals& gl, const AcceptArgs& a) {
  char* out = nullptr;
  int all_pass = 0;
  check(sc_accept(a.only.empty() ? nullptr : a.only.data(), a.only.size(), gl.seed,
                  progress_to_stderr, nullptr, &out, &all_pass),
        "accept");
  json r = json::parse(take(out));
  if (!a.report.empty()) write_text(a.report, r.dump(2) + "\n");
  if (gl.json_out) {
    std::cout << r.dump(2) << "\n";
  } else {
    for (const auto& c : r["criteria"]) {
      std::printf("%s  %d  %-28s %s\n", c["pass"].get<bool>() ? "PASS" : "FAIL",
                  c["id"].get<int>(), c["name"].get<std::string>().c_str(),
                  c["summary"].get<std::string>().c_str());
    }
  }
  return all_pass != 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming cut sparsification, minimum cuts and effective resistances"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sc_version()));

  Globals gl;
  std::uint64_t shuffle_seed = 0;
  auto* shuffle_opt = app.add_option("--shuffle", shuffle_seed,
                                     "Stream edges in the random order drawn from this seed");
  app.add_option("--seed", gl.seed, "Random seed")->capture_default_str();
  app.add_option("--space-log", gl.space_log, "Write the space-meter series as CSV");
  app.add_flag("--json", gl.json_out, "Machine-readable output");
  app.fallthrough();

  SparsifyArgs sp;
  auto* sparsify = app.add_subcommand("sparsify", "Stream a graph through a sparsifier");
  sparsify->add_option("graph", sp.graph, "Graph file")->required();
  sparsify->add_option("--kind", sp.kind, "forall or foreach")
      ->check(CLI::IsMember({"forall", "foreach"}))
      ->capture_default_str();
  sparsify->add_option("--eps", sp.eps, "Accuracy")->capture_default_str();
  sparsify->add_flag("--offline", sp.offline, "Run the reducer once instead of streaming");
  sparsify->add_option("-o,--out", sp.out, "Write the sparsifier graph here");
  sparsify->add_option("--meta", sp.meta, "Write metadata JSON here");

  MinCutArgs mc;
  auto* mincut = app.add_subcommand("mincut", "One-pass approximate minimum cut");
  mincut->add_option("graph", mc.graph, "Graph file")->required();
  mincut->add_option("--eps", mc.eps, "Accuracy")->capture_default_str();
  mincut->add_option("--alpha-c", mc.alpha_c, "alpha = 1 + C/ln n (0 keeps the default)");
  mincut->add_option("--reps", mc.reps, "Contraction repetitions (0 = default)");
  mincut->add_flag("--simple", mc.simple, "Coarse variant with 1.5-approximate candidates");
  mincut->add_flag("--check", mc.check, "Compare against the exact oracle");

  RandomOrderArgs ro;
  auto* random_order = app.add_subcommand(
      "mincut-random-order", "Exact minimum cut of a simple graph in a random-order stream");
  random_order->add_option("graph", ro.graph, "Graph file")->required();
  random_order->add_option("--c-thresh", ro.c_thresh, "Freeze threshold factor (0 = default)");
  random_order->add_option("--reps", ro.reps, "Contraction repetitions (0 = default)");
  random_order->add_flag("--check", ro.check, "Compare against the exact oracle");

  EffresArgs er;
  auto* effres = app.add_subcommand("effres", "Effective-resistance estimates from a sketch");
  effres->add_option("graph", er.graph, "Graph file")->required();
  effres->add_option("--eps", er.eps, "Accuracy")->capture_default_str();
  auto* pairs_opt = effres->add_option("--pairs", er.pairs, "File of 'u v' lines");
  effres->add_flag("--all", er.all, "Every vertex pair (default)")->excludes(pairs_opt);
  effres->add_flag("--strict", er.strict, "Independent sparsifier per copy");
  effres->add_flag("--check", er.check, "Compare against the dense oracle");

  OracleArgs orc;
  auto* oracle = app.add_subcommand("oracle", "Exact reference computations");
  oracle->add_option("which", orc.which, "mincut, cut-family, effres or leverage")
      ->required()
      ->check(CLI::IsMember({"mincut", "cut-family", "effres", "leverage"}));
  oracle->add_option("graph", orc.graph, "Graph file")->required();
  oracle->add_option("--alpha", orc.alpha, "cut-family: approximation factor")
      ->capture_default_str();
  oracle->add_option("--pairs", orc.pairs, "effres: file of 'u v' lines");

  GenArgs gn;
  auto* gen = app.add_subcommand("gen", "Generate graphs and hard instances");
  gen->add_option("kind", gn.kind,
                  "gnp, dumbbell, cycle, planted-bisection, kedge-layered, "
                  "hamiltonian-union, hard-exact or hard-approx");
  gen->add_option("--params", gn.params, "Parameters as a JSON object");
  gen->add_option("-p,--param", gn.kv, "Parameter as key=value (repeatable)");
  gen->add_option("-o,--out", gn.out, "Write the graph here (default stdout)");
  gen->add_option("--manifest", gn.manifest, "Write the manifest JSON here");
  gen->add_option("--truth", gn.truth, "Hard instances: write the ground truth JSON here");
  gen->add_option("--corpus", gn.corpus_dir, "Write a corpus into this directory");
  gen->add_option("--corpus-entries", gn.corpus_entries,
                  "JSON array of {kind, params, seed} for --corpus");
  gen->add_flag("--check", gn.check, "Compare hard-instance truth against the oracle");

  AcceptArgs ac;
  auto* accept = app.add_subcommand("accept", "Run the acceptance suite");
  accept->add_option("--only", ac.only, "Criterion ids to run")
      ->delimiter(',')
      ->check(CLI::Range(1, 9));
  accept->add_option("--report", ac.report, "Write the JSON report here");

  CLI11_PARSE(app, argc, argv);
  if (shuffle_opt->count() > 0) gl.shuffle = shuffle_seed;

  try {
    bool ok = true;
    if (*sparsify) ok = cmd_sparsify(gl, sp);
    if (*mincut) ok = cmd_mincut(gl, mc);
    if (*random_order) ok = cmd_random_order(gl, ro);
    if (*effres) ok = cmd_effres(gl, er);
    if (*oracle) ok = cmd_oracle(gl, orc);
    if (*gen) ok = cmd_gen(gl, gn);
    if (*accept) ok = cmd_accept(gl, ac);
    return ok ? 0 : 1;
  } catch (const ApiFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  }
}
