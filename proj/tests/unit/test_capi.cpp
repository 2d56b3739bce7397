#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "streamcut/streamcut.h"

using json = nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  sc_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status strings and null arguments") {
  CHECK(std::string(sc_status_string(SC_OK)) == "ok");
  CHECK(std::strlen(sc_version()) > 0);
  sc_graph* g = nullptr;
  CHECK(sc_graph_read_file(nullptr, 0, &g) == SC_INVALID_ARGUMENT);
  CHECK(std::strlen(sc_last_error()) > 0);
  CHECK(sc_graph_n(nullptr) == 0);
  sc_graph_free(nullptr);
  sc_string_free(nullptr);
}

TEST_CASE("graph handles") {
  sc_graph* g = nullptr;
  REQUIRE(sc_graph_new(4, 0, &g) == SC_OK);
  CHECK(sc_graph_add_edge(g, 0, 1, 1.0) == SC_OK);
  CHECK(sc_graph_add_edge(g, 1, 2, 2.0) == SC_OK);
  CHECK(sc_graph_add_edge(g, 2, 3, 3.0) == SC_OK);
  CHECK(sc_graph_add_edge(g, 3, 3, 1.0) == SC_INVALID_ARGUMENT);
  CHECK(sc_graph_m(g) == 3);
  CHECK_FALSE(sc_graph_is_simple(g));
  uint32_t side[] = {0, 1};
  double v = 0.0;
  CHECK(sc_graph_cut_value(g, side, 2, &v) == SC_OK);
  CHECK(v == 2.0);
  uint32_t u = 0, w = 0;
  double wt = 0.0;
  CHECK(sc_graph_edge(g, 2, &u, &w, &wt) == SC_OK);
  CHECK((u == 2 && w == 3 && wt == 3.0));
  CHECK(sc_graph_edge(g, 3, &u, &w, &wt) == SC_INVALID_ARGUMENT);
  char* text = nullptr;
  REQUIRE(sc_graph_format(g, &text) == SC_OK);
  sc_graph* h = nullptr;
  CHECK(sc_graph_parse(text, 0, &h) == SC_OK);
  sc_string_free(text);
  CHECK(sc_graph_m(h) == 3);
  sc_graph_free(h);
  sc_graph_free(g);

  CHECK(sc_graph_parse("2 1\n0 q\n", 0, &h) == SC_PARSE);
  CHECK(sc_graph_read_file("/nonexistent/x.txt", 0, &h) == SC_IO);
}

TEST_CASE("generation, oracle and min cut") {
  sc_graph* g = nullptr;
  char* manifest = nullptr;
  REQUIRE(sc_gen("dumbbell", R"({"k": 8})", 1, &g, &manifest) == SC_OK);
  auto m = json::parse(take(manifest));
  CHECK(m["n"] == 16);
  char* out = nullptr;
  REQUIRE(sc_oracle_mincut(g, &out) == SC_OK);
  CHECK(json::parse(take(out))["value"] == 1.0);

  sc_run_options opts;
  sc_run_options_init(&opts);
  opts.seed = 4;
  opts.shuffle = 1;
  opts.shuffle_seed = 2;
  REQUIRE(sc_mincut(g, 0.2, &opts, &out) == SC_OK);
  auto r = json::parse(take(out));
  CHECK(std::abs(r["value"].get<double>() - 1.0) <= 0.2);
  CHECK(r["crossing_edges"].size() == 1);

  REQUIRE(sc_mincut_random_order(g, &opts, &out) == SC_OK);
  r = json::parse(take(out));
  CHECK(r["value"] == 1.0);
  CHECK(r.contains("rounding_unverified"));

  REQUIRE(sc_oracle_cut_family(g, 1.0, &out) == SC_OK);
  CHECK(json::parse(take(out))["cuts"].size() == 1);

  CHECK(sc_gen("nope", "", 1, &g, nullptr) == SC_INVALID_ARGUMENT);
  sc_graph_free(g);
}

TEST_CASE("sparsify and effective resistance") {
  sc_graph* g = nullptr;
  REQUIRE(sc_gen("gnp", R"({"n": 30, "p": 0.4})", 3, &g, nullptr) == SC_OK);
  sc_graph* h = nullptr;
  char* meta = nullptr;
  CHECK(sc_sparsify(g, "sideways", 0.5, 1, nullptr, &h, &meta) == SC_INVALID_ARGUMENT);
  CHECK(sc_sparsify(g, "forall", 1.5, 1, nullptr, &h, &meta) == SC_INVALID_ARGUMENT);
  REQUIRE(sc_sparsify(g, "foreach", 0.5, 1, nullptr, &h, &meta) == SC_OK);
  auto j = json::parse(take(meta));
  CHECK(j["source_edge_ids"].size() == sc_graph_m(h));
  CHECK(j.contains("space_words_peak"));
  sc_graph_free(h);

  sc_er_sketch* sk = nullptr;
  REQUIRE(sc_er_sketch_build(g, 0.3, 0, nullptr, &sk) == SC_OK);
  CHECK(sc_er_sketch_copies(sk) == 9);
  CHECK(sc_er_sketch_rows(sk) > 0);
  std::vector<double> exact(30 * 30);
  REQUIRE(sc_oracle_effres_matrix(g, exact.data(), exact.size()) == SC_OK);
  CHECK(sc_oracle_effres_matrix(g, exact.data(), 10) == SC_INVALID_ARGUMENT);
  double est = 0.0, one = 0.0;
  REQUIRE(sc_er_sketch_query(sk, 2, 5, &est) == SC_OK);
  REQUIRE(sc_oracle_effres(g, 2, 5, &one) == SC_OK);
  CHECK(one == doctest::Approx(exact[2 * 30 + 5]));
  CHECK(std::abs(est - one) <= 0.3 * one);
  CHECK(sc_er_sketch_query(sk, 2, 50, &est) == SC_INVALID_ARGUMENT);
  sc_er_sketch_free(sk);

  char* lev = nullptr;
  REQUIRE(sc_oracle_leverage(g, &lev) == SC_OK);
  CHECK(json::parse(take(lev))["sum"].get<double>() == doctest::Approx(29.0));
  sc_graph_free(g);
}

TEST_CASE("hard instances") {
  sc_graph* g = nullptr;
  char* truth = nullptr;
  REQUIRE(sc_gen_hard("hard-exact", R"({"n": 4, "index": 0, "bits": "111111"})", 1, &g,
                      &truth) == SC_OK);
  auto t = json::parse(take(truth));
  CHECK(t["expected_min_cut"] == 4.0);
  CHECK(sc_graph_n(g) == 29);
  sc_graph_free(g);
  CHECK(sc_gen_hard("hard-exact", R"({"n": 4, "bits": "000000"})", 1, &g, &truth) ==
        SC_DOMAIN);
  CHECK(sc_gen_hard("hard-exact", R"({"n": 4, "bits": "01x"})", 1, &g, &truth) == SC_PARSE);
  CHECK(sc_gen_hard("hard-approx", R"({"eps": 0.1, "bits": "110110", "index": 0})", 1, &g,
                    &truth) == SC_OK);
  t = json::parse(take(truth));
  CHECK(t["eps"].get<double>() == doctest::Approx(1.0 / 12.0));
  sc_graph_free(g);
}

TEST_CASE("acceptance entry point validates ids") {
  int ids[] = {0};
  char* out = nullptr;
  int pass = 0;
  CHECK(sc_accept(ids, 1, 1, nullptr, nullptr, &out, &pass) == SC_INVALID_ARGUMENT);
}
