#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "streamcut/generators.hpp"
#include "streamcut/oracles.hpp"
#include "support.hpp"

using namespace streamcut;

TEST_CASE("generators are pure functions of their seed") {
  CHECK(format_graph(gen_gnp(20, 0.5, 7)) == format_graph(gen_gnp(20, 0.5, 7)));
  CHECK(format_graph(gen_gnp(20, 0.5, 7)) != format_graph(gen_gnp(20, 0.5, 8)));
  auto a = gen_corpus_entry("planted-bisection", "{}", 3);
  auto b = gen_corpus_entry("planted-bisection", "{}", 3);
  CHECK(format_graph(a.graph) == format_graph(b.graph));
  CHECK(a.name == b.name);
}

TEST_CASE("family shapes") {
  auto d = gen_dumbbell(15);
  CHECK(d.n() == 30);
  CHECK(d.m() == 15 * 14 + 1);
  CHECK(stoer_wagner_min_cut(d).value == 1.0);

  auto c = gen_cycle(16);
  CHECK(c.m() == 16);
  for (double deg : c.weighted_degrees()) CHECK(deg == 2.0);

  auto gnm = gen_gnm(50, 300, 2);
  CHECK(gnm.m() == 300);
  CHECK(gnm.is_simple());

  auto ham = gen_hamiltonian_union(40, 3, 5);
  CHECK(ham.is_simple());
  for (double deg : ham.weighted_degrees()) {
    CHECK(deg >= 2.0);
    CHECK(deg <= 6.0);
  }

  auto pb = gen_planted_bisection(64, 0.4, 5, 9);
  VertexSet half(64);
  for (Vertex v = 0; v < 32; ++v) half.set(v);
  CHECK(cut_value(pb, half) == 5.0);
  CHECK(stoer_wagner_min_cut(pb).value <= 5.0);

  auto kl = gen_kedge_layered(4, 8, 3, 1);
  CHECK(kl.n() == 32);
  CHECK(stoer_wagner_min_cut(kl).value <= 3.0);

  CHECK_CODE(gen_gnp(10, 1.5, 0), ErrorCode::kInvalidArgument);
  CHECK_CODE(gen_cycle(2), ErrorCode::kInvalidArgument);
  CHECK_CODE(gen_gnm(4, 7, 0), ErrorCode::kInvalidArgument);
}

TEST_CASE("planted cut is the minimum in most seeds") {
  int hits = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto e = gen_corpus_entry("planted-bisection", R"({"n": 128})", s);
    VertexSet half(128);
    for (Vertex v = 0; v < 64; ++v) half.set(v);
    hits += stoer_wagner_min_cut(e.graph).value == cut_value(e.graph, half);
  }
  CHECK(hits >= 9);
}

TEST_CASE("corpus entries and files") {
  auto e = gen_corpus_entry("gnp", R"({"n": 12, "p": 0.3})", 4);
  CHECK(e.graph.n() == 12);
  CHECK(nlohmann::json::parse(e.params_json)["p"] == 0.3);
  CHECK_CODE(gen_corpus_entry("nope", "{}", 1), ErrorCode::kInvalidArgument);
  CHECK_CODE(gen_corpus_entry("gnp", "{bad", 1), ErrorCode::kParse);

  auto dir = std::filesystem::temp_directory_path() / "streamcut_corpus_test";
  std::filesystem::remove_all(dir);
  write_corpus(dir.string(), {e, gen_corpus_entry("cycle", "{}", 1)});
  std::ifstream in(dir / "manifest.json");
  REQUIRE(in);
  auto manifest = nlohmann::json::parse(in);
  CHECK(manifest.size() == 2);
  auto back = read_graph_file((dir / (e.name + ".txt")).string());
  CHECK(format_graph(back) == format_graph(e.graph));
  std::filesystem::remove_all(dir);
}

TEST_CASE("triangle indexing") {
  std::vector<std::pair<Vertex, Vertex>> expect{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(triangle_pair(4, i) == expect[i]);
}

TEST_CASE("exact gadget ground truth") {
  std::vector<std::uint8_t> ones(6, 1);
  auto h = gen_hard_exact(4, ones, 2);
  CHECK(h.graph.n() == 29);
  CHECK(h.bit);
  CHECK(h.expected_min_cut == 4.0);
  CHECK(stoer_wagner_min_cut(h.graph).value == 4.0);
  CHECK(h.alice_edges == 6);

  // Pairs (0,2) and (1,3) present; target (0,1) absent.
  std::vector<std::uint8_t> sparse{0, 1, 0, 0, 1, 0};
  auto z = gen_hard_exact(4, sparse, 0);
  CHECK_FALSE(z.bit);
  CHECK(z.expected_min_cut == 1.0);
  CHECK(stoer_wagner_min_cut(z.graph).value == 1.0);

  std::vector<std::uint8_t> none(6, 0);
  CHECK_CODE(gen_hard_exact(4, none, 0), ErrorCode::kDomain);
  CHECK_CODE(gen_hard_exact(4, ones, 6), ErrorCode::kInvalidArgument);

  int checked = 0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto bits = random_bits(15, s);
    try {
      auto r = gen_hard_exact(6, bits, s % 15);
      CHECK(stoer_wagner_min_cut(r.graph).value == r.expected_min_cut);
      CHECK(cut_value(r.graph, r.c1_side) == r.c1_value);
      ++checked;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDomain);
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("approximate gadget ground truth") {
  CHECK(snap_gadget_eps(0.1) == doctest::Approx(1.0 / 12.0));
  CHECK(snap_gadget_eps(0.125) == doctest::Approx(0.125));
  CHECK(hard_approx_bits(1.0 / 12.0, 2) == 6);
  CHECK_CODE(gen_hard_approx(0.125, 2, random_bits(2, 1), 0), ErrorCode::kDomain);
  int checked = 0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    try {
      auto h = gen_hard_approx(1.0 / 12.0, 2, random_bits(6, s), s % 6);
      CHECK(h.graph.n() == 25);
      CHECK(h.clique_size == 9);
      CHECK(h.block_size == 3);
      CHECK(stoer_wagner_min_cut(h.graph).value == h.expected_min_cut);
      CHECK(std::abs(h.c2_value - h.c1_value) == 1.0);
      ++checked;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDomain);
    }
  }
  CHECK(checked >= 10);
}
