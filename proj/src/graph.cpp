#include "streamcut/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace streamcut {

VertexSet VertexSet::singleton(std::size_t n, Vertex v) {
  VertexSet s(n);
  s.set(v);
  return s;
}

VertexSet VertexSet::from_vertices(std::size_t n, std::span<const Vertex> vs) {
  VertexSet s(n);
  for (Vertex v : vs) {
    require(v < n, ErrorCode::kInvalidArgument, "vertex out of range");
    s.set(v);
  }
  return s;
}

std::size_t VertexSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

VertexSet VertexSet::complement() const {
  VertexSet out(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  if (n_ % 64 != 0 && !out.words_.empty()) {
    out.words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
  return out;
}

std::vector<Vertex> VertexSet::vertices() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<Vertex>(i * 64 + b));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t VertexSet::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

WeightedGraph::WeightedGraph(std::size_t n, GraphMode mode, double weight_cap)
    : n_(n), mode_(mode), weight_cap_(weight_cap), adj_(n) {
  require(n < (std::size_t{1} << 31), ErrorCode::kInvalidArgument,
          "vertex count too large");
}

std::size_t WeightedGraph::add_edge(Vertex u, Vertex v, double w) {
  require(u < n_ && v < n_, ErrorCode::kInvalidArgument,
          "edge endpoint out of range: (" + std::to_string(u) + ", " +
              std::to_string(v) + ") with n = " + std::to_string(n_));
  require(u != v, ErrorCode::kInvalidArgument,
          "self-loop at vertex " + std::to_string(u));
  require(std::isfinite(w) && w > 0.0, ErrorCode::kInvalidArgument,
          "edge weight must be positive");
  require(w <= weight_cap_, ErrorCode::kInvalidArgument,
          "edge weight exceeds configured cap");
  if (mode_ == GraphMode::kSimple) {
    require(w == 1.0, ErrorCode::kInvalidArgument,
            "simple graphs carry unit weights only");
    auto key = pair_key(u, v);
    require(simple_pairs_.insert(key).second, ErrorCode::kInvalidArgument,
            "duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) +
                ") in simple graph");
  }
  if (w != std::floor(w)) integral_ = false;
  auto id = edges_.size();
  edges_.push_back({u, v, w});
  adj_[u].push_back(static_cast<std::uint32_t>(id));
  adj_[v].push_back(static_cast<std::uint32_t>(id));
  return id;
}

bool WeightedGraph::is_simple() const {
  std::vector<std::uint64_t> keys;
  keys.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e.w != 1.0) return false;
    keys.push_back(pair_key(e.u, e.v));
  }
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

double WeightedGraph::total_weight() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.w;
  return s;
}

std::vector<double> WeightedGraph::weighted_degrees() const {
  std::vector<double> d(n_, 0.0);
  for (const auto& e : edges_) {
    d[e.u] += e.w;
    d[e.v] += e.w;
  }
  return d;
}

std::vector<IncidenceRow> WeightedGraph::incidence_rows() const {
  std::vector<IncidenceRow> rows;
  rows.reserve(edges_.size());
  for (const auto& e : edges_) rows.push_back({e.u, e.v, std::sqrt(e.w)});
  return rows;
}

double cut_value(const WeightedGraph& g, const VertexSet& side) {
  require(side.universe() == g.n(), ErrorCode::kInvalidArgument,
          "cut universe does not match graph");
  require(side.proper(), ErrorCode::kDomain,
          "cut side must be a proper nonempty subset");
  double s = 0.0;
  for (const auto& e : g.edges()) {
    if (side.test(e.u) != side.test(e.v)) s += e.w;
  }
  return s;
}

double quadratic_form(const WeightedGraph& g, std::span<const double> x) {
  require(x.size() == g.n(), ErrorCode::kInvalidArgument,
          "vector length does not match vertex count");
  double s = 0.0;
  for (const auto& e : g.edges()) {
    double d = x[e.u] - x[e.v];
    s += e.w * d * d;
  }
  return s;
}

Cut min_degree_cut(const WeightedGraph& g) {
  require(g.n() >= 2, ErrorCode::kInvalidArgument, "need at least 2 vertices");
  auto d = g.weighted_degrees();
  Vertex best = 0;
  for (Vertex v = 1; v < g.n(); ++v) {
    if (d[v] < d[best]) best = v;
  }
  return {VertexSet::singleton(g.n(), best), d[best]};
}

std::size_t connected_components(const WeightedGraph& g,
                                 std::vector<std::uint32_t>& label) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  label.assign(g.n(), kUnset);
  std::vector<Vertex> stack;
  std::uint32_t next = 0;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (auto id : g.incident(x)) {
        Vertex y = g.other(id, x);
        if (label[y] == kUnset) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return next;
}

WeightedGraph read_graph(std::istream& in, GraphMode mode) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      auto pos = out.find_first_not_of(" \t\r");
      if (pos == std::string::npos || out[pos] == '#') continue;
      return true;
    }
    return false;
  };
  require(next_line(line), ErrorCode::kParse, "missing header line 'n m'");
  std::istringstream header(line);
  long long n = -1, m = -1;
  header >> n >> m;
  require(!header.fail() && n >= 0 && m >= 0, ErrorCode::kParse,
          "malformed header line: '" + line + "'");
  WeightedGraph g(static_cast<std::size_t>(n), mode);
  for (long long i = 0; i < m; ++i) {
    require(next_line(line), ErrorCode::kParse,
            "expected " + std::to_string(m) + " edges, found " +
                std::to_string(i));
    std::istringstream ls(line);
    long long u = -1, v = -1;
    ls >> u >> v;
    require(!ls.fail() && u >= 0 && v >= 0, ErrorCode::kParse,
            "malformed edge line: '" + line + "'");
    double w = 1.0;
    if (!(ls >> w)) w = 1.0;
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), w);
  }
  return g;
}

WeightedGraph read_graph_file(const std::string& path, GraphMode mode) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path);
  return read_graph(in, mode);
}

WeightedGraph parse_graph(const std::string& text, GraphMode mode) {
  std::istringstream in(text);
  return read_graph(in, mode);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  bool unit = true;
  for (const auto& e : g.edges()) unit = unit && e.w == 1.0;
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (!unit) out << ' ' << std::setprecision(17) << e.w;
    out << '\n';
  }
}

std::string format_graph(const WeightedGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

}  // namespace streamcut
