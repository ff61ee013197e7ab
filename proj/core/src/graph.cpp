#include "leadsel/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "leadsel/error.hpp"

namespace leadsel {

namespace {

std::string edge_name(NodeId u, NodeId v) {
  return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

void normalize(Edge& e) {
  if (e.u > e.v) std::swap(e.u, e.v);
}

bool connected(int n, const std::vector<std::size_t>& offsets,
               const std::vector<Neighbor>& adjacency) {
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (std::size_t i = offsets[u]; i < offsets[u + 1]; ++i) {
      const NodeId v = adjacency[i].node;
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_int(std::string_view token, long long& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace

Graph Graph::from_edges(int node_count, std::vector<Edge> edges) {
  if (node_count < 1) {
    throw Error(Errc::invalid_argument, "graph needs at least one node");
  }
  for (Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= node_count || e.v >= node_count) {
      throw Error(Errc::node_out_of_range,
                  "edge " + edge_name(e.u, e.v) + " references a node outside 0.." +
                      std::to_string(node_count - 1));
    }
    if (e.u == e.v) {
      throw Error(Errc::self_loop, "self-loop at node " + std::to_string(e.u));
    }
    if (!std::isfinite(e.weight) || e.weight <= 0.0) {
      throw Error(Errc::nonpositive_weight,
                  "edge " + edge_name(e.u, e.v) + " has nonpositive weight " +
                      format_double(e.weight));
    }
    normalize(e);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw Error(Errc::duplicate_edge,
                  "duplicate edge " + edge_name(edges[i].u, edges[i].v));
    }
  }

  Graph g;
  g.n_ = node_count;
  g.offsets_.assign(node_count + 1, 0);
  for (const Edge& e : edges) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (int i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.adjacency_[cursor[e.u]++] = Neighbor{e.v, e.weight};
    g.adjacency_[cursor[e.v]++] = Neighbor{e.u, e.weight};
  }
  for (int u = 0; u < node_count; ++u) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  if (!connected(node_count, g.offsets_, g.adjacency_)) {
    throw Error(Errc::disconnected, "graph on " + std::to_string(node_count) +
                                        " nodes is not connected");
  }
  g.edges_ = std::move(edges);
  return g;
}

std::span<const Neighbor> Graph::neighbors(NodeId u) const {
  return {adjacency_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

double Graph::weighted_degree(NodeId u) const {
  double d = 0.0;
  for (const Neighbor& nb : neighbors(u)) d += nb.weight;
  return d;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto nbs = neighbors(u);
  return std::binary_search(nbs.begin(), nbs.end(), Neighbor{v, 0.0},
                            [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
}

Graph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::set<std::pair<NodeId, NodeId>> seen;
  std::optional<long long> declared_n;
  std::size_t declared_line = 0;
  long long max_id = -1;
  std::vector<std::size_t> edge_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == 'n') {
      std::string_view rest = trim(line.substr(1));
      long long value = 0;
      if (rest.empty() || rest.front() != '=' || !parse_int(trim(rest.substr(1)), value) ||
          value < 1) {
        throw Error(Errc::malformed_line, "bad node-count header '" + std::string(line) + "'",
                    line_no);
      }
      if (declared_n) {
        throw Error(Errc::malformed_line, "node-count header repeated", line_no);
      }
      declared_n = value;
      declared_line = line_no;
      continue;
    }

    const auto tokens = split_ws(line);
    if (tokens.size() != 2 && tokens.size() != 3) {
      throw Error(Errc::malformed_line,
                  "expected 'u v' or 'u v w', got '" + std::string(line) + "'", line_no);
    }
    long long u = 0;
    long long v = 0;
    if (!parse_int(tokens[0], u) || !parse_int(tokens[1], v) || u < 0 || v < 0 ||
        u > 100'000'000 || v > 100'000'000) {
      throw Error(Errc::malformed_line,
                  "node ids must be nonnegative integers in '" + std::string(line) + "'",
                  line_no);
    }
    double w = 1.0;
    if (tokens.size() == 3) {
      if (!parse_double(tokens[2], w) || std::isnan(w)) {
        throw Error(Errc::malformed_line, "bad weight '" + std::string(tokens[2]) + "'",
                    line_no);
      }
      if (!std::isfinite(w) || w <= 0.0) {
        throw Error(Errc::nonpositive_weight,
                    "edge " + edge_name(static_cast<NodeId>(u), static_cast<NodeId>(v)) +
                        " has nonpositive weight " + std::string(tokens[2]),
                    line_no);
      }
    }
    if (u == v) {
      throw Error(Errc::self_loop, "self-loop at node " + std::to_string(u), line_no);
    }
    const std::pair<NodeId, NodeId> key{static_cast<NodeId>(std::min(u, v)), static_cast<NodeId>(std::max(u, v))};
    if (!seen.insert(key).second) {
      throw Error(Errc::duplicate_edge,
                  "duplicate edge " + edge_name(key.first, key.second), line_no);
    }
    max_id = std::max({max_id, u, v});
    edges.push_back(Edge{static_cast<NodeId>(u), static_cast<NodeId>(v), w});
    edge_lines.push_back(line_no);
  }

  long long n = max_id + 1;
  if (declared_n) {
    if (max_id >= *declared_n) {
      const auto it = std::find_if(edges.begin(), edges.end(), [&](const Edge& e) {
        return e.u >= *declared_n || e.v >= *declared_n;
      });
      throw Error(Errc::node_out_of_range,
                  "edge " + edge_name(it->u, it->v) + " exceeds declared n=" +
                      std::to_string(*declared_n),
                  edge_lines[static_cast<std::size_t>(it - edges.begin())]);
    }
    n = *declared_n;
  }
  if (n < 1) {
    throw Error(Errc::invalid_argument, "edge list contains no edges");
  }
  if (n > 100'000'000) {
    throw Error(Errc::invalid_argument, "node count too large", declared_line);
  }
  return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::invalid_argument, "cannot open graph file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_edge_list(ss.str());
}

std::string serialize_edge_list(const Graph& g) {
  std::string out = "n=" + std::to_string(g.node_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += ' ';
    out += format_double(e.weight);
    out += '\n';
  }
  return out;
}

Eigen::MatrixXd laplacian(const Graph& g) {
  const int n = g.node_count();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    L(e.u, e.v) = -e.weight;
    L(e.v, e.u) = -e.weight;
  }
  for (int i = 0; i < n; ++i) {
    double d = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) d -= L(i, j);
    }
    L(i, i) = d;
  }
  return L;
}

Graph cycle_graph(int n) {
  if (n < 3) throw Error(Errc::invalid_argument, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return Graph::from_edges(n, std::move(edges));
}

Graph path_graph(int n) {
  if (n < 2) throw Error(Errc::invalid_argument, "path needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph::from_edges(n, std::move(edges));
}

Graph complete_graph(int n) {
  if (n < 2) throw Error(Errc::invalid_argument, "complete graph needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph erdos_renyi(int n, double p, std::uint64_t seed, int max_attempts) {
  if (n < 2) throw Error(Errc::invalid_argument, "erdos_renyi needs n >= 2");
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(Errc::invalid_argument, "erdos_renyi needs 0 < p <= 1");
  }
  std::mt19937_64 rng(seed);
  // 53 random bits -> [0, 1)
  const auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (uniform() < p) edges.push_back({i, j, 1.0});
      }
    }
    try {
      return Graph::from_edges(n, std::move(edges));
    } catch (const Error& e) {
      if (e.code() != Errc::disconnected) throw;
    }
  }
  throw Error(Errc::budget_exceeded, "erdos_renyi(" + std::to_string(n) + ", " +
                                         format_double(p) + ") stayed disconnected after " +
                                         std::to_string(max_attempts) + " draws");
}

bool is_cycle_graph(const Graph& g) {
  const int n = g.node_count();
  if (n < 3 || g.edge_count() != static_cast<std::size_t>(n)) return false;
  for (int i = 0; i < n; ++i) {
    if (!g.has_edge(i, (i + 1) % n)) return false;
  }
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [](const Edge& e) { return e.weight == 1.0; });
}

bool is_path_graph(const Graph& g) {
  const int n = g.node_count();
  if (n < 2 || g.edge_count() != static_cast<std::size_t>(n - 1)) return false;
  for (int i = 0; i + 1 < n; ++i) {
    if (!g.has_edge(i, i + 1)) return false;
  }
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [](const Edge& e) { return e.weight == 1.0; });
}

}  // namespace leadsel
