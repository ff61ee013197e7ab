#include "leadsel/graph_suite.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <utility>

#include "leadsel/error.hpp"

namespace leadsel {

namespace {

bool mask_connected(int n, const std::vector<std::pair<int, int>>& pairs, std::uint32_t mask) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (std::size_t b = 0; b < pairs.size(); ++b) {
    if (!(mask >> b & 1U)) continue;
    const int a = find(pairs[b].first);
    const int c = find(pairs[b].second);
    if (a != c) {
      parent[a] = c;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

std::vector<Graph> enumerate_connected_graphs(int n) {
  if (n < 2 || n > 7) {
    throw Error(Errc::invalid_argument, "graph enumeration supports 2 <= n <= 7");
  }
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      index[i][j] = index[j][i] = static_cast<int>(pairs.size());
      pairs.emplace_back(i, j);
    }
  }

  // bit b of a mask maps to bit permuted_bit[p][b] under relabeling p
  std::vector<std::vector<int>> permuted_bit;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> map(pairs.size());
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      map[b] = index[perm[pairs[b].first]][perm[pairs[b].second]];
    }
    permuted_bit.push_back(std::move(map));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Graph> out;
  const std::uint32_t total = 1U << pairs.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (static_cast<int>(std::popcount(mask)) < n - 1) continue;
    if (!mask_connected(n, pairs, mask)) continue;
    bool canonical = true;
    for (const auto& map : permuted_bit) {
      std::uint32_t image = 0;
      for (std::size_t b = 0; b < pairs.size(); ++b) {
        if (mask >> b & 1U) image |= 1U << map[b];
      }
      if (image < mask) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (mask >> b & 1U) edges.push_back({pairs[b].first, pairs[b].second, 1.0});
    }
    out.push_back(Graph::from_edges(n, std::move(edges)));
  }
  return out;
}

std::vector<NamedGraph> random_connected_suite(int count, int min_n, int max_n,
                                               std::uint64_t seed) {
  if (min_n < 2 || max_n < min_n || count < 0) {
    throw Error(Errc::invalid_argument, "bad random suite parameters");
  }
  std::mt19937_64 rng(seed);
  std::vector<NamedGraph> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const int n = min_n + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - min_n + 1));
    const double p = 0.25 + 0.5 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    const std::uint64_t graph_seed = rng();
    out.push_back({"random-" + std::to_string(i) + "-n" + std::to_string(n),
                   erdos_renyi(n, p, graph_seed)});
  }
  return out;
}

std::vector<NamedGraph> builtin_suite(const std::string& name, std::uint64_t seed) {
  std::vector<NamedGraph> out;
  const auto add_all = [&out](int n) {
    int idx = 0;
    for (Graph& g : enumerate_connected_graphs(n)) {
      out.push_back({"connected-n" + std::to_string(n) + "-" + std::to_string(idx++),
                     std::move(g)});
    }
  };
  if (name == "small") {
    add_all(4);
    add_all(5);
  } else if (name == "random") {
    out = random_connected_suite(50, 4, 12, seed);
  } else if (name == "full") {
    add_all(4);
    add_all(5);
    add_all(6);
    for (NamedGraph& g : random_connected_suite(50, 4, 12, seed)) out.push_back(std::move(g));
  } else {
    throw Error(Errc::invalid_argument, "unknown suite '" + name + "' (small|random|full)");
  }
  return out;
}

}  // namespace leadsel
