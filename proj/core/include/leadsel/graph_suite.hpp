#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leadsel/graph.hpp"

namespace leadsel {

struct NamedGraph {
  std::string name;
  Graph graph;
};

/// Every connected simple graph on n nodes, one representative per
/// isomorphism class (2 <= n <= 7).
///
/// Enumeration: all 2^(n(n-1)/2) edge masks over the lexicographic pair order
/// are scanned; a mask is kept iff it is connected and it is the minimum of its
/// orbit under all n! relabelings. Output is in increasing mask order, so the
/// result is fully deterministic. Counts: n=4 -> 6, n=5 -> 21, n=6 -> 112.
std::vector<Graph> enumerate_connected_graphs(int n);

/// `count` connected G(n, p) graphs with n drawn uniformly from
/// [min_n, max_n] and p from [0.25, 0.75], reproducible from `seed`.
std::vector<NamedGraph> random_connected_suite(int count, int min_n, int max_n,
                                               std::uint64_t seed);

/// Named graph suites shared by the CLI and the acceptance tests.
///   "small"  : all connected graphs on 4-5 nodes
///   "random" : 50 seeded random connected graphs, 4 <= n <= 12
///   "full"   : all connected graphs on 4-6 nodes followed by "random"
std::vector<NamedGraph> builtin_suite(const std::string& name, std::uint64_t seed = 2024);

}  // namespace leadsel
