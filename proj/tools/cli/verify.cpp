#include "cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "leadsel/joint_centrality.hpp"
#include "leadsel/selection.hpp"
#include "leadsel/spectral.hpp"

namespace leadsel::cli {

namespace {

void record(IdentitySummary& s, double deviation, double tolerance, const std::string& graph,
            std::vector<NodeId> set, std::string mode) {
  if (!(deviation <= tolerance)) {
    ++s.violation_count;
    if (s.violations.size() < IdentitySummary::kMaxReported) {
      s.violations.push_back({graph, std::move(set), std::move(mode), deviation});
    }
  }
}

double relative(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

}  // namespace

void check_identities(const NamedGraph& named, int max_m, const std::vector<double>& gains,
                      double tolerance, IdentitySummary& summary) {
  const Graph& g = named.graph;
  const int n = g.node_count();
  const GraphKernels kernels = compute_kernels(g);
  const ErrorOracle oracle(g);
  ++summary.graphs;

  for (int m = 1; m <= std::min(max_m, n - 1); ++m) {
    std::vector<NodeId> set(m);
    std::iota(set.begin(), set.end(), 0);
    while (true) {
      const double implied = joint_centrality(kernels, set, set.front()).implied_total_error;
      const double dev = relative(implied, oracle.noise_free_total(set));
      summary.max_deviation_noise_free = std::max(summary.max_deviation_noise_free, dev);
      ++summary.sets_checked;
      record(summary, dev, tolerance, named.name, set, "noise-free");

      int i = m - 1;
      while (i >= 0 && set[i] == n - m + i) --i;
      if (i < 0) break;
      ++set[i];
      for (int j = i + 1; j < m; ++j) set[j] = set[j - 1] + 1;
    }
  }

  for (double k : gains) {
    const auto mode = LeaderMode::gain(k);
    const std::string label = "gain k=" + std::to_string(k);
    for (NodeId s = 0; s < n; ++s) {
      const std::vector<NodeId> set{s};
      const double dev =
          relative(single_leader_error(kernels, s, mode), oracle.gain_total(set, k));
      summary.max_deviation_gain = std::max(summary.max_deviation_gain, dev);
      ++summary.gain_checked;
      record(summary, dev, tolerance, named.name, set, label);
    }
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) {
        const std::vector<NodeId> set{a, b};
        const double implied = joint_centrality_two_gain(kernels, a, b, k).implied_total_error;
        const double dev = relative(implied, oracle.gain_total(set, k));
        summary.max_deviation_gain = std::max(summary.max_deviation_gain, dev);
        ++summary.gain_checked;
        record(summary, dev, tolerance, named.name, set, label);
      }
    }
  }
}

}  // namespace leadsel::cli
