#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leadsel/graph_suite.hpp"

namespace leadsel::cli {

struct IdentityViolation {
  std::string graph;
  std::vector<NodeId> set;
  std::string mode;  ///< "noise-free" or "gain k=<k>"
  double deviation = 0.0;
};

struct IdentitySummary {
  std::uint64_t graphs = 0;
  std::uint64_t sets_checked = 0;
  std::uint64_t gain_checked = 0;
  double max_deviation_noise_free = 0.0;
  double max_deviation_gain = 0.0;
  std::uint64_t violation_count = 0;
  /// First violations only (at most kMaxReported).
  std::vector<IdentityViolation> violations;

  static constexpr std::size_t kMaxReported = 20;
};

/// Compares the centrality-implied total error against the dense trace
/// oracle: every leader set with m <= max_m (noise-free), every single leader
/// and every pair under each gain in `gains`.
void check_identities(const NamedGraph& graph, int max_m, const std::vector<double>& gains,
                      double tolerance, IdentitySummary& summary);

}  // namespace leadsel::cli
