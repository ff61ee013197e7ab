#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "leadsel/leader_set.hpp"
#include "leadsel/spectral.hpp"

namespace leadsel {

/// Intermediate quantities of the joint-centrality expression
///   rho = n / (K_f/n + n det(G) det(L+_S) + tr(Q)/2 - 1^T Q e_pivot).
struct JointCentralityTerms {
  double kirchhoff_over_n = 0.0;
  double det_G = 1.0;        ///< det of the inverted pivot-reduced block (1 when m = 1)
  double det_LplusS = 0.0;   ///< det of L^+ restricted to the set
  double trace_Q = 0.0;      ///< tr(Q), Q = Gbar * Gamma_S
  double q_pivot = 0.0;      ///< 1_m^T Q e_pivot
  /// n/rho re-assembled term by term from the explicit double sum over all
  /// n nodes (the sigma-free bracket); agrees with n/rho up to rounding.
  double explicit_sum_total = 0.0;
};

struct JointCentralityResult {
  double rho = 0.0;
  /// (sigma^2/2)(n/rho)
  double implied_total_error = 0.0;
  JointCentralityTerms terms;
  NodeId pivot_used = 0;
  double sigma = 1.0;
  std::optional<double> gain;  ///< set for the k-dependent two-leader variant
  /// Conditioning and cross-check notes; empty for well-posed inputs.
  std::vector<std::string> warnings;
};

/// Entry (i,j) = L+_ij - L+_{i,l1} - L+_{j,l1} + L+_{l1,l1}.
Eigen::MatrixXd n_inverse_entries(const GraphKernels& k, NodeId pivot);
/// Same matrix from resistances: (r_{i,l1} + r_{j,l1} - r_ij) / 2.
Eigen::MatrixXd n_inverse_entries_from_resistance(const Eigen::MatrixXd& resistance,
                                                  NodeId pivot);

/// Joint centrality of a set of noise-free leaders (1 <= m < n). The value
/// does not depend on which member is used as pivot.
JointCentralityResult joint_centrality(const GraphKernels& k, std::span<const NodeId> set,
                                       NodeId pivot, double sigma = 1.0);
/// Uses set.pivot().
JointCentralityResult joint_centrality(const GraphKernels& k, const LeaderSet& set,
                                       double sigma = 1.0);

/// Closed form for two noise-free leaders.
JointCentralityResult joint_centrality_two(const GraphKernels& k, NodeId s1, NodeId s2,
                                           double sigma = 1.0);

/// k-dependent joint centrality of two leaders with finite gain k. Tends to
/// joint_centrality_two as k grows.
JointCentralityResult joint_centrality_two_gain(const GraphKernels& k, NodeId s1, NodeId s2,
                                                double gain, double sigma = 1.0);

/// Total error with one leader: (n sigma^2/2)(1/c_s), plus (n sigma^2/2)/k
/// under finite gain.
double single_leader_error(const GraphKernels& k, NodeId s, const LeaderMode& mode,
                           double sigma = 1.0);

inline double total_error_from_rho(int n, double rho, double sigma = 1.0) {
  return 0.5 * sigma * sigma * static_cast<double>(n) / rho;
}

}  // namespace leadsel
