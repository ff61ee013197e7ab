#pragma once

#include <span>

#include <Eigen/Core>

#include "leadsel/graph.hpp"
#include "leadsel/leader_set.hpp"

namespace leadsel {

/// Eigendecomposition-derived kernels of a connected graph's Laplacian.
struct GraphKernels {
  int n = 0;
  Eigen::VectorXd eigenvalues;   ///< ascending; eigenvalues[0] is the zero mode
  Eigen::MatrixXd eigenvectors;  ///< orthonormal, column p pairs with eigenvalues[p]
  Eigen::MatrixXd lplus;         ///< L^+
  Eigen::MatrixXd l2plus;        ///< (L^2)^+ = (L^+)^2
  double kirchhoff = 0.0;        ///< K_f = n * trace(L^+)
  double zero_tolerance = 0.0;   ///< n * eps * lambda_max
};

/// Builds L^+ from the nonzero eigenpairs of L. An eigenvalue counts as zero
/// iff it is <= n * eps * lambda_max; exactly one zero eigenvalue is required.
/// Throws Errc::ill_conditioned when lambda_2 falls under the cutoff.
GraphKernels compute_kernels(const Graph& g);

/// Steady-state variances of the tracking dynamics about the signal.
struct ErrorReport {
  double total_error = 0.0;
  Eigen::VectorXd per_node_variance;
  double sigma = 1.0;
};

/// Dense factorization oracle for the steady-state error of a leader set.
///
/// Holds the Laplacian of one graph so that many leader sets can be scored
/// without rebuilding it. Independent of the pseudoinverse machinery: it only
/// ever inverts principal submatrices of L (noise-free) or L + K (gain).
class ErrorOracle {
 public:
  explicit ErrorOracle(const Graph& g);

  int node_count() const noexcept { return static_cast<int>(laplacian_.rows()); }
  const Eigen::MatrixXd& laplacian() const noexcept { return laplacian_; }

  /// (sigma^2/2) trace(inv(L_F)), L_F the follower block of L.
  double noise_free_total(std::span<const NodeId> leaders, double sigma = 1.0) const;
  /// (sigma^2/2) trace(inv(L + K)), K = k on leader diagonal entries.
  double gain_total(std::span<const NodeId> leaders, double k, double sigma = 1.0) const;
  double total(std::span<const NodeId> leaders, const LeaderMode& mode, double sigma = 1.0) const;

  ErrorReport noise_free_report(std::span<const NodeId> leaders, double sigma = 1.0) const;
  ErrorReport gain_report(std::span<const NodeId> leaders, double k, double sigma = 1.0) const;

 private:
  Eigen::MatrixXd laplacian_;
};

ErrorReport oracle_error_noise_free(const Graph& g, const LeaderSet& leaders, double sigma = 1.0);
ErrorReport oracle_error_gain(const Graph& g, const LeaderSet& leaders, double sigma = 1.0);
/// Dispatches on leaders.mode().
ErrorReport oracle_error(const Graph& g, const LeaderSet& leaders, double sigma = 1.0);

/// Per-node variance sigma^2 * sum_p |v_i^(p)|^2 / (2 lambda_p) from the
/// eigenpairs of M = L + K. In noise-free mode the eigenpairs of the follower
/// block are used and leader entries are exactly zero.
Eigen::VectorXd per_node_variance_spectral(const Graph& g, const LeaderSet& leaders,
                                           double sigma = 1.0);

}  // namespace leadsel
