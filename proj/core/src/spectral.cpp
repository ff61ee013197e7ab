#include "leadsel/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "leadsel/error.hpp"

namespace leadsel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void symmetrize(Eigen::MatrixXd& a) {
  const Eigen::MatrixXd t = a.transpose();
  a = 0.5 * (a + t);
}

std::vector<bool> leader_mask(int n, std::span<const NodeId> leaders) {
  if (leaders.empty()) {
    throw Error(Errc::invalid_argument, "leader set is empty");
  }
  std::vector<bool> mask(n, false);
  for (NodeId v : leaders) {
    if (v < 0 || v >= n) {
      throw Error(Errc::node_out_of_range, "leader " + std::to_string(v) + " out of range");
    }
    if (mask[v]) {
      throw Error(Errc::invalid_argument, "leader " + std::to_string(v) + " repeated");
    }
    mask[v] = true;
  }
  return mask;
}

/// Inverse of a symmetric positive definite matrix, with a conditioning check.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& a, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw Error(Errc::numerical_failure, std::string(what) + " is not positive definite");
  }
  if (llt.rcond() < static_cast<double>(a.rows()) * kEps) {
    throw Error(Errc::ill_conditioned,
                std::string(what) + " is numerically singular (rcond " +
                    std::to_string(llt.rcond()) + ")");
  }
  return llt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
}

}  // namespace

GraphKernels compute_kernels(const Graph& g) {
  const int n = g.node_count();
  if (n < 2) {
    throw Error(Errc::invalid_argument, "kernels need at least two nodes");
  }
  const Eigen::MatrixXd L = laplacian(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::numerical_failure, "Laplacian eigendecomposition failed");
  }

  GraphKernels k;
  k.n = n;
  k.eigenvalues = solver.eigenvalues();
  k.eigenvectors = solver.eigenvectors();
  const double lambda_max = k.eigenvalues(n - 1);
  k.zero_tolerance = static_cast<double>(n) * kEps * lambda_max;
  if (k.eigenvalues(0) > k.zero_tolerance) {
    throw Error(Errc::numerical_failure, "Laplacian has no zero eigenvalue within tolerance");
  }
  if (k.eigenvalues(1) <= k.zero_tolerance) {
    throw Error(Errc::ill_conditioned,
                "second-smallest Laplacian eigenvalue is below tolerance "
                "(graph disconnected or ill-conditioned)");
  }

  const auto nonzero = k.eigenvectors.rightCols(n - 1);
  const Eigen::VectorXd inv = k.eigenvalues.tail(n - 1).cwiseInverse();
  k.lplus = nonzero * inv.asDiagonal() * nonzero.transpose();
  symmetrize(k.lplus);
  k.l2plus = k.lplus * k.lplus;
  symmetrize(k.l2plus);
  k.kirchhoff = static_cast<double>(n) * k.lplus.trace();
  return k;
}

ErrorOracle::ErrorOracle(const Graph& g) : laplacian_(leadsel::laplacian(g)) {}

ErrorReport ErrorOracle::noise_free_report(std::span<const NodeId> leaders, double sigma) const {
  const int n = node_count();
  const auto mask = leader_mask(n, leaders);
  std::vector<int> followers;
  for (int i = 0; i < n; ++i) {
    if (!mask[i]) followers.push_back(i);
  }

  ErrorReport report;
  report.sigma = sigma;
  report.per_node_variance = Eigen::VectorXd::Zero(n);
  if (!followers.empty()) {
    const Eigen::MatrixXd grounded = laplacian_(followers, followers);
    const Eigen::MatrixXd inv = spd_inverse(grounded, "grounded Laplacian");
    for (std::size_t a = 0; a < followers.size(); ++a) {
      const auto idx = static_cast<Eigen::Index>(a);
      report.per_node_variance(followers[a]) = 0.5 * sigma * sigma * inv(idx, idx);
    }
  }
  report.total_error = report.per_node_variance.sum();
  return report;
}

ErrorReport ErrorOracle::gain_report(std::span<const NodeId> leaders, double k, double sigma) const {
  if (!std::isfinite(k) || k <= 0.0) {
    throw Error(Errc::invalid_argument, "leader gain k must be finite and positive");
  }
  const int n = node_count();
  leader_mask(n, leaders);
  Eigen::MatrixXd m = laplacian_;
  for (NodeId v : leaders) m(v, v) += k;
  const Eigen::MatrixXd inv = spd_inverse(m, "L + K");

  ErrorReport report;
  report.sigma = sigma;
  report.per_node_variance = 0.5 * sigma * sigma * inv.diagonal();
  report.total_error = report.per_node_variance.sum();
  return report;
}

double ErrorOracle::noise_free_total(std::span<const NodeId> leaders, double sigma) const {
  return noise_free_report(leaders, sigma).total_error;
}

double ErrorOracle::gain_total(std::span<const NodeId> leaders, double k, double sigma) const {
  return gain_report(leaders, k, sigma).total_error;
}

double ErrorOracle::total(std::span<const NodeId> leaders, const LeaderMode& mode,
                          double sigma) const {
  return mode.is_noise_free() ? noise_free_total(leaders, sigma)
                              : gain_total(leaders, mode.k(), sigma);
}

ErrorReport oracle_error_noise_free(const Graph& g, const LeaderSet& leaders, double sigma) {
  if (!leaders.mode().is_noise_free()) {
    throw Error(Errc::invalid_argument, "noise-free oracle called with a gain-mode leader set");
  }
  return ErrorOracle(g).noise_free_report(leaders.members(), sigma);
}

ErrorReport oracle_error_gain(const Graph& g, const LeaderSet& leaders, double sigma) {
  if (!leaders.mode().is_gain()) {
    throw Error(Errc::invalid_argument, "gain oracle called with a noise-free leader set");
  }
  return ErrorOracle(g).gain_report(leaders.members(), leaders.mode().k(), sigma);
}

ErrorReport oracle_error(const Graph& g, const LeaderSet& leaders, double sigma) {
  return leaders.mode().is_noise_free() ? oracle_error_noise_free(g, leaders, sigma)
                                        : oracle_error_gain(g, leaders, sigma);
}

Eigen::VectorXd per_node_variance_spectral(const Graph& g, const LeaderSet& leaders,
                                           double sigma) {
  const int n = g.node_count();
  leaders.check_against(n, n);
  const Eigen::MatrixXd L = laplacian(g);

  std::vector<int> nodes;
  Eigen::MatrixXd m;
  if (leaders.mode().is_gain()) {
    m = L;
    for (NodeId v : leaders.members()) m(v, v) += leaders.mode().k();
    for (int i = 0; i < n; ++i) nodes.push_back(i);
  } else {
    const auto mask = leaders.mask(n);
    for (int i = 0; i < n; ++i) {
      if (!mask[i]) nodes.push_back(i);
    }
    m = L(nodes, nodes);
  }

  Eigen::VectorXd variance = Eigen::VectorXd::Zero(n);
  if (nodes.empty()) return variance;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::numerical_failure, "eigendecomposition of M failed");
  }
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  if (lambda(0) <= 0.0) {
    throw Error(Errc::ill_conditioned, "M has a nonpositive eigenvalue");
  }
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::VectorXd weights = (2.0 * lambda).cwiseInverse();
  const Eigen::VectorXd local = sigma * sigma * (v.array().square().matrix() * weights);
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    variance(nodes[a]) = local(static_cast<Eigen::Index>(a));
  }
  return variance;
}

}  // namespace leadsel
