#include "leadsel/centrality.hpp"

namespace leadsel {

namespace {

Eigen::MatrixXd quadratic_distance(const Eigen::MatrixXd& kernel) {
  const Eigen::Index n = kernel.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    d(j, j) = 0.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = kernel(i, i) + kernel(j, j) - 2.0 * kernel(i, j);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

Eigen::MatrixXd spectral_distance(const GraphKernels& k, int power) {
  const int n = k.n;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int l = 1; l < n; ++l) {
    const double scale = power == 1 ? 1.0 / k.eigenvalues(l)
                                    : 1.0 / (k.eigenvalues(l) * k.eigenvalues(l));
    const auto v = k.eigenvectors.col(l);
    for (int j = 0; j < n; ++j) {
      for (int i = j + 1; i < n; ++i) {
        const double diff = v(i) - v(j);
        d(i, j) += scale * diff * diff;
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) d(j, i) = d(i, j);
  }
  return d;
}

}  // namespace

Eigen::MatrixXd resistance_matrix(const GraphKernels& k) { return quadratic_distance(k.lplus); }

Eigen::MatrixXd resistance_matrix_spectral(const GraphKernels& k) {
  return spectral_distance(k, 1);
}

Eigen::VectorXd info_centrality(const GraphKernels& k) {
  const Eigen::MatrixXd r = resistance_matrix(k);
  return (static_cast<double>(k.n) * r.rowwise().sum().cwiseInverse()).eval();
}

Eigen::MatrixXd biharmonic_matrix(const GraphKernels& k) { return quadratic_distance(k.l2plus); }

Eigen::MatrixXd biharmonic_matrix_from_lplus(const GraphKernels& k) {
  const int n = k.n;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      const double v = (k.lplus.col(i) - k.lplus.col(j)).squaredNorm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

Eigen::MatrixXd biharmonic_matrix_spectral(const GraphKernels& k) {
  return spectral_distance(k, 2);
}

Eigen::VectorXd certainty_inverse(const GraphKernels& k, double sigma) {
  return (0.5 * sigma * sigma * k.lplus.diagonal()).eval();
}

CentralityReport centrality_report(const GraphKernels& k, double sigma) {
  CentralityReport report;
  report.resistance = resistance_matrix(k);
  report.info_centrality =
      static_cast<double>(k.n) * report.resistance.rowwise().sum().cwiseInverse();
  report.lplus_diagonal = k.lplus.diagonal();
  report.certainty_inverse = certainty_inverse(k, sigma);
  report.biharmonic = biharmonic_matrix(k);
  report.kirchhoff = k.kirchhoff;
  report.sigma = sigma;
  return report;
}

}  // namespace leadsel
