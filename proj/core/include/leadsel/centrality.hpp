#pragma once

#include <Eigen/Core>

#include "leadsel/spectral.hpp"

namespace leadsel {

struct CentralityReport {
  Eigen::VectorXd info_centrality;    ///< c_i
  Eigen::VectorXd lplus_diagonal;     ///< L^+_{ii}
  Eigen::VectorXd certainty_inverse;  ///< (sigma^2/2) L^+_{ii}
  Eigen::MatrixXd resistance;         ///< r_ij
  Eigen::MatrixXd biharmonic;         ///< gamma_ij (squared biharmonic distance)
  double kirchhoff = 0.0;
  double sigma = 1.0;
};

/// r_ij = L+_ii + L+_jj - 2 L+_ij, with an exactly zero diagonal.
Eigen::MatrixXd resistance_matrix(const GraphKernels& k);
/// r_ij = sum_{l>=2} (v_l(i) - v_l(j))^2 / lambda_l.
Eigen::MatrixXd resistance_matrix_spectral(const GraphKernels& k);

/// c_i = n / sum_j r_ij: harmonic mean of the total information between i and
/// every other node.
Eigen::VectorXd info_centrality(const GraphKernels& k);

// Squared biharmonic distance, unnormalized Laplacian. Three routes:
//   (L^2)^+ quadratic form, column differences of L^+, and eigenpairs.
Eigen::MatrixXd biharmonic_matrix(const GraphKernels& k);
Eigen::MatrixXd biharmonic_matrix_from_lplus(const GraphKernels& k);
Eigen::MatrixXd biharmonic_matrix_spectral(const GraphKernels& k);

/// (sigma^2/2) L+_ii. Orders nodes exactly as 1/c_i does.
Eigen::VectorXd certainty_inverse(const GraphKernels& k, double sigma = 1.0);

CentralityReport centrality_report(const GraphKernels& k, double sigma = 1.0);

}  // namespace leadsel
