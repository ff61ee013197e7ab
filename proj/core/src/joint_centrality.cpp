#include "leadsel/joint_centrality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "leadsel/error.hpp"

namespace leadsel {

namespace {

// |det| below this fraction of the Hadamard bound (product of diagonal
// magnitudes) is reported as ill-conditioned.
constexpr double kDetRelativeFloor = 1e-12;
constexpr double kCrossCheckTolerance = 1e-9;

void check_node(const GraphKernels& k, NodeId v) {
  if (v < 0 || v >= k.n) {
    throw Error(Errc::node_out_of_range, "node " + std::to_string(v) + " out of range");
  }
}

double pivoted_det(const Eigen::MatrixXd& a, const char* what,
                   std::vector<std::string>& warnings) {
  if (a.rows() == 0) return 1.0;
  const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(a).determinant();
  double scale = 1.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) scale *= std::abs(a(i, i));
  if (!std::isfinite(det) || std::abs(det) < kDetRelativeFloor * scale) {
    std::ostringstream msg;
    msg << what << " determinant " << det << " is tiny relative to its diagonal scale " << scale;
    warnings.push_back(msg.str());
  }
  return det;
}

double relative_gap(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

JointCentralityResult finish(const GraphKernels& k, double denominator, double sigma,
                             JointCentralityResult result) {
  if (!std::isfinite(denominator) || denominator <= 0.0) {
    throw Error(Errc::numerical_failure,
                "joint centrality denominator is not positive (" + std::to_string(denominator) +
                    ")");
  }
  result.sigma = sigma;
  result.rho = static_cast<double>(k.n) / denominator;
  result.implied_total_error = total_error_from_rho(k.n, result.rho, sigma);
  return result;
}

}  // namespace

Eigen::MatrixXd n_inverse_entries(const GraphKernels& k, NodeId pivot) {
  check_node(k, pivot);
  const Eigen::VectorXd col = k.lplus.col(pivot);
  Eigen::MatrixXd out = k.lplus;
  out.colwise() -= col;
  out.rowwise() -= col.transpose();
  out.array() += k.lplus(pivot, pivot);
  return out;
}

Eigen::MatrixXd n_inverse_entries_from_resistance(const Eigen::MatrixXd& resistance,
                                                  NodeId pivot) {
  const Eigen::Index n = resistance.rows();
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i, j) = 0.5 * (resistance(i, pivot) + resistance(j, pivot) - resistance(i, j));
    }
  }
  return out;
}

JointCentralityResult joint_centrality(const GraphKernels& k, std::span<const NodeId> set,
                                       NodeId pivot, double sigma) {
  const int n = k.n;
  const int m = static_cast<int>(set.size());
  if (m < 1 || m >= n) {
    throw Error(Errc::invalid_argument, "joint centrality needs 1 <= m < n (m=" +
                                            std::to_string(m) + ", n=" + std::to_string(n) + ")");
  }
  for (NodeId v : set) check_node(k, v);
  {
    std::vector<NodeId> sorted(set.begin(), set.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(Errc::invalid_argument, "joint centrality needs distinct nodes");
    }
  }
  if (std::find(set.begin(), set.end(), pivot) == set.end()) {
    throw Error(Errc::invalid_argument, "pivot " + std::to_string(pivot) + " is not in the set");
  }

  // ordered = [pivot, rest...]; rest keeps the caller's order
  std::vector<NodeId> ordered{pivot};
  for (NodeId v : set) {
    if (v != pivot) ordered.push_back(v);
  }
  const auto& lp = k.lplus;
  const double lpp = lp(pivot, pivot);

  JointCentralityResult result;
  result.pivot_used = pivot;
  auto& t = result.terms;
  t.kirchhoff_over_n = k.kirchhoff / n;
  t.det_LplusS = pivoted_det(lp(ordered, ordered), "L+_S", result.warnings);

  if (m == 1) {
    t.det_G = 1.0;
    t.trace_Q = 0.0;
    t.q_pivot = 0.0;
    t.explicit_sum_total = t.kirchhoff_over_n + n * lpp;
    const double denominator = t.kirchhoff_over_n + n * t.det_LplusS;
    return finish(k, denominator, sigma, std::move(result));
  }

  const std::vector<NodeId> rest(ordered.begin() + 1, ordered.end());
  const int r = m - 1;
  Eigen::MatrixXd reduced(r, r);
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) {
      reduced(a, b) = lp(rest[a], rest[b]) - lp(rest[a], pivot) - lp(rest[b], pivot) + lpp;
    }
  }
  const double det_reduced = pivoted_det(reduced, "N^-1 block", result.warnings);
  if (!std::isfinite(det_reduced) || det_reduced == 0.0) {
    throw Error(Errc::numerical_failure, "pivot-reduced block of N^-1 is singular");
  }
  const Eigen::MatrixXd g = Eigen::PartialPivLU<Eigen::MatrixXd>(reduced).inverse();
  t.det_G = 1.0 / det_reduced;

  // Gamma_S from the sum over all n nodes of squared L+ column differences,
  // checked against the (L^2)^+ quadratic form.
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(m, m);
  double gamma_gap = 0.0;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const double summed = (lp.col(ordered[a]) - lp.col(ordered[b])).squaredNorm();
      const auto& l2 = k.l2plus;
      const double closed = l2(ordered[a], ordered[a]) + l2(ordered[b], ordered[b]) -
                            2.0 * l2(ordered[a], ordered[b]);
      gamma_gap = std::max(gamma_gap, relative_gap(summed, closed));
      gamma(a, b) = summed;
      gamma(b, a) = summed;
    }
  }
  if (gamma_gap > kCrossCheckTolerance) {
    std::ostringstream msg;
    msg << "biharmonic routes disagree by " << gamma_gap << " (relative)";
    result.warnings.push_back(msg.str());
  }

  Eigen::MatrixXd gbar = Eigen::MatrixXd::Zero(m, m);
  gbar.bottomRightCorner(r, r) = g;
  const Eigen::MatrixXd q = gbar * gamma;
  t.trace_Q = q.trace();
  t.q_pivot = q.col(0).sum();

  const double denominator =
      t.kirchhoff_over_n + n * t.det_G * t.det_LplusS + 0.5 * t.trace_Q - t.q_pivot;

  double correction = 0.0;
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) {
      const NodeId sa = rest[a];
      const NodeId sb = rest[b];
      const double cross = lpp * (lpp - lp(pivot, sa) - lp(pivot, sb)) + lp(pivot, sa) * lp(pivot, sb);
      const double bracket = gamma(0, a + 1) + gamma(0, b + 1) - gamma(a + 1, b + 1);
      correction += g(a, b) * (n * cross + 0.5 * bracket);
    }
  }
  t.explicit_sum_total = t.kirchhoff_over_n + n * lpp - correction;
  if (const double gap = relative_gap(t.explicit_sum_total, denominator);
      gap > kCrossCheckTolerance) {
    std::ostringstream msg;
    msg << "compact and explicit-sum forms disagree by " << gap << " (relative)";
    result.warnings.push_back(msg.str());
  }
  return finish(k, denominator, sigma, std::move(result));
}

JointCentralityResult joint_centrality(const GraphKernels& k, const LeaderSet& set, double sigma) {
  return joint_centrality(k, set.members(), set.pivot(), sigma);
}

namespace {

struct PairIngredients {
  double l11, l22, l12, resistance, gamma;
};

PairIngredients pair_ingredients(const GraphKernels& k, NodeId s1, NodeId s2) {
  check_node(k, s1);
  check_node(k, s2);
  if (s1 == s2) {
    throw Error(Errc::invalid_argument, "two-leader joint centrality needs distinct nodes");
  }
  const auto& lp = k.lplus;
  const auto& l2 = k.l2plus;
  PairIngredients p;
  p.l11 = lp(s1, s1);
  p.l22 = lp(s2, s2);
  p.l12 = lp(s1, s2);
  p.resistance = p.l11 + p.l22 - 2.0 * p.l12;
  p.gamma = l2(s1, s1) + l2(s2, s2) - 2.0 * l2(s1, s2);
  return p;
}

}  // namespace

JointCentralityResult joint_centrality_two(const GraphKernels& k, NodeId s1, NodeId s2,
                                           double sigma) {
  const auto p = pair_ingredients(k, s1, s2);
  const double n = k.n;
  JointCentralityResult result;
  result.pivot_used = s1;
  auto& t = result.terms;
  t.kirchhoff_over_n = k.kirchhoff / n;
  t.det_LplusS = p.l11 * p.l22 - p.l12 * p.l12;
  t.det_G = 1.0 / p.resistance;
  t.trace_Q = 0.0;
  t.q_pivot = p.gamma / p.resistance;
  const double denominator = t.kirchhoff_over_n + (n * t.det_LplusS - p.gamma) / p.resistance;
  t.explicit_sum_total = denominator;
  return finish(k, denominator, sigma, std::move(result));
}

JointCentralityResult joint_centrality_two_gain(const GraphKernels& k, NodeId s1, NodeId s2,
                                                double gain, double sigma) {
  if (!std::isfinite(gain) || gain <= 0.0) {
    throw Error(Errc::invalid_argument, "leader gain k must be finite and positive");
  }
  const auto p = pair_ingredients(k, s1, s2);
  const double n = k.n;
  JointCentralityResult result;
  result.pivot_used = s1;
  result.gain = gain;
  auto& t = result.terms;
  t.kirchhoff_over_n = k.kirchhoff / n;
  t.det_LplusS = p.l11 * p.l22 - p.l12 * p.l12;
  t.det_G = 1.0 / p.resistance;
  t.trace_Q = 0.0;
  t.q_pivot = p.gamma / p.resistance;
  const double shared = gain * (2.0 + gain * p.resistance);
  const double denominator = t.kirchhoff_over_n +
                             n * (1.0 + gain * (p.l11 + p.l22)) / shared +
                             (n * gain * gain * t.det_LplusS - gain * gain * p.gamma) / shared;
  t.explicit_sum_total = denominator;
  return finish(k, denominator, sigma, std::move(result));
}

double single_leader_error(const GraphKernels& k, NodeId s, const LeaderMode& mode, double sigma) {
  check_node(k, s);
  const auto& lp = k.lplus;
  double row = 0.0;
  for (int j = 0; j < k.n; ++j) {
    if (j != s) row += lp(s, s) + lp(j, j) - 2.0 * lp(s, j);
  }
  const double n = k.n;
  const double inv_c = row / n;
  const double inv_gain = mode.is_gain() ? 1.0 / mode.k() : 0.0;
  return 0.5 * n * sigma * sigma * (inv_gain + inv_c);
}

}  // namespace leadsel
