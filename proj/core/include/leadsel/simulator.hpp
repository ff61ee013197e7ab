#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "leadsel/graph.hpp"
#include "leadsel/leader_set.hpp"

namespace leadsel {

/// Euler-Maruyama settings. The leader mode comes from the LeaderSet.
struct SimConfig {
  double dt = 0.01;
  std::uint64_t steps = 1'000'000;
  /// Defaults to steps / 10.
  std::optional<std::uint64_t> burn_in;
  double sigma = 1.0;
  std::uint64_t seed = 1;
  double mu = 0.0;
  /// Batches used for the batch-means standard errors.
  int batches = 20;
};

struct SimResult {
  Eigen::VectorXd empirical_variance;  ///< mean of (x_i - mu)^2 after burn-in
  Eigen::VectorXd variance_std_error;  ///< batch-means standard error per node
  double empirical_total_error = 0.0;
  double total_error_std_error = 0.0;
  double analytic_total_error = 0.0;
  std::uint64_t sample_count = 0;
  std::uint64_t seed_used = 0;
};

/// Largest eigenvalue of the drift matrix: L + K (gain) or the follower block
/// of L (noise-free). The explicit scheme is stable iff dt * this < 2.
double drift_spectral_radius(const Graph& g, const LeaderSet& leaders);

/// Integrates dx = -M (x - mu 1) dt + sigma dW from x = mu 1. In noise-free
/// mode leader states stay at mu and only followers are integrated.
/// Throws Errc::unstable when dt violates the stability bound or the state
/// diverges.
SimResult simulate(const Graph& g, const LeaderSet& leaders, const SimConfig& config);

/// Independent trajectories with seeds derived from config.seed, pooled by
/// sample moments. Results do not depend on the worker count.
SimResult simulate_replicas(const Graph& g, const LeaderSet& leaders, const SimConfig& config,
                            int replicas, unsigned threads = 0);

}  // namespace leadsel
