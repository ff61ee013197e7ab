#include "leadsel/simulator.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "leadsel/error.hpp"
#include "leadsel/parallel.hpp"
#include "leadsel/random.hpp"
#include "leadsel/spectral.hpp"

namespace leadsel {

namespace {

struct BatchStats {
  std::vector<Eigen::VectorXd> node_sums;
  std::vector<std::uint64_t> counts;
};

void validate(const SimConfig& c) {
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) {
    throw Error(Errc::invalid_argument, "dt must be positive");
  }
  if (!(c.sigma >= 0.0) || !std::isfinite(c.sigma) || !std::isfinite(c.mu)) {
    throw Error(Errc::invalid_argument, "sigma must be nonnegative and mu finite");
  }
  const std::uint64_t burn = c.burn_in.value_or(c.steps / 10);
  if (c.steps == 0 || burn >= c.steps) {
    throw Error(Errc::invalid_argument, "need steps > 0 and burn_in < steps");
  }
  if (c.batches < 2 || static_cast<std::uint64_t>(c.batches) > c.steps - burn) {
    throw Error(Errc::invalid_argument, "batches must be in [2, steps - burn_in]");
  }
}

}  // namespace

double drift_spectral_radius(const Graph& g, const LeaderSet& leaders) {
  const int n = g.node_count();
  leaders.check_against(n, n);
  const Eigen::MatrixXd L = laplacian(g);
  Eigen::MatrixXd m;
  if (leaders.mode().is_gain()) {
    m = L;
    for (NodeId v : leaders.members()) m(v, v) += leaders.mode().k();
  } else {
    const auto mask = leaders.mask(n);
    std::vector<int> followers;
    for (int i = 0; i < n; ++i) {
      if (!mask[i]) followers.push_back(i);
    }
    if (followers.empty()) return 0.0;
    m = L(followers, followers);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::numerical_failure, "eigenvalues of the drift matrix failed");
  }
  return solver.eigenvalues().maxCoeff();
}

SimResult simulate(const Graph& g, const LeaderSet& leaders, const SimConfig& config) {
  validate(config);
  const int n = g.node_count();
  leaders.check_against(n, n);

  const double radius = drift_spectral_radius(g, leaders);
  if (config.dt * radius >= 2.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "explicit scheme unstable: dt * lambda_max = " << config.dt * radius
        << " >= 2; need dt < " << 2.0 / radius;
    throw Error(Errc::unstable, msg.str());
  }

  const bool noise_free = leaders.mode().is_noise_free();
  const double gain = noise_free ? 0.0 : leaders.mode().k();
  const auto is_leader = leaders.mask(n);

  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<int> nbr;
  std::vector<double> weight;
  for (int i = 0; i < n; ++i) {
    for (const Neighbor& nb : g.neighbors(i)) {
      nbr.push_back(nb.node);
      weight.push_back(nb.weight);
    }
    offsets[i + 1] = nbr.size();
  }

  const std::uint64_t burn = config.burn_in.value_or(config.steps / 10);
  const std::uint64_t samples = config.steps - burn;
  const int batches = config.batches;
  const double mu = config.mu;
  const double dt = config.dt;
  const double noise_scale = config.sigma * std::sqrt(dt);

  Xoshiro256StarStar rng(config.seed);
  NormalSampler normal;
  std::vector<double> x(n, mu);
  std::vector<double> next(n, mu);
  std::vector<Eigen::VectorXd> batch_sums(batches, Eigen::VectorXd::Zero(n));

  for (std::uint64_t step = 0; step < config.steps; ++step) {
    for (int i = 0; i < n; ++i) {
      if (noise_free && is_leader[i]) {
        next[i] = mu;
        continue;
      }
      double drift = is_leader[i] ? -gain * (x[i] - mu) : 0.0;
      for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
        drift += weight[e] * (x[nbr[e]] - x[i]);
      }
      next[i] = x[i] + dt * drift + noise_scale * normal(rng);
    }
    x.swap(next);

    if ((step & 4095U) == 4095U) {
      for (double v : x) {
        if (!std::isfinite(v) || std::abs(v - mu) > 1e100) {
          throw Error(Errc::unstable, "state diverged at step " + std::to_string(step));
        }
      }
    }
    if (step >= burn) {
      const std::uint64_t index = step - burn;
      auto& sums = batch_sums[static_cast<std::size_t>(index * batches / samples)];
      for (int i = 0; i < n; ++i) {
        const double d = x[i] - mu;
        sums(i) += d * d;
      }
    }
  }

  SimResult result;
  result.seed_used = config.seed;
  result.sample_count = samples;
  Eigen::VectorXd total = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::VectorXd> batch_means(batches);
  for (int b = 0; b < batches; ++b) {
    const std::uint64_t lo = (static_cast<std::uint64_t>(b) * samples + batches - 1) / batches;
    const std::uint64_t hi =
        (static_cast<std::uint64_t>(b + 1) * samples + batches - 1) / batches;
    batch_means[b] = batch_sums[b] / static_cast<double>(hi - lo);
    total += batch_sums[b];
  }
  result.empirical_variance = total / static_cast<double>(samples);
  result.empirical_total_error = result.empirical_variance.sum();

  Eigen::VectorXd sq = Eigen::VectorXd::Zero(n);
  double total_sq = 0.0;
  for (const auto& bm : batch_means) {
    sq += (bm - result.empirical_variance).array().square().matrix();
    const double d = bm.sum() - result.empirical_total_error;
    total_sq += d * d;
  }
  const double denom = static_cast<double>(batches) * (batches - 1);
  result.variance_std_error = (sq / denom).cwiseSqrt();
  result.total_error_std_error = std::sqrt(total_sq / denom);
  result.analytic_total_error =
      ErrorOracle(g).total(leaders.members(), leaders.mode(), config.sigma);
  return result;
}

SimResult simulate_replicas(const Graph& g, const LeaderSet& leaders, const SimConfig& config,
                            int replicas, unsigned threads) {
  if (replicas < 1) throw Error(Errc::invalid_argument, "need at least one replica");
  std::vector<std::uint64_t> seeds;
  SplitMix64 expand(config.seed);
  for (int r = 0; r < replicas; ++r) seeds.push_back(expand.next());

  std::vector<SimResult> runs(static_cast<std::size_t>(replicas));
  const unsigned workers = std::min<unsigned>(
      threads == 0 ? default_thread_count() : threads, static_cast<unsigned>(replicas));
  run_workers(workers, [&](unsigned w) {
    for (int r = static_cast<int>(w); r < replicas; r += static_cast<int>(workers)) {
      SimConfig c = config;
      c.seed = seeds[r];
      runs[r] = simulate(g, leaders, c);
    }
  });

  SimResult pooled;
  pooled.seed_used = config.seed;
  pooled.analytic_total_error = runs.front().analytic_total_error;
  const Eigen::Index n = runs.front().empirical_variance.size();
  pooled.empirical_variance = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd se_sq = Eigen::VectorXd::Zero(n);
  double total_se_sq = 0.0;
  for (const SimResult& r : runs) {
    pooled.empirical_variance += r.empirical_variance;
    se_sq += r.variance_std_error.array().square().matrix();
    total_se_sq += r.total_error_std_error * r.total_error_std_error;
    pooled.sample_count += r.sample_count;
  }
  const double count = replicas;
  pooled.empirical_variance /= count;
  pooled.empirical_total_error = pooled.empirical_variance.sum();
  pooled.variance_std_error = se_sq.cwiseSqrt() / count;
  pooled.total_error_std_error = std::sqrt(total_se_sq) / count;
  return pooled;
}

}  // namespace leadsel
