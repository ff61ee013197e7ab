#include "leadsel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "leadsel/error.hpp"
#include "leadsel/parallel.hpp"

namespace leadsel {

std::string_view to_string(SelectionMethod method) {
  switch (method) {
    case SelectionMethod::exhaustive: return "exhaustive";
    case SelectionMethod::greedy: return "greedy";
    case SelectionMethod::closed_form_cycle: return "closed_form_cycle";
    case SelectionMethod::closed_form_path_two: return "closed_form_path_two";
    case SelectionMethod::closed_form_cycle_two: return "closed_form_cycle_two";
    case SelectionMethod::oracle: return "oracle";
  }
  return "unknown";
}

std::uint64_t binomial(int n, int m) {
  if (m < 0 || n < 0 || m > n) return 0;
  m = std::min(m, n - m);
  std::uint64_t result = 1;
  for (int i = 1; i <= m; ++i) {
    // result * num / i is exact; cancel gcd(result, i) first to delay overflow
    const std::uint64_t d = std::gcd(result, static_cast<std::uint64_t>(i));
    const std::uint64_t num = static_cast<std::uint64_t>(n - m + i) / (static_cast<std::uint64_t>(i) / d);
    result /= d;
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result *= num;
  }
  return result;
}

namespace {

using NodeSet = std::vector<NodeId>;

/// Running minimum plus every candidate within the tie tolerance of it.
class TieTracker {
 public:
  explicit TieTracker(double tolerance) : tolerance_(tolerance) {}

  void offer(double error, const NodeSet& set) {
    if (error < best_) {
      best_ = error;
      const double limit = threshold();
      std::erase_if(candidates_, [limit](const auto& c) { return c.first > limit; });
    }
    if (error <= threshold()) candidates_.emplace_back(error, set);
  }

  double best() const { return best_; }
  const std::vector<std::pair<double, NodeSet>>& candidates() const { return candidates_; }

 private:
  double threshold() const { return best_ + tolerance_ * std::abs(best_); }

  double tolerance_;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, NodeSet>> candidates_;
};

bool next_combination(NodeSet& c, int n) {
  const int m = static_cast<int>(c.size());
  int i = m - 1;
  while (i >= 0 && c[i] == n - m + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
  return true;
}

void check_m(const Graph& g, int m) {
  if (m < 1 || m >= g.node_count()) {
    throw Error(Errc::invalid_argument, "leader count m=" + std::to_string(m) +
                                            " must satisfy 1 <= m < n=" +
                                            std::to_string(g.node_count()));
  }
}

double implied_rho(int n, double error, double sigma) {
  return 0.5 * sigma * sigma * static_cast<double>(n) / error;
}

template <class Objective>
SelectionResult enumerate_all(const Graph& g, int m, const SelectionOptions& options,
                              SelectionMethod method, const Objective& objective) {
  check_m(g, m);
  const int n = g.node_count();
  const std::uint64_t total = binomial(n, m);
  if (total > options.budget) {
    throw Error(Errc::budget_exceeded,
                "exhaustive search over C(" + std::to_string(n) + ", " + std::to_string(m) +
                    ") sets exceeds the budget of " + std::to_string(options.budget) +
                    "; use the greedy method instead");
  }
  const unsigned workers = static_cast<unsigned>(std::clamp<std::uint64_t>(
      options.threads == 0 ? default_thread_count() : options.threads, 1, total));

  std::vector<TieTracker> trackers(workers, TieTracker(options.tie_tolerance));
  run_workers(workers, [&](unsigned w) {
    NodeSet c(m);
    std::iota(c.begin(), c.end(), 0);
    std::uint64_t index = 0;
    do {
      if (index++ % workers == w) trackers[w].offer(objective(c), c);
    } while (next_combination(c, n));
  });

  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : trackers) best = std::min(best, t.best());
  const double limit = best + options.tie_tolerance * std::abs(best);

  SelectionResult result;
  for (const auto& t : trackers) {
    for (const auto& [error, set] : t.candidates()) {
      if (error <= limit) result.optimal_sets.push_back(set);
    }
  }
  std::sort(result.optimal_sets.begin(), result.optimal_sets.end());
  result.total_error = best;
  result.rho = implied_rho(n, best, options.sigma);
  result.method = method;
  result.evaluated_count = total;
  result.m = m;
  return result;
}

}  // namespace

SelectionResult exhaustive_select(const Graph& g, const GraphKernels& kernels, int m,
                                  const LeaderMode& mode, const SelectionOptions& options) {
  const double sigma = options.sigma;
  if (mode.is_noise_free()) {
    return enumerate_all(g, m, options, SelectionMethod::exhaustive, [&](const NodeSet& s) {
      return joint_centrality(kernels, s, s.front(), sigma).implied_total_error;
    });
  }
  const double k = mode.k();
  if (m == 1) {
    return enumerate_all(g, m, options, SelectionMethod::exhaustive, [&](const NodeSet& s) {
      return single_leader_error(kernels, s.front(), mode, sigma);
    });
  }
  if (m == 2) {
    return enumerate_all(g, m, options, SelectionMethod::exhaustive, [&](const NodeSet& s) {
      return joint_centrality_two_gain(kernels, s[0], s[1], k, sigma).implied_total_error;
    });
  }
  const ErrorOracle oracle(g);
  auto result = enumerate_all(g, m, options, SelectionMethod::exhaustive, [&](const NodeSet& s) {
    return oracle.gain_total(s, k, sigma);
  });
  result.notes.push_back("gain mode with m > 2 is scored by the trace oracle");
  return result;
}

SelectionResult exhaustive_select(const Graph& g, int m, const LeaderMode& mode,
                                  const SelectionOptions& options) {
  check_m(g, m);
  return exhaustive_select(g, compute_kernels(g), m, mode, options);
}

SelectionResult oracle_select(const Graph& g, int m, const LeaderMode& mode,
                              const SelectionOptions& options) {
  const ErrorOracle oracle(g);
  return enumerate_all(g, m, options, SelectionMethod::oracle, [&](const NodeSet& s) {
    return oracle.total(s, mode, options.sigma);
  });
}

SelectionResult greedy_select(const Graph& g, int m, const LeaderMode& mode,
                              const SelectionOptions& options) {
  check_m(g, m);
  const int n = g.node_count();
  const ErrorOracle oracle(g);
  NodeSet chosen;
  std::vector<bool> taken(n, false);
  double error = 0.0;
  std::uint64_t evaluated = 0;
  std::ostringstream order;

  for (int step = 0; step < m; ++step) {
    std::vector<double> errors(n, std::numeric_limits<double>::infinity());
    double best = std::numeric_limits<double>::infinity();
    NodeSet trial = chosen;
    trial.push_back(0);
    for (NodeId v = 0; v < n; ++v) {
      if (taken[v]) continue;
      trial.back() = v;
      errors[v] = oracle.total(trial, mode, options.sigma);
      best = std::min(best, errors[v]);
      ++evaluated;
    }
    const double limit = best + options.tie_tolerance * std::abs(best);
    NodeId pick = 0;
    while (taken[pick] || errors[pick] > limit) ++pick;
    chosen.push_back(pick);
    taken[pick] = true;
    error = errors[pick];
    order << (step ? "," : "") << pick;
  }

  SelectionResult result;
  NodeSet sorted = chosen;
  std::sort(sorted.begin(), sorted.end());
  result.optimal_sets.push_back(std::move(sorted));
  result.total_error = error;
  result.rho = implied_rho(n, error, options.sigma);
  result.method = SelectionMethod::greedy;
  result.evaluated_count = evaluated;
  result.m = m;
  result.notes.push_back("pick order: " + order.str());
  return result;
}

SelectionResult closed_form_cycle(int n, int m, const SelectionOptions& options) {
  if (n < 3 || m < 1 || m >= n) {
    throw Error(Errc::invalid_argument, "closed-form cycle placement needs n >= 3, 1 <= m < n");
  }
  if (n % m != 0) {
    throw Error(Errc::not_applicable, "uniform cycle placement needs n/m integral (n=" +
                                          std::to_string(n) + ", m=" + std::to_string(m) + ")");
  }
  const int spacing = n / m;
  SelectionResult result;
  for (int offset = 0; offset < spacing; ++offset) {
    NodeSet set;
    for (int j = 0; j < m; ++j) set.push_back(offset + j * spacing);
    result.optimal_sets.push_back(std::move(set));
  }
  const ErrorOracle oracle(cycle_graph(n));
  result.total_error = oracle.noise_free_total(result.optimal_sets.front(), options.sigma);
  result.rho = implied_rho(n, result.total_error, options.sigma);
  result.method = SelectionMethod::closed_form_cycle;
  result.evaluated_count = 1;
  result.m = m;
  result.notes.push_back("all rotations of the uniform placement are optimal");
  return result;
}

SelectionResult closed_form_cycle_two(int n, const LeaderMode& mode,
                                      const SelectionOptions& options) {
  if (n < 4 || n % 2 != 0) {
    throw Error(Errc::not_applicable, "antipodal pairs need an even cycle with n >= 4");
  }
  SelectionResult result;
  for (int i = 0; i < n / 2; ++i) result.optimal_sets.push_back({i, i + n / 2});
  const ErrorOracle oracle(cycle_graph(n));
  result.total_error = oracle.total(result.optimal_sets.front(), mode, options.sigma);
  result.rho = implied_rho(n, result.total_error, options.sigma);
  result.method = SelectionMethod::closed_form_cycle_two;
  result.evaluated_count = 1;
  result.m = 2;
  return result;
}

std::pair<int, int> path_two_positions_one_based(int n) {
  // std::round rounds halves away from zero; n/5 is exact whenever it is a
  // half-integer candidate (n divisible by 5).
  const int s1 = static_cast<int>(std::round(n / 5.0 + 0.5));
  const int s2 = static_cast<int>(std::round(4.0 * n / 5.0 + 0.5));
  return {s1, s2};
}

SelectionResult closed_form_path_two(int n, const SelectionOptions& options) {
  if (n < 2) throw Error(Errc::invalid_argument, "path needs n >= 2");
  const auto [p1, p2] = path_two_positions_one_based(n);
  const NodeSet primary{p1 - 1, p2 - 1};
  const NodeSet mirror{n - p2, n - p1};

  SelectionResult result;
  result.optimal_sets.push_back(primary);
  if (mirror != primary) result.optimal_sets.push_back(mirror);
  std::sort(result.optimal_sets.begin(), result.optimal_sets.end());
  const ErrorOracle oracle(path_graph(n));
  result.total_error = oracle.noise_free_total(primary, options.sigma);
  result.rho = implied_rho(n, result.total_error, options.sigma);
  result.method = SelectionMethod::closed_form_path_two;
  result.evaluated_count = 1;
  result.m = 2;
  std::ostringstream note;
  note << "1-based positions " << p1 << "," << p2;
  result.notes.push_back(note.str());
  return result;
}

Histogram make_histogram(const std::vector<double>& values, int bins) {
  if (bins < 1) throw Error(Errc::invalid_argument, "histogram needs at least one bin");
  Histogram h;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  if (values.empty()) {
    h.edges.assign(static_cast<std::size_t>(bins) + 1, 0.0);
    return h;
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  h.lo = *lo;
  h.hi = *hi;
  h.degenerate = (h.hi - h.lo) <= 1e-9 * std::max(std::abs(h.lo), std::abs(h.hi));
  const double width = h.degenerate ? 0.0 : (h.hi - h.lo) / bins;
  for (int b = 0; b <= bins; ++b) h.edges.push_back(b == bins ? h.hi : h.lo + b * width);
  for (double v : values) {
    std::size_t idx = 0;
    if (!h.degenerate) {
      idx = static_cast<std::size_t>(std::clamp((v - h.lo) / width, 0.0, bins - 1.0));
    }
    ++h.counts[idx];
  }
  return h;
}

PairSweep pairwise_sweep(const GraphKernels& kernels, const PairSweepOptions& options) {
  const int n = kernels.n;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  if (options.pairs) {
    for (auto [a, b] : *options.pairs) {
      if (a < 0 || b < 0 || a >= n || b >= n) {
        throw Error(Errc::node_out_of_range, "pair (" + std::to_string(a) + ", " +
                                                 std::to_string(b) + ") out of range");
      }
      if (a == b) throw Error(Errc::invalid_argument, "pair needs two distinct nodes");
      pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
  } else {
    const std::uint64_t count = binomial(n, 2);
    if (count > options.budget) {
      throw Error(Errc::budget_exceeded, "all-pairs sweep of " + std::to_string(count) +
                                             " pairs exceeds the budget of " +
                                             std::to_string(options.budget));
    }
    pairs.reserve(count);
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    }
  }
  if (pairs.size() > options.budget) {
    throw Error(Errc::budget_exceeded, "pair list exceeds the sweep budget");
  }

  PairSweep sweep;
  sweep.n = n;
  sweep.rows.reserve(pairs.size());
  std::vector<double> values;
  values.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    const double rho = joint_centrality_two(kernels, a, b).rho;
    sweep.rows.push_back({a, b, rho});
    values.push_back(rho);
  }
  sweep.histogram = make_histogram(values, options.bins);
  return sweep;
}

}  // namespace leadsel
