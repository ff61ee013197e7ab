#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leadsel/graph.hpp"
#include "leadsel/joint_centrality.hpp"
#include "leadsel/leader_set.hpp"
#include "leadsel/spectral.hpp"

namespace leadsel {

enum class SelectionMethod {
  exhaustive,
  greedy,
  closed_form_cycle,
  closed_form_path_two,
  closed_form_cycle_two,
  oracle,
};

std::string_view to_string(SelectionMethod method);

struct SelectionOptions {
  double sigma = 1.0;
  /// Maximum number of candidate sets an exhaustive search may score.
  std::uint64_t budget = 10'000'000;
  /// 0 means default_thread_count().
  unsigned threads = 0;
  /// Objectives within this relative distance of the optimum count as ties.
  double tie_tolerance = 1e-9;
};

struct SelectionResult {
  /// Every optimal set, each sorted ascending, the list sorted
  /// lexicographically.
  std::vector<std::vector<NodeId>> optimal_sets;
  /// Joint centrality of the optimum. For objectives without a closed-form
  /// centrality (gain mode, m > 2) this is the implied n sigma^2 / (2 error).
  double rho = 0.0;
  double total_error = 0.0;
  SelectionMethod method = SelectionMethod::exhaustive;
  std::uint64_t evaluated_count = 0;
  int m = 0;
  std::vector<std::string> notes;
};

/// C(n, m), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int m);

/// Scores every m-subset with the joint-centrality formulas (rho_S for
/// noise-free leaders; the single-leader and k-dependent two-leader forms
/// under gain, the dense trace oracle for gain with m > 2) and returns all
/// minimizers of the total error.
SelectionResult exhaustive_select(const Graph& g, int m, const LeaderMode& mode,
                                  const SelectionOptions& options = {});
/// Kernels reused across calls.
SelectionResult exhaustive_select(const Graph& g, const GraphKernels& kernels, int m,
                                  const LeaderMode& mode, const SelectionOptions& options = {});

/// Same enumeration, scored only by the dense trace oracle.
SelectionResult oracle_select(const Graph& g, int m, const LeaderMode& mode,
                              const SelectionOptions& options = {});

/// Adds one node at a time, each time the node giving the smallest exact
/// total error; ties go to the lowest id.
SelectionResult greedy_select(const Graph& g, int m, const LeaderMode& mode,
                              const SelectionOptions& options = {});

/// Uniform placement of m noise-free leaders on cycle(n); requires m | n.
/// Returns all n/m rotations.
SelectionResult closed_form_cycle(int n, int m, const SelectionOptions& options = {});

/// Antipodal pairs on an even cycle, for either leader mode.
SelectionResult closed_form_cycle_two(int n, const LeaderMode& mode,
                                      const SelectionOptions& options = {});

/// Two noise-free leaders on path(n), at rnd(n/5 + 1/2) and rnd(4n/5 + 1/2)
/// in 1-based positions (round half away from zero), together with the
/// mirror pair when it differs.
SelectionResult closed_form_path_two(int n, const SelectionOptions& options = {});

/// The closed-form path pair in 1-based positions.
std::pair<int, int> path_two_positions_one_based(int n);

struct PairRho {
  NodeId s1 = 0;
  NodeId s2 = 0;
  double rho = 0.0;
};

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> edges;  ///< bins + 1 boundaries
  std::vector<std::uint64_t> counts;
  /// All values equal within 1e-9 relative; everything lands in bin 0.
  bool degenerate = false;
};

Histogram make_histogram(const std::vector<double>& values, int bins);

struct PairSweepOptions {
  int bins = 20;
  std::uint64_t budget = 50'000'000;
  /// Restrict the sweep to these pairs (any orientation); otherwise all pairs.
  std::optional<std::vector<std::pair<NodeId, NodeId>>> pairs;
};

struct PairSweep {
  int n = 0;
  std::vector<PairRho> rows;  ///< s1 < s2; upper-triangle order when unrestricted
  Histogram histogram;
};

/// rho of two noise-free leaders for every unordered pair (or the listed ones).
PairSweep pairwise_sweep(const GraphKernels& kernels, const PairSweepOptions& options = {});

}  // namespace leadsel
