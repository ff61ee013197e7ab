#pragma once

#include <optional>
#include <vector>

#include "leadsel/graph.hpp"

namespace leadsel {

/// How leaders weigh their measurement of the external signal: pinned to it
/// exactly (noise-free) or with a finite positive gain k.
class LeaderMode {
 public:
  static LeaderMode noise_free() { return LeaderMode{}; }
  static LeaderMode gain(double k);

  bool is_noise_free() const noexcept { return !gain_; }
  bool is_gain() const noexcept { return gain_.has_value(); }
  /// Precondition: is_gain().
  double k() const { return *gain_; }

  friend bool operator==(const LeaderMode&, const LeaderMode&) = default;

 private:
  LeaderMode() = default;
  std::optional<double> gain_;
};

/// Ordered set of distinct leader nodes. The first member is the pivot.
class LeaderSet {
 public:
  explicit LeaderSet(std::vector<NodeId> members,
                     LeaderMode mode = LeaderMode::noise_free());

  const std::vector<NodeId>& members() const noexcept { return members_; }
  NodeId pivot() const noexcept { return members_.front(); }
  int size() const noexcept { return static_cast<int>(members_.size()); }
  const LeaderMode& mode() const noexcept { return mode_; }
  bool contains(NodeId v) const;

  /// Throws unless every member is < n and the size is at most `max_size`.
  void check_against(int n, int max_size) const;

  /// Indicator vector over 0..n-1.
  std::vector<bool> mask(int n) const;

 private:
  std::vector<NodeId> members_;
  LeaderMode mode_;
};

}  // namespace leadsel
