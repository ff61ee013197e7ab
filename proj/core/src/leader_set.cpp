#include "leadsel/leader_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "leadsel/error.hpp"

namespace leadsel {

LeaderMode LeaderMode::gain(double k) {
  if (!std::isfinite(k) || k <= 0.0) {
    throw Error(Errc::invalid_argument, "leader gain k must be finite and positive");
  }
  LeaderMode mode;
  mode.gain_ = k;
  return mode;
}

LeaderSet::LeaderSet(std::vector<NodeId> members, LeaderMode mode)
    : members_(std::move(members)), mode_(mode) {
  if (members_.empty()) {
    throw Error(Errc::invalid_argument, "leader set is empty");
  }
  std::vector<NodeId> sorted = members_;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0) {
    throw Error(Errc::node_out_of_range, "negative leader id");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(Errc::invalid_argument, "leader ids must be distinct");
  }
}

bool LeaderSet::contains(NodeId v) const {
  return std::find(members_.begin(), members_.end(), v) != members_.end();
}

void LeaderSet::check_against(int n, int max_size) const {
  for (NodeId v : members_) {
    if (v >= n) {
      throw Error(Errc::node_out_of_range,
                  "leader " + std::to_string(v) + " not in graph with n=" + std::to_string(n));
    }
  }
  if (size() > max_size) {
    throw Error(Errc::invalid_argument, "leader set of size " + std::to_string(size()) +
                                            " exceeds limit " + std::to_string(max_size));
  }
}

std::vector<bool> LeaderSet::mask(int n) const {
  std::vector<bool> m(n, false);
  for (NodeId v : members_) m[v] = true;
  return m;
}

}  // namespace leadsel
