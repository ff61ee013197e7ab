#include "leadsel/error.hpp"

namespace leadsel {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::malformed_line: return "malformed_line";
    case Errc::self_loop: return "self_loop";
    case Errc::duplicate_edge: return "duplicate_edge";
    case Errc::nonpositive_weight: return "nonpositive_weight";
    case Errc::node_out_of_range: return "node_out_of_range";
    case Errc::disconnected: return "disconnected";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::numerical_failure: return "numerical_failure";
    case Errc::ill_conditioned: return "ill_conditioned";
    case Errc::budget_exceeded: return "budget_exceeded";
    case Errc::unstable: return "unstable";
    case Errc::not_applicable: return "not_applicable";
    case Errc::topology_mismatch: return "topology_mismatch";
  }
  return "unknown";
}

namespace {

std::string decorate(const std::string& message, std::optional<std::size_t> line) {
  if (!line) return message;
  return "line " + std::to_string(*line) + ": " + message;
}

}  // namespace

Error::Error(Errc code, const std::string& message, std::optional<std::size_t> line)
    : std::runtime_error(decorate(message, line)), code_(code), line_(line) {}

}  // namespace leadsel
