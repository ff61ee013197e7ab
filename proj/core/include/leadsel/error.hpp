#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace leadsel {

enum class Errc {
  malformed_line,
  self_loop,
  duplicate_edge,
  nonpositive_weight,
  node_out_of_range,
  disconnected,
  invalid_argument,
  numerical_failure,
  ill_conditioned,
  budget_exceeded,
  unstable,
  not_applicable,
  topology_mismatch,
};

std::string_view to_string(Errc code);

/// Exception carrying a machine-checkable error code. Parse errors also carry
/// the 1-based line number of the offending input line.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  Errc code_;
  std::optional<std::size_t> line_;
};

}  // namespace leadsel
