#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "leadsel/graph.hpp"

namespace leadsel::cli {

inline constexpr int kSchemaVersion = 1;

enum class Format { json, csv };

struct CommonOptions {
  Format format = Format::json;
  int index_base = 0;
  unsigned threads = 0;
};

/// Machine-readable result of one command. Everything except timing_ms is a
/// pure function of the inputs.
struct Report {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  nlohmann::ordered_json graph = nlohmann::ordered_json::object();
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();
  double timing_ms = 0.0;
};

std::string render_json(const Report& report);

nlohmann::ordered_json graph_summary(const Graph& g, const std::string& source);

/// Shortest round-trip decimal form, shared by JSON and CSV output.
std::string format_number(double x);

/// RFC 4180 writer: CRLF line ends, fields quoted only when needed.
class CsvWriter {
 public:
  void row(const std::vector<std::string>& fields);
  const std::string& str() const noexcept { return out_; }

 private:
  std::string out_;
};

std::string join_ids(const std::vector<int>& ids, int index_base, char separator = ' ');

}  // namespace leadsel::cli
