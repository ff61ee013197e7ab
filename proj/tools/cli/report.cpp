#include "cli/report.hpp"

namespace leadsel::cli {

std::string render_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["schema"] = "leadsel.report";
  doc["schema_version"] = kSchemaVersion;
  doc["tool"] = {{"name", "leadsel"}, {"version", LEADSEL_VERSION}};
  doc["command"] = report.command;
  doc["parameters"] = report.parameters;
  doc["graph"] = report.graph;
  doc["payload"] = report.payload;
  doc["timing_ms"] = report.timing_ms;
  return doc.dump(2) + "\n";
}

nlohmann::ordered_json graph_summary(const Graph& g, const std::string& source) {
  return {{"source", source}, {"n", g.node_count()}, {"edges", g.edge_count()}};
}

std::string format_number(double x) { return nlohmann::json(x).dump(); }

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out_ += f;
      continue;
    }
    out_ += '"';
    for (char c : f) {
      if (c == '"') out_ += '"';
      out_ += c;
    }
    out_ += '"';
  }
  out_ += "\r\n";
}

std::string join_ids(const std::vector<int>& ids, int index_base, char separator) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += separator;
    out += std::to_string(ids[i] + index_base);
  }
  return out;
}

}  // namespace leadsel::cli
