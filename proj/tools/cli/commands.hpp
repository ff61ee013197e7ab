#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cli/report.hpp"
#include "leadsel/graph.hpp"

namespace leadsel::cli {

struct CommandOutput {
  int exit_code = 0;
  std::string text;         ///< stdout
  std::string diagnostics;  ///< stderr
};

struct CentralityArgs {
  std::string graph_file;
  bool full = false;
  double sigma = 1.0;
};

struct SelectArgs {
  std::string graph_file;
  int m = 1;
  std::string mode = "noise-free";
  std::optional<double> k;
  std::string method = "exhaustive";
  std::optional<std::string> topology;
  double sigma = 1.0;
  std::uint64_t budget = 10'000'000;
};

struct PairsArgs {
  std::string graph_file;
  int bins = 20;
  std::optional<std::string> pair_file;
  std::uint64_t budget = 50'000'000;
  bool histogram_only = false;
};

struct VerifyArgs {
  std::optional<std::string> graph_file;
  std::optional<std::string> suite;
  std::uint64_t seed = 2024;
  int max_m = 3;
  double tolerance = 1e-8;
  std::vector<double> gains{0.1, 1.0, 10.0, 100.0};
};

struct SimulateArgs {
  std::string graph_file;
  std::string leaders;
  std::string mode = "noise-free";
  std::optional<double> k;
  double sigma = 1.0;
  double dt = 0.01;
  std::uint64_t steps = 1'000'000;
  std::optional<std::uint64_t> burn_in;
  std::uint64_t seed = 1;
  double mu = 0.0;
  int replicas = 1;
};

struct GenerateArgs {
  std::string kind;
  int n = 0;
  double p = 0.5;
  std::uint64_t seed = 1;
  std::optional<std::string> output;
};

CommandOutput cmd_centrality(const CentralityArgs& args, const CommonOptions& common);
CommandOutput cmd_select(const SelectArgs& args, const CommonOptions& common);
CommandOutput cmd_pairs(const PairsArgs& args, const CommonOptions& common);
CommandOutput cmd_verify(const VerifyArgs& args, const CommonOptions& common);
CommandOutput cmd_simulate(const SimulateArgs& args, const CommonOptions& common);
CommandOutput cmd_generate(const GenerateArgs& args);

/// "0,2,5" -> {0, 2, 5} shifted from index_base to 0-based ids.
std::vector<NodeId> parse_id_list(const std::string& text, int index_base);
/// One "u v" pair per line, '#' comments; ids in index_base.
std::vector<std::pair<NodeId, NodeId>> read_pair_file(const std::string& path, int index_base);

}  // namespace leadsel::cli
