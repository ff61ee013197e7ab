#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli/app.hpp"
#include "cli/commands.hpp"
#include "leadsel/graph.hpp"

using namespace leadsel;
using nlohmann::json;

namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Invocation r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string tmp_path(const std::string& name) {
  std::filesystem::create_directories(LEADSEL_TEST_TMPDIR);
  return std::string(LEADSEL_TEST_TMPDIR) + "/" + name;
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = tmp_path(name);
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

std::string graph_file(const std::string& name, const Graph& g) {
  return write_file(name, serialize_edge_list(g));
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    EXPECT_FALSE(line.empty());
    EXPECT_EQ(line.back(), '\r');
    line.pop_back();
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST(Cli, CentralityPathMaxAtMiddle) {
  const auto path = graph_file("path9.edges", path_graph(9));
  const Invocation r = run({"centrality", path, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], "leadsel.report");
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["command"], "centrality");
  EXPECT_EQ(j["graph"]["n"], 9);
  EXPECT_EQ(j["graph"]["edges"], 8);
  EXPECT_EQ(j["payload"]["argmax_info_centrality"], json::array({4}));
  EXPECT_NEAR(j["payload"]["kirchhoff"].get<double>(), 120.0, 1e-9);
}

TEST(Cli, CsvAndJsonCarryIdenticalNumbers) {
  const auto path = graph_file("er12.edges", erdos_renyi(12, 0.3, 5));
  const Invocation js = run({"centrality", path});
  const Invocation cs = run({"--format", "csv", "centrality", path});
  ASSERT_EQ(js.code, 0);
  ASSERT_EQ(cs.code, 0);
  const json j = json::parse(js.out);
  const auto rows = parse_csv(cs.out);
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"node", "info_centrality", "lplus_diagonal",
                                               "certainty_inverse", "kirchhoff"}));
  for (int i = 0; i < 12; ++i) {
    const auto& node = j["payload"]["nodes"][i];
    EXPECT_EQ(std::stod(rows[i + 1][1]), node["info_centrality"].get<double>());
    EXPECT_EQ(std::stod(rows[i + 1][2]), node["lplus_diagonal"].get<double>());
    EXPECT_EQ(std::stod(rows[i + 1][4]), j["payload"]["kirchhoff"].get<double>());
  }
}

TEST(Cli, CentralityFullMatrices) {
  const auto path = graph_file("c5.edges", cycle_graph(5));
  const json j = json::parse(run({"centrality", path, "--full"}).out);
  EXPECT_EQ(j["payload"]["resistance"].size(), 5u);
  EXPECT_NEAR(j["payload"]["resistance"][0][1].get<double>(), 0.8, 1e-12);
  const auto rows = parse_csv(run({"centrality", path, "--full", "--format", "csv"}).out);
  EXPECT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows[0][2], "resistance");
}

TEST(Cli, MalformedFileNamesLine) {
  const auto path = write_file("bad.edges", "0 1\n1 2\n2 three\n");
  const Invocation r = run({"centrality", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run({"centrality", tmp_path("missing.edges")}).code, 2);
}

TEST(Cli, SelectCycleSixExhaustive) {
  const auto path = graph_file("cycle6.edges", cycle_graph(6));
  const Invocation r = run({"select", path, "--m", "3", "--mode", "noise-free", "--method", "exhaustive"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["payload"]["optimal_sets"], json::parse("[[0,2,4],[1,3,5]]"));
  EXPECT_EQ(j["payload"]["evaluated_count"], 20);
  EXPECT_NEAR(j["payload"]["total_error"].get<double>(), 0.75, 1e-12);
}

TEST(Cli, SelectPathClosedFormPaperCoordinates) {
  const auto path = graph_file("path9b.edges", path_graph(9));
  const Invocation r = run({"--index-base", "1", "select", path, "--m", "2", "--method", "closed-form",
                     "--topology", "path"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["payload"]["optimal_sets"], json::parse("[[2,8]]"));
  const Invocation zero = run({"select", path, "--m", "2", "--method", "closed-form", "--topology", "path"});
  EXPECT_EQ(json::parse(zero.out)["payload"]["optimal_sets"], json::parse("[[1,7]]"));
}

TEST(Cli, SelectGreedyWorseOnCycleTwelve) {
  const auto path = graph_file("cycle12.edges", cycle_graph(12));
  const json greedy = json::parse(run({"select", path, "--m", "3", "--method", "greedy"}).out);
  const json best = json::parse(run({"select", path, "--m", "3"}).out);
  EXPECT_GT(greedy["payload"]["total_error"].get<double>(), best["payload"]["total_error"].get<double>());
}

TEST(Cli, SelectErrors) {
  const auto path = graph_file("cycle20.edges", cycle_graph(20));
  const Invocation budget = run({"select", path, "--m", "5", "--budget", "1000"});
  EXPECT_EQ(budget.code, 3);
  EXPECT_NE(budget.err.find("greedy"), std::string::npos);
  EXPECT_EQ(run({"select", path, "--m", "2", "--method", "closed-form", "--topology", "path"}).code, 2);
  EXPECT_EQ(run({"select", path, "--m", "2", "--method", "closed-form"}).code, 2);
  EXPECT_EQ(run({"select", path, "--m", "3", "--method", "closed-form", "--topology", "cycle"}).code, 2);
  EXPECT_EQ(run({"select", path, "--m", "2", "--mode", "gain"}).code, 2);
  EXPECT_EQ(run({"select", path, "--m", "2", "--method", "bogus"}).code, 2);
  const Invocation gain = run({"select", path, "--m", "2", "--mode", "gain", "--k", "2", "--method",
                        "closed-form", "--topology", "cycle"});
  ASSERT_EQ(gain.code, 0) << gain.err;
  EXPECT_EQ(json::parse(gain.out)["payload"]["optimal_sets"].size(), 10u);
}

TEST(Cli, PairsTableAndHistogram) {
  const auto k4 = graph_file("complete4.edges", complete_graph(4));
  const json j = json::parse(run({"pairs", k4}).out);
  EXPECT_EQ(j["payload"]["count"], 6);
  EXPECT_TRUE(j["payload"]["histogram"]["degenerate"].get<bool>());
  int occupied = 0;
  for (const auto& c : j["payload"]["histogram"]["counts"]) occupied += c.get<int>() > 0;
  EXPECT_EQ(occupied, 1);

  const auto c4 = graph_file("cycle4.edges", cycle_graph(4));
  const auto pairs = write_file("pairs.txt", "# one pair\n0 2\n");
  const auto rows = parse_csv(run({"pairs", c4, "--pairs", pairs, "--format", "csv"}).out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "0");
  EXPECT_EQ(rows[1][1], "2");
  EXPECT_NEAR(std::stod(rows[1][2]), 4.0, 1e-12);

  const auto hist = parse_csv(run({"pairs", c4, "--histogram", "--bins", "4", "--format", "csv"}).out);
  EXPECT_EQ(hist.size(), 5u);
  EXPECT_EQ(run({"pairs", c4, "--budget", "2"}).code, 3);
  EXPECT_EQ(run({"pairs", c4, "--pairs", write_file("badpairs.txt", "0 x\n")}).code, 2);
}

TEST(Cli, VerifyGraphAndSuite) {
  const auto path = graph_file("cycle6v.edges", cycle_graph(6));
  const Invocation r = run({"verify", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_LT(j["payload"]["max_relative_deviation"].get<double>(), 1e-8);
  EXPECT_EQ(j["payload"]["sets_checked"], 6 + 15 + 20);

  const Invocation suite = run({"verify", "--suite", "small", "--format", "csv"});
  ASSERT_EQ(suite.code, 0);
  const auto rows = parse_csv(suite.out);
  EXPECT_EQ(rows[1][0], "27");
  EXPECT_EQ(rows[1][5], "0");

  const json a = json::parse(run({"verify", "--suite", "random", "--seed", "5"}).out);
  const json b = json::parse(run({"verify", "--suite", "random", "--seed", "5"}).out);
  EXPECT_EQ(a["payload"], b["payload"]);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"verify", path, "--suite", "small"}).code, 2);
}

TEST(Cli, VerifyReportsViolations) {
  const auto path = graph_file("cycle6w.edges", cycle_graph(6));
  const Invocation r = run({"verify", path, "--tolerance", "1e-300"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("identity violation"), std::string::npos);
  EXPECT_GT(json::parse(r.out)["payload"]["violation_count"].get<int>(), 0);
}

TEST(Cli, Simulate) {
  const auto k3 = graph_file("complete3.edges", complete_graph(3));
  const Invocation r = run({"simulate", k3, "--leaders", "0", "--mode", "gain", "--k", "1", "--steps",
                     "400000", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["payload"]["analytic_total_error"].get<double>(), 13.0 / 6.0, 1e-12);
  EXPECT_LT(j["payload"]["relative_gap"].get<double>(), 0.1);
  EXPECT_EQ(j["payload"]["nodes"].size(), 3u);
  const Invocation again = run({"simulate", k3, "--leaders", "0", "--mode", "gain", "--k", "1", "--steps",
                         "400000", "--seed", "3"});
  EXPECT_EQ(json::parse(again.out)["payload"], j["payload"]);

  const Invocation one = run({"--index-base", "1", "simulate", k3, "--leaders", "1", "--steps", "20000"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(json::parse(one.out)["parameters"]["leaders"], json::array({1}));
  EXPECT_EQ(json::parse(one.out)["payload"]["nodes"][0]["empirical_variance"], 0.0);

  const Invocation unstable = run({"simulate", k3, "--leaders", "0", "--dt", "2"});
  EXPECT_EQ(unstable.code, 5);
  EXPECT_NE(unstable.err.find("dt <"), std::string::npos);
  EXPECT_EQ(run({"simulate", k3, "--leaders", "0,0"}).code, 2);
  EXPECT_EQ(run({"simulate", k3, "--leaders", "7"}).code, 2);
}

TEST(Cli, GenerateRoundTrip) {
  const Invocation r = run({"generate", "erdos-renyi", "--n", "10", "--p", "0.4", "--seed", "9"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse_edge_list(r.out), erdos_renyi(10, 0.4, 9));
  const auto out = tmp_path("gen_cycle.edges");
  EXPECT_EQ(run({"generate", "cycle", "--n", "7", "-o", out}).code, 0);
  EXPECT_EQ(read_edge_list_file(out), cycle_graph(7));
  EXPECT_EQ(run({"generate", "cycle", "--n", "2"}).code, 2);
}

TEST(Cli, UsageErrorsAndHelp) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "centrality", "x"}).code, 2);
  const Invocation help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("select"), std::string::npos);
}

TEST(Cli, PayloadDeterministicApartFromTiming) {
  const auto path = graph_file("er10.edges", erdos_renyi(10, 0.4, 2));
  json a = json::parse(run({"select", path, "--m", "3"}).out);
  json b = json::parse(run({"select", path, "--m", "3", "--threads", "3"}).out);
  a.erase("timing_ms");
  b.erase("timing_ms");
  EXPECT_EQ(a["payload"], b["payload"]);
}

TEST(Cli, IdListParsing) {
  EXPECT_EQ(cli::parse_id_list("3, 1,4", 0), (std::vector<NodeId>{3, 1, 4}));
  EXPECT_EQ(cli::parse_id_list("1,2", 1), (std::vector<NodeId>{0, 1}));
  EXPECT_THROW(cli::parse_id_list("0,", 0), std::exception);
  EXPECT_THROW(cli::parse_id_list("0", 1), std::exception);
  EXPECT_THROW(cli::parse_id_list("a", 0), std::exception);
}
