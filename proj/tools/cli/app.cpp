#include "cli/app.hpp"

#include <exception>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "leadsel/error.hpp"
#include "leadsel/parallel.hpp"

namespace leadsel::cli {

namespace {

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::budget_exceeded:
      return kBudgetExceeded;
    case Errc::unstable:
      return kUnstable;
    case Errc::numerical_failure:
      return kInternalError;
    default:
      return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Joint centrality and optimal leader selection for noisy consensus networks",
               "leadsel"};
  app.set_version_flag("--version", std::string(LEADSEL_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  CommonOptions common;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--index-base", common.index_base, "Node id base for output and --leaders")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads (0: LEADSEL_THREADS or cores)");

  std::function<CommandOutput()> action;

  CentralityArgs centrality;
  auto* c = app.add_subcommand("centrality", "Per-node information centrality and L+ diagonal");
  c->add_option("graph", centrality.graph_file, "Edge-list file")->required();
  c->add_flag("--full", centrality.full, "Include resistance and biharmonic matrices");
  c->add_option("--sigma", centrality.sigma, "Noise intensity")->capture_default_str();
  c->callback([&] { action = [&] { return cmd_centrality(centrality, common); }; });

  SelectArgs select;
  auto* s = app.add_subcommand("select", "Optimal leader set of size m");
  s->add_option("graph", select.graph_file, "Edge-list file")->required();
  s->add_option("--m", select.m, "Number of leaders")->required();
  s->add_option("--mode", select.mode, "noise-free | gain")
      ->check(CLI::IsMember({"noise-free", "gain"}))
      ->capture_default_str();
  s->add_option("--k", select.k, "Leader gain (gain mode)");
  s->add_option("--method", select.method, "exhaustive | greedy | closed-form | oracle")
      ->check(CLI::IsMember({"exhaustive", "greedy", "closed-form", "oracle"}))
      ->capture_default_str();
  s->add_option("--topology", select.topology, "cycle | path (closed-form only)")
      ->check(CLI::IsMember({"cycle", "path"}));
  s->add_option("--sigma", select.sigma, "Noise intensity")->capture_default_str();
  s->add_option("--budget", select.budget, "Maximum candidate sets")->capture_default_str();
  s->callback([&] { action = [&] { return cmd_select(select, common); }; });

  PairsArgs pairs;
  auto* p = app.add_subcommand("pairs", "Two-leader joint centrality for every pair");
  p->add_option("graph", pairs.graph_file, "Edge-list file")->required();
  p->add_option("--bins", pairs.bins, "Histogram bins")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  p->add_option("--pairs", pairs.pair_file, "Restrict the sweep to pairs listed in this file");
  p->add_option("--budget", pairs.budget, "Maximum pairs")->capture_default_str();
  p->add_flag("--histogram", pairs.histogram_only, "CSV output lists histogram bins");
  p->callback([&] { action = [&] { return cmd_pairs(pairs, common); }; });

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check centrality-implied error against the trace oracle");
  v->add_option("graph", verify.graph_file, "Edge-list file");
  v->add_option("--suite", verify.suite, "Built-in suite: small | random | full")
      ->check(CLI::IsMember({"small", "random", "full"}));
  v->add_option("--seed", verify.seed, "Seed of the random suite")->capture_default_str();
  v->add_option("--max-m", verify.max_m, "Largest noise-free set size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  v->add_option("--tolerance", verify.tolerance, "Relative tolerance")->capture_default_str();
  v->add_option("--gains", verify.gains, "Gains for the gain-mode checks")->delimiter(',');
  v->callback([&] { action = [&] { return cmd_verify(verify, common); }; });

  SimulateArgs simulate;
  auto* m = app.add_subcommand("simulate", "Euler-Maruyama simulation of the tracking dynamics");
  m->add_option("graph", simulate.graph_file, "Edge-list file")->required();
  m->add_option("--leaders", simulate.leaders, "Comma-separated leader ids")->required();
  m->add_option("--mode", simulate.mode, "noise-free | gain")
      ->check(CLI::IsMember({"noise-free", "gain"}))
      ->capture_default_str();
  m->add_option("--k", simulate.k, "Leader gain (gain mode)");
  m->add_option("--sigma", simulate.sigma, "Noise intensity")->capture_default_str();
  m->add_option("--dt", simulate.dt, "Time step")->capture_default_str();
  m->add_option("--steps", simulate.steps, "Steps per replica")->capture_default_str();
  m->add_option("--burn-in", simulate.burn_in, "Discarded steps (default steps/10)");
  m->add_option("--seed", simulate.seed, "RNG seed")->capture_default_str();
  m->add_option("--mu", simulate.mu, "External signal")->capture_default_str();
  m->add_option("--replicas", simulate.replicas, "Independent trajectories")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  m->callback([&] { action = [&] { return cmd_simulate(simulate, common); }; });

  GenerateArgs generate;
  auto* gcmd = app.add_subcommand("generate", "Write a canonical graph as an edge list");
  gcmd->add_option("kind", generate.kind, "cycle | path | complete | erdos-renyi")
      ->required()
      ->check(CLI::IsMember({"cycle", "path", "complete", "erdos-renyi"}));
  gcmd->add_option("--n", generate.n, "Node count")->required();
  gcmd->add_option("--p", generate.p, "Edge probability (erdos-renyi)")->capture_default_str();
  gcmd->add_option("--seed", generate.seed, "RNG seed (erdos-renyi)")->capture_default_str();
  gcmd->add_option("-o,--output", generate.output, "Output file (default stdout)");
  gcmd->callback([&] { action = [&] { return cmd_generate(generate); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << LEADSEL_VERSION << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  common.format = format == "csv" ? Format::csv : Format::json;

  try {
    const CommandOutput result = action();
    out << result.text;
    err << result.diagnostics;
    return result.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace leadsel::cli
