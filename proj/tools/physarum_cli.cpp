#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "physarum/render.h"
#include "physarum/run.h"
#include "physarum/scenario.h"

namespace fs = std::filesystem;
using namespace physarum;

namespace {

constexpr int kUsage = 1;
constexpr int kInvalidScenario = 2;
constexpr int kRuntime = 3;

struct RunArgs {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> steps;
  std::optional<std::int64_t> frame_every;
  bool quiet = false;
};

// Loads a scenario file, or a builtin when no such file exists.
std::optional<Scenario> resolve(const std::string& ref, int& code) {
  if (fs::exists(ref)) {
    auto parsed = parse_scenario(read_text_file(ref));
    if (!parsed.ok()) {
      std::cerr << "invalid scenario " << ref << ":\n";
      for (const auto& e : parsed.errors) std::cerr << "  " << e << "\n";
      code = kInvalidScenario;
      return std::nullopt;
    }
    return parsed.scenario;
  }
  try {
    return builtin_scenario(ref);
  } catch (const std::invalid_argument& e) {
    std::cerr << "scenario '" << ref << "' is neither a readable file nor a builtin\n" << e.what() << "\n";
    code = kInvalidScenario;
    return std::nullopt;
  }
}

int do_run(const RunArgs& args) {
  if (args.steps && *args.steps <= 0) {
    std::cerr << "--steps must be > 0\n";
    return kUsage;
  }
  if (args.frame_every && *args.frame_every < 0) {
    std::cerr << "--frame-every must be >= 0\n";
    return kUsage;
  }
  int code = 0;
  auto sc = resolve(args.scenario, code);
  if (!sc) return code;
  if (args.seed) sc->seed = *args.seed;
  if (args.steps) sc->steps = *args.steps;
  if (args.frame_every) sc->outputs.frame_every = *args.frame_every;
  if (const auto errors = validate_scenario(*sc); !errors.empty()) {
    std::cerr << "invalid scenario:\n";
    for (const auto& e : errors) std::cerr << "  " << e << "\n";
    return kInvalidScenario;
  }
  try {
    run_to_directory(*sc, args.out, args.quiet ? nullptr : &std::cerr);
  } catch (const EventError& e) {
    std::cerr << "runtime failure at step " << e.step() << ": " << e.what() << "\n";
    return kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return kRuntime;
  }
  if (!args.quiet) std::cerr << "wrote " << args.out << "\n";
  return 0;
}

int do_analyze(const std::string& dir, const std::string& mode_name) {
  AnalyzeMode mode;
  if (mode_name == "tree") {
    mode = AnalyzeMode::tree;
  } else if (mode_name == "voronoi") {
    mode = AnalyzeMode::voronoi;
  } else if (mode_name == "morphology") {
    mode = AnalyzeMode::morphology;
  } else if (mode_name == "choice") {
    mode = AnalyzeMode::choice;
  } else {
    std::cerr << "unknown mode '" << mode_name << "' (tree, voronoi, morphology, choice)\n";
    return kUsage;
  }
  std::string report;
  try {
    report = analyze_directory(dir, mode);
  } catch (const std::exception& e) {
    std::cerr << "cannot analyze " << dir << ": " << e.what() << "\n";
    return kInvalidScenario;
  }
  std::cout << report << "\n";
  try {
    write_text_file(fs::path(dir) / ("report_" + mode_name + ".json"), report + "\n");
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kRuntime;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-based slime mould simulator with network analysis"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write its outputs");
  run_cmd->add_option("--scenario", run.scenario, "Scenario file or builtin name")->required();
  run_cmd->add_option("--out", run.out, "Output directory")->required();
  run_cmd->add_option("--seed", run.seed, "Override the scenario seed");
  run_cmd->add_option("--steps", run.steps, "Override the step count");
  run_cmd->add_option("--frame-every", run.frame_every, "Override the frame interval (0 disables frames)");
  run_cmd->add_flag("--quiet", run.quiet, "Suppress progress output");

  std::string run_dir;
  std::string mode;
  auto* analyze_cmd = app.add_subcommand("analyze", "Recompute a report from a finished run directory");
  analyze_cmd->add_option("--run", run_dir, "Run directory")->required();
  analyze_cmd->add_option("--mode", mode, "tree, voronoi, morphology or choice")->required();

  auto* list_cmd = app.add_subcommand("list", "List builtin scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*run_cmd) return do_run(run);
  if (*analyze_cmd) return do_analyze(run_dir, mode);
  if (*list_cmd) {
    for (const auto& n : builtin_names()) std::cout << n << "\n";
  }
  return 0;
}
