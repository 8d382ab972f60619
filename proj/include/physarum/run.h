#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "physarum/analysis.h"
#include "physarum/scenario.h"
#include "physarum/swarm.h"

namespace physarum {

// Fresh world for a scenario: parameters, sources, substrate, inoculation.
World build_world(const Scenario& scenario);

// Drives scheduler_step over a scenario and keeps the metrics history.
class Simulation {
 public:
  explicit Simulation(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  const World& world() const { return world_; }
  World& world() { return world_; }

  std::int64_t next_step() const { return t_; }
  bool done() const { return t_ >= scenario_.steps; }

  bool metrics_due(std::int64_t t) const;
  bool frame_due(std::int64_t t) const;

  // Executes step next_step(); records metrics when due. Throws EventError.
  void step();
  void run_to_end();

  const std::vector<MetricsRecord>& history() const { return history_; }
  const std::vector<std::string>& columns() const { return columns_; }

  // Cells occupied during any of the last outputs.mask_window executed steps.
  BinaryMask trace() const;

 private:
  Scenario scenario_;
  World world_;
  std::int64_t t_ = 0;
  std::vector<std::string> columns_;
  std::vector<MetricsRecord> history_;
  std::vector<std::int64_t> last_visit_;
};

// Occupancy trace closed by `closing` cells; the mask every network analysis uses.
BinaryMask network_mask(const BinaryMask& trace, int closing);

struct TreeReport {
  NetworkGraph graph;
  MstResult mst;
  double ratio = 0.0;  // skeleton length / MST length
  bool spanning_tree = false;
};

// Network over attractant sources.
TreeReport tree_report(const BinaryMask& network, const std::vector<StimulusSource>& sources);

struct VoronoiReport {
  std::size_t sites = 0;
  std::size_t evaluated_cells = 0;  // mask cells outside the border margin
  double classical = 1.0;  // agreement with the equal-weight diagram
  double weighted = 1.0;   // agreement with the weight-scaled diagram
};

// Agreement of the network with diagrams over repellent source centers.
VoronoiReport voronoi_report(const BinaryMask& network, const std::vector<StimulusSource>& sources, int tolerance,
                             int border_margin);

// Final world state on disk (JSON text): step, agents, field, sources,
// substrate reservoir and, when given, the occupancy trace.
void save_snapshot(const World& world, std::int64_t steps_done, const std::filesystem::path& path,
                   const BinaryMask* trace = nullptr);
// A snapshot without a trace yields the final occupancy as trace.
World load_snapshot(const std::filesystem::path& path, std::int64_t* steps_done = nullptr, BinaryMask* trace = nullptr);

std::string tree_report_json(const TreeReport& report);
std::string voronoi_report_json(const VoronoiReport& report);
std::string morphology_report_json(const Morphology& m);
std::string choice_report_json(const std::vector<ChoiceEntry>& order);

// Runs the scenario to completion writing scenario.resolved, frames,
// metrics.csv, state.json and report.json under `out`. Throws EventError.
void run_to_directory(const Scenario& scenario, const std::filesystem::path& out, std::ostream* log);

enum class AnalyzeMode { tree, voronoi, morphology, choice };

// Recomputes a report from a finished run directory and returns it as JSON.
// Throws std::runtime_error when artifacts are missing.
std::string analyze_directory(const std::filesystem::path& run_dir, AnalyzeMode mode);

}  // namespace physarum
