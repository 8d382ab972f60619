#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "physarum/field.h"
#include "physarum/stimuli.h"
#include "physarum/swarm.h"

namespace physarum {

enum class RegionShape { full, disk, rect };

struct Region {
  RegionShape shape = RegionShape::full;
  CellPos center;
  int radius = 0;
  int w = 0;
  int h = 0;

  bool operator==(const Region&) const = default;
};

struct SubstrateSpec {
  bool enabled = false;
  double amount = 0.0;  // initial reservoir per cell inside `region`
  Region region;
  double projection_rate = 0.001;
  double consumption = 0.1;

  bool operator==(const SubstrateSpec&) const = default;
};

struct FieldRange {
  double min = 0.0;
  double max = 0.0;
  bool operator==(const FieldRange&) const = default;
};

// Analyses the run report computes against exact oracles.
struct OracleTargets {
  bool tree = false;     // MST ratio over attractant centers
  bool voronoi = false;  // boundary agreement against repellent centers
  int tolerance = 6;
  int border_margin = 10;

  bool operator==(const OracleTargets&) const = default;
};

struct OutputSpec {
  std::int64_t frame_every = 0;  // 0 disables frames
  std::int64_t metrics_every = 10;
  std::optional<FieldRange> field_range;  // fixed normalization for field frames
  int mask_closing = 1;                   // closing radius for the network mask
  std::int64_t mask_window = 1;           // trailing steps of occupancy merged into the mask
  OracleTargets oracles;

  bool operator==(const OutputSpec&) const = default;
};

struct PopulationSpec {
  Inoculation inoculation;
  PopulationParams params;

  bool operator==(const PopulationSpec&) const = default;
};

struct Scenario {
  std::string name;
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
  std::int64_t steps = 1;
  DiffusionParams diffusion;
  AgentParams agents;
  PopulationSpec population;
  SubstrateSpec substrate;
  std::vector<StimulusSource> sources;
  EventSchedule events;
  OutputSpec outputs;

  bool operator==(const Scenario&) const = default;
};

// Every violation found while reading or validating a scenario.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct ParseResult {
  std::optional<Scenario> scenario;
  std::vector<std::string> errors;

  bool ok() const { return scenario.has_value(); }
};

// Parses a JSON document and validates it, collecting all violations.
ParseResult parse_scenario(const std::string& text);

// Throws ScenarioError.
Scenario parse_scenario_or_throw(const std::string& text);

// Full document with every default spelled out.
std::string serialize_scenario(const Scenario& scenario);

// Cross-field checks on an already-typed scenario (lattice bounds, event ids,
// parameter ranges).
std::vector<std::string> validate_scenario(const Scenario& scenario);

// One source as a JSON object, same schema as the scenario document.
std::string source_to_json(const StimulusSource& source);
// Throws ScenarioError.
StimulusSource source_from_json(const std::string& text);

std::vector<std::string> builtin_names();

// Throws std::invalid_argument listing the valid names when `name` is unknown.
Scenario builtin_scenario(const std::string& name);

}  // namespace physarum
