#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "physarum/field.h"
#include "physarum/occupancy.h"
#include "physarum/rng.h"
#include "physarum/stimuli.h"

namespace physarum {

struct Agent {
  AgentId id = 0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // degrees, [0, 360)

  int cell_x() const;
  int cell_y() const;
  bool operator==(const Agent&) const = default;
};

struct AgentParams {
  double sensor_angle = 45.0;
  double rotation_angle = 45.0;
  double sensor_offset = 9.0;
  double step_size = 1.0;
  double deposit = 5.0;

  bool operator==(const AgentParams&) const = default;
};

struct GrowthParams {
  bool enabled = true;
  int window = 9;
  int min_count = 1;
  int max_count = 10;
  double probability = 0.1;
  int frequency = 5;

  bool operator==(const GrowthParams&) const = default;
};

struct ShrinkParams {
  bool enabled = true;
  int window = 5;
  int overcrowd_count = 10;
  double probability = 0.25;
  int frequency = 5;

  bool operator==(const ShrinkParams&) const = default;
};

struct PopulationParams {
  GrowthParams growth;
  ShrinkParams shrink;

  bool operator==(const PopulationParams&) const = default;
};

enum class InoculationMode { disk, rect, full };

struct Inoculation {
  InoculationMode mode = InoculationMode::disk;
  CellPos center;
  int radius = 0;          // disk
  int w = 0;               // rect
  int h = 0;
  std::int64_t count = 1;  // disk, rect
  double coverage = 0.5;   // full

  bool operator==(const Inoculation&) const = default;
};

// Complete simulation state plus the parameters the step pipeline reads.
struct World {
  TrailField field;
  OccupancyGrid occupancy;
  std::vector<Agent> agents;
  std::vector<StimulusSource> sources;
  Substrate substrate;
  EventSchedule events;

  DiffusionParams diffusion;
  AgentParams agent_params;
  PopulationParams population;

  Rng rng;
  AgentId next_id = 0;

  // Buffers reused across steps; not part of the observable state.
  TrailField field_back;
  std::vector<double> scratch;
  std::vector<std::size_t> order;
};

World make_empty_world(int width, int height, std::uint64_t seed);

// Places an agent at the center of cell (x, y). The cell must be empty.
Agent& spawn_agent(World& world, int x, int y, double heading);

// Decision table on the three sensor readings. Draws from rng only when both
// side sensors beat the forward one.
double orient(double front, double left, double right, double heading, double rotation_angle, Rng& rng);

double sense_and_orient(const Agent& agent, const TrailField& field, const AgentParams& params, Rng& rng);

// Moves the agent one step forward when the target cell is free (or its own
// cell), depositing trail. A blocked agent keeps its position, picks a random
// heading, and deposits nothing.
bool attempt_move(Agent& agent, OccupancyGrid& occupancy, TrailField& field, const AgentParams& params,
                  Rng& rng);

void growth_test(World& world);
void shrink_test(World& world);

std::vector<CellPos> inoculation_region(const Inoculation& spec, int width, int height);
std::int64_t inoculation_count(const Inoculation& spec, int width, int height);

// Throws std::invalid_argument when the region cannot hold the requested count.
void inoculate(World& world, const Inoculation& spec);

// One full pipeline step: events, suppression, projection, sensory stage,
// motor stage, growth, shrink, diffusion. Throws EventError.
void scheduler_step(World& world, std::int64_t t);

// Agent list <-> occupancy bijection. Returns an empty string when it holds.
std::string audit_occupancy(const World& world);

double normalize_heading(double degrees);

}  // namespace physarum
