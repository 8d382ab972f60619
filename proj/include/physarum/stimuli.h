#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "physarum/field.h"
#include "physarum/occupancy.h"

namespace physarum {

enum class SourceKind { attractant, repellent };
enum class FootprintShape { point, disk, rect, rect_outline };

struct Footprint {
  FootprintShape shape = FootprintShape::point;
  int radius = 0;  // disk
  int w = 0;       // rect, rect_outline
  int h = 0;

  bool operator==(const Footprint&) const = default;
};

struct Suppression {
  double coverage_threshold = 0.5;
  double factor = 0.0;  // residual projection while suppressed

  bool operator==(const Suppression&) const = default;
};

struct StimulusSource {
  std::string id;
  SourceKind kind = SourceKind::attractant;
  CellPos center;
  Footprint footprint;
  double weight = 0.0;  // c.u. per footprint cell per step, sign comes from kind
  Suppression suppression;
  bool suppressed = false;

  double sign() const { return kind == SourceKind::attractant ? 1.0 : -1.0; }
  // Field increment per footprint cell at the current suppression state.
  double contribution() const {
    return sign() * weight * (suppressed ? suppression.factor : 1.0);
  }

  bool operator==(const StimulusSource&) const = default;
};

// Cells receiving projection, clipped to the lattice.
std::vector<CellPos> footprint_cells(const StimulusSource& source, int width, int height);

// Cells used for engulfment coverage: the projection footprint, except point
// sources use the 3x3 block around the center.
std::vector<CellPos> coverage_cells(const StimulusSource& source, int width, int height);

// Fraction of coverage cells holding an agent.
double coverage(const StimulusSource& source, const OccupancyGrid& occupancy);

// Depletable background nutrient. `amount` is per cell, row-major.
struct Substrate {
  bool enabled = false;
  std::vector<double> amount;
  double projection_rate = 0.001;
  double consumption = 0.1;

  double total() const;
  bool operator==(const Substrate&) const = default;
};

struct AddSource {
  StimulusSource source;
  bool operator==(const AddSource&) const = default;
};
struct RemoveSource {
  std::string id;
  bool operator==(const RemoveSource&) const = default;
};
struct SetWeight {
  std::string id;
  double weight = 0.0;
  bool operator==(const SetWeight&) const = default;
};

using EventAction = std::variant<AddSource, RemoveSource, SetWeight>;

struct ScheduledEvent {
  std::int64_t step = 0;
  EventAction action;
  bool operator==(const ScheduledEvent&) const = default;
};

using EventSchedule = std::vector<ScheduledEvent>;

// Raised when an event cannot be applied (unknown id, duplicate add).
class EventError : public std::runtime_error {
 public:
  EventError(std::int64_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::int64_t step() const { return step_; }

 private:
  std::int64_t step_;
};

// Adds every source's contribution to its footprint, then the substrate
// projection; occupied cells consume from the substrate reservoir.
void project(TrailField& field, const std::vector<StimulusSource>& sources, Substrate& substrate,
             const OccupancyGrid& occupancy);

// Recomputes each source's suppressed flag from current coverage.
void update_suppression(std::vector<StimulusSource>& sources, const OccupancyGrid& occupancy);

// Applies, in listed order, every event scheduled for step t.
void apply_events(const EventSchedule& schedule, std::int64_t t, std::vector<StimulusSource>& sources);

}  // namespace physarum
