#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "physarum/occupancy.h"
#include "physarum/stimuli.h"

namespace physarum {

struct World;

class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height) : width_(width), height_(height), bits_(static_cast<std::size_t>(width) * height, 0) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  bool get(int x, int y) const { return bits_[index(x, y)] != 0; }
  // Out-of-bounds reads as clear.
  bool test(int x, int y) const { return in_bounds(x, y) && get(x, y); }
  void set(int x, int y, bool v = true) { bits_[index(x, y)] = v ? 1 : 0; }

  std::size_t popcount() const;
  bool subset_of(const BinaryMask& other) const;

  bool operator==(const BinaryMask&) const = default;

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

using LabelGrid = std::vector<int>;  // row-major, one label per cell

struct Point {
  double x = 0.0;
  double y = 0.0;
};

BinaryMask occupancy_mask(const OccupancyGrid& occupancy);

// Dilation then erosion with a (2r+1)^2 square; r = 0 returns the input.
BinaryMask close_mask(const BinaryMask& mask, int radius);

// Zhang-Suen thinning. A component that a pass would erase entirely keeps
// one pixel, so the 8-connected component count is preserved.
BinaryMask skeletonize(const BinaryMask& mask);

// 8-connected component labels (-1 for clear cells); returns component count.
int label_components(const BinaryMask& mask, LabelGrid& labels);
int count_components(const BinaryMask& mask);

// 4-connected background components that do not touch the lattice border.
int count_holes(const BinaryMask& mask);

// Orthogonal steps 1, diagonal steps sqrt(2); a diagonal is skipped when an
// orthogonal path through a shared neighbour already links the pair.
double skeleton_length(const BinaryMask& skeleton);

struct NetworkNode {
  std::string id;
  Point position;
  bool attached = false;
  int component = -1;  // mask component id, -1 when unattached
};

struct NetworkGraph {
  std::vector<NetworkNode> nodes;
  int connected_components = 0;  // components holding >= 1 attached source
  int holes = 0;
  double skeleton_length = 0.0;

  bool all_attached() const;
  bool is_tree() const { return connected_components == 1 && holes == 0; }
};

NetworkGraph topology(const BinaryMask& mask, const std::vector<StimulusSource>& sources);

struct MstEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double length = 0.0;
};

struct MstResult {
  std::vector<MstEdge> edges;
  double total_length = 0.0;
};

// Exact Euclidean MST (Prim over the complete graph). Throws
// std::invalid_argument on empty input or duplicate points.
MstResult mst_oracle(const std::vector<Point>& points);

// Per-cell argmin of distance(cell center, site) / weight; ties go to the
// lowest site index. Throws std::invalid_argument on empty sites or
// non-positive weights.
LabelGrid weighted_voronoi_oracle(const std::vector<Point>& sites, const std::vector<double>& weights,
                                  int width, int height);

// Fraction of set mask cells outside a border_margin frame that lie within
// Chebyshev distance `tol` of a label boundary. An empty mask scores 1.
double boundary_agreement(const BinaryMask& mask, const LabelGrid& labels, int tol, int border_margin);

struct Morphology {
  double coverage = 0.0;
  double compactness = 0.0;
};

Morphology morphology_metrics(const BinaryMask& mask);

struct SourceStatus {
  std::string id;
  bool present = false;
  double coverage = 0.0;
  bool suppressed = false;
  double centroid_distance = 0.0;
};

struct MetricsRecord {
  std::int64_t step = 0;
  std::int64_t population = 0;
  double coverage = 0.0;
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  double field_min = 0.0;
  double field_max = 0.0;
  double field_total = 0.0;
  std::vector<SourceStatus> sources;  // fixed order, see source_columns
};

// Every source id that can appear in a run: initial sources, then ids added
// by events, in order of first appearance.
std::vector<std::string> source_columns(const std::vector<StimulusSource>& initial, const EventSchedule& events);

MetricsRecord record_metrics(const World& world, std::int64_t step, const std::vector<std::string>& columns);

inline constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

struct ChoiceEntry {
  std::string id;
  std::int64_t first_suppressed = kNever;
};

// Sources ordered by the first step they were seen suppressed; never
// suppressed sources sort last, ties by id.
std::vector<ChoiceEntry> choice_order(const std::vector<MetricsRecord>& history,
                                      const std::vector<std::string>& source_ids);

}  // namespace physarum
