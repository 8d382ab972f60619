#pragma once

#include <span>
#include <vector>

namespace physarum {

enum class Boundary { absorbing };

struct DiffusionParams {
  int kernel = 3;      // odd, >= 3
  double decay = 0.1;  // fraction lost per step, [0, 1)
  Boundary boundary = Boundary::absorbing;

  bool operator==(const DiffusionParams&) const = default;
};

bool is_valid(const DiffusionParams& params);

// Concentration lattice, row-major. Values may be negative (repellents).
class TrailField {
 public:
  TrailField() = default;
  TrailField(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  double at(int x, int y) const { return values_[index(x, y)]; }
  double& at(int x, int y) { return values_[index(x, y)]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool operator==(const TrailField&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

// Kernel-mean filter with absorbing boundary, then multiplicative decay.
TrailField diffuse(const TrailField& field, const DiffusionParams& params);

// Same operator writing into a preallocated buffer; `out` must not alias `in`.
void diffuse_into(const TrailField& in, const DiffusionParams& params, TrailField& out,
                  std::vector<double>& scratch);

// Adds `amount` to the cell containing (x, y). Throws std::out_of_range when
// the point is outside the lattice.
void deposit(TrailField& field, double x, double y, double amount);

// Reads the cell at distance `sensor_offset` along heading + angle_offset
// (degrees). Out-of-bounds reads return 0.
double sample_sensor(const TrailField& field, double x, double y, double heading,
                     double angle_offset, double sensor_offset);

// Compensated sum over all cells.
double field_total(const TrailField& field);

double field_min(const TrailField& field);
double field_max(const TrailField& field);

bool all_finite(const TrailField& field);

}  // namespace physarum
