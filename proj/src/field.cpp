#include "physarum/field.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace physarum {

bool is_valid(const DiffusionParams& params) {
  return params.kernel >= 3 && params.kernel % 2 == 1 && params.decay >= 0.0 && params.decay < 1.0;
}

TrailField::TrailField(int width, int height, double fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("lattice dimensions must be positive");
  }
  values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

TrailField diffuse(const TrailField& field, const DiffusionParams& params) {
  TrailField out(field.width(), field.height());
  std::vector<double> scratch;
  diffuse_into(field, params, out, scratch);
  return out;
}

// Separable box sum: horizontal window sums into scratch, then vertical window
// sums of those. Each window is summed directly (no running sum) so zero
// regions stay exactly zero.
void diffuse_into(const TrailField& in, const DiffusionParams& params, TrailField& out,
                  std::vector<double>& scratch) {
  const int w = in.width();
  const int h = in.height();
  const int r = params.kernel / 2;
  if (out.width() != w || out.height() != h) out = TrailField(w, h);
  scratch.assign(in.size(), 0.0);

  const auto src = in.values();
  for (int y = 0; y < h; ++y) {
    const double* row = src.data() + static_cast<std::size_t>(y) * w;
    double* dst = scratch.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const int lo = std::max(0, x - r);
      const int hi = std::min(w - 1, x + r);
      double s = 0.0;
      for (int i = lo; i <= hi; ++i) s += row[i];
      dst[x] = s;
    }
  }

  const double scale = (1.0 - params.decay) / static_cast<double>(params.kernel * params.kernel);
  auto dst = out.values();
  for (int y = 0; y < h; ++y) {
    const int lo = std::max(0, y - r);
    const int hi = std::min(h - 1, y + r);
    double* orow = dst.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) orow[x] = 0.0;
    for (int j = lo; j <= hi; ++j) {
      const double* srow = scratch.data() + static_cast<std::size_t>(j) * w;
      for (int x = 0; x < w; ++x) orow[x] += srow[x];
    }
    for (int x = 0; x < w; ++x) orow[x] *= scale;
  }
}

void deposit(TrailField& field, double x, double y, double amount) {
  const int cx = static_cast<int>(std::floor(x));
  const int cy = static_cast<int>(std::floor(y));
  if (!field.in_bounds(cx, cy)) {
    throw std::out_of_range("deposit outside lattice at (" + std::to_string(x) + ", " +
                            std::to_string(y) + ")");
  }
  field.at(cx, cy) += amount;
}

double sample_sensor(const TrailField& field, double x, double y, double heading,
                     double angle_offset, double sensor_offset) {
  const double a = (heading + angle_offset) * (std::numbers::pi / 180.0);
  const int cx = static_cast<int>(std::floor(x + sensor_offset * std::cos(a)));
  const int cy = static_cast<int>(std::floor(y + sensor_offset * std::sin(a)));
  return field.in_bounds(cx, cy) ? field.at(cx, cy) : 0.0;
}

double field_total(const TrailField& field) {
  // Neumaier summation.
  double sum = 0.0;
  double c = 0.0;
  for (double v : field.values()) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      c += (sum - t) + v;
    } else {
      c += (v - t) + sum;
    }
    sum = t;
  }
  return sum + c;
}

double field_min(const TrailField& field) {
  const auto v = field.values();
  return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end());
}

double field_max(const TrailField& field) {
  const auto v = field.values();
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

bool all_finite(const TrailField& field) {
  return std::all_of(field.values().begin(), field.values().end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace physarum
