#include "physarum/stimuli.h"

#include <algorithm>

namespace physarum {

namespace {

void push_clipped(std::vector<CellPos>& out, int x, int y, int width, int height) {
  if (x >= 0 && y >= 0 && x < width && y < height) out.push_back({x, y});
}

// Rect of w x h cells whose top-left is center - (w/2, h/2).
void rect_cells(std::vector<CellPos>& out, CellPos c, int w, int h, bool outline, int width,
                int height) {
  const int x0 = c.x - w / 2;
  const int y0 = c.y - h / 2;
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) {
      const bool edge = y == y0 || y == y0 + h - 1 || x == x0 || x == x0 + w - 1;
      if (!outline || edge) push_clipped(out, x, y, width, height);
    }
  }
}

}  // namespace

std::vector<CellPos> footprint_cells(const StimulusSource& source, int width, int height) {
  std::vector<CellPos> out;
  const auto& fp = source.footprint;
  const CellPos c = source.center;
  switch (fp.shape) {
    case FootprintShape::point:
      push_clipped(out, c.x, c.y, width, height);
      break;
    case FootprintShape::disk: {
      const int r = fp.radius;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          if (dx * dx + dy * dy <= r * r) push_clipped(out, c.x + dx, c.y + dy, width, height);
        }
      }
      break;
    }
    case FootprintShape::rect:
      rect_cells(out, c, fp.w, fp.h, false, width, height);
      break;
    case FootprintShape::rect_outline:
      rect_cells(out, c, fp.w, fp.h, true, width, height);
      break;
  }
  return out;
}

std::vector<CellPos> coverage_cells(const StimulusSource& source, int width, int height) {
  if (source.footprint.shape != FootprintShape::point) return footprint_cells(source, width, height);
  std::vector<CellPos> out;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      push_clipped(out, source.center.x + dx, source.center.y + dy, width, height);
    }
  }
  return out;
}

double coverage(const StimulusSource& source, const OccupancyGrid& occupancy) {
  const auto cells = coverage_cells(source, occupancy.width(), occupancy.height());
  if (cells.empty()) return 0.0;
  std::size_t hit = 0;
  for (const auto& c : cells) hit += occupancy.occupied(c.x, c.y);
  return static_cast<double>(hit) / static_cast<double>(cells.size());
}

double Substrate::total() const {
  double s = 0.0;
  for (double a : amount) s += a;
  return s;
}

void project(TrailField& field, const std::vector<StimulusSource>& sources, Substrate& substrate,
             const OccupancyGrid& occupancy) {
  for (const auto& src : sources) {
    const double delta = src.contribution();
    if (delta == 0.0) continue;
    for (const auto& c : footprint_cells(src, field.width(), field.height())) field.at(c.x, c.y) += delta;
  }

  if (!substrate.enabled) return;
  auto values = field.values();
  const auto& cells = occupancy.cells();
  for (std::size_t i = 0; i < values.size(); ++i) {
    double& a = substrate.amount[i];
    if (a <= 0.0) continue;
    values[i] += a * substrate.projection_rate;
    if (cells[i] != kNoAgent) a -= std::min(a, substrate.consumption);
  }
}

void update_suppression(std::vector<StimulusSource>& sources, const OccupancyGrid& occupancy) {
  for (auto& src : sources) {
    src.suppressed = coverage(src, occupancy) >= src.suppression.coverage_threshold;
  }
}

void apply_events(const EventSchedule& schedule, std::int64_t t, std::vector<StimulusSource>& sources) {
  auto find = [&](const std::string& id) {
    return std::find_if(sources.begin(), sources.end(), [&](const auto& s) { return s.id == id; });
  };
  for (const auto& ev : schedule) {
    if (ev.step != t) continue;
    if (const auto* add = std::get_if<AddSource>(&ev.action)) {
      if (find(add->source.id) != sources.end()) {
        throw EventError(t, "add_source: id '" + add->source.id + "' already present");
      }
      sources.push_back(add->source);
    } else if (const auto* rm = std::get_if<RemoveSource>(&ev.action)) {
      auto it = find(rm->id);
      if (it == sources.end()) throw EventError(t, "remove_source: unknown id '" + rm->id + "'");
      sources.erase(it);
    } else if (const auto* sw = std::get_if<SetWeight>(&ev.action)) {
      auto it = find(sw->id);
      if (it == sources.end()) throw EventError(t, "set_weight: unknown id '" + sw->id + "'");
      it->weight = sw->weight;
    }
  }
}

}  // namespace physarum
