#include "physarum/swarm.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace physarum {

namespace {

// Summed-area table over occupancy so window counts are O(1).
class OccupancyIntegral {
 public:
  explicit OccupancyIntegral(const OccupancyGrid& occ)
      : w_(occ.width()), h_(occ.height()), sums_(static_cast<std::size_t>(w_ + 1) * (h_ + 1), 0) {
    for (int y = 0; y < h_; ++y) {
      int row = 0;
      for (int x = 0; x < w_; ++x) {
        row += occ.occupied(x, y);
        sums_[idx(x + 1, y + 1)] = sums_[idx(x + 1, y)] + row;
      }
    }
  }

  // Occupied cells in the window x window block centered on (cx, cy), clipped.
  int window(int cx, int cy, int window) const {
    const int r = window / 2;
    const int x0 = std::max(0, cx - r);
    const int y0 = std::max(0, cy - r);
    const int x1 = std::min(w_, cx + r + 1);
    const int y1 = std::min(h_, cy + r + 1);
    return sums_[idx(x1, y1)] - sums_[idx(x0, y1)] - sums_[idx(x1, y0)] + sums_[idx(x0, y0)];
  }

 private:
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * (w_ + 1) + x; }

  int w_;
  int h_;
  std::vector<int> sums_;
};

void fresh_order(World& world) {
  world.order.resize(world.agents.size());
  std::iota(world.order.begin(), world.order.end(), std::size_t{0});
  world.rng.shuffle(std::span<std::size_t>(world.order));
}

}  // namespace

int Agent::cell_x() const { return static_cast<int>(std::floor(x)); }
int Agent::cell_y() const { return static_cast<int>(std::floor(y)); }

double normalize_heading(double degrees) {
  double h = std::fmod(degrees, 360.0);
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h = 0.0;
  return h;
}

World make_empty_world(int width, int height, std::uint64_t seed) {
  World world;
  world.field = TrailField(width, height);
  world.field_back = TrailField(width, height);
  world.occupancy = OccupancyGrid(width, height);
  world.rng = Rng(seed);
  return world;
}

Agent& spawn_agent(World& world, int x, int y, double heading) {
  if (!world.occupancy.in_bounds(x, y) || world.occupancy.occupied(x, y)) {
    throw std::logic_error("spawn_agent: cell unavailable");
  }
  const AgentId id = world.next_id++;
  world.occupancy.place(x, y, id);
  world.agents.push_back({id, x + 0.5, y + 0.5, normalize_heading(heading)});
  return world.agents.back();
}

double orient(double front, double left, double right, double heading, double rotation_angle, Rng& rng) {
  double h = heading;
  if (front >= left && front >= right) {
    // keep heading
  } else if (front < left && front < right) {
    h += rng.chance(0.5) ? rotation_angle : -rotation_angle;
  } else if (left < right) {
    h += rotation_angle;
  } else if (right < left) {
    h -= rotation_angle;
  }
  return normalize_heading(h);
}

double sense_and_orient(const Agent& agent, const TrailField& field, const AgentParams& params, Rng& rng) {
  const double so = params.sensor_offset;
  const double f = sample_sensor(field, agent.x, agent.y, agent.heading, 0.0, so);
  const double fl = sample_sensor(field, agent.x, agent.y, agent.heading, -params.sensor_angle, so);
  const double fr = sample_sensor(field, agent.x, agent.y, agent.heading, params.sensor_angle, so);
  return orient(f, fl, fr, agent.heading, params.rotation_angle, rng);
}

bool attempt_move(Agent& agent, OccupancyGrid& occupancy, TrailField& field, const AgentParams& params,
                  Rng& rng) {
  const double a = agent.heading * (std::numbers::pi / 180.0);
  const double nx = agent.x + params.step_size * std::cos(a);
  const double ny = agent.y + params.step_size * std::sin(a);
  const int cx = static_cast<int>(std::floor(nx));
  const int cy = static_cast<int>(std::floor(ny));
  const int ox = agent.cell_x();
  const int oy = agent.cell_y();

  const bool own = cx == ox && cy == oy;
  if (!own && (!occupancy.in_bounds(cx, cy) || occupancy.occupied(cx, cy))) {
    agent.heading = rng.heading();
    return false;
  }
  if (!own) {
    occupancy.clear(ox, oy);
    occupancy.place(cx, cy, agent.id);
  }
  agent.x = nx;
  agent.y = ny;
  deposit(field, nx, ny, params.deposit);
  return true;
}

void growth_test(World& world) {
  const auto& gp = world.population.growth;
  const OccupancyIntegral counts(world.occupancy);
  fresh_order(world);
  auto& occ = world.occupancy;

  // Indices in `order` refer to agents present at the start of the pass;
  // spawned agents are appended and not tested this pass.
  const std::vector<std::size_t> order = world.order;
  std::vector<CellPos> empty;
  for (std::size_t idx : order) {
    const int ax = world.agents[idx].cell_x();
    const int ay = world.agents[idx].cell_y();
    const int n = counts.window(ax, ay, gp.window);
    if (n < gp.min_count || n > gp.max_count) continue;
    if (!world.rng.chance(gp.probability)) continue;
    empty.clear();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int x = ax + dx;
        const int y = ay + dy;
        if (occ.in_bounds(x, y) && !occ.occupied(x, y)) empty.push_back({x, y});
      }
    }
    if (empty.empty()) continue;
    const CellPos c = empty[world.rng.below(empty.size())];
    spawn_agent(world, c.x, c.y, world.rng.heading());
  }
}

void shrink_test(World& world) {
  const auto& sp = world.population.shrink;
  const OccupancyIntegral counts(world.occupancy);
  fresh_order(world);

  std::vector<char> removed(world.agents.size(), 0);
  for (std::size_t idx : world.order) {
    const Agent& a = world.agents[idx];
    const int n = counts.window(a.cell_x(), a.cell_y(), sp.window);
    if (n <= sp.overcrowd_count) continue;
    if (!world.rng.chance(sp.probability)) continue;
    world.occupancy.clear(a.cell_x(), a.cell_y());
    removed[idx] = 1;
  }

  std::size_t out = 0;
  for (std::size_t i = 0; i < world.agents.size(); ++i) {
    if (!removed[i]) world.agents[out++] = world.agents[i];
  }
  world.agents.resize(out);
}

std::vector<CellPos> inoculation_region(const Inoculation& spec, int width, int height) {
  std::vector<CellPos> cells;
  auto push = [&](int x, int y) {
    if (x >= 0 && y >= 0 && x < width && y < height) cells.push_back({x, y});
  };
  switch (spec.mode) {
    case InoculationMode::disk: {
      const int r = spec.radius;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
          if (dx * dx + dy * dy <= r * r) push(spec.center.x + dx, spec.center.y + dy);
      break;
    }
    case InoculationMode::rect: {
      const int x0 = spec.center.x - spec.w / 2;
      const int y0 = spec.center.y - spec.h / 2;
      for (int y = y0; y < y0 + spec.h; ++y)
        for (int x = x0; x < x0 + spec.w; ++x) push(x, y);
      break;
    }
    case InoculationMode::full:
      for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) push(x, y);
      break;
  }
  return cells;
}

std::int64_t inoculation_count(const Inoculation& spec, int width, int height) {
  if (spec.mode == InoculationMode::full) {
    return static_cast<std::int64_t>(
        std::llround(spec.coverage * static_cast<double>(width) * static_cast<double>(height)));
  }
  return spec.count;
}

void inoculate(World& world, const Inoculation& spec) {
  auto cells = inoculation_region(spec, world.field.width(), world.field.height());
  const std::int64_t n = inoculation_count(spec, world.field.width(), world.field.height());
  if (n < 0 || static_cast<std::size_t>(n) > cells.size()) {
    throw std::invalid_argument("inoculation count " + std::to_string(n) + " exceeds region capacity " +
                                std::to_string(cells.size()));
  }
  // Partial Fisher-Yates: the first n cells are a uniform sample.
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(world.rng.below(cells.size() - i));
    std::swap(cells[i], cells[j]);
  }
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    if (world.occupancy.occupied(cells[i].x, cells[i].y)) {
      throw std::invalid_argument("inoculation cell already occupied");
    }
    spawn_agent(world, cells[i].x, cells[i].y, world.rng.heading());
  }
}

void scheduler_step(World& world, std::int64_t t) {
  apply_events(world.events, t, world.sources);
  update_suppression(world.sources, world.occupancy);
  project(world.field, world.sources, world.substrate, world.occupancy);

  fresh_order(world);
  for (std::size_t idx : world.order) {
    Agent& a = world.agents[idx];
    a.heading = sense_and_orient(a, world.field, world.agent_params, world.rng);
  }

  fresh_order(world);
  for (std::size_t idx : world.order) {
    attempt_move(world.agents[idx], world.occupancy, world.field, world.agent_params, world.rng);
  }

  const auto& pop = world.population;
  if (pop.growth.enabled && t % pop.growth.frequency == 0) growth_test(world);
  if (pop.shrink.enabled && t % pop.shrink.frequency == 0) shrink_test(world);

  diffuse_into(world.field, world.diffusion, world.field_back, world.scratch);
  std::swap(world.field, world.field_back);
}

std::string audit_occupancy(const World& world) {
  const auto& occ = world.occupancy;
  std::size_t matched = 0;
  for (const auto& a : world.agents) {
    const int x = a.cell_x();
    const int y = a.cell_y();
    if (!occ.in_bounds(x, y)) return "agent " + std::to_string(a.id) + " out of bounds";
    if (occ.at(x, y) != a.id) return "agent " + std::to_string(a.id) + " not registered at its cell";
    ++matched;
  }
  if (occ.count() != matched) {
    return "occupancy holds " + std::to_string(occ.count()) + " ids for " + std::to_string(matched) +
           " agents";
  }
  return {};
}

}  // namespace physarum
