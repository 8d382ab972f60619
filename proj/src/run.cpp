#include "physarum/run.h"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "physarum/render.h"

namespace physarum {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

bool in_region(const Region& r, int x, int y) {
  switch (r.shape) {
    case RegionShape::full:
      return true;
    case RegionShape::disk: {
      const int dx = x - r.center.x;
      const int dy = y - r.center.y;
      return dx * dx + dy * dy <= r.radius * r.radius;
    }
    case RegionShape::rect: {
      const int x0 = r.center.x - r.w / 2;
      const int y0 = r.center.y - r.h / 2;
      return x >= x0 && y >= y0 && x < x0 + r.w && y < y0 + r.h;
    }
  }
  return false;
}

std::vector<StimulusSource> of_kind(const std::vector<StimulusSource>& sources, SourceKind kind) {
  std::vector<StimulusSource> out;
  for (const auto& s : sources)
    if (s.kind == kind) out.push_back(s);
  return out;
}

}  // namespace

World build_world(const Scenario& sc) {
  World world = make_empty_world(sc.width, sc.height, sc.seed);
  world.diffusion = sc.diffusion;
  world.agent_params = sc.agents;
  world.population = sc.population.params;
  world.sources = sc.sources;
  world.events = sc.events;

  auto& sub = world.substrate;
  sub.enabled = sc.substrate.enabled;
  sub.projection_rate = sc.substrate.projection_rate;
  sub.consumption = sc.substrate.consumption;
  if (sub.enabled) {
    sub.amount.assign(static_cast<std::size_t>(sc.width) * sc.height, 0.0);
    for (int y = 0; y < sc.height; ++y)
      for (int x = 0; x < sc.width; ++x)
        if (in_region(sc.substrate.region, x, y)) sub.amount[static_cast<std::size_t>(y) * sc.width + x] = sc.substrate.amount;
  }

  inoculate(world, sc.population.inoculation);
  return world;
}

Simulation::Simulation(Scenario scenario)
    : scenario_(std::move(scenario)),
      world_(build_world(scenario_)),
      columns_(source_columns(scenario_.sources, scenario_.events)),
      last_visit_(static_cast<std::size_t>(scenario_.width) * scenario_.height, -1) {}

bool Simulation::metrics_due(std::int64_t t) const {
  return t % scenario_.outputs.metrics_every == 0 || t == scenario_.steps - 1;
}

bool Simulation::frame_due(std::int64_t t) const {
  const auto every = scenario_.outputs.frame_every;
  return every > 0 && (t % every == 0 || t == scenario_.steps - 1);
}

void Simulation::step() {
  scheduler_step(world_, t_);
  const int w = world_.occupancy.width();
  for (const auto& a : world_.agents) last_visit_[static_cast<std::size_t>(a.cell_y()) * w + a.cell_x()] = t_;
  if (metrics_due(t_)) history_.push_back(record_metrics(world_, t_, columns_));
  ++t_;
}

void Simulation::run_to_end() {
  while (!done()) step();
}

BinaryMask Simulation::trace() const {
  const int w = world_.occupancy.width();
  const int h = world_.occupancy.height();
  if (t_ == 0) return occupancy_mask(world_.occupancy);
  const std::int64_t since = t_ - scenario_.outputs.mask_window;
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const auto v = last_visit_[static_cast<std::size_t>(y) * w + x];
      if (v >= 0 && v >= since) m.set(x, y, true);
    }
  return m;
}

BinaryMask network_mask(const BinaryMask& trace, int closing) {
  return close_mask(trace, closing);
}

TreeReport tree_report(const BinaryMask& network, const std::vector<StimulusSource>& sources) {
  TreeReport rep;
  const auto nodes = of_kind(sources, SourceKind::attractant);
  rep.graph = topology(network, nodes);
  if (!nodes.empty()) {
    std::vector<Point> pts;
    for (const auto& n : nodes) pts.push_back({n.center.x + 0.5, n.center.y + 0.5});
    rep.mst = mst_oracle(pts);
    if (rep.mst.total_length > 0.0) rep.ratio = rep.graph.skeleton_length / rep.mst.total_length;
  }
  rep.spanning_tree = !nodes.empty() && rep.graph.all_attached() && rep.graph.is_tree();
  return rep;
}

VoronoiReport voronoi_report(const BinaryMask& network, const std::vector<StimulusSource>& sources, int tolerance,
                             int border_margin) {
  VoronoiReport rep;
  const auto sites_src = of_kind(sources, SourceKind::repellent);
  rep.sites = sites_src.size();
  if (sites_src.empty()) return rep;
  std::vector<Point> sites;
  std::vector<double> weights;
  for (const auto& s : sites_src) {
    sites.push_back({s.center.x + 0.5, s.center.y + 0.5});
    weights.push_back(s.weight > 0.0 ? s.weight : 1.0);
  }
  const int w = network.width();
  const int h = network.height();
  for (int y = border_margin; y < h - border_margin; ++y)
    for (int x = border_margin; x < w - border_margin; ++x)
      if (network.test(x, y)) ++rep.evaluated_cells;
  const auto classical = weighted_voronoi_oracle(sites, std::vector<double>(sites.size(), 1.0), w, h);
  const auto weighted = weighted_voronoi_oracle(sites, weights, w, h);
  rep.classical = boundary_agreement(network, classical, tolerance, border_margin);
  rep.weighted = boundary_agreement(network, weighted, tolerance, border_margin);
  return rep;
}

void save_snapshot(const World& world, std::int64_t steps_done, const fs::path& path, const BinaryMask* trace) {
  ordered_json j;
  j["format"] = "physarum-state/1";
  j["steps_done"] = steps_done;
  j["width"] = world.field.width();
  j["height"] = world.field.height();
  j["next_id"] = world.next_id;
  auto agents = ordered_json::array();
  for (const auto& a : world.agents) agents.push_back({a.id, a.x, a.y, a.heading});
  j["agents"] = std::move(agents);
  auto sources = ordered_json::array();
  for (const auto& s : world.sources) {
    auto sj = ordered_json::parse(source_to_json(s));
    sj["suppressed"] = s.suppressed;
    sources.push_back(std::move(sj));
  }
  j["sources"] = std::move(sources);
  j["field"] = std::vector<double>(world.field.values().begin(), world.field.values().end());
  j["substrate"] = {{"enabled", world.substrate.enabled},
                    {"projection_rate", world.substrate.projection_rate},
                    {"consumption", world.substrate.consumption},
                    {"amount", world.substrate.amount}};
  if (trace) {
    std::vector<std::size_t> cells;
    for (int y = 0; y < trace->height(); ++y)
      for (int x = 0; x < trace->width(); ++x)
        if (trace->test(x, y)) cells.push_back(static_cast<std::size_t>(y) * trace->width() + x);
    j["trace"] = cells;
  }
  write_text_file(path, j.dump() + "\n");
}

World load_snapshot(const fs::path& path, std::int64_t* steps_done, BinaryMask* trace) {
  json j;
  try {
    j = json::parse(read_text_file(path));
    if (j.at("format") != "physarum-state/1") throw std::runtime_error("unknown snapshot format");
    World world = make_empty_world(j.at("width").get<int>(), j.at("height").get<int>(), 0);
    world.next_id = j.at("next_id").get<AgentId>();
    if (steps_done) *steps_done = j.at("steps_done").get<std::int64_t>();
    for (const auto& a : j.at("agents")) {
      Agent agent{a.at(0).get<AgentId>(), a.at(1).get<double>(), a.at(2).get<double>(), a.at(3).get<double>()};
      if (!world.occupancy.in_bounds(agent.cell_x(), agent.cell_y()) ||
          world.occupancy.occupied(agent.cell_x(), agent.cell_y())) {
        throw std::runtime_error("snapshot agent " + std::to_string(agent.id) + " has an invalid cell");
      }
      world.occupancy.place(agent.cell_x(), agent.cell_y(), agent.id);
      world.agents.push_back(agent);
    }
    for (const auto& sj : j.at("sources")) {
      json copy = sj;
      const bool suppressed = copy.at("suppressed").get<bool>();
      copy.erase("suppressed");
      auto src = source_from_json(copy.dump());
      src.suppressed = suppressed;
      world.sources.push_back(std::move(src));
    }
    const auto field = j.at("field").get<std::vector<double>>();
    if (field.size() != world.field.size()) throw std::runtime_error("snapshot field size mismatch");
    std::copy(field.begin(), field.end(), world.field.values().begin());
    const auto& sub = j.at("substrate");
    world.substrate.enabled = sub.at("enabled").get<bool>();
    world.substrate.projection_rate = sub.at("projection_rate").get<double>();
    world.substrate.consumption = sub.at("consumption").get<double>();
    world.substrate.amount = sub.at("amount").get<std::vector<double>>();
    if (trace) {
      if (j.contains("trace")) {
        *trace = BinaryMask(world.field.width(), world.field.height());
        for (const auto idx : j.at("trace").get<std::vector<std::size_t>>()) {
          if (idx >= world.field.size()) throw std::runtime_error("snapshot trace cell out of range");
          trace->set(static_cast<int>(idx % trace->width()), static_cast<int>(idx / trace->width()), true);
        }
      } else {
        *trace = occupancy_mask(world.occupancy);
      }
    }
    return world;
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed snapshot " + path.string() + ": " + e.what());
  }
}

std::string tree_report_json(const TreeReport& rep) {
  ordered_json j;
  j["connected_components"] = rep.graph.connected_components;
  j["holes"] = rep.graph.holes;
  j["skeleton_length"] = rep.graph.skeleton_length;
  j["mst_total"] = rep.mst.total_length;
  j["skeleton_mst_ratio"] = rep.ratio;
  j["all_attached"] = rep.graph.all_attached();
  j["spanning_tree"] = rep.spanning_tree;
  auto nodes = ordered_json::array();
  for (const auto& n : rep.graph.nodes) {
    nodes.push_back({{"id", n.id}, {"x", n.position.x}, {"y", n.position.y}, {"attached", n.attached}, {"component", n.component}});
  }
  j["nodes"] = std::move(nodes);
  auto edges = ordered_json::array();
  for (const auto& e : rep.mst.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"length", e.length}});
  j["mst_edges"] = std::move(edges);
  return j.dump(2);
}

std::string voronoi_report_json(const VoronoiReport& rep) {
  ordered_json j;
  j["sites"] = rep.sites;
  j["evaluated_cells"] = rep.evaluated_cells;
  j["agreement_classical"] = rep.classical;
  j["agreement_weighted"] = rep.weighted;
  return j.dump(2);
}

std::string morphology_report_json(const Morphology& m) {
  ordered_json j;
  j["coverage"] = m.coverage;
  j["compactness"] = m.compactness;
  return j.dump(2);
}

std::string choice_report_json(const std::vector<ChoiceEntry>& order) {
  auto arr = ordered_json::array();
  for (const auto& e : order) {
    arr.push_back({{"id", e.id},
                   {"first_suppressed", e.first_suppressed == kNever ? ordered_json(nullptr) : ordered_json(e.first_suppressed)}});
  }
  ordered_json j;
  j["order"] = std::move(arr);
  return j.dump(2);
}

namespace {

std::string full_report(const Scenario& sc, const World& world, const BinaryMask& trace, std::int64_t steps_done,
                        const std::vector<MetricsRecord>& history, const std::vector<std::string>& columns) {
  ordered_json j;
  j["scenario"] = sc.name;
  j["steps"] = steps_done;
  j["population"] = world.agents.size();
  const auto mask = network_mask(trace, sc.outputs.mask_closing);
  const auto graph = topology(mask, world.sources);
  j["topology"] = {{"connected_components", graph.connected_components},
                   {"holes", graph.holes},
                   {"skeleton_length", graph.skeleton_length}};
  j["morphology"] = ordered_json::parse(morphology_report_json(morphology_metrics(mask)));
  if (sc.outputs.oracles.tree) j["tree"] = ordered_json::parse(tree_report_json(tree_report(mask, world.sources)));
  if (sc.outputs.oracles.voronoi) {
    const auto& o = sc.outputs.oracles;
    j["voronoi"] = ordered_json::parse(
        voronoi_report_json(voronoi_report(mask, world.sources, o.tolerance, o.border_margin)));
  }
  j["choice"] = ordered_json::parse(choice_report_json(choice_order(history, columns)))["order"];
  return j.dump(2) + "\n";
}

}  // namespace

void run_to_directory(const Scenario& scenario, const fs::path& out, std::ostream* log) {
  fs::create_directories(out);
  write_text_file(out / "scenario.resolved", serialize_scenario(scenario));

  Simulation sim(scenario);
  FrameMapping mapping;
  if (scenario.outputs.field_range) {
    mapping.fixed_min = scenario.outputs.field_range->min;
    mapping.fixed_max = scenario.outputs.field_range->max;
  }
  const std::int64_t progress_every = std::max<std::int64_t>(1, scenario.steps / 10);
  while (!sim.done()) {
    const std::int64_t t = sim.next_step();
    sim.step();
    if (sim.frame_due(t)) {
      write_field_frame(sim.world().field, out / frame_filename("field", t), mapping);
      write_agent_frame(sim.world().occupancy, out / frame_filename("agents", t));
    }
    if (log && (t + 1) % progress_every == 0) {
      *log << "step " << (t + 1) << "/" << scenario.steps << " population " << sim.world().agents.size() << "\n";
    }
  }

  write_metrics_csv(sim.history(), sim.columns(), out / "metrics.csv");
  const auto trace = sim.trace();
  save_snapshot(sim.world(), scenario.steps, out / "state.json", &trace);
  write_text_file(out / "report.json",
                  full_report(scenario, sim.world(), trace, scenario.steps, sim.history(), sim.columns()));
}

std::string analyze_directory(const fs::path& run_dir, AnalyzeMode mode) {
  for (const char* f : {"scenario.resolved", "state.json", "metrics.csv"}) {
    if (!fs::exists(run_dir / f)) throw std::runtime_error("missing run artifact " + (run_dir / f).string());
  }
  const Scenario sc = parse_scenario_or_throw(read_text_file(run_dir / "scenario.resolved"));
  BinaryMask trace;
  const World world = load_snapshot(run_dir / "state.json", nullptr, &trace);
  const auto mask = network_mask(trace, sc.outputs.mask_closing);
  switch (mode) {
    case AnalyzeMode::tree:
      return tree_report_json(tree_report(mask, world.sources));
    case AnalyzeMode::voronoi:
      return voronoi_report_json(
          voronoi_report(mask, world.sources, sc.outputs.oracles.tolerance, sc.outputs.oracles.border_margin));
    case AnalyzeMode::morphology:
      return morphology_report_json(morphology_metrics(mask));
    case AnalyzeMode::choice: {
      std::vector<std::string> columns;
      const auto history = parse_metrics_csv(read_text_file(run_dir / "metrics.csv"), &columns);
      return choice_report_json(choice_order(history, columns));
    }
  }
  return {};
}

}  // namespace physarum
