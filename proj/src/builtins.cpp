#include <map>
#include <stdexcept>

#include "physarum/scenario.h"

namespace physarum {

namespace {

// Reproduction scenarios. Layouts and stimulus strengths are frozen; the
// acceptance suite depends on them.
const std::map<std::string, const char*>& table() {
  static const std::map<std::string, const char*> scenarios = {
      {"choice_distance", R"({
  "name": "choice_distance",
  "lattice": {"width": 150, "height": 150},
  "seed": 1, "steps": 1000,
  "diffusion": {"kernel": 5, "decay": 0.03},
  "population": {"inoculation": {"mode": "disk", "center": [75, 75], "radius": 4, "count": 40}},
  "sources": [
    {"id": "near", "kind": "attractant", "center": [40, 75], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "far", "kind": "attractant", "center": [130, 75], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}}
  ],
  "outputs": {"metrics_every": 1}
})"},
      {"choice_size", R"({
  "name": "choice_size",
  "lattice": {"width": 150, "height": 150},
  "seed": 1, "steps": 1000,
  "diffusion": {"kernel": 5, "decay": 0.03},
  "population": {"inoculation": {"mode": "disk", "center": [75, 75], "radius": 4, "count": 40}},
  "sources": [
    {"id": "wide", "kind": "attractant", "center": [30, 75], "footprint": {"shape": "disk", "radius": 6},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "narrow", "kind": "attractant", "center": [120, 75], "footprint": {"shape": "disk", "radius": 3},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}}
  ],
  "outputs": {"metrics_every": 1}
})"},
      {"choice_weight", R"({
  "name": "choice_weight",
  "lattice": {"width": 150, "height": 150},
  "seed": 1, "steps": 1000,
  "diffusion": {"kernel": 5, "decay": 0.03},
  "population": {"inoculation": {"mode": "disk", "center": [75, 75], "radius": 4, "count": 40}},
  "sources": [
    {"id": "strong", "kind": "attractant", "center": [30, 75], "footprint": {"shape": "disk", "radius": 4},
     "weight": 1000, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "faint", "kind": "attractant", "center": [120, 75], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}}
  ],
  "outputs": {"metrics_every": 1}
})"},
      {"hybrid_high", R"({
  "name": "hybrid_high",
  "lattice": {"width": 200, "height": 200},
  "seed": 1, "steps": 3000,
  "diffusion": {"kernel": 5, "decay": 0.03},
  "population": {"inoculation": {"mode": "full", "coverage": 0.5}},
  "sources": [
    {"id": "p0", "kind": "repellent", "center": [50, 50], "footprint": {"shape": "rect_outline", "w": 30, "h": 20},
     "weight": 50},
    {"id": "p1", "kind": "repellent", "center": [150, 45], "footprint": {"shape": "rect_outline", "w": 24, "h": 30},
     "weight": 50},
    {"id": "p2", "kind": "repellent", "center": [100, 105], "footprint": {"shape": "rect_outline", "w": 30, "h": 30},
     "weight": 50},
    {"id": "p3", "kind": "repellent", "center": [45, 150], "footprint": {"shape": "rect_outline", "w": 20, "h": 34},
     "weight": 50},
    {"id": "p4", "kind": "repellent", "center": [155, 155], "footprint": {"shape": "rect_outline", "w": 34, "h": 24},
     "weight": 50}
  ],
  "outputs": {"frame_every": 1000, "metrics_every": 100, "mask_window": 20}
})"},
      {"hybrid_medium", R"({
  "name": "hybrid_medium",
  "lattice": {"width": 200, "height": 200},
  "seed": 1, "steps": 3000,
  "diffusion": {"kernel": 5, "decay": 0.03},
  "population": {"inoculation": {"mode": "full", "coverage": 0.5}},
  "sources": [
    {"id": "p0", "kind": "repellent", "center": [50, 50], "footprint": {"shape": "rect_outline", "w": 30, "h": 20},
     "weight": 3},
    {"id": "p1", "kind": "repellent", "center": [150, 45], "footprint": {"shape": "rect_outline", "w": 24, "h": 30},
     "weight": 3},
    {"id": "p2", "kind": "repellent", "center": [100, 105], "footprint": {"shape": "rect_outline", "w": 30, "h": 30},
     "weight": 3},
    {"id": "p3", "kind": "repellent", "center": [45, 150], "footprint": {"shape": "rect_outline", "w": 20, "h": 34},
     "weight": 3},
    {"id": "p4", "kind": "repellent", "center": [155, 155], "footprint": {"shape": "rect_outline", "w": 34, "h": 24},
     "weight": 3}
  ],
  "outputs": {"frame_every": 1000, "metrics_every": 100, "mask_window": 20}
})"},
      {"hybrid_low", R"({
  "name": "hybrid_low",
  "lattice": {"width": 200, "height": 200},
  "seed": 1, "steps": 3000,
  "diffusion": {"kernel": 5, "decay": 0.03},
  "population": {"inoculation": {"mode": "full", "coverage": 0.5}},
  "sources": [
    {"id": "p0", "kind": "repellent", "center": [50, 50], "footprint": {"shape": "rect_outline", "w": 30, "h": 20},
     "weight": 1.5},
    {"id": "p1", "kind": "repellent", "center": [150, 45], "footprint": {"shape": "rect_outline", "w": 24, "h": 30},
     "weight": 1.5},
    {"id": "p2", "kind": "repellent", "center": [100, 105], "footprint": {"shape": "rect_outline", "w": 30, "h": 30},
     "weight": 1.5},
    {"id": "p3", "kind": "repellent", "center": [45, 150], "footprint": {"shape": "rect_outline", "w": 20, "h": 34},
     "weight": 1.5},
    {"id": "p4", "kind": "repellent", "center": [155, 155], "footprint": {"shape": "rect_outline", "w": 34, "h": 24},
     "weight": 1.5}
  ],
  "outputs": {"frame_every": 1000, "metrics_every": 100, "mask_window": 20}
})"},
      {"removal", R"({
  "name": "removal",
  "lattice": {"width": 150, "height": 150},
  "seed": 1, "steps": 3500,
  "diffusion": {"kernel": 5, "decay": 0.03},
  "agents": {"sensor_offset": 12, "sensor_angle": 22.5, "rotation_angle": 22.5, "deposit": 0.25},
  "population": {"inoculation": {"mode": "disk", "center": [75, 75], "radius": 4, "count": 40}},
  "sources": [
    {"id": "gone", "kind": "attractant", "center": [55, 75], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "kept", "kind": "attractant", "center": [95, 75], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}}
  ],
  "events": [{"step": 2000, "action": "remove_source", "id": "gone"}],
  "outputs": {"frame_every": 500, "metrics_every": 100}
})"},
      {"audit_mixed", R"({
  "name": "audit_mixed",
  "lattice": {"width": 96, "height": 96},
  "seed": 1, "steps": 200,
  "population": {"inoculation": {"mode": "disk", "center": [48, 48], "radius": 10, "count": 200}},
  "substrate": {"enabled": true, "amount": 50, "region": {"shape": "rect", "center": [48, 48], "w": 60, "h": 60},
                "projection_rate": 0.01, "consumption": 1},
  "sources": [
    {"id": "food", "kind": "attractant", "center": [20, 20], "footprint": {"shape": "disk", "radius": 3},
     "weight": 10, "suppression": {"coverage_threshold": 0.1, "factor": 0.5}},
    {"id": "salt", "kind": "repellent", "center": [75, 70], "footprint": {"shape": "rect_outline", "w": 12, "h": 8},
     "weight": 5}
  ],
  "events": [
    {"step": 50, "action": "add_source", "source": {"id": "late", "kind": "attractant", "center": [80, 20],
      "footprint": {"shape": "point"}, "weight": 20}},
    {"step": 100, "action": "set_weight", "id": "salt", "weight": 20},
    {"step": 150, "action": "remove_source", "id": "food"}
  ],
  "outputs": {"metrics_every": 10}
})"},
      {"dendritic", R"({
  "name": "dendritic",
  "lattice": {"width": 150, "height": 150},
  "seed": 1, "steps": 3000,
  "diffusion": {"kernel": 5, "decay": 0.03},
  "agents": {"sensor_offset": 12, "sensor_angle": 22.5, "rotation_angle": 22.5, "deposit": 0.25},
  "population": {"inoculation": {"mode": "disk", "center": [75, 75], "radius": 5, "count": 50}},
  "sources": [
    {"id": "a0", "kind": "attractant", "center": [45, 48], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "a1", "kind": "attractant", "center": [81, 39], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "a2", "kind": "attractant", "center": [108, 63], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "a3", "kind": "attractant", "center": [102, 105], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "a4", "kind": "attractant", "center": [63, 111], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "a5", "kind": "attractant", "center": [39, 84], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}}
  ],
  "outputs": {"frame_every": 500, "metrics_every": 100, "mask_closing": 2, "mask_window": 20}
})"},
      {"radial_substrate", R"({
  "name": "radial_substrate",
  "lattice": {"width": 150, "height": 150},
  "seed": 1, "steps": 1000,
  "population": {"inoculation": {"mode": "disk", "center": [75, 75], "radius": 5, "count": 50}},
  "substrate": {"enabled": true, "amount": 1000, "region": {"shape": "disk", "center": [75, 75], "radius": 72},
                "projection_rate": 0.05, "consumption": 5},
  "sources": [
    {"id": "oat0", "kind": "attractant", "center": [35, 45], "footprint": {"shape": "disk", "radius": 3},
     "weight": 5},
    {"id": "oat1", "kind": "attractant", "center": [110, 35], "footprint": {"shape": "disk", "radius": 3},
     "weight": 5},
    {"id": "oat2", "kind": "attractant", "center": [115, 110], "footprint": {"shape": "disk", "radius": 3},
     "weight": 5},
    {"id": "oat3", "kind": "attractant", "center": [40, 115], "footprint": {"shape": "disk", "radius": 3},
     "weight": 5}
  ],
  "outputs": {"frame_every": 250, "metrics_every": 100, "mask_closing": 2, "mask_window": 20}
})"},
      {"spanning_tree", R"({
  "name": "spanning_tree",
  "lattice": {"width": 100, "height": 100},
  "seed": 1, "steps": 10000,
  "diffusion": {"kernel": 5, "decay": 0.03},
  "agents": {"sensor_offset": 12, "sensor_angle": 22.5, "rotation_angle": 22.5, "deposit": 0.25},
  "population": {"inoculation": {"mode": "disk", "center": [50, 95], "radius": 5, "count": 60}},
  "sources": [
    {"id": "n0", "kind": "attractant", "center": [50, 81], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "n1", "kind": "attractant", "center": [50, 59], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "n2", "kind": "attractant", "center": [31, 41], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "n3", "kind": "attractant", "center": [69, 41], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}},
    {"id": "n4", "kind": "attractant", "center": [69, 16], "footprint": {"shape": "disk", "radius": 4},
     "weight": 100, "suppression": {"coverage_threshold": 0.02, "factor": 0.2}}
  ],
  "outputs": {"frame_every": 500, "metrics_every": 50, "field_range": [0, 1000],
              "mask_closing": 2, "mask_window": 20, "oracles": {"tree": true}}
})"},
      {"voronoi", R"({
  "name": "voronoi",
  "lattice": {"width": 256, "height": 256},
  "seed": 1, "steps": 5000,
  "diffusion": {"kernel": 5, "decay": 0.03},
  "population": {"inoculation": {"mode": "full", "coverage": 0.5}},
  "sources": [
    {"id": "r0", "kind": "repellent", "center": [44, 46], "footprint": {"shape": "point"}, "weight": 4000000},
    {"id": "r1", "kind": "repellent", "center": [212, 50], "footprint": {"shape": "point"}, "weight": 4000000},
    {"id": "r2", "kind": "repellent", "center": [128, 128], "footprint": {"shape": "point"}, "weight": 4000000},
    {"id": "r3", "kind": "repellent", "center": [48, 212], "footprint": {"shape": "point"}, "weight": 4000000},
    {"id": "r4", "kind": "repellent", "center": [210, 208], "footprint": {"shape": "point"}, "weight": 4000000}
  ],
  "outputs": {"frame_every": 1000, "metrics_every": 100, "mask_window": 20,
              "oracles": {"voronoi": true, "tolerance": 6, "border_margin": 10}}
})"},
      {"weighted_voronoi_pair", R"({
  "name": "weighted_voronoi_pair",
  "lattice": {"width": 256, "height": 256},
  "seed": 1, "steps": 5000,
  "diffusion": {"kernel": 5, "decay": 0.03},
  "population": {"inoculation": {"mode": "full", "coverage": 0.5}},
  "sources": [
    {"id": "heavy", "kind": "repellent", "center": [70, 128], "footprint": {"shape": "disk", "radius": 24}, "weight": 3000},
    {"id": "light", "kind": "repellent", "center": [180, 128], "footprint": {"shape": "disk", "radius": 8}, "weight": 1000}
  ],
  "outputs": {"frame_every": 1000, "metrics_every": 100, "mask_window": 20,
              "oracles": {"voronoi": true, "tolerance": 6, "border_margin": 10}}
})"},
      {"taxis_attractant", R"({
  "name": "taxis_attractant",
  "lattice": {"width": 200, "height": 200},
  "seed": 1, "steps": 3000,
  "diffusion": {"kernel": 7, "decay": 0.003},
  "population": {
    "inoculation": {"mode": "disk", "center": [100, 100], "radius": 12, "count": 250},
    "growth": {"enabled": false}, "shrink": {"enabled": false}
  },
  "sources": [
    {"id": "food", "kind": "attractant", "center": [100, 160], "footprint": {"shape": "disk", "radius": 8},
     "weight": 10, "suppression": {"coverage_threshold": 0.5, "factor": 1.0}}
  ],
  "outputs": {"metrics_every": 100}
})"},
      {"avoid_repellent", R"({
  "name": "avoid_repellent",
  "lattice": {"width": 200, "height": 200},
  "seed": 1, "steps": 3000,
  "diffusion": {"kernel": 7, "decay": 0.003},
  "population": {
    "inoculation": {"mode": "disk", "center": [100, 100], "radius": 12, "count": 250},
    "growth": {"enabled": false}, "shrink": {"enabled": false}
  },
  "sources": [
    {"id": "salt", "kind": "repellent", "center": [100, 160], "footprint": {"shape": "disk", "radius": 8},
     "weight": 10, "suppression": {"coverage_threshold": 0.5, "factor": 1.0}}
  ],
  "outputs": {"metrics_every": 100}
})"},
  };
  return scenarios;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : table()) names.push_back(name);
  return names;
}

Scenario builtin_scenario(const std::string& name) {
  const auto& t = table();
  auto it = t.find(name);
  if (it == t.end()) {
    std::string valid;
    for (const auto& [n, text] : t) valid += (valid.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown builtin scenario '" + name + "'; valid names: " + valid);
  }
  return parse_scenario_or_throw(it->second);
}

}  // namespace physarum
