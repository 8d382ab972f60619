#include "physarum/scenario.h"

#include <algorithm>
#include <array>
#include <set>
#include <string_view>

#include "json.hpp"

namespace physarum {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = "invalid scenario:";
  for (const auto& e : errors) out += "\n  " + e;
  return out;
}

std::string sub(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

// Typed field access that records every problem instead of stopping at the first.
class Reader {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& msg) { errors.push_back(path + " " + msg); }

  bool object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) {
      fail(path.empty() ? "document" : path, "must be an object");
      return false;
    }
    for (const auto& item : j.items()) {
      const bool known = std::find(allowed.begin(), allowed.end(), item.key()) != allowed.end();
      if (!known) fail(sub(path, item.key()), "unknown key");
    }
    return true;
  }

  const json* field(const json& obj, const std::string& path, std::string_view key, bool required) {
    auto it = obj.find(std::string(key));
    if (it == obj.end()) {
      if (required) fail(sub(path, key), "is required");
      return nullptr;
    }
    return &*it;
  }

  template <typename Int>
  void integer(const json& obj, const std::string& path, std::string_view key, Int& out, bool required = false) {
    const json* v = field(obj, path, key, required);
    if (!v) return;
    if constexpr (std::is_unsigned_v<Int>) {
      if (!v->is_number_unsigned()) {
        fail(sub(path, key), "must be a non-negative integer");
        return;
      }
      out = v->get<Int>();
    } else {
      if (!v->is_number_integer()) {
        fail(sub(path, key), "must be an integer");
        return;
      }
      out = static_cast<Int>(v->get<std::int64_t>());
    }
  }

  void number(const json& obj, const std::string& path, std::string_view key, double& out, bool required = false) {
    const json* v = field(obj, path, key, required);
    if (!v) return;
    if (!v->is_number()) {
      fail(sub(path, key), "must be a number");
      return;
    }
    out = v->get<double>();
  }

  void boolean(const json& obj, const std::string& path, std::string_view key, bool& out) {
    const json* v = field(obj, path, key, false);
    if (!v) return;
    if (!v->is_boolean()) {
      fail(sub(path, key), "must be true or false");
      return;
    }
    out = v->get<bool>();
  }

  void string(const json& obj, const std::string& path, std::string_view key, std::string& out, bool required = false) {
    const json* v = field(obj, path, key, required);
    if (!v) return;
    if (!v->is_string()) {
      fail(sub(path, key), "must be a string");
      return;
    }
    out = v->get<std::string>();
  }

  void cell(const json& obj, const std::string& path, std::string_view key, CellPos& out, bool required = false) {
    const json* v = field(obj, path, key, required);
    if (!v) return;
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number_integer() || !(*v)[1].is_number_integer()) {
      fail(sub(path, key), "must be an integer pair [x, y]");
      return;
    }
    out = {(*v)[0].get<int>(), (*v)[1].get<int>()};
  }

  template <typename Enum, typename Options>
  void choice(const json& obj, const std::string& path, std::string_view key, Enum& out, const Options& options,
              bool required = false) {
    std::string s;
    const std::size_t before = errors.size();
    string(obj, path, key, s, required);
    if (errors.size() != before || s.empty()) return;
    for (const auto& [name, value] : options) {
      if (name == s) {
        out = value;
        return;
      }
    }
    std::string valid;
    for (const auto& [name, value] : options) valid += (valid.empty() ? "" : ", ") + std::string(name);
    fail(sub(path, key), "must be one of: " + valid + " (got '" + s + "')");
  }
};

template <typename Enum, std::size_t N>
using Names = std::array<std::pair<std::string_view, Enum>, N>;

constexpr Names<SourceKind, 2> kKinds = {{{"attractant", SourceKind::attractant}, {"repellent", SourceKind::repellent}}};
constexpr Names<FootprintShape, 4> kShapes = {{{"point", FootprintShape::point},
                                               {"disk", FootprintShape::disk},
                                               {"rect", FootprintShape::rect},
                                               {"rect_outline", FootprintShape::rect_outline}}};
constexpr Names<InoculationMode, 3> kModes = {
    {{"disk", InoculationMode::disk}, {"rect", InoculationMode::rect}, {"full", InoculationMode::full}}};
constexpr Names<RegionShape, 3> kRegions = {
    {{"full", RegionShape::full}, {"disk", RegionShape::disk}, {"rect", RegionShape::rect}}};
constexpr Names<Boundary, 1> kBoundaries = {{{"absorbing", Boundary::absorbing}}};

template <typename Enum, std::size_t N>
std::string name_of(Enum value, const Names<Enum, N>& options) {
  for (const auto& [name, v] : options)
    if (v == value) return std::string(name);
  return "?";
}

void read_source(Reader& r, const json& j, const std::string& path, StimulusSource& s) {
  if (!r.object(j, path, {"id", "kind", "center", "footprint", "weight", "suppression"})) return;
  r.string(j, path, "id", s.id, true);
  r.choice(j, path, "kind", s.kind, kKinds, true);
  r.cell(j, path, "center", s.center, true);
  r.number(j, path, "weight", s.weight, true);
  if (const json* fp = r.field(j, path, "footprint", false)) {
    const std::string fpath = sub(path, "footprint");
    std::string shape;
    if (fp->is_object() && fp->contains("shape") && (*fp)["shape"].is_string()) shape = (*fp)["shape"];
    if (shape == "disk") {
      r.object(*fp, fpath, {"shape", "radius"});
      r.integer(*fp, fpath, "radius", s.footprint.radius, true);
    } else if (shape == "rect" || shape == "rect_outline") {
      r.object(*fp, fpath, {"shape", "w", "h"});
      r.integer(*fp, fpath, "w", s.footprint.w, true);
      r.integer(*fp, fpath, "h", s.footprint.h, true);
    } else {
      r.object(*fp, fpath, {"shape"});
    }
    if (fp->is_object()) r.choice(*fp, fpath, "shape", s.footprint.shape, kShapes, true);
  }
  if (const json* sp = r.field(j, path, "suppression", false)) {
    const std::string spath = sub(path, "suppression");
    if (r.object(*sp, spath, {"coverage_threshold", "factor"})) {
      r.number(*sp, spath, "coverage_threshold", s.suppression.coverage_threshold);
      r.number(*sp, spath, "factor", s.suppression.factor);
    }
  }
}

void read_region(Reader& r, const json& j, const std::string& path, Region& region) {
  if (!r.object(j, path, {"shape", "center", "radius", "w", "h"})) return;
  r.choice(j, path, "shape", region.shape, kRegions, true);
  if (region.shape != RegionShape::full) r.cell(j, path, "center", region.center, true);
  if (region.shape == RegionShape::disk) r.integer(j, path, "radius", region.radius, true);
  if (region.shape == RegionShape::rect) {
    r.integer(j, path, "w", region.w, true);
    r.integer(j, path, "h", region.h, true);
  }
}

void read_document(Reader& r, const json& doc, Scenario& sc) {
  if (!r.object(doc, "", {"name", "lattice", "seed", "steps", "diffusion", "agents", "population", "substrate",
                          "sources", "events", "outputs"}))
    return;
  r.string(doc, "", "name", sc.name);
  if (const json* lat = r.field(doc, "", "lattice", true)) {
    if (r.object(*lat, "lattice", {"width", "height"})) {
      r.integer(*lat, "lattice", "width", sc.width, true);
      r.integer(*lat, "lattice", "height", sc.height, true);
    }
  }
  r.integer(doc, "", "seed", sc.seed, true);
  r.integer(doc, "", "steps", sc.steps, true);

  if (const json* d = r.field(doc, "", "diffusion", false)) {
    if (r.object(*d, "diffusion", {"kernel", "decay", "boundary"})) {
      r.integer(*d, "diffusion", "kernel", sc.diffusion.kernel);
      r.number(*d, "diffusion", "decay", sc.diffusion.decay);
      r.choice(*d, "diffusion", "boundary", sc.diffusion.boundary, kBoundaries);
    }
  }

  if (const json* a = r.field(doc, "", "agents", false)) {
    if (r.object(*a, "agents", {"sensor_angle", "rotation_angle", "sensor_offset", "step_size", "deposit"})) {
      r.number(*a, "agents", "sensor_angle", sc.agents.sensor_angle);
      r.number(*a, "agents", "rotation_angle", sc.agents.rotation_angle);
      r.number(*a, "agents", "sensor_offset", sc.agents.sensor_offset);
      r.number(*a, "agents", "step_size", sc.agents.step_size);
      r.number(*a, "agents", "deposit", sc.agents.deposit);
    }
  }

  if (const json* p = r.field(doc, "", "population", false)) {
    if (r.object(*p, "population", {"inoculation", "growth", "shrink"})) {
      auto& ino = sc.population.inoculation;
      if (const json* i = r.field(*p, "population", "inoculation", false)) {
        const std::string path = "population.inoculation";
        if (r.object(*i, path, {"mode", "center", "radius", "w", "h", "count", "coverage"})) {
          r.choice(*i, path, "mode", ino.mode, kModes, true);
          if (ino.mode == InoculationMode::full) {
            r.number(*i, path, "coverage", ino.coverage);
          } else {
            r.cell(*i, path, "center", ino.center, true);
            r.integer(*i, path, "count", ino.count);
          }
          if (ino.mode == InoculationMode::disk) r.integer(*i, path, "radius", ino.radius);
          if (ino.mode == InoculationMode::rect) {
            r.integer(*i, path, "w", ino.w, true);
            r.integer(*i, path, "h", ino.h, true);
          }
        }
      }
      auto& g = sc.population.params.growth;
      if (const json* j = r.field(*p, "population", "growth", false)) {
        const std::string path = "population.growth";
        if (r.object(*j, path, {"enabled", "window", "min_count", "max_count", "probability", "frequency"})) {
          r.boolean(*j, path, "enabled", g.enabled);
          r.integer(*j, path, "window", g.window);
          r.integer(*j, path, "min_count", g.min_count);
          r.integer(*j, path, "max_count", g.max_count);
          r.number(*j, path, "probability", g.probability);
          r.integer(*j, path, "frequency", g.frequency);
        }
      }
      auto& s = sc.population.params.shrink;
      if (const json* j = r.field(*p, "population", "shrink", false)) {
        const std::string path = "population.shrink";
        if (r.object(*j, path, {"enabled", "window", "overcrowd_count", "probability", "frequency"})) {
          r.boolean(*j, path, "enabled", s.enabled);
          r.integer(*j, path, "window", s.window);
          r.integer(*j, path, "overcrowd_count", s.overcrowd_count);
          r.number(*j, path, "probability", s.probability);
          r.integer(*j, path, "frequency", s.frequency);
        }
      }
    }
  }

  if (const json* s = r.field(doc, "", "substrate", false)) {
    if (r.object(*s, "substrate", {"enabled", "amount", "region", "projection_rate", "consumption"})) {
      r.boolean(*s, "substrate", "enabled", sc.substrate.enabled);
      r.number(*s, "substrate", "amount", sc.substrate.amount);
      r.number(*s, "substrate", "projection_rate", sc.substrate.projection_rate);
      r.number(*s, "substrate", "consumption", sc.substrate.consumption);
      if (const json* reg = r.field(*s, "substrate", "region", false)) {
        read_region(r, *reg, "substrate.region", sc.substrate.region);
      }
    }
  }

  if (const json* srcs = r.field(doc, "", "sources", false)) {
    if (!srcs->is_array()) {
      r.fail("sources", "must be an array");
    } else {
      for (std::size_t i = 0; i < srcs->size(); ++i) {
        StimulusSource s;
        read_source(r, (*srcs)[i], idx("sources", i), s);
        sc.sources.push_back(std::move(s));
      }
    }
  }

  if (const json* evs = r.field(doc, "", "events", false)) {
    if (!evs->is_array()) {
      r.fail("events", "must be an array");
    } else {
      for (std::size_t i = 0; i < evs->size(); ++i) {
        const json& e = (*evs)[i];
        const std::string path = idx("events", i);
        ScheduledEvent ev;
        std::string action;
        if (!e.is_object()) {
          r.fail(path, "must be an object");
          continue;
        }
        if (e.contains("action") && e["action"].is_string()) action = e["action"];
        if (action == "add_source") {
          r.object(e, path, {"step", "action", "source"});
          AddSource add;
          if (const json* s = r.field(e, path, "source", true)) read_source(r, *s, sub(path, "source"), add.source);
          ev.action = std::move(add);
        } else if (action == "remove_source") {
          r.object(e, path, {"step", "action", "id"});
          RemoveSource rm;
          r.string(e, path, "id", rm.id, true);
          ev.action = std::move(rm);
        } else if (action == "set_weight") {
          r.object(e, path, {"step", "action", "id", "weight"});
          SetWeight sw;
          r.string(e, path, "id", sw.id, true);
          r.number(e, path, "weight", sw.weight, true);
          ev.action = std::move(sw);
        } else {
          r.fail(sub(path, "action"), "must be one of: add_source, remove_source, set_weight");
          continue;
        }
        r.integer(e, path, "step", ev.step, true);
        sc.events.push_back(std::move(ev));
      }
    }
  }

  if (const json* o = r.field(doc, "", "outputs", false)) {
    if (r.object(*o, "outputs", {"frame_every", "metrics_every", "field_range", "mask_closing", "mask_window", "oracles"})) {
      r.integer(*o, "outputs", "frame_every", sc.outputs.frame_every);
      r.integer(*o, "outputs", "metrics_every", sc.outputs.metrics_every);
      r.integer(*o, "outputs", "mask_closing", sc.outputs.mask_closing);
      r.integer(*o, "outputs", "mask_window", sc.outputs.mask_window);
      if (const json* fr = r.field(*o, "outputs", "field_range", false); fr && !fr->is_null()) {
        if (!fr->is_array() || fr->size() != 2 || !(*fr)[0].is_number() || !(*fr)[1].is_number()) {
          r.fail("outputs.field_range", "must be null or a number pair [min, max]");
        } else {
          sc.outputs.field_range = FieldRange{(*fr)[0].get<double>(), (*fr)[1].get<double>()};
        }
      }
      if (const json* orc = r.field(*o, "outputs", "oracles", false)) {
        const std::string path = "outputs.oracles";
        if (r.object(*orc, path, {"tree", "voronoi", "tolerance", "border_margin"})) {
          r.boolean(*orc, path, "tree", sc.outputs.oracles.tree);
          r.boolean(*orc, path, "voronoi", sc.outputs.oracles.voronoi);
          r.integer(*orc, path, "tolerance", sc.outputs.oracles.tolerance);
          r.integer(*orc, path, "border_margin", sc.outputs.oracles.border_margin);
        }
      }
    }
  }
}

void check_source(std::vector<std::string>& errs, const StimulusSource& s, const std::string& path, int w, int h,
                  bool lattice_ok) {
  if (s.id.empty()) errs.push_back(sub(path, "id") + " must not be empty");
  if (lattice_ok && (s.center.x < 0 || s.center.y < 0 || s.center.x >= w || s.center.y >= h)) {
    errs.push_back(sub(path, "center") + " out of bounds");
  }
  if (!(s.weight >= 0.0)) errs.push_back(sub(path, "weight") + " must be >= 0");
  const auto& fp = s.footprint;
  if (fp.shape == FootprintShape::disk && fp.radius < 0) errs.push_back(sub(path, "footprint.radius") + " must be >= 0");
  if ((fp.shape == FootprintShape::rect || fp.shape == FootprintShape::rect_outline) && (fp.w < 1 || fp.h < 1)) {
    errs.push_back(sub(path, "footprint") + " w and h must be >= 1");
  }
  const auto& sp = s.suppression;
  if (!(sp.coverage_threshold >= 0.0 && sp.coverage_threshold <= 1.0))
    errs.push_back(sub(path, "suppression.coverage_threshold") + " must be in [0, 1]");
  if (!(sp.factor >= 0.0 && sp.factor <= 1.0)) errs.push_back(sub(path, "suppression.factor") + " must be in [0, 1]");
}

bool in_unit(double p) { return p >= 0.0 && p <= 1.0; }

ordered_json cell_json(CellPos c) { return ordered_json::array({c.x, c.y}); }

ordered_json source_json(const StimulusSource& s) {
  ordered_json fp;
  fp["shape"] = name_of(s.footprint.shape, kShapes);
  if (s.footprint.shape == FootprintShape::disk) fp["radius"] = s.footprint.radius;
  if (s.footprint.shape == FootprintShape::rect || s.footprint.shape == FootprintShape::rect_outline) {
    fp["w"] = s.footprint.w;
    fp["h"] = s.footprint.h;
  }
  ordered_json j;
  j["id"] = s.id;
  j["kind"] = name_of(s.kind, kKinds);
  j["center"] = cell_json(s.center);
  j["footprint"] = fp;
  j["weight"] = s.weight;
  j["suppression"] = {{"coverage_threshold", s.suppression.coverage_threshold}, {"factor", s.suppression.factor}};
  return j;
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

std::vector<std::string> validate_scenario(const Scenario& sc) {
  std::vector<std::string> errs;
  const int w = sc.width;
  const int h = sc.height;
  const bool lattice_ok = w > 0 && h > 0;
  if (w <= 0) errs.push_back("lattice.width must be > 0");
  if (h <= 0) errs.push_back("lattice.height must be > 0");
  if (sc.steps <= 0) errs.push_back("steps must be > 0");

  if (sc.diffusion.kernel < 3 || sc.diffusion.kernel % 2 == 0) errs.push_back("diffusion.kernel must be odd and >= 3");
  if (!(sc.diffusion.decay >= 0.0 && sc.diffusion.decay < 1.0)) errs.push_back("diffusion.decay must be in [0, 1)");

  if (!(sc.agents.sensor_offset >= 0.0)) errs.push_back("agents.sensor_offset must be >= 0");
  if (!(sc.agents.step_size > 0.0)) errs.push_back("agents.step_size must be > 0");
  if (!(sc.agents.deposit >= 0.0)) errs.push_back("agents.deposit must be >= 0");

  const auto& g = sc.population.params.growth;
  if (g.window < 1 || g.window % 2 == 0) errs.push_back("population.growth.window must be odd and >= 1");
  if (g.min_count < 0 || g.max_count < g.min_count)
    errs.push_back("population.growth min_count/max_count must satisfy 0 <= min_count <= max_count");
  if (!in_unit(g.probability)) errs.push_back("population.growth.probability must be in [0, 1]");
  if (g.frequency < 1) errs.push_back("population.growth.frequency must be >= 1");
  const auto& s = sc.population.params.shrink;
  if (s.window < 1 || s.window % 2 == 0) errs.push_back("population.shrink.window must be odd and >= 1");
  if (s.overcrowd_count < 0) errs.push_back("population.shrink.overcrowd_count must be >= 0");
  if (!in_unit(s.probability)) errs.push_back("population.shrink.probability must be in [0, 1]");
  if (s.frequency < 1) errs.push_back("population.shrink.frequency must be >= 1");

  const auto& ino = sc.population.inoculation;
  if (ino.mode == InoculationMode::full) {
    if (!in_unit(ino.coverage)) errs.push_back("population.inoculation.coverage must be in [0, 1]");
  } else {
    if (lattice_ok && (ino.center.x < 0 || ino.center.y < 0 || ino.center.x >= w || ino.center.y >= h))
      errs.push_back("population.inoculation.center out of bounds");
    if (ino.count < 0) errs.push_back("population.inoculation.count must be >= 0");
    if (ino.mode == InoculationMode::disk && ino.radius < 0) errs.push_back("population.inoculation.radius must be >= 0");
    if (ino.mode == InoculationMode::rect && (ino.w < 1 || ino.h < 1))
      errs.push_back("population.inoculation w and h must be >= 1");
  }
  if (lattice_ok && errs.empty()) {
    const auto capacity = inoculation_region(ino, w, h).size();
    const auto count = inoculation_count(ino, w, h);
    if (static_cast<std::size_t>(count) > capacity) {
      errs.push_back("population.inoculation count " + std::to_string(count) + " exceeds region capacity " +
                     std::to_string(capacity));
    }
  }

  const auto& sub_spec = sc.substrate;
  if (!(sub_spec.amount >= 0.0)) errs.push_back("substrate.amount must be >= 0");
  if (!in_unit(sub_spec.projection_rate)) errs.push_back("substrate.projection_rate must be in [0, 1]");
  if (!(sub_spec.consumption >= 0.0)) errs.push_back("substrate.consumption must be >= 0");
  if (sub_spec.region.shape != RegionShape::full && lattice_ok) {
    const auto c = sub_spec.region.center;
    if (c.x < 0 || c.y < 0 || c.x >= w || c.y >= h) errs.push_back("substrate.region.center out of bounds");
  }

  std::set<std::string> ids;
  for (std::size_t i = 0; i < sc.sources.size(); ++i) {
    const auto& src = sc.sources[i];
    check_source(errs, src, idx("sources", i), w, h, lattice_ok);
    if (!src.id.empty() && !ids.insert(src.id).second) errs.push_back(idx("sources", i) + ".id duplicates '" + src.id + "'");
  }

  // Replay the schedule against the live id set.
  std::int64_t last_step = 0;
  for (std::size_t i = 0; i < sc.events.size(); ++i) {
    const auto& ev = sc.events[i];
    const std::string path = idx("events", i);
    if (ev.step < 0) errs.push_back(path + ".step must be >= 0");
    if (ev.step < last_step) errs.push_back(path + ".step must be non-decreasing");
    last_step = std::max(last_step, ev.step);
    if (const auto* add = std::get_if<AddSource>(&ev.action)) {
      check_source(errs, add->source, sub(path, "source"), w, h, lattice_ok);
      if (!ids.insert(add->source.id).second) errs.push_back(path + " adds id '" + add->source.id + "' that already exists");
    } else if (const auto* rm = std::get_if<RemoveSource>(&ev.action)) {
      if (ids.erase(rm->id) == 0) errs.push_back(path + " references unresolvable id '" + rm->id + "'");
    } else if (const auto* sw = std::get_if<SetWeight>(&ev.action)) {
      if (!ids.count(sw->id)) errs.push_back(path + " references unresolvable id '" + sw->id + "'");
      if (!(sw->weight >= 0.0)) errs.push_back(path + ".weight must be >= 0");
    }
  }

  const auto& out = sc.outputs;
  if (out.frame_every < 0) errs.push_back("outputs.frame_every must be >= 0");
  if (out.metrics_every < 1) errs.push_back("outputs.metrics_every must be >= 1");
  if (out.field_range && !(out.field_range->min < out.field_range->max))
    errs.push_back("outputs.field_range min must be < max");
  if (out.mask_closing < 0) errs.push_back("outputs.mask_closing must be >= 0");
  if (out.mask_window < 1) errs.push_back("outputs.mask_window must be >= 1");
  if (out.oracles.tolerance < 0) errs.push_back("outputs.oracles.tolerance must be >= 0");
  if (out.oracles.border_margin < 0) errs.push_back("outputs.oracles.border_margin must be >= 0");
  return errs;
}

ParseResult parse_scenario(const std::string& text) {
  ParseResult result;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    result.errors.push_back(std::string("syntax error: ") + e.what());
    return result;
  }
  Reader r;
  Scenario sc;
  read_document(r, doc, sc);
  result.errors = std::move(r.errors);
  if (doc.is_object() && doc.contains("lattice")) {
    for (auto& e : validate_scenario(sc)) {
      if (std::find(result.errors.begin(), result.errors.end(), e) == result.errors.end())
        result.errors.push_back(std::move(e));
    }
  }
  if (result.errors.empty()) result.scenario = std::move(sc);
  return result;
}

Scenario parse_scenario_or_throw(const std::string& text) {
  auto r = parse_scenario(text);
  if (!r.ok()) throw ScenarioError(std::move(r.errors));
  return std::move(*r.scenario);
}

std::string source_to_json(const StimulusSource& source) { return source_json(source).dump(); }

StimulusSource source_from_json(const std::string& text) {
  Reader r;
  StimulusSource s;
  try {
    read_source(r, json::parse(text), "source", s);
  } catch (const json::parse_error& e) {
    r.errors.push_back(std::string("syntax error: ") + e.what());
  }
  if (!r.errors.empty()) throw ScenarioError(std::move(r.errors));
  return s;
}

std::string serialize_scenario(const Scenario& sc) {
  ordered_json j;
  j["name"] = sc.name;
  j["lattice"] = {{"width", sc.width}, {"height", sc.height}};
  j["seed"] = sc.seed;
  j["steps"] = sc.steps;
  j["diffusion"] = {{"kernel", sc.diffusion.kernel}, {"decay", sc.diffusion.decay}, {"boundary", "absorbing"}};
  j["agents"] = {{"sensor_angle", sc.agents.sensor_angle},
                 {"rotation_angle", sc.agents.rotation_angle},
                 {"sensor_offset", sc.agents.sensor_offset},
                 {"step_size", sc.agents.step_size},
                 {"deposit", sc.agents.deposit}};

  const auto& ino = sc.population.inoculation;
  ordered_json ij;
  ij["mode"] = name_of(ino.mode, kModes);
  if (ino.mode == InoculationMode::full) {
    ij["coverage"] = ino.coverage;
  } else {
    ij["center"] = cell_json(ino.center);
    ij["count"] = ino.count;
  }
  if (ino.mode == InoculationMode::disk) ij["radius"] = ino.radius;
  if (ino.mode == InoculationMode::rect) {
    ij["w"] = ino.w;
    ij["h"] = ino.h;
  }
  const auto& g = sc.population.params.growth;
  const auto& s = sc.population.params.shrink;
  j["population"] = {
      {"inoculation", ij},
      {"growth",
       {{"enabled", g.enabled},
        {"window", g.window},
        {"min_count", g.min_count},
        {"max_count", g.max_count},
        {"probability", g.probability},
        {"frequency", g.frequency}}},
      {"shrink",
       {{"enabled", s.enabled},
        {"window", s.window},
        {"overcrowd_count", s.overcrowd_count},
        {"probability", s.probability},
        {"frequency", s.frequency}}}};

  const auto& reg = sc.substrate.region;
  ordered_json rj;
  rj["shape"] = name_of(reg.shape, kRegions);
  if (reg.shape != RegionShape::full) rj["center"] = cell_json(reg.center);
  if (reg.shape == RegionShape::disk) rj["radius"] = reg.radius;
  if (reg.shape == RegionShape::rect) {
    rj["w"] = reg.w;
    rj["h"] = reg.h;
  }
  j["substrate"] = {{"enabled", sc.substrate.enabled},
                    {"amount", sc.substrate.amount},
                    {"region", rj},
                    {"projection_rate", sc.substrate.projection_rate},
                    {"consumption", sc.substrate.consumption}};

  j["sources"] = ordered_json::array();
  for (const auto& src : sc.sources) j["sources"].push_back(source_json(src));

  j["events"] = ordered_json::array();
  for (const auto& ev : sc.events) {
    ordered_json e;
    e["step"] = ev.step;
    if (const auto* add = std::get_if<AddSource>(&ev.action)) {
      e["action"] = "add_source";
      e["source"] = source_json(add->source);
    } else if (const auto* rm = std::get_if<RemoveSource>(&ev.action)) {
      e["action"] = "remove_source";
      e["id"] = rm->id;
    } else if (const auto* sw = std::get_if<SetWeight>(&ev.action)) {
      e["action"] = "set_weight";
      e["id"] = sw->id;
      e["weight"] = sw->weight;
    }
    j["events"].push_back(e);
  }

  const auto& out = sc.outputs;
  j["outputs"] = {{"frame_every", out.frame_every},
                  {"metrics_every", out.metrics_every},
                  {"field_range", out.field_range ? ordered_json::array({out.field_range->min, out.field_range->max})
                                                  : ordered_json(nullptr)},
                  {"mask_closing", out.mask_closing},
                  {"mask_window", out.mask_window},
                  {"oracles",
                   {{"tree", out.oracles.tree},
                    {"voronoi", out.oracles.voronoi},
                    {"tolerance", out.oracles.tolerance},
                    {"border_margin", out.oracles.border_margin}}}};
  return j.dump(2) + "\n";
}

}  // namespace physarum
