// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "physarum/analysis.h"
#include "physarum/render.h"
#include "physarum/run.h"

using namespace physarum;
namespace fs = std::filesystem;

namespace {

const std::vector<std::uint64_t> kSeeds = {1, 2, 3, 4, 5};

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& name, const Outcome& o) {
  std::printf("criterion %2d %-22s %s  %s\n", n, name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Scenario seeded(const std::string& builtin, std::uint64_t seed) {
  Scenario sc = builtin_scenario(builtin);
  sc.seed = seed;
  return sc;
}

// Runs to the end calling `each` after every executed step with its index.
Simulation run(const Scenario& sc, const std::function<void(const Simulation&, std::int64_t)>& each = {}) {
  Simulation sim(sc);
  while (!sim.done()) {
    const auto t = sim.next_step();
    sim.step();
    if (each) each(sim, t);
  }
  return sim;
}

double dist(double ax, double ay, double bx, double by) { return std::hypot(ax - bx, ay - by); }

double center_x(const StimulusSource& s) { return s.center.x + 0.5; }
double center_y(const StimulusSource& s) { return s.center.y + 0.5; }

// 1 ----------------------------------------------------------------------

Outcome diffusion_mass() {
  double worst = 0.0;
  int checked = 0;
  for (int kernel : {3, 5, 7}) {
    const DiffusionParams p{kernel, 0.05};
    TrailField f(64, 64);
    f.at(32, 32) = 1000.0;
    const int reach = (kernel - 1) / 2;
    // stop once the support could reach the border
    for (int step = 0; 32 + (step + 1) * reach < 63; ++step) {
      const double before = field_total(f);
      f = diffuse(f, p);
      const double after = field_total(f);
      worst = std::max(worst, std::abs(after - (1.0 - p.decay) * before) / before);
      ++checked;
    }
  }
  return {worst <= 1e-9, std::to_string(checked) + " steps, max rel err " + fmt("%.2e", worst)};
}

// 2 ----------------------------------------------------------------------

Outcome determinism() {
  Scenario sc = seeded("spanning_tree", 7);
  sc.steps = 1000;
  const auto base = fs::temp_directory_path() / "physarum_acceptance_det";
  fs::remove_all(base);
  run_to_directory(sc, base / "a", nullptr);
  run_to_directory(sc, base / "b", nullptr);
  int compared = 0, differ = 0;
  for (const auto& e : fs::directory_iterator(base / "a")) {
    const auto name = e.path().filename().string();
    if (name != "metrics.csv" && e.path().extension() != ".pgm") continue;
    ++compared;
    if (!fs::exists(base / "b" / name) || read_text_file(e.path()) != read_text_file(base / "b" / name)) ++differ;
  }
  fs::remove_all(base);
  return {compared > 1 && differ == 0, std::to_string(compared) + " files, " + std::to_string(differ) + " differ"};
}

// 3 ----------------------------------------------------------------------

Outcome occupancy_audit() {
  const Scenario sc = builtin_scenario("audit_mixed");
  std::int64_t audited = 0;
  std::string first_error;
  Simulation sim(sc);
  if (auto e = audit_occupancy(sim.world()); !e.empty()) first_error = "initial: " + e;
  while (!sim.done()) {
    const auto t = sim.next_step();
    sim.step();
    ++audited;
    if (auto e = audit_occupancy(sim.world()); !e.empty() && first_error.empty())
      first_error = "step " + std::to_string(t) + ": " + e;
  }
  return {first_error.empty() && audited == 200,
          std::to_string(audited) + " steps audited" + (first_error.empty() ? "" : ", " + first_error)};
}

// 4 ----------------------------------------------------------------------

// Minimum total over every labelled tree on n vertices (Pruefer sequences).
double brute_mst(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  auto d = [&](int a, int b) { return dist(pts[a].x, pts[a].y, pts[b].x, pts[b].y); };
  if (n == 1) return 0.0;
  if (n == 2) return d(0, 1);
  std::vector<int> seq(n - 2, 0);
  double best = INFINITY;
  while (true) {
    std::vector<int> degree(n, 1);
    for (int v : seq) ++degree[v];
    double total = 0.0;
    std::vector<int> deg = degree;
    for (int v : seq) {
      int leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      total += d(leaf, v);
      --deg[leaf];
      --deg[v];
    }
    int u = -1, w = -1;
    for (int i = 0; i < n; ++i)
      if (deg[i] == 1) (u < 0 ? u : w) = i;
    total += d(u, w);
    best = std::min(best, total);
    int k = 0;
    while (k < n - 2 && ++seq[k] == n) seq[k++] = 0;
    if (k == n - 2) break;
  }
  return best;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> count(1, 7);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  int mst_ok = 0, vor_cells = 0, vor_bad = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const int n = count(rng);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
    const double want = brute_mst(pts);
    const auto got = mst_oracle(pts);
    if (std::abs(got.total_length - want) <= 1e-9 * std::max(1.0, want) &&
        got.edges.size() == static_cast<std::size_t>(n - 1))
      ++mst_ok;

    const int w = 40 + inst * 7, h = 30 + inst * 5;
    std::uniform_real_distribution<double> xs(0.0, w), ys(0.0, h), ws(0.5, 4.0);
    std::vector<Point> sites;
    std::vector<double> weights;
    for (int i = 0; i < n + 1; ++i) {
      sites.push_back({xs(rng), ys(rng)});
      weights.push_back(ws(rng));
    }
    const auto labels = weighted_voronoi_oracle(sites, weights, w, h);
    std::uniform_int_distribution<int> cx(0, w - 1), cy(0, h - 1);
    for (int k = 0; k < 1000; ++k) {
      const int x = cx(rng), y = cy(rng);
      int arg = 0;
      double best = INFINITY;
      for (std::size_t i = 0; i < sites.size(); ++i) {
        const double v = dist(x + 0.5, y + 0.5, sites[i].x, sites[i].y) / weights[i];
        if (v < best) {
          best = v;
          arg = static_cast<int>(i);
        }
      }
      ++vor_cells;
      if (labels[static_cast<std::size_t>(y) * w + x] != arg) ++vor_bad;
    }
  }
  return {mst_ok == 20 && vor_bad == 0, "mst " + std::to_string(mst_ok) + "/20 exact, voronoi " +
                                            std::to_string(vor_cells - vor_bad) + "/" + std::to_string(vor_cells) +
                                            " cells argmin"};
}

// 5, 6 -------------------------------------------------------------------

Outcome taxis() {
  int ok = 0;
  std::string detail;
  for (auto seed : kSeeds) {
    const auto sim = run(seeded("taxis_attractant", seed));
    const auto& src = sim.scenario().sources.front();
    std::vector<double> d;
    for (const auto& r : sim.history()) d.push_back(dist(r.centroid_x, r.centroid_y, center_x(src), center_y(src)));
    // windows are the 100-step intervals between metric records, up to arrival
    std::size_t arrive = d.size();
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] < 10.0) {
        arrive = i;
        break;
      }
    int windows = 0, down = 0;
    for (std::size_t i = 0; i + 1 <= arrive && i + 1 < d.size(); ++i) {
      ++windows;
      if (d[i + 1] < d[i]) ++down;
    }
    const bool arrived = arrive < d.size();
    const bool pass = arrived && windows > 0 && down >= 0.9 * windows;
    ok += pass;
    detail += " s" + std::to_string(seed) + ":" + (arrived ? std::to_string(sim.history()[arrive].step) : "never") +
              "," + std::to_string(down) + "/" + std::to_string(windows);
  }
  return {ok >= 4, std::to_string(ok) + "/5 seeds (arrival step, falling windows)" + detail};
}

double min_distance(const World& w, const StimulusSource& s) {
  double m = INFINITY;
  for (const auto& a : w.agents) m = std::min(m, dist(a.x, a.y, center_x(s), center_y(s)));
  return m;
}

Outcome avoidance() {
  int ok = 0;
  std::string detail;
  for (auto seed : kSeeds) {
    const Scenario sc = seeded("avoid_repellent", seed);
    const double initial = min_distance(build_world(sc), sc.sources.front());
    const auto sim = run(sc);
    const auto& w = sim.world();
    const double final_min = min_distance(w, sc.sources.front());
    std::size_t near = 0;
    for (const auto& a : w.agents)
      if (dist(a.x, a.y, center_x(sc.sources.front()), center_y(sc.sources.front())) <= 30.0) ++near;
    const double frac = w.agents.empty() ? 1.0 : static_cast<double>(near) / w.agents.size();
    const bool pass = final_min > initial && frac < 0.05;
    ok += pass;
    detail += " s" + std::to_string(seed) + ":" + fmt("%.1f", initial) + "->" + fmt("%.1f", final_min) + "," +
              fmt("%.3f", frac);
  }
  return {ok >= 4, std::to_string(ok) + "/5 seeds (min distance, fraction within 30)" + detail};
}

// 7, 8 -------------------------------------------------------------------

struct TreeRun {
  bool tree_pass = false;
  bool suppression_pass = false;
  std::string tree_detail;
  std::string suppression_detail;
};

TreeRun spanning_tree_run(std::uint64_t seed) {
  const Scenario sc = seeded("spanning_tree", seed);
  const auto& range = *sc.outputs.field_range;
  FrameMapping mapping;
  mapping.fixed_min = range.min;
  mapping.fixed_max = range.max;

  const std::size_t n = sc.sources.size();
  std::vector<std::int64_t> first(n, -1);
  std::vector<int> last_pixel(n, -1), samples(n, 0);
  std::vector<bool> monotone(n, true);
  bool clipped = false;

  const auto sim = run(sc, [&](const Simulation& s, std::int64_t t) {
    const auto& w = s.world();
    GreyImage img;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& src = w.sources[i];
      if (first[i] < 0 && src.suppressed) first[i] = t;
      if (first[i] < 0 || t - first[i] > 500 || (t - first[i]) % 50 != 0) continue;
      if (img.pixels.empty()) img = field_image(w.field, mapping);
      const double v = w.field.at(src.center.x, src.center.y);
      if (v > range.max || v < range.min) clipped = true;
      // dark means high: a non-increasing field is a non-decreasing pixel
      const int px = img.pixels[static_cast<std::size_t>(src.center.y) * img.width + src.center.x];
      if (last_pixel[i] >= 0 && px < last_pixel[i]) monotone[i] = false;
      last_pixel[i] = px;
      ++samples[i];
    }
  });

  TreeRun out;
  const auto rep = tree_report(network_mask(sim.trace(), sc.outputs.mask_closing), sim.world().sources);
  int joined = 0;
  for (const auto& a : rep.graph.nodes) {
    int c = 0;
    for (const auto& b : rep.graph.nodes) c += a.attached && b.attached && a.component == b.component;
    joined = std::max(joined, c);
  }
  out.tree_pass = joined == 5 && rep.graph.holes == 0 && rep.ratio >= 1.0 && rep.ratio <= 1.6;
  out.tree_detail = "nodes " + std::to_string(joined) + " holes " + std::to_string(rep.graph.holes) + " ratio " +
                    fmt("%.3f", rep.ratio);

  bool all = !clipped;
  int good = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool ok = first[i] >= 0 && samples[i] == 11 && monotone[i];
    good += ok;
    all = all && ok;
  }
  out.suppression_pass = all;
  out.suppression_detail = std::to_string(good) + "/" + std::to_string(n) + " sources" + (clipped ? " clipped" : "");
  return out;
}

// 9, 10 ------------------------------------------------------------------

VoronoiReport voronoi_run(const std::string& builtin, std::uint64_t seed) {
  const auto sim = run(seeded(builtin, seed));
  const auto& o = sim.scenario().outputs;
  return voronoi_report(network_mask(sim.trace(), o.mask_closing), sim.world().sources, o.oracles.tolerance,
                        o.oracles.border_margin);
}

Outcome voronoi() {
  int ok = 0;
  std::string detail;
  for (auto seed : kSeeds) {
    const auto rep = voronoi_run("voronoi", seed);
    // an empty evaluation region would score a vacuous 1.0
    const bool pass = rep.evaluated_cells > 0 && rep.classical >= 0.70;
    ok += pass;
    detail += " s" + std::to_string(seed) + ":" + fmt("%.3f", rep.classical) + "/" +
              std::to_string(rep.evaluated_cells);
  }
  return {ok >= 3, std::to_string(ok) + "/5 seeds (agreement/cells)" + detail};
}

Outcome weighted_voronoi() {
  int ok = 0;
  std::string detail;
  for (auto seed : kSeeds) {
    const auto rep = voronoi_run("weighted_voronoi_pair", seed);
    const bool pass = rep.evaluated_cells > 0 && rep.weighted > rep.classical;
    ok += pass;
    detail += " s" + std::to_string(seed) + ":" + fmt("%.3f", rep.weighted) + ">" + fmt("%.3f", rep.classical);
  }
  return {ok >= 4, std::to_string(ok) + "/5 seeds (weighted>classical)" + detail};
}

// 11 ---------------------------------------------------------------------

Morphology morphology_run(const std::string& builtin) {
  const auto sim = run(builtin_scenario(builtin));
  return morphology_metrics(network_mask(sim.trace(), sim.scenario().outputs.mask_closing));
}

Outcome morphology() {
  const auto low = morphology_run("dendritic");
  const auto rich = morphology_run("radial_substrate");
  const bool pass = low.coverage < 0.2 && rich.coverage > 0.5 && rich.compactness > 2.0 * low.compactness;
  return {pass, "low coverage " + fmt("%.3f", low.coverage) + " compactness " + fmt("%.3f", low.compactness) +
                    "; substrate coverage " + fmt("%.3f", rich.coverage) + " compactness " +
                    fmt("%.3f", rich.compactness)};
}

// 12 ---------------------------------------------------------------------

Outcome choice() {
  bool all = true;
  std::string detail;
  for (const auto& [builtin, expected] : std::vector<std::pair<std::string, std::string>>{
           {"choice_distance", "near"}, {"choice_size", "wide"}, {"choice_weight", "strong"}}) {
    int ok = 0;
    for (auto seed : kSeeds) {
      const auto sim = run(seeded(builtin, seed));
      const auto order = choice_order(sim.history(), sim.columns());
      ok += !order.empty() && order.front().id == expected && order.front().first_suppressed != kNever;
    }
    all = all && ok >= 4;
    detail += " " + builtin.substr(7) + " " + std::to_string(ok) + "/5";
  }
  return {all, "first choice correct:" + detail};
}

// 13 ---------------------------------------------------------------------

std::size_t agents_near(const World& w, double x, double y, double radius) {
  std::size_t n = 0;
  for (const auto& a : w.agents)
    if (dist(a.cell_x() + 0.5, a.cell_y() + 0.5, x, y) <= radius) ++n;
  return n;
}

Outcome removal() {
  int ok = 0;
  std::string detail;
  for (auto seed : kSeeds) {
    const Scenario sc = seeded("removal", seed);
    const auto& ev = sc.events.front();
    const auto& gone_id = std::get<RemoveSource>(ev.action).id;
    const auto gone = *std::find_if(sc.sources.begin(), sc.sources.end(),
                                    [&](const StimulusSource& s) { return s.id == gone_id; });
    const double gx = center_x(gone), gy = center_y(gone);
    std::size_t before = 0;
    std::int64_t cleared = -1;
    run(sc, [&](const Simulation& s, std::int64_t t) {
      const auto n = agents_near(s.world(), gx, gy, 15.0);
      if (t == ev.step - 1) before = n;
      if (t >= ev.step && t < ev.step + 1500 && cleared < 0 && before > 0 && n < 0.1 * before)
        cleared = t - ev.step;
    });
    const bool pass = before > 0 && cleared >= 0;
    ok += pass;
    detail += " s" + std::to_string(seed) + ":" + std::to_string(before) + "," +
              (cleared >= 0 ? "+" + std::to_string(cleared) : "never");
  }
  return {ok >= 4, std::to_string(ok) + "/5 seeds (agents before, steps to clear)" + detail};
}

// 14 ---------------------------------------------------------------------

double skeleton_of(const std::string& builtin, std::uint64_t seed) {
  const auto sim = run(seeded(builtin, seed));
  const auto mask = network_mask(sim.trace(), sim.scenario().outputs.mask_closing);
  return topology(mask, sim.world().sources).skeleton_length;
}

Outcome hybrid_trend() {
  int ok = 0;
  std::string detail;
  for (auto seed : kSeeds) {
    const double hi = skeleton_of("hybrid_high", seed);
    const double mid = skeleton_of("hybrid_medium", seed);
    const double lo = skeleton_of("hybrid_low", seed);
    ok += hi > mid && mid > lo;
    detail += " s" + std::to_string(seed) + ":" + fmt("%.0f", hi) + ">" + fmt("%.0f", mid) + ">" + fmt("%.0f", lo);
  }
  return {ok >= 3, std::to_string(ok) + "/5 triples" + detail};
}

}  // namespace

int main() {
  report(1, "diffusion mass", diffusion_mass());
  report(2, "determinism", determinism());
  report(3, "occupancy audit", occupancy_audit());
  report(4, "oracle equivalence", oracle_equivalence());
  report(5, "attractant taxis", taxis());
  report(6, "repellent avoidance", avoidance());

  int trees = 0, suppressions = 0;
  std::string tree_detail, supp_detail;
  for (auto seed : kSeeds) {
    const auto r = spanning_tree_run(seed);
    trees += r.tree_pass;
    suppressions += r.suppression_pass;
    tree_detail += " s" + std::to_string(seed) + ":" + r.tree_detail + ";";
    supp_detail += " s" + std::to_string(seed) + ":" + r.suppression_detail + ";";
  }
  report(7, "spanning tree", {trees >= 4, std::to_string(trees) + "/5 seeds" + tree_detail});
  report(8, "suppression dynamics", {suppressions >= 4, std::to_string(suppressions) + "/5 seeds" + supp_detail});

  report(9, "voronoi", voronoi());
  report(10, "weighted voronoi", weighted_voronoi());
  report(11, "morphology dichotomy", morphology());
  report(12, "choice ordering", choice());
  report(13, "dynamic removal", removal());
  report(14, "hybrid trend", hybrid_trend());

  std::printf("%d of 14 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
