#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "physarum/analysis.h"
#include "physarum/swarm.h"

using namespace physarum;

namespace {

BinaryMask from_rows(const std::vector<std::string>& rows) {
  BinaryMask m(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) m.set(x, y, rows[y][x] == '#');
  return m;
}

BinaryMask disk_mask(int w, int h, double cx, double cy, double r_out, double r_in = -1.0) {
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double d = std::hypot(x - cx, y - cy);
      m.set(x, y, d <= r_out && d > r_in);
    }
  return m;
}

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Minimum over every labelled tree on n vertices, decoded from Pruefer codes.
double brute_force_mst(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n == 1) return 0.0;
  if (n == 2) return dist(pts[0], pts[1]);
  std::vector<int> code(n - 2, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<int> degree(n, 1);
    for (int c : code) ++degree[c];
    double total = 0.0;
    for (int c : code) {
      int leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      total += dist(pts[leaf], pts[c]);
      --degree[leaf];
      --degree[c];
    }
    int u = -1, v = -1;
    for (int i = 0; i < n; ++i)
      if (degree[i] == 1) (u < 0 ? u : v) = i;
    total += dist(pts[u], pts[v]);
    best = std::min(best, total);

    int i = 0;
    while (i < n - 2 && ++code[i] == n) code[i++] = 0;
    if (i == n - 2) break;
  }
  return best;
}

// Textbook two-subiteration Zhang-Suen, no extras.
BinaryMask reference_thinning(BinaryMask m) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<std::pair<int, int>> drop;
      for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x) {
          if (!m.get(x, y)) continue;
          const bool p[8] = {m.test(x, y - 1), m.test(x + 1, y - 1), m.test(x + 1, y),     m.test(x + 1, y + 1),
                             m.test(x, y + 1), m.test(x - 1, y + 1), m.test(x - 1, y), m.test(x - 1, y - 1)};
          int b = 0, a = 0;
          for (int i = 0; i < 8; ++i) {
            b += p[i];
            a += !p[i] && p[(i + 1) % 8];
          }
          const bool c = pass == 0 ? !(p[0] && p[2] && p[4]) && !(p[2] && p[4] && p[6])
                                   : !(p[0] && p[2] && p[6]) && !(p[0] && p[4] && p[6]);
          if (b >= 2 && b <= 6 && a == 1 && c) drop.push_back({x, y});
        }
      for (auto [x, y] : drop) m.set(x, y, false);
      changed = changed || !drop.empty();
    }
  }
  return m;
}

LabelGrid two_regions(int w, int h, int split) {
  LabelGrid l(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) l[static_cast<std::size_t>(y) * w + x] = x < split ? 0 : 1;
  return l;
}

}  // namespace

TEST_CASE("occupancy_mask") {
  OccupancyGrid occ(8, 8);
  CHECK(occupancy_mask(occ).popcount() == 0);
  occ.place(3, 4, 0);
  auto m = occupancy_mask(occ);
  CHECK(m.popcount() == 1);
  CHECK(m.get(3, 4));
  World w = make_empty_world(30, 30, 2);
  inoculate(w, {InoculationMode::disk, {15, 15}, 6, 0, 0, 57});
  CHECK(occupancy_mask(w.occupancy).popcount() == 57);
}

TEST_CASE("close_mask bridges short gaps only") {
  auto m = from_rows({"..........", ".###.###..", "..........", ".###...###"});
  auto c = close_mask(m, 1);
  CHECK(c.get(4, 1));
  CHECK_FALSE(c.get(5, 3));
  CHECK(m.subset_of(c));
  CHECK(close_mask(m, 0) == m);
}

TEST_CASE("skeletonize: single pixel") {
  BinaryMask m(5, 5);
  m.set(2, 2);
  CHECK(skeletonize(m) == m);
}

TEST_CASE("skeletonize: 3x20 bar thins to a line") {
  BinaryMask m(30, 9);
  for (int y = 3; y < 6; ++y)
    for (int x = 5; x < 25; ++x) m.set(x, y);
  auto s = skeletonize(m);
  CHECK(s.subset_of(m));
  CHECK(count_components(s) == 1);
  int rows_used = 0;
  for (int y = 0; y < 9; ++y) {
    bool any = false;
    for (int x = 0; x < 30; ++x) any = any || s.get(x, y);
    rows_used += any;
  }
  CHECK(rows_used == 1);
  for (int x = 0; x < 30; ++x)
    if (s.get(x, 3) || s.get(x, 5)) FAIL("skeleton left the midline");
  // Standard thinning erodes each end of the bar; the hand-run oracle leaves 17 cells.
  CHECK(s == reference_thinning(m));
  CHECK(s.popcount() == 17);
}

TEST_CASE("skeletonize agrees with textbook thinning on thick shapes") {
  for (int r = 3; r < 12; r += 2) {
    auto m = disk_mask(40, 40, 20, 20, r);
    CHECK(skeletonize(m) == reference_thinning(m));
  }
  auto ring = disk_mask(50, 50, 25, 25, 15, 8);
  CHECK(skeletonize(ring) == reference_thinning(ring));
}

TEST_CASE("skeletonize: 2x2 block keeps a pixel") {
  // textbook thinning erases a 2x2 square completely
  BinaryMask sq(6, 6);
  for (int y = 2; y < 4; ++y)
    for (int x = 2; x < 4; ++x) sq.set(x, y);
  CHECK(reference_thinning(sq).popcount() == 0);
  CHECK(skeletonize(sq).popcount() >= 1);
}

TEST_CASE("skeletonize: disjoint blobs stay disjoint") {
  BinaryMask m = disk_mask(40, 20, 9, 9, 5);
  auto other = disk_mask(40, 20, 29, 9, 4);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 40; ++x)
      if (other.get(x, y)) m.set(x, y);
  auto s = skeletonize(m);
  CHECK(count_components(s) == 2);
  CHECK(s.subset_of(m));
}

TEST_CASE("skeletonize: subset and component count on random masks") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 40; ++trial) {
    BinaryMask m(32, 24);
    std::bernoulli_distribution on(0.15 + 0.02 * (trial % 20));
    for (int y = 1; y < 23; ++y)
      for (int x = 1; x < 31; ++x) m.set(x, y, on(gen));
    auto s = skeletonize(m);
    CHECK(s.subset_of(m));
    CHECK(count_components(s) == count_components(m));
  }
}

TEST_CASE("holes") {
  CHECK(count_holes(disk_mask(40, 40, 20, 20, 10)) == 0);
  CHECK(count_holes(disk_mask(40, 40, 20, 20, 10, 5)) == 1);
  auto nested = disk_mask(60, 60, 30, 30, 25, 20);
  auto inner = disk_mask(60, 60, 30, 30, 12, 7);
  for (int y = 0; y < 60; ++y)
    for (int x = 0; x < 60; ++x)
      if (inner.get(x, y)) nested.set(x, y);
  CHECK(count_holes(nested) == 2);
  // a ring cut by the border has no hole
  CHECK(count_holes(disk_mask(40, 40, 0, 20, 10, 5)) == 0);
  // diagonal gap keeps a 4-connected hole closed
  CHECK(count_holes(from_rows({".....", "..#..", ".#.#.", "..#..", "....."})) == 1);
}

TEST_CASE("skeleton_length") {
  CHECK(skeleton_length(from_rows({"#####"})) == doctest::Approx(4.0));
  CHECK(skeleton_length(from_rows({"#..", ".#.", "..#"})) == doctest::Approx(2 * std::sqrt(2.0)));
  // L corner: the diagonal shortcut is not counted twice
  CHECK(skeleton_length(from_rows({"##", ".#"})) == doctest::Approx(2.0));
  CHECK(skeleton_length(from_rows({"#"})) == 0.0);
}

TEST_CASE("topology") {
  StimulusSource a;
  a.id = "a";
  a.center = {15, 15};
  StimulusSource b = a;
  b.id = "b";
  b.center = {20, 18};

  auto disk = disk_mask(40, 40, 17, 17, 9);
  auto g = topology(disk, {a, b});
  CHECK(g.connected_components == 1);
  CHECK(g.holes == 0);
  CHECK(g.all_attached());
  CHECK(g.is_tree());

  CHECK(topology(disk_mask(40, 40, 17, 17, 12, 5), {}).holes == 1);

  auto two = disk_mask(60, 30, 12, 15, 6);
  auto right = disk_mask(60, 30, 45, 15, 6);
  for (int y = 0; y < 30; ++y)
    for (int x = 0; x < 60; ++x)
      if (right.get(x, y)) two.set(x, y);
  a.center = {12, 15};
  b.center = {45, 15};
  auto g2 = topology(two, {a, b});
  CHECK(g2.connected_components == 2);
  CHECK_FALSE(g2.is_tree());

  // point footprint attaches through its 3x3 block
  BinaryMask near(10, 10);
  near.set(4, 5);
  a.center = {5, 5};
  auto g3 = topology(near, {a});
  CHECK(g3.nodes[0].attached);
  a.center = {7, 5};
  CHECK_FALSE(topology(near, {a}).nodes[0].attached);
}

TEST_CASE("mst_oracle: examples") {
  auto two = mst_oracle({{0, 0}, {3, 4}});
  CHECK(two.edges.size() == 1);
  CHECK(two.total_length == doctest::Approx(5.0));

  CHECK(mst_oracle({{0, 0}, {1, 0}, {1, 1}, {0, 1}}).total_length == doctest::Approx(3.0));
  CHECK(brute_force_mst({{0, 0}, {1, 0}, {1, 1}, {0, 1}}) == doctest::Approx(3.0));

  auto line = mst_oracle({{0, 0}, {1, 0}, {3, 0}});
  CHECK(line.total_length == doctest::Approx(3.0));
  REQUIRE(line.edges.size() == 2);
  for (const auto& e : line.edges) CHECK(((e.a == 0 && e.b == 1) || (e.a == 1 && e.b == 0) ||
                                          (e.a == 1 && e.b == 2) || (e.a == 2 && e.b == 1)));

  CHECK(mst_oracle({{2, 2}}).total_length == 0.0);
  CHECK_THROWS_AS(mst_oracle({}), std::invalid_argument);
  CHECK_THROWS_AS(mst_oracle({{1, 1}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("mst_oracle matches exhaustive enumeration") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 7;
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back({coord(gen), coord(gen)});
    auto r = mst_oracle(pts);
    CHECK(r.edges.size() == static_cast<std::size_t>(n - 1));
    CHECK(r.total_length == doctest::Approx(brute_force_mst(pts)).epsilon(1e-12));
    // edges form a spanning tree
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
    for (const auto& e : r.edges) parent[find(static_cast<int>(e.a))] = find(static_cast<int>(e.b));
    for (int i = 1; i < n; ++i) CHECK(find(i) == find(0));
  }
}

TEST_CASE("weighted_voronoi_oracle: examples") {
  auto one = weighted_voronoi_oracle({{5, 5}}, {1.0}, 10, 10);
  for (int l : one) CHECK(l == 0);

  // symmetric pair: bisector at x = 10
  auto pair = weighted_voronoi_oracle({{5, 10}, {15, 10}}, {1.0, 1.0}, 20, 20);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 20; ++x) {
      const int l = pair[static_cast<std::size_t>(y) * 20 + x];
      if (x <= 8) CHECK(l == 0);
      if (x >= 10) CHECK(l == 1);
    }

  // weights 2 and 1: site 0 owns the cells with d0 / 2 <= d1 (Apollonius circle)
  const Point s0{12.0, 20.0}, s1{28.0, 20.0};
  auto ap = weighted_voronoi_oracle({s0, s1}, {2.0, 1.0}, 40, 40);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 40; ++x) {
      const Point c{x + 0.5, y + 0.5};
      const bool first = dist(c, s0) / 2.0 <= dist(c, s1);
      CHECK(ap[static_cast<std::size_t>(y) * 40 + x] == (first ? 0 : 1));
    }

  CHECK_THROWS_AS(weighted_voronoi_oracle({}, {}, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(weighted_voronoi_oracle({{1, 1}}, {0.0}, 5, 5), std::invalid_argument);
}

TEST_CASE("weighted_voronoi_oracle: per-cell argmin") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> coord(0.0, 64.0);
  std::uniform_real_distribution<double> weight(0.5, 4.0);
  std::uniform_int_distribution<int> cell(0, 63);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Point> sites;
    std::vector<double> weights;
    for (int i = 0; i < 2 + trial % 5; ++i) {
      sites.push_back({coord(gen), coord(gen)});
      weights.push_back(weight(gen));
    }
    auto labels = weighted_voronoi_oracle(sites, weights, 64, 64);
    for (int k = 0; k < 1000; ++k) {
      const int x = cell(gen), y = cell(gen);
      const Point c{x + 0.5, y + 0.5};
      const int l = labels[static_cast<std::size_t>(y) * 64 + x];
      const double mine = dist(c, sites[l]) / weights[l];
      for (std::size_t s = 0; s < sites.size(); ++s) CHECK(mine <= dist(c, sites[s]) / weights[s]);
    }
  }
}

TEST_CASE("boundary_agreement") {
  auto labels = two_regions(40, 40, 20);
  BinaryMask boundary(40, 40);
  for (int y = 0; y < 40; ++y) {
    boundary.set(19, y);
    boundary.set(20, y);
  }
  CHECK(boundary_agreement(boundary, labels, 0, 0) == 1.0);
  CHECK(boundary_agreement(BinaryMask(40, 40), labels, 3, 10) == 1.0);

  BinaryMask deep(40, 40);
  deep.set(5, 20);
  CHECK(boundary_agreement(deep, labels, 2, 0) == 0.0);

  // monotone in tol
  std::mt19937_64 gen(3);
  std::bernoulli_distribution on(0.2);
  BinaryMask rnd(40, 40);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 40; ++x) rnd.set(x, y, on(gen));
  double prev = -1.0;
  for (int tol = 0; tol < 25; ++tol) {
    const double a = boundary_agreement(rnd, labels, tol, 5);
    CHECK(a >= prev);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    prev = a;
  }
  CHECK(prev == 1.0);

  // the margin frame is ignored
  BinaryMask edge(40, 40);
  edge.set(1, 1);
  edge.set(21, 20);
  CHECK(boundary_agreement(edge, labels, 1, 3) == 1.0);
  CHECK(boundary_agreement(edge, labels, 1, 0) == 0.5);
}

TEST_CASE("morphology_metrics") {
  BinaryMask full(10, 10);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 10; ++x) full.set(x, y);
  CHECK(morphology_metrics(full).coverage == 1.0);

  BinaryMask one(10, 10);
  one.set(4, 4);
  auto m = morphology_metrics(one);
  CHECK(m.coverage == doctest::Approx(0.01));
  CHECK(m.compactness == doctest::Approx(4 * std::acos(-1.0) / 16));

  for (int len : {10, 14, 25, 40}) {
    BinaryMask line(50, 5);
    for (int x = 0; x < len; ++x) line.set(x + 2, 2);
    const double c = morphology_metrics(line).compactness;
    CHECK(c == doctest::Approx(4 * std::acos(-1.0) * len / ((2.0 * len + 2) * (2.0 * len + 2))));
    if (len >= 14) CHECK(c < 0.2);
  }

  auto disk = morphology_metrics(disk_mask(80, 80, 40, 40, 25));
  // raster perimeter of a disk tends to 8r, so the score tends to pi^2/16
  CHECK(disk.compactness == doctest::Approx(std::acos(-1.0) * std::acos(-1.0) / 16).epsilon(0.05));
  CHECK(morphology_metrics(BinaryMask(5, 5)).compactness == 0.0);
}

TEST_CASE("choice_order") {
  auto rec = [](std::int64_t step, std::vector<std::pair<std::string, bool>> s) {
    MetricsRecord r;
    r.step = step;
    for (auto& [id, sup] : s) r.sources.push_back({id, true, 0.0, sup, 0.0});
    return r;
  };
  std::vector<MetricsRecord> hist{rec(0, {{"a", false}, {"b", false}, {"c", false}}),
                                  rec(300, {{"a", true}, {"b", false}, {"c", false}}),
                                  rec(900, {{"a", true}, {"b", true}, {"c", false}})};
  auto order = choice_order(hist, {"a", "b", "c"});
  REQUIRE(order.size() == 3);
  CHECK(order[0].id == "a");
  CHECK(order[0].first_suppressed == 300);
  CHECK(order[1].id == "b");
  CHECK(order[1].first_suppressed == 900);
  CHECK(order[2].first_suppressed == kNever);

  std::vector<MetricsRecord> only{rec(0, {{"z", false}, {"y", true}})};
  auto o2 = choice_order(only, {"z", "y"});
  CHECK(o2[0].id == "y");

  std::vector<MetricsRecord> none{rec(0, {{"c", false}, {"a", false}, {"b", false}})};
  auto o3 = choice_order(none, {"c", "a", "b"});
  CHECK(o3[0].id == "a");
  CHECK(o3[1].id == "b");
  CHECK(o3[2].id == "c");
  for (const auto& e : o3) CHECK(e.first_suppressed == kNever);
}

TEST_CASE("record_metrics") {
  World w = make_empty_world(10, 10, 1);
  spawn_agent(w, 2, 2, 0);
  spawn_agent(w, 4, 2, 0);
  w.field.at(0, 0) = -1.0;
  w.field.at(1, 0) = 3.0;
  StimulusSource s;
  s.id = "s";
  s.center = {3, 2};
  w.sources.push_back(s);
  auto r = record_metrics(w, 12, {"s", "gone"});
  CHECK(r.step == 12);
  CHECK(r.population == 2);
  CHECK(r.coverage == doctest::Approx(0.02));
  CHECK(r.centroid_x == doctest::Approx(3.5));
  CHECK(r.centroid_y == doctest::Approx(2.5));
  CHECK(r.field_min == -1.0);
  CHECK(r.field_max == 3.0);
  CHECK(r.field_total == 2.0);
  REQUIRE(r.sources.size() == 2);
  CHECK(r.sources[0].present);
  CHECK(r.sources[0].coverage == doctest::Approx(2.0 / 9.0));
  CHECK_FALSE(r.sources[1].present);
}
