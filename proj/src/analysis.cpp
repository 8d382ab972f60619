#include "physarum/analysis.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "physarum/field.h"
#include "physarum/swarm.h"

namespace physarum {

std::size_t BinaryMask::popcount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BinaryMask::subset_of(const BinaryMask& other) const {
  if (width_ != other.width_ || height_ != other.height_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

BinaryMask occupancy_mask(const OccupancyGrid& occupancy) {
  BinaryMask mask(occupancy.width(), occupancy.height());
  for (int y = 0; y < occupancy.height(); ++y)
    for (int x = 0; x < occupancy.width(); ++x)
      if (occupancy.occupied(x, y)) mask.set(x, y);
  return mask;
}

namespace {

// Separable square max/min filter. Out-of-bounds cells count as `outside`.
BinaryMask square_filter(const BinaryMask& in, int r, bool dilate, bool outside) {
  const int w = in.width();
  const int h = in.height();
  BinaryMask tmp(w, h);
  BinaryMask out(w, h);
  auto probe = [&](const BinaryMask& m, int x, int y) { return m.in_bounds(x, y) ? m.get(x, y) : outside; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool v = !dilate;
      for (int d = -r; d <= r; ++d) {
        const bool b = probe(in, x + d, y);
        if (dilate ? b : !b) {
          v = dilate;
          break;
        }
      }
      tmp.set(x, y, v);
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool v = !dilate;
      for (int d = -r; d <= r; ++d) {
        const bool b = probe(tmp, x, y + d);
        if (dilate ? b : !b) {
          v = dilate;
          break;
        }
      }
      out.set(x, y, v);
    }
  }
  return out;
}

}  // namespace

BinaryMask close_mask(const BinaryMask& mask, int radius) {
  if (radius <= 0) return mask;
  // Erosion treats the outside as set so shapes touching the border keep it.
  return square_filter(square_filter(mask, radius, true, false), radius, false, true);
}

int label_components(const BinaryMask& mask, LabelGrid& labels) {
  const int w = mask.width();
  const int h = mask.height();
  labels.assign(static_cast<std::size_t>(w) * h, -1);
  int next = 0;
  std::vector<int> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (!mask.get(x, y) || labels[i] != -1) continue;
      labels[i] = next;
      stack.push_back(static_cast<int>(i));
      while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        const int cx = c % w;
        const int cy = c / w;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx;
            const int ny = cy + dy;
            if (!mask.test(nx, ny)) continue;
            const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
            if (labels[j] != -1) continue;
            labels[j] = next;
            stack.push_back(static_cast<int>(j));
          }
        }
      }
      ++next;
    }
  }
  return next;
}

int count_components(const BinaryMask& mask) {
  LabelGrid labels;
  return label_components(mask, labels);
}

int count_holes(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
  std::vector<int> stack;
  int holes = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (mask.get(x, y) || seen[i]) continue;
      bool touches_border = false;
      seen[i] = 1;
      stack.push_back(static_cast<int>(i));
      while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        const int cx = c % w;
        const int cy = c / w;
        if (cx == 0 || cy == 0 || cx == w - 1 || cy == h - 1) touches_border = true;
        constexpr int kDx[4] = {1, -1, 0, 0};
        constexpr int kDy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nx = cx + kDx[k];
          const int ny = cy + kDy[k];
          if (!mask.in_bounds(nx, ny) || mask.get(nx, ny)) continue;
          const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
          if (seen[j]) continue;
          seen[j] = 1;
          stack.push_back(static_cast<int>(j));
        }
      }
      if (!touches_border) ++holes;
    }
  }
  return holes;
}

BinaryMask skeletonize(const BinaryMask& mask) {
  BinaryMask img = mask;
  const int w = img.width();
  const int h = img.height();
  std::vector<std::size_t> marked;
  LabelGrid labels;

  for (bool changed = true; changed;) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      marked.clear();
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (!img.get(x, y)) continue;
          // P2..P9 clockwise from north.
          const int p[8] = {img.test(x, y - 1),     img.test(x + 1, y - 1), img.test(x + 1, y),
                            img.test(x + 1, y + 1), img.test(x, y + 1),     img.test(x - 1, y + 1),
                            img.test(x - 1, y),     img.test(x - 1, y - 1)};
          int b = 0;
          int a = 0;
          for (int k = 0; k < 8; ++k) {
            b += p[k];
            a += (p[k] == 0 && p[(k + 1) % 8] == 1);
          }
          if (b < 2 || b > 6 || a != 1) continue;
          const int p2 = p[0], p4 = p[2], p6 = p[4], p8 = p[6];
          if (pass == 0 && (p2 * p4 * p6 != 0 || p4 * p6 * p8 != 0)) continue;
          if (pass == 1 && (p2 * p4 * p8 != 0 || p2 * p6 * p8 != 0)) continue;
          marked.push_back(static_cast<std::size_t>(y) * w + x);
        }
      }
      if (marked.empty()) continue;

      // Keep one pixel of any component the pass would erase completely
      // (e.g. a 2x2 block).
      const int n = label_components(img, labels);
      std::vector<int> size(n, 0);
      std::vector<int> hit(n, 0);
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] >= 0) ++size[labels[i]];
      for (std::size_t i : marked) ++hit[labels[i]];
      std::vector<char> spared(n, 0);
      for (std::size_t i : marked) {
        const int c = labels[i];
        if (hit[c] == size[c] && !spared[c]) {
          spared[c] = 1;
          continue;
        }
        img.set(static_cast<int>(i % w), static_cast<int>(i / w), false);
        changed = true;
      }
    }
  }
  return img;
}

double skeleton_length(const BinaryMask& s) {
  double length = 0.0;
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      if (!s.get(x, y)) continue;
      if (s.test(x + 1, y)) length += 1.0;
      if (s.test(x, y + 1)) length += 1.0;
      if (s.test(x + 1, y + 1) && !s.test(x + 1, y) && !s.test(x, y + 1)) length += std::numbers::sqrt2;
      if (s.test(x - 1, y + 1) && !s.test(x - 1, y) && !s.test(x, y + 1)) length += std::numbers::sqrt2;
    }
  }
  return length;
}

bool NetworkGraph::all_attached() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const auto& n) { return n.attached; });
}

NetworkGraph topology(const BinaryMask& mask, const std::vector<StimulusSource>& sources) {
  NetworkGraph g;
  LabelGrid labels;
  label_components(mask, labels);
  std::vector<int> attached_components;
  for (const auto& src : sources) {
    NetworkNode node;
    node.id = src.id;
    node.position = {src.center.x + 0.5, src.center.y + 0.5};
    for (const auto& c : coverage_cells(src, mask.width(), mask.height())) {
      if (!mask.get(c.x, c.y)) continue;
      node.attached = true;
      // Lowest component id among the footprint's set cells.
      const int label = labels[static_cast<std::size_t>(c.y) * mask.width() + c.x];
      if (node.component == -1 || label < node.component) node.component = label;
    }
    if (node.attached) {
      // A footprint may touch several components; count all of them.
      for (const auto& c : coverage_cells(src, mask.width(), mask.height())) {
        if (mask.get(c.x, c.y)) attached_components.push_back(labels[static_cast<std::size_t>(c.y) * mask.width() + c.x]);
      }
    }
    g.nodes.push_back(node);
  }
  std::sort(attached_components.begin(), attached_components.end());
  g.connected_components = static_cast<int>(
      std::unique(attached_components.begin(), attached_components.end()) - attached_components.begin());
  g.holes = count_holes(mask);
  g.skeleton_length = skeleton_length(skeletonize(mask));
  return g;
}

MstResult mst_oracle(const std::vector<Point>& points) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("mst_oracle: no points");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i].x == points[j].x && points[i].y == points[j].y)
        throw std::invalid_argument("mst_oracle: duplicate point " + std::to_string(j));

  auto dist = [&](std::size_t i, std::size_t j) {
    return std::hypot(points[i].x - points[j].x, points[i].y - points[j].y);
  };
  MstResult result;
  std::vector<char> in_tree(n, 0);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, 0);
  in_tree[0] = 1;
  for (std::size_t j = 1; j < n; ++j) best[j] = dist(0, j);
  for (std::size_t k = 1; k < n; ++k) {
    std::size_t next = n;
    for (std::size_t j = 0; j < n; ++j)
      if (!in_tree[j] && (next == n || best[j] < best[next])) next = j;
    in_tree[next] = 1;
    result.edges.push_back({std::min(parent[next], next), std::max(parent[next], next), best[next]});
    result.total_length += best[next];
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double d = dist(next, j);
      if (d < best[j]) {
        best[j] = d;
        parent[j] = next;
      }
    }
  }
  return result;
}

LabelGrid weighted_voronoi_oracle(const std::vector<Point>& sites, const std::vector<double>& weights,
                                  int width, int height) {
  if (sites.empty()) throw std::invalid_argument("weighted_voronoi_oracle: no sites");
  if (weights.size() != sites.size()) throw std::invalid_argument("weighted_voronoi_oracle: weight count mismatch");
  for (double wgt : weights)
    if (!(wgt > 0.0)) throw std::invalid_argument("weighted_voronoi_oracle: weights must be positive");

  LabelGrid labels(static_cast<std::size_t>(width) * height, 0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double cx = x + 0.5;
      const double cy = y + 0.5;
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < sites.size(); ++s) {
        const double d = std::hypot(cx - sites[s].x, cy - sites[s].y) / weights[s];
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(s);
        }
      }
      labels[static_cast<std::size_t>(y) * width + x] = best;
    }
  }
  return labels;
}

double boundary_agreement(const BinaryMask& mask, const LabelGrid& labels, int tol, int border_margin) {
  const int w = mask.width();
  const int h = mask.height();
  if (labels.size() != static_cast<std::size_t>(w) * h) {
    throw std::invalid_argument("boundary_agreement: label grid does not match mask");
  }
  auto label = [&](int x, int y) { return labels[static_cast<std::size_t>(y) * w + x]; };

  // Chessboard distance to the nearest boundary cell, two-pass transform.
  constexpr int kFar = std::numeric_limits<int>::max() / 2;
  std::vector<int> dist(static_cast<std::size_t>(w) * h, kFar);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int l = label(x, y);
      const bool boundary = (x > 0 && label(x - 1, y) != l) || (x + 1 < w && label(x + 1, y) != l) ||
                            (y > 0 && label(x, y - 1) != l) || (y + 1 < h && label(x, y + 1) != l);
      if (boundary) dist[static_cast<std::size_t>(y) * w + x] = 0;
    }
  }
  auto d = [&](int x, int y) -> int& { return dist[static_cast<std::size_t>(y) * w + x]; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int v = d(x, y);
      if (x > 0) v = std::min(v, d(x - 1, y) + 1);
      if (y > 0) {
        v = std::min(v, d(x, y - 1) + 1);
        if (x > 0) v = std::min(v, d(x - 1, y - 1) + 1);
        if (x + 1 < w) v = std::min(v, d(x + 1, y - 1) + 1);
      }
      d(x, y) = v;
    }
  }
  for (int y = h - 1; y >= 0; --y) {
    for (int x = w - 1; x >= 0; --x) {
      int v = d(x, y);
      if (x + 1 < w) v = std::min(v, d(x + 1, y) + 1);
      if (y + 1 < h) {
        v = std::min(v, d(x, y + 1) + 1);
        if (x + 1 < w) v = std::min(v, d(x + 1, y + 1) + 1);
        if (x > 0) v = std::min(v, d(x - 1, y + 1) + 1);
      }
      d(x, y) = v;
    }
  }

  std::size_t total = 0;
  std::size_t near = 0;
  for (int y = border_margin; y < h - border_margin; ++y) {
    for (int x = border_margin; x < w - border_margin; ++x) {
      if (!mask.get(x, y)) continue;
      ++total;
      near += d(x, y) <= tol;
    }
  }
  return total == 0 ? 1.0 : static_cast<double>(near) / static_cast<double>(total);
}

Morphology morphology_metrics(const BinaryMask& mask) {
  Morphology m;
  const double cells = static_cast<double>(mask.width()) * mask.height();
  std::size_t area = 0;
  std::size_t perimeter = 0;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.get(x, y)) continue;
      ++area;
      perimeter += !mask.test(x + 1, y);
      perimeter += !mask.test(x - 1, y);
      perimeter += !mask.test(x, y + 1);
      perimeter += !mask.test(x, y - 1);
    }
  }
  m.coverage = cells > 0 ? static_cast<double>(area) / cells : 0.0;
  if (perimeter > 0) {
    const double p = static_cast<double>(perimeter);
    m.compactness = 4.0 * std::numbers::pi * static_cast<double>(area) / (p * p);
  }
  return m;
}

std::vector<std::string> source_columns(const std::vector<StimulusSource>& initial, const EventSchedule& events) {
  std::vector<std::string> ids;
  auto add = [&](const std::string& id) {
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  };
  for (const auto& s : initial) add(s.id);
  for (const auto& ev : events)
    if (const auto* a = std::get_if<AddSource>(&ev.action)) add(a->source.id);
  return ids;
}

MetricsRecord record_metrics(const World& world, std::int64_t step, const std::vector<std::string>& columns) {
  MetricsRecord r;
  r.step = step;
  r.population = static_cast<std::int64_t>(world.agents.size());
  const double cells = static_cast<double>(world.field.width()) * world.field.height();
  r.coverage = static_cast<double>(world.agents.size()) / cells;
  if (!world.agents.empty()) {
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& a : world.agents) {
      sx += a.x;
      sy += a.y;
    }
    r.centroid_x = sx / static_cast<double>(world.agents.size());
    r.centroid_y = sy / static_cast<double>(world.agents.size());
  }
  r.field_min = field_min(world.field);
  r.field_max = field_max(world.field);
  r.field_total = field_total(world.field);
  for (const auto& id : columns) {
    SourceStatus st;
    st.id = id;
    auto it = std::find_if(world.sources.begin(), world.sources.end(), [&](const auto& s) { return s.id == id; });
    if (it != world.sources.end()) {
      st.present = true;
      st.coverage = coverage(*it, world.occupancy);
      st.suppressed = it->suppressed;
      st.centroid_distance = std::hypot(r.centroid_x - (it->center.x + 0.5), r.centroid_y - (it->center.y + 0.5));
    }
    r.sources.push_back(st);
  }
  return r;
}

std::vector<ChoiceEntry> choice_order(const std::vector<MetricsRecord>& history,
                                      const std::vector<std::string>& source_ids) {
  std::vector<ChoiceEntry> out;
  for (const auto& id : source_ids) {
    ChoiceEntry e{id, kNever};
    for (const auto& rec : history) {
      auto it = std::find_if(rec.sources.begin(), rec.sources.end(), [&](const auto& s) { return s.id == id; });
      if (it != rec.sources.end() && it->present && it->suppressed) {
        e.first_suppressed = rec.step;
        break;
      }
    }
    out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [](const ChoiceEntry& a, const ChoiceEntry& b) {
    if (a.first_suppressed != b.first_suppressed) return a.first_suppressed < b.first_suppressed;
    return a.id < b.id;
  });
  return out;
}

}  // namespace physarum
