#pragma once

#include <cstdint>
#include <vector>

namespace physarum {

using AgentId = std::int64_t;
inline constexpr AgentId kNoAgent = -1;

struct CellPos {
  int x = 0;
  int y = 0;
  bool operator==(const CellPos&) const = default;
};

// Exclusive cell ownership: at most one agent per cell.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(int width, int height)
      : width_(width), height_(height), cells_(static_cast<std::size_t>(width) * height, kNoAgent) {}

  int width() const { return width_; }
  int height() const { return height_; }

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  bool occupied(int x, int y) const { return cells_[index(x, y)] != kNoAgent; }
  AgentId at(int x, int y) const { return cells_[index(x, y)]; }

  void place(int x, int y, AgentId id) { cells_[index(x, y)] = id; }
  void clear(int x, int y) { cells_[index(x, y)] = kNoAgent; }

  std::size_t count() const {
    std::size_t n = 0;
    for (AgentId c : cells_) n += (c != kNoAgent);
    return n;
  }

  const std::vector<AgentId>& cells() const { return cells_; }

  bool operator==(const OccupancyGrid&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<AgentId> cells_;
};

}  // namespace physarum
