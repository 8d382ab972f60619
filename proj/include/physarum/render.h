#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "physarum/analysis.h"
#include "physarum/field.h"
#include "physarum/occupancy.h"

namespace physarum {

enum class FrameMode { field_dark_high, agents_binary };

struct FrameMapping {
  FrameMode mode = FrameMode::field_dark_high;
  // Fixed normalization range; per-frame min/max when empty.
  std::optional<double> fixed_min;
  std::optional<double> fixed_max;
};

struct GreyImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  bool operator==(const GreyImage&) const = default;
};

// Highest concentration maps to 0 (black), lowest to 255. A degenerate range
// renders all 255. Fixed ranges clamp values outside [min, max].
GreyImage field_image(const TrailField& field, const FrameMapping& mapping = {});

// Occupied cells 0, empty cells 255.
GreyImage agent_image(const OccupancyGrid& occupancy);

std::string encode_pgm(const GreyImage& image);
GreyImage decode_pgm(const std::string& bytes);

// These throw std::runtime_error when the file cannot be written.
void write_field_frame(const TrailField& field, const std::filesystem::path& path, const FrameMapping& mapping = {});
void write_agent_frame(const OccupancyGrid& occupancy, const std::filesystem::path& path);

// `frame_field_00000100.pgm`, `frame_agents_00000100.pgm`.
std::string frame_filename(const std::string& kind, std::int64_t step);

std::string metrics_csv(const std::vector<MetricsRecord>& history, const std::vector<std::string>& columns);
void write_metrics_csv(const std::vector<MetricsRecord>& history, const std::vector<std::string>& columns,
                       const std::filesystem::path& path);

// Reads the CSV back; numeric values carry the 9 significant digits written.
std::vector<MetricsRecord> parse_metrics_csv(const std::string& text, std::vector<std::string>* columns = nullptr);

void write_text_file(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace physarum
