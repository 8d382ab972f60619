#include "physarum/render.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace physarum {

GreyImage field_image(const TrailField& field, const FrameMapping& mapping) {
  GreyImage img{field.width(), field.height(), std::vector<std::uint8_t>(field.size(), 255)};
  const double lo = mapping.fixed_min.value_or(field_min(field));
  const double hi = mapping.fixed_max.value_or(field_max(field));
  if (!(hi > lo)) return img;
  const auto values = field.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double t = std::clamp((values[i] - lo) / (hi - lo), 0.0, 1.0);
    img.pixels[i] = static_cast<std::uint8_t>(255 - std::lround(255.0 * t));
  }
  return img;
}

GreyImage agent_image(const OccupancyGrid& occupancy) {
  GreyImage img{occupancy.width(), occupancy.height(), {}};
  img.pixels.reserve(occupancy.cells().size());
  for (AgentId id : occupancy.cells()) img.pixels.push_back(id == kNoAgent ? 255 : 0);
  return img;
}

std::string encode_pgm(const GreyImage& image) {
  std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
  return out;
}

GreyImage decode_pgm(const std::string& bytes) {
  std::istringstream in(bytes);
  std::string magic;
  int w = 0;
  int h = 0;
  int maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (magic != "P5" || w <= 0 || h <= 0 || maxval != 255) throw std::runtime_error("not a P5 PGM with maxval 255");
  in.get();  // single whitespace after the header
  GreyImage img{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h)};
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) throw std::runtime_error("truncated PGM");
  return img;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_field_frame(const TrailField& field, const std::filesystem::path& path, const FrameMapping& mapping) {
  write_text_file(path, encode_pgm(field_image(field, mapping)));
}

void write_agent_frame(const OccupancyGrid& occupancy, const std::filesystem::path& path) {
  write_text_file(path, encode_pgm(agent_image(occupancy)));
}

std::string frame_filename(const std::string& kind, std::int64_t step) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "frame_%s_%08lld.pgm", kind.c_str(), static_cast<long long>(step));
  return buf;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string metrics_csv(const std::vector<MetricsRecord>& history, const std::vector<std::string>& columns) {
  std::string out = "step,population,coverage,centroid_x,centroid_y,field_min,field_max,field_total";
  for (const auto& id : columns) out += "," + id + "_coverage," + id + "_suppressed";
  out += "\n";
  for (const auto& r : history) {
    out += std::to_string(r.step) + "," + std::to_string(r.population) + "," + fmt(r.coverage) + "," +
           fmt(r.centroid_x) + "," + fmt(r.centroid_y) + "," + fmt(r.field_min) + "," + fmt(r.field_max) + "," +
           fmt(r.field_total);
    for (const auto& s : r.sources) {
      if (s.present) {
        out += "," + fmt(s.coverage) + "," + (s.suppressed ? "1" : "0");
      } else {
        out += ",,";
      }
    }
    out += "\n";
  }
  return out;
}

void write_metrics_csv(const std::vector<MetricsRecord>& history, const std::vector<std::string>& columns,
                       const std::filesystem::path& path) {
  write_text_file(path, metrics_csv(history, columns));
}

std::vector<MetricsRecord> parse_metrics_csv(const std::string& text, std::vector<std::string>* columns) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("metrics CSV is empty");
  const auto header = split(line);
  constexpr std::size_t kFixed = 8;
  if (header.size() < kFixed || (header.size() - kFixed) % 2 != 0 || header[0] != "step") {
    throw std::runtime_error("metrics CSV header is malformed");
  }
  std::vector<std::string> ids;
  for (std::size_t i = kFixed; i < header.size(); i += 2) {
    const std::string& h = header[i];
    const std::string suffix = "_coverage";
    if (h.size() <= suffix.size() || h.compare(h.size() - suffix.size(), suffix.size(), suffix) != 0) {
      throw std::runtime_error("metrics CSV column '" + h + "' is malformed");
    }
    ids.push_back(h.substr(0, h.size() - suffix.size()));
  }
  if (columns) *columns = ids;

  std::vector<MetricsRecord> history;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw std::runtime_error("metrics CSV row has wrong column count");
    MetricsRecord r;
    r.step = std::stoll(cells[0]);
    r.population = std::stoll(cells[1]);
    r.coverage = std::stod(cells[2]);
    r.centroid_x = std::stod(cells[3]);
    r.centroid_y = std::stod(cells[4]);
    r.field_min = std::stod(cells[5]);
    r.field_max = std::stod(cells[6]);
    r.field_total = std::stod(cells[7]);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      SourceStatus s;
      s.id = ids[k];
      const auto& cov = cells[kFixed + 2 * k];
      if (!cov.empty()) {
        s.present = true;
        s.coverage = std::stod(cov);
        s.suppressed = cells[kFixed + 2 * k + 1] == "1";
      }
      r.sources.push_back(s);
    }
    history.push_back(std::move(r));
  }
  return history;
}

}  // namespace physarum
