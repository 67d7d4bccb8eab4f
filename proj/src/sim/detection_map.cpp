#include "sim/detection_map.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "core/format.h"
#include "core/rng.h"
#include "vision/detect.h"
#include "vision/render.h"

namespace skypick::sim {

namespace {

geom::Rotation nadir_rotation() {
  Mat3 r;
  r << 1, 0, 0, 0, -1, 0, 0, 0, -1;
  return geom::Rotation::from_matrix(r).value();
}

double median(std::vector<double> v) {
  if (v.empty()) return -1.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

DetectionMapResult run_detection_map(const DetectionMapParams& p, uint64_t seed) {
  DetectionMapResult out;
  out.params = p;

  const geom::Rotation rot = nadir_rotation();
  const std::vector<vision::ColorClass> classes = {
      vision::color_class_around("target", p.rgb, 25.0, 20.0, 25.0)};
  vision::DetectParams dp;
  dp.object_diameter = p.object_diameter;

  uint64_t frame = 0;
  for (double z : p.altitudes) {
    for (int row = 0; row < p.grid_rows; ++row) {
      for (int col = 0; col < p.grid_cols; ++col) {
        DetectionMapCell cell;
        cell.altitude = z;
        cell.row = row;
        cell.col = col;
        cell.u = (col + 0.5) * p.camera.width / p.grid_cols;
        cell.v = (row + 0.5) * p.camera.height / p.grid_rows;

        // Ground point whose projection is exactly (u, v).
        const double gx = (cell.u - p.camera.px) / p.camera.fx * z;
        const double gy = -(cell.v - p.camera.py) / p.camera.fy * z;
        const Vec3 truth(gx, gy, 0.0);

        vision::GroundDisc disc;
        disc.center = Vec2(gx, gy);
        disc.diameter = p.object_diameter;
        disc.rgb = p.rgb;

        vision::RenderParams rp;
        rp.vignette = p.vignette;
        rp.noise_sigma = p.noise_sigma;
        rp.seed = derive_seed(seed, "detection-map", frame++);

        const geom::Pose cam{rot, Vec3(0.0, 0.0, z)};
        const vision::Image img = vision::render_scene({disc}, cam, p.camera, rp);
        const auto detections =
            vision::detect_objects(img, cam, p.camera, classes, dp, 0.0);

        double best = std::numeric_limits<double>::infinity();
        for (const auto& d : detections) {
          best = std::min(best, (d.position_w - truth).norm());
        }
        if (!detections.empty()) {
          cell.detected = true;
          cell.error = best;
        }
        out.cells.push_back(cell);
      }
    }
  }
  return out;
}

std::string DetectionMapResult::csv() const {
  std::string s = "altitude,row,col,u,v,error\n";
  for (const DetectionMapCell& c : cells) {
    s += fmt6(c.altitude);
    s += ',' + std::to_string(c.row) + ',' + std::to_string(c.col) + ',';
    s += fmt6(c.u) + ',' + fmt6(c.v) + ',';
    if (c.detected) s += fmt6(c.error);
    s += '\n';
  }
  return s;
}

std::string DetectionMapResult::metrics_json() const {
  nlohmann::json j;
  j["altitudes"] = params.altitudes;
  j["rows"] = params.grid_rows;
  j["cols"] = params.grid_cols;
  j["cells"] = cells.size();

  std::vector<double> center_error;
  std::vector<double> center_pool, border_pool;
  std::vector<int> blank_border;
  const int mid_row = params.grid_rows / 2;
  const int mid_col = params.grid_cols / 2;
  size_t idx = 0;
  for (size_t a = 0; a < params.altitudes.size(); ++a) {
    double center = -1.0;
    int blanks = 0;
    for (int row = 0; row < params.grid_rows; ++row) {
      for (int col = 0; col < params.grid_cols; ++col, ++idx) {
        const DetectionMapCell& c = cells[idx];
        const bool border = row == 0 || col == 0 || row == params.grid_rows - 1 ||
                            col == params.grid_cols - 1;
        if (row == mid_row && col == mid_col && c.detected) center = c.error;
        if (border) {
          if (c.detected) {
            border_pool.push_back(c.error);
          } else {
            ++blanks;
          }
        } else if (c.detected) {
          center_pool.push_back(c.error);
        }
      }
    }
    center_error.push_back(center);
    blank_border.push_back(blanks);
  }
  j["center_error"] = center_error;           // per altitude, -1 for no detection
  j["blank_border_cells"] = blank_border;     // per altitude
  j["border_median"] = median(border_pool);   // pooled over altitudes
  j["interior_median"] = median(center_pool);
  return j.dump(2) + "\n";
}

Err write_detection_map(const DetectionMapResult& result, const std::string& out_dir) {
  if (out_dir.empty()) return Err::None;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) return Err::Io;
  {
    std::ofstream f(std::filesystem::path(out_dir) / "detection_map.csv",
                    std::ios::binary | std::ios::trunc);
    if (!f) return Err::Io;
    f << result.csv();
  }
  {
    std::ofstream f(std::filesystem::path(out_dir) / "metrics.json",
                    std::ios::binary | std::ios::trunc);
    if (!f) return Err::Io;
    f << result.metrics_json();
  }
  return Err::None;
}

}  // namespace skypick::sim
