#pragma once

#include <string>
#include <vector>

#include "core/result.h"
#include "sim/scenario.h"

namespace skypick::sim {

struct DetectionMapCell {
  double altitude = 0.0;
  int row = 0;
  int col = 0;
  double u = 0.0;  // commanded image position of the object center
  double v = 0.0;
  bool detected = false;
  double error = 0.0;  // 3D localization error, m
};

struct DetectionMapResult {
  DetectionMapParams params;
  std::vector<DetectionMapCell> cells;  // altitude-major, then row-major

  // altitude,row,col,u,v,error with an empty error cell for no detection.
  std::string csv() const;
  std::string metrics_json() const;
};

// Renders one frame per grid cell and altitude with the object centered on
// that cell's pixel, runs the detector with the exact camera pose, and
// records the 3D error. Vignetting and sensor noise come from the params.
DetectionMapResult run_detection_map(const DetectionMapParams& params, uint64_t seed);

// Writes detection_map.csv and metrics.json under out_dir.
Err write_detection_map(const DetectionMapResult& result, const std::string& out_dir);

}  // namespace skypick::sim
