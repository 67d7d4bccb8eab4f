#pragma once

#include <utility>
#include <vector>

#include "core/types.h"
#include "vision/image.h"

namespace skypick::vision {

struct Blob {
  double area = 0.0;          // pixel count
  Pixel centroid;             // mean of member pixel centers
  double circularity = 0.0;   // 4*pi*area/perimeter^2, clamped into (0, 1]
  Pixel axis_a;               // major-axis endpoints, subpixel
  Pixel axis_b;
};

// 8-connected components of mask with at least min_area pixels, sorted by
// descending area, ties by centroid row then column. Major-axis direction
// comes from the farthest contour point pair; its length is the equivalent
// diameter 2*sqrt(area/pi), which is far less quantized than the point pair,
// and it is anchored at the centroid.
std::vector<Blob> extract_blobs(const Mask& mask, int min_area);

struct OutlierParams {
  double min_circularity = 0.6;
  double size_tolerance = 3.0;  // keep area within [1/s, s] * expected
};

// Drops blobs whose shape or size is inconsistent with a disc of
// object_diameter meters seen from the given altitude.
std::vector<Blob> filter_outliers(const std::vector<Blob>& blobs, double altitude_m,
                                  double fx, double object_diameter,
                                  const OutlierParams& params);

}  // namespace skypick::vision
