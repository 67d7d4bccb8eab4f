#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/result.h"

namespace skypick::vision {

// Row-major interleaved RGB, 8 bit per channel.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> data;

  static Image filled(int w, int h, uint8_t r, uint8_t g, uint8_t b);

  uint8_t* at(int x, int y) { return data.data() + 3 * (static_cast<size_t>(y) * width + x); }
  const uint8_t* at(int x, int y) const {
    return data.data() + 3 * (static_cast<size_t>(y) * width + x);
  }
};

// Binary mask, 0 or 1 per pixel, same layout as Image.
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> data;

  uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
  void set(int x, int y, uint8_t v) { data[static_cast<size_t>(y) * width + x] = v; }
};

// Binary PPM (P6, maxval 255). Round trips are byte exact.
Result<Image> read_ppm(const std::string& path);
Err write_ppm(const Image& img, const std::string& path);

}  // namespace skypick::vision
