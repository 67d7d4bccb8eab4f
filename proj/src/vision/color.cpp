#include "vision/color.h"

#include <cmath>
#include <cstring>

namespace skypick::vision {

namespace {

// sRGB decoding table, computed once.
const std::array<double, 256>& srgb_linear_table() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) {
      const double c = i / 255.0;
      t[i] = c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
    }
    return t;
  }();
  return table;
}

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  constexpr double delta3 = delta * delta * delta;
  return t > delta3 ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

// D65 reference white.
constexpr double kXn = 0.95047;
constexpr double kYn = 1.0;
constexpr double kZn = 1.08883;

}  // namespace

Lab rgb_to_lab(uint8_t r8, uint8_t g8, uint8_t b8) {
  const auto& lin = srgb_linear_table();
  const double r = lin[r8];
  const double g = lin[g8];
  const double b = lin[b8];
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
  const double fx = lab_f(x / kXn);
  const double fy = lab_f(y / kYn);
  const double fz = lab_f(z / kZn);
  Lab out;
  out.l = 116.0 * fy - 16.0;
  out.a = 500.0 * (fx - fy);
  out.b = 200.0 * (fy - fz);
  return out;
}

ColorClass color_class_around(const std::string& name, const std::array<uint8_t, 3>& rgb,
                              double dl, double da, double db) {
  const Lab c = rgb_to_lab(rgb[0], rgb[1], rgb[2]);
  ColorClass cc;
  cc.name = name;
  cc.lower = {c.l - dl, c.a - da, c.b - db};
  cc.upper = {c.l + dl, c.a + da, c.b + db};
  return cc;
}

namespace {

// Small direct-mapped cache keyed on packed RGB. Rendered frames contain few
// distinct colors, so thresholding costs one Lab conversion per color rather
// than per pixel. Purely a speed path; results are identical without it.
struct LabCache {
  static constexpr int kBits = 12;
  std::array<uint32_t, 1 << kBits> key;
  std::array<Lab, 1 << kBits> val;
  LabCache() { key.fill(0xffffffffu); }
};

}  // namespace

std::vector<Mask> threshold(const Image& img, const std::vector<ColorClass>& classes) {
  std::vector<Mask> masks(classes.size());
  for (auto& m : masks) {
    m.width = img.width;
    m.height = img.height;
    m.data.assign(static_cast<size_t>(img.width) * img.height, 0);
  }
  LabCache cache;
  const size_t npix = static_cast<size_t>(img.width) * img.height;
  for (size_t i = 0; i < npix; ++i) {
    const uint8_t* p = img.data.data() + 3 * i;
    const uint32_t packed = (uint32_t(p[0]) << 16) | (uint32_t(p[1]) << 8) | p[2];
    const uint32_t slot = (packed * 2654435761u) >> (32 - LabCache::kBits);
    Lab lab;
    if (cache.key[slot] == packed) {
      lab = cache.val[slot];
    } else {
      lab = rgb_to_lab(p[0], p[1], p[2]);
      cache.key[slot] = packed;
      cache.val[slot] = lab;
    }
    for (size_t c = 0; c < classes.size(); ++c) {
      const ColorClass& cc = classes[c];
      if (lab.l >= cc.lower.l && lab.l <= cc.upper.l && lab.a >= cc.lower.a &&
          lab.a <= cc.upper.a && lab.b >= cc.lower.b && lab.b <= cc.upper.b) {
        masks[c].data[i] = 1;
      }
    }
  }
  return masks;
}

}  // namespace skypick::vision
