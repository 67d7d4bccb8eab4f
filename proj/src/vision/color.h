#pragma once

#include <array>
#include <string>
#include <vector>

#include "vision/image.h"

namespace skypick::vision {

struct Lab {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// sRGB (8 bit, D65) to CIE L*a*b*.
Lab rgb_to_lab(uint8_t r, uint8_t g, uint8_t b);

// Axis-aligned box in L*a*b* space.
struct ColorClass {
  std::string name;
  Lab lower;
  Lab upper;
};

// Builds a box of the given half widths around the Lab value of an RGB color.
ColorClass color_class_around(const std::string& name, const std::array<uint8_t, 3>& rgb,
                              double dl, double da, double db);

// One binary mask per class, in class order.
std::vector<Mask> threshold(const Image& img, const std::vector<ColorClass>& classes);

}  // namespace skypick::vision
