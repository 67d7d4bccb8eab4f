#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"

#include "vision/blob.h"
#include "vision/color.h"
#include "vision/detect.h"
#include "vision/image.h"
#include "vision/render.h"

using namespace skypick;
using namespace skypick::vision;

namespace {

Mask blank_mask(int w, int h) {
  Mask m;
  m.width = w;
  m.height = h;
  m.data.assign(static_cast<size_t>(w) * h, 0);
  return m;
}

// Filled disc on the pixel grid: a pixel is set when its center is inside.
void stamp_disc(Mask& m, double cx, double cy, double radius) {
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= radius * radius) m.set(x, y, 1);
    }
  }
}

void stamp_rect(Mask& m, int x0, int y0, int w, int h) {
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) m.set(x, y, 1);
  }
}

geom::Pose straight_down_pose(const Vec3& position) {
  Mat3 r;
  r.col(0) = Vec3(1, 0, 0);
  r.col(1) = Vec3(0, -1, 0);
  r.col(2) = Vec3(0, 0, -1);
  geom::Pose pose;
  pose.rotation = geom::Rotation::from_matrix(r).value();
  pose.translation = position;
  return pose;
}

}  // namespace

TEST_CASE("rgb_to_lab matches reference values for primaries") {
  const Lab red = rgb_to_lab(255, 0, 0);
  CHECK(red.l == doctest::Approx(53.2408).epsilon(1e-3));
  CHECK(red.a == doctest::Approx(80.0925).epsilon(1e-3));
  CHECK(red.b == doctest::Approx(67.2032).epsilon(1e-3));

  // The rounded sRGB matrix rows leave the white point off by ~1e-5.
  const Lab white = rgb_to_lab(255, 255, 255);
  CHECK(white.l == doctest::Approx(100.0).epsilon(1e-6));
  CHECK(std::abs(white.a) < 1e-4);
  CHECK(std::abs(white.b) < 1e-4);

  const Lab black = rgb_to_lab(0, 0, 0);
  CHECK(std::abs(black.l) < 1e-9);
  CHECK(std::abs(black.a) < 1e-9);
  CHECK(std::abs(black.b) < 1e-9);
}

TEST_CASE("threshold selects exactly the pixels inside the Lab box") {
  Image img = Image::filled(32, 24, 72, 74, 70);
  for (int y = 10; y < 13; ++y) {
    for (int x = 5; x < 8; ++x) {
      uint8_t* p = img.at(x, y);
      p[0] = 255;
      p[1] = 0;
      p[2] = 0;
    }
  }
  const std::vector<ColorClass> classes = {
      color_class_around("red", {255, 0, 0}, 25.0, 20.0, 25.0)};
  const auto masks = threshold(img, classes);
  REQUIRE(masks.size() == 1);
  int ones = 0;
  for (int y = 0; y < 24; ++y) {
    for (int x = 0; x < 32; ++x) {
      const bool expect = x >= 5 && x < 8 && y >= 10 && y < 13;
      CHECK(masks[0].at(x, y) == (expect ? 1 : 0));
      ones += masks[0].at(x, y);
    }
  }
  CHECK(ones == 9);
}

TEST_CASE("extract_blobs labels components and sorts by area") {
  Mask m = blank_mask(64, 48);
  stamp_rect(m, 2, 2, 4, 4);    // area 16
  stamp_rect(m, 20, 10, 8, 6);  // area 48
  const auto blobs = extract_blobs(m, 1);
  REQUIRE(blobs.size() == 2);
  CHECK(blobs[0].area == doctest::Approx(48));
  CHECK(blobs[1].area == doctest::Approx(16));
  // Centroid is the mean of pixel centers.
  CHECK(blobs[0].centroid.x == doctest::Approx(24.0));
  CHECK(blobs[0].centroid.y == doctest::Approx(13.0));
  CHECK(blobs[1].centroid.x == doctest::Approx(4.0));
  CHECK(blobs[1].centroid.y == doctest::Approx(4.0));
}

TEST_CASE("extract_blobs honors min_area and 8-connectivity") {
  Mask m = blank_mask(16, 16);
  stamp_rect(m, 1, 1, 2, 2);
  CHECK(extract_blobs(m, 5).empty());
  CHECK(extract_blobs(m, 4).size() == 1);

  // Two pixels touching only diagonally are one component.
  Mask d = blank_mask(8, 8);
  d.set(2, 2, 1);
  d.set(3, 3, 1);
  const auto blobs = extract_blobs(d, 1);
  REQUIRE(blobs.size() == 1);
  CHECK(blobs[0].area == doctest::Approx(2));
}

TEST_CASE("disc blobs are round and sized by pixel count") {
  Mask m = blank_mask(128, 128);
  const double r = 20.5;
  stamp_disc(m, 60.3, 70.7, r);
  const auto blobs = extract_blobs(m, 10);
  REQUIRE(blobs.size() == 1);
  const Blob& b = blobs[0];

  CHECK(b.area == doctest::Approx(M_PI * r * r).epsilon(0.01));
  CHECK(b.centroid.x == doctest::Approx(60.3).epsilon(0.001));
  CHECK(b.centroid.y == doctest::Approx(70.7).epsilon(0.001));
  // The traced perimeter is padded by a pixel ring, so a clean disc sits a
  // hair under the ideal 1.0.
  CHECK(b.circularity > 0.88);
  CHECK(b.circularity <= 1.0);

  // Axis length is the equivalent diameter and it straddles the centroid.
  const double len = std::hypot(b.axis_b.x - b.axis_a.x, b.axis_b.y - b.axis_a.y);
  CHECK(len == doctest::Approx(2.0 * std::sqrt(b.area / M_PI)).epsilon(1e-12));
  CHECK(len == doctest::Approx(2.0 * r).epsilon(0.01));
  CHECK(0.5 * (b.axis_a.x + b.axis_b.x) == doctest::Approx(b.centroid.x).epsilon(1e-9));
  CHECK(0.5 * (b.axis_a.y + b.axis_b.y) == doctest::Approx(b.centroid.y).epsilon(1e-9));
}

TEST_CASE("elongated blobs point their axis along the long dimension") {
  Mask m = blank_mask(64, 32);
  stamp_rect(m, 10, 14, 40, 2);
  const auto blobs = extract_blobs(m, 10);
  REQUIRE(blobs.size() == 1);
  const double dx = blobs[0].axis_b.x - blobs[0].axis_a.x;
  const double dy = blobs[0].axis_b.y - blobs[0].axis_a.y;
  CHECK(std::abs(dy / dx) < 0.06);  // corner-to-corner is atan(1/39) off axis
  CHECK(blobs[0].circularity < 0.6);
}

TEST_CASE("filter_outliers keeps disc-like blobs of the expected size") {
  // fx 800, altitude 10, diameter 1 m: expected 80 px across, so the size
  // band spans a third to three times pi * 40^2.
  Mask m = blank_mask(256, 256);
  stamp_disc(m, 70.0, 70.0, 40.0);    // the real object
  stamp_disc(m, 220.0, 40.0, 5.0);    // far too small
  stamp_rect(m, 110, 120, 130, 130);  // 16900 px, beyond the size band
  auto blobs = extract_blobs(m, 10);
  REQUIRE(blobs.size() == 3);

  OutlierParams params;
  const auto kept = filter_outliers(blobs, 10.0, 800.0, 1.0, params);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].centroid.x == doctest::Approx(70.0).epsilon(0.01));

  // A thin bar of plausible area still fails the circularity gate.
  Mask bar = blank_mask(256, 64);
  stamp_rect(bar, 10, 30, 200, 25);  // area 5000, close to the disc's 5027
  const auto bar_blobs = extract_blobs(bar, 10);
  REQUIRE(bar_blobs.size() == 1);
  CHECK(filter_outliers(bar_blobs, 10.0, 800.0, 1.0, params).empty());
}

TEST_CASE("render_scene paints discs at their projected location") {
  geom::CameraIntrinsics k{800.0, 800.0, 512.0, 384.0, 1024, 768};
  RenderParams params;  // no vignette, no noise
  std::vector<GroundDisc> discs = {{Vec2(0.0, 0.0), 1.0, {255, 0, 0}}};
  const Image img = render_scene(discs, straight_down_pose(Vec3(0, 0, 10)), k, params);

  REQUIRE(img.width == 1024);
  REQUIRE(img.height == 768);
  CHECK(img.at(512, 384)[0] == 255);  // center: object
  CHECK(img.at(512, 384)[1] == 0);
  CHECK(img.at(0, 0)[0] == params.background[0]);  // corner: background

  // Measured width across the center row: f * D / z = 80 px.
  int first = -1, last = -1;
  for (int x = 0; x < img.width; ++x) {
    if (img.at(x, 384)[0] == 255 && img.at(x, 384)[1] == 0) {
      if (first < 0) first = x;
      last = x;
    }
  }
  CHECK(std::abs((last - first + 1) - 80) <= 1);
}

TEST_CASE("render_scene vignette darkens corners only") {
  geom::CameraIntrinsics k{160.0, 160.0, 160.0, 120.0, 320, 240};
  RenderParams params;
  params.vignette = 0.5;
  const Image img = render_scene({}, straight_down_pose(Vec3(0, 0, 5)), k, params);
  CHECK(img.at(160, 120)[0] >= params.background[0] - 1);
  CHECK(img.at(0, 0)[0] < params.background[0] * 0.6);
  CHECK(img.at(319, 239)[0] < params.background[0] * 0.6);
}

TEST_CASE("render_scene noise is reproducible per seed") {
  geom::CameraIntrinsics k{160.0, 160.0, 160.0, 120.0, 320, 240};
  RenderParams params;
  params.noise_sigma = 3.0;
  params.seed = 11;
  const auto pose = straight_down_pose(Vec3(0, 0, 5));
  const Image a = render_scene({}, pose, k, params);
  const Image b = render_scene({}, pose, k, params);
  CHECK(a.data == b.data);

  params.seed = 12;
  const Image c = render_scene({}, pose, k, params);
  CHECK(a.data != c.data);
}

TEST_CASE("detect_objects localizes a rendered disc in world coordinates") {
  geom::CameraIntrinsics k{800.0, 800.0, 512.0, 384.0, 1024, 768};
  RenderParams rp;
  rp.vignette = 0.3;
  rp.noise_sigma = 2.0;
  rp.seed = 5;
  const Vec2 truth(1.2, -0.8);
  std::vector<GroundDisc> discs = {{truth, 1.0, {255, 0, 0}}};
  const auto pose = straight_down_pose(Vec3(0, 0, 10));
  const Image img = render_scene(discs, pose, k, rp);

  const std::vector<ColorClass> classes = {
      color_class_around("red", {255, 0, 0}, 25.0, 20.0, 25.0)};
  DetectParams dp;
  dp.object_diameter = 1.0;
  DetectStats stats;
  const auto dets = detect_objects(img, pose, k, classes, dp, 1.5, &stats);

  REQUIRE(dets.size() == 1);
  CHECK(dets[0].color == "red");
  CHECK(dets[0].stamp == doctest::Approx(1.5));
  CHECK(stats.blobs_total >= 1);
  CHECK((dets[0].position_w - Vec3(truth.x(), truth.y(), 0.0)).norm() < 0.05);
}

TEST_CASE("detect_objects reports nothing on an empty frame") {
  geom::CameraIntrinsics k{160.0, 160.0, 160.0, 120.0, 320, 240};
  RenderParams rp;
  rp.noise_sigma = 2.0;
  rp.seed = 3;
  const auto pose = straight_down_pose(Vec3(0, 0, 5));
  const Image img = render_scene({}, pose, k, rp);
  const std::vector<ColorClass> classes = {
      color_class_around("red", {255, 0, 0}, 25.0, 20.0, 25.0)};
  CHECK(detect_objects(img, pose, k, classes, DetectParams{}, 0.0).empty());
}

TEST_CASE("ppm files round trip byte exact") {
  Image img = Image::filled(7, 5, 10, 20, 30);
  for (size_t i = 0; i < img.data.size(); ++i) {
    img.data[i] = static_cast<uint8_t>((i * 37 + 11) % 256);
  }
  const auto path =
      (std::filesystem::temp_directory_path() / "skypick_roundtrip.ppm").string();
  REQUIRE(write_ppm(img, path) == Err::None);
  const auto back = read_ppm(path);
  REQUIRE(back.has_value());
  CHECK(back.value().width == 7);
  CHECK(back.value().height == 5);
  CHECK(back.value().data == img.data);
  std::remove(path.c_str());

  CHECK(read_ppm("/nonexistent/skypick.ppm").error() == Err::Io);
}
