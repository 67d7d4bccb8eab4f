#include <cmath>

#include "doctest.h"

#include "core/rng.h"
#include "geometry/geometry.h"

using namespace skypick;
using namespace skypick::geom;

namespace {

CameraIntrinsics vga_cam() {
  CameraIntrinsics k;
  k.fx = 500.0;
  k.fy = 500.0;
  k.px = 320.0;
  k.py = 240.0;
  k.width = 640;
  k.height = 480;
  return k;
}

// World->camera rotation for a camera hanging straight down: camera x along
// world x, image y along world -y, optical axis along world -z.
Rotation nadir() {
  Mat3 m;
  m.col(0) = Vec3(1, 0, 0);
  m.col(1) = Vec3(0, -1, 0);
  m.col(2) = Vec3(0, 0, -1);
  return Rotation::from_matrix(m).value();
}

}  // namespace

TEST_CASE("normalize_pixel maps pixels onto unit-depth rays") {
  const CameraIntrinsics k = vga_cam();
  CHECK(normalize_pixel({320.0, 240.0}, k).isApprox(Vec3(0, 0, 1)));
  CHECK(normalize_pixel({320.0 + 500.0, 240.0}, k).isApprox(Vec3(1, 0, 1)));
  // (400-320)/500 and (300-240)/500.
  CHECK(normalize_pixel({400.0, 300.0}, k).isApprox(Vec3(0.16, 0.12, 1), 1e-12));
}

TEST_CASE("project_point is the pinhole map and rejects non-positive depth") {
  const CameraIntrinsics k = vga_cam();

  auto on_axis = project_point(Vec3(0, 0, 5), k);
  REQUIRE(on_axis.has_value());
  CHECK(on_axis.value().x == doctest::Approx(320.0));
  CHECK(on_axis.value().y == doctest::Approx(240.0));

  auto off = project_point(Vec3(1, 0, 1), k);
  REQUIRE(off.has_value());
  CHECK(off.value().x == doctest::Approx(820.0));
  CHECK(off.value().y == doctest::Approx(240.0));

  CHECK(project_point(Vec3(0, 0, -1), k).error() == Err::NonPositiveDepth);
  CHECK(project_point(Vec3(1, 1, 0), k).error() == Err::NonPositiveDepth);
}

TEST_CASE("projection and normalization are mutually consistent") {
  const CameraIntrinsics k = vga_cam();
  const Vec3 p(0.3, -0.2, 2.5);
  const auto u = project_point(p, k);
  REQUIRE(u.has_value());
  const Vec3 ray = normalize_pixel(u.value(), k);
  CHECK((ray * p.z() - p).norm() < 1e-12);
}

TEST_CASE("inverse_project_pair recovers the symmetric on-axis segment") {
  const CameraIntrinsics k = vga_cam();
  const Rotation r_CW = nadir().transposed();
  // Rays (0.1, 0, 1) and (-0.1, 0, 1); both depths are 1/(2*0.1) * 0.2 = 1.
  const Pixel u1{320.0 + 0.1 * 500.0, 240.0};
  const Pixel u2{320.0 - 0.1 * 500.0, 240.0};

  auto got = inverse_project_pair(u1, u2, r_CW, 0.2, k);
  REQUIRE(got.has_value());
  CHECK(got.value().first.isApprox(Vec3(0.1, 0, 1.0), 1e-12));
  CHECK(got.value().second.isApprox(Vec3(-0.1, 0, 1.0), 1e-12));
  CHECK(object_center(got.value().first, got.value().second).isApprox(Vec3(0, 0, 1.0), 1e-12));
}

TEST_CASE("inverse_project_pair rejects degenerate input") {
  const CameraIntrinsics k = vga_cam();
  const Rotation r_CW = nadir().transposed();
  const Pixel u{400.0, 250.0};
  CHECK(inverse_project_pair(u, u, r_CW, 0.2, k).error() == Err::DegenerateGeometry);
  CHECK(inverse_project_pair({300, 240}, {340, 240}, r_CW, 0.0, k).error() ==
        Err::InvalidArgument);
  CHECK(inverse_project_pair({300, 240}, {340, 240}, r_CW, -1.0, k).error() ==
        Err::InvalidArgument);
}

TEST_CASE("inverse_project_pair rejects segments straddling the horizon") {
  const CameraIntrinsics k = vga_cam();
  // Optical axis horizontal (world +x): a world-horizontal segment whose
  // image points sit on opposite sides of the horizon row would need one
  // endpoint behind the camera.
  Mat3 m;
  m.col(0) = Vec3(0, -1, 0);
  m.col(1) = Vec3(0, 0, -1);
  m.col(2) = Vec3(1, 0, 0);
  const Rotation r_CW = Rotation::from_matrix(m).value().transposed();
  CHECK(inverse_project_pair({320, 190}, {320, 290}, r_CW, 0.2, k).error() ==
        Err::BehindCamera);
}

TEST_CASE("inverse projection round-trips randomized forward projections") {
  const CameraIntrinsics k = vga_cam();
  RandomStream rng(20240917);
  int done = 0;
  double max_rel = 0.0;
  double max_residual = 0.0;

  while (done < 200) {
    // Downward camera with moderate tilt, a few meters up.
    const Rotation r_WC = Rotation::from_rpy(M_PI + rng.uniform(-0.3, 0.3),
                                             rng.uniform(-0.3, 0.3), rng.uniform(0.0, 2 * M_PI));
    const Vec3 cam_pos(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(2.0, 15.0));
    const Rotation r_CW = r_WC.transposed();

    // Segment of length l on the ground plane near the camera's footprint.
    const double l = rng.uniform(0.05, 1.0);
    const Vec3 axis_w = r_WC.matrix().col(2);
    const Vec3 ground = cam_pos - (cam_pos.z() / axis_w.z()) * axis_w;
    const double phi = rng.uniform(0.0, 2 * M_PI);
    const Vec3 half(0.5 * l * std::cos(phi), 0.5 * l * std::sin(phi), 0.0);
    const Vec3 offset(rng.uniform(-2, 2), rng.uniform(-2, 2), 0.0);
    const Vec3 p1_w = ground + offset + half;
    const Vec3 p2_w = ground + offset - half;

    const Vec3 p1_c = r_CW * (p1_w - cam_pos);
    const Vec3 p2_c = r_CW * (p2_w - cam_pos);
    if (p1_c.z() < 0.1 || p2_c.z() < 0.1) continue;
    const auto u1 = project_point(p1_c, k);
    const auto u2 = project_point(p2_c, k);
    REQUIRE(u1.has_value());
    REQUIRE(u2.has_value());

    const auto rec = inverse_project_pair(u1.value(), u2.value(), r_CW, l, k);
    REQUIRE(rec.has_value());
    const auto& [q1, q2] = rec.value();
    max_rel = std::max(max_rel, (q1 - p1_c).norm() / p1_c.norm());
    max_rel = std::max(max_rel, (q2 - p2_c).norm() / p2_c.norm());
    const Vec3 n_c = r_CW * Vec3::UnitZ();
    max_residual = std::max(max_residual, std::abs((q1 - q2).norm() - l) / l);
    max_residual = std::max(max_residual, std::abs(n_c.dot(q1 - q2)) / l);

    // And the world-frame positions come back through the pose transform.
    Pose pose;
    pose.rotation = r_WC;
    pose.translation = cam_pos;
    CHECK((camera_to_world(q1, pose) - p1_w).norm() < 1e-8);
    ++done;
  }
  CHECK(max_rel < 1e-9);
  CHECK(max_residual < 1e-9);
}

TEST_CASE("pose transforms invert each other") {
  Pose pose;  // identity
  CHECK(camera_to_world(Vec3(1, 2, 3), pose).isApprox(Vec3(1, 2, 3)));

  pose.translation = Vec3(4, -1, 2);
  CHECK(camera_to_world(Vec3(1, 2, 3), pose).isApprox(Vec3(5, 1, 5)));

  RandomStream rng(7);
  for (int i = 0; i < 100; ++i) {
    Pose p;
    p.rotation = Rotation::from_rpy(rng.uniform(-3, 3), rng.uniform(-1.5, 1.5),
                                    rng.uniform(-3, 3));
    p.translation = Vec3(rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10));
    const Vec3 x(rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10));
    CHECK((world_to_camera(camera_to_world(x, p), p) - x).norm() < 1e-9);
    CHECK((camera_to_world(world_to_camera(x, p), p) - x).norm() < 1e-9);
  }
}

TEST_CASE("object_center midpoints") {
  CHECK(object_center(Vec3(0, 0, 1), Vec3(2, 0, 1)).isApprox(Vec3(1, 0, 1)));
  const Vec3 v(0.3, -0.7, 2.0);
  CHECK(object_center(v, v).isApprox(v));
}

TEST_CASE("Rotation construction validates and normalizes") {
  CHECK_FALSE(Rotation::from_matrix(2.0 * Mat3::Identity()).has_value());
  Mat3 reflect = Mat3::Identity();
  reflect(2, 2) = -1.0;  // orthonormal but det -1
  CHECK(Rotation::from_matrix(reflect).error() == Err::InvalidArgument);
  CHECK(Rotation::from_matrix(Mat3::Identity()).has_value());

  // from_axis_angle accepts an unnormalized axis.
  const Rotation r = Rotation::from_axis_angle(Vec3(0, 0, 10), M_PI / 2.0);
  CHECK((r * Vec3(1, 0, 0)).isApprox(Vec3(0, 1, 0), 1e-12));

  const Rotation rpy = Rotation::from_rpy(0.0, 0.0, M_PI / 2.0);
  CHECK((rpy * Vec3(1, 0, 0)).isApprox(Vec3(0, 1, 0), 1e-12));
}
