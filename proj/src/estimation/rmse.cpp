#include "estimation/rmse.h"

#include <algorithm>
#include <cmath>

namespace skypick::estimation {

namespace {

// Linear interpolation of truth at stamp t; nullopt outside the span.
std::optional<Vec3> interp(const TimedPath& path, double t) {
  if (path.stamps.empty() || t < path.stamps.front() || t > path.stamps.back()) {
    return std::nullopt;
  }
  const auto it = std::lower_bound(path.stamps.begin(), path.stamps.end(), t);
  const size_t i = static_cast<size_t>(it - path.stamps.begin());
  if (i == 0) return path.positions.front();
  const double t0 = path.stamps[i - 1];
  const double t1 = path.stamps[i];
  const double w = t1 > t0 ? (t - t0) / (t1 - t0) : 0.0;
  return path.positions[i - 1] + w * (path.positions[i] - path.positions[i - 1]);
}

}  // namespace

Result<AlignedRmse> rmse_aligned(const TimedPath& estimate, const TimedPath& truth) {
  using R = Result<AlignedRmse>;
  if (estimate.stamps.size() < 2 || truth.stamps.size() < 2) return R::fail(Err::EmptyOverlap);

  bool any = false;
  AlignedRmse best;
  best.rmse = 1e300;
  for (int k = -100; k <= 100; ++k) {
    const double offset = 0.01 * k;
    Vec3 sum_err = Vec3::Zero();
    std::vector<Vec3> errs;
    errs.reserve(estimate.stamps.size());
    for (size_t i = 0; i < estimate.stamps.size(); ++i) {
      const auto tp = interp(truth, estimate.stamps[i] + offset);
      if (!tp) continue;
      const Vec3 e = estimate.positions[i] - *tp;
      errs.push_back(e);
      sum_err += e;
    }
    if (errs.size() < 2) continue;
    any = true;
    // Planar translation that minimizes the summed squared error is the mean.
    const Vec2 shift(sum_err.x() / errs.size(), sum_err.y() / errs.size());
    double ss = 0.0;
    for (const Vec3& e : errs) {
      const double ex = e.x() - shift.x();
      const double ey = e.y() - shift.y();
      ss += ex * ex + ey * ey + e.z() * e.z();
    }
    const double rmse = std::sqrt(ss / (3.0 * errs.size()));
    if (rmse < best.rmse - 1e-15) {
      best.rmse = rmse;
      best.time_offset = offset;
      best.translation = -shift;
    }
  }
  if (!any) return R::fail(Err::EmptyOverlap);
  return R::ok(best);
}

Result<double> rmse_raw(const TimedPath& estimate, const TimedPath& truth) {
  using R = Result<double>;
  double ss = 0.0;
  size_t n = 0;
  for (size_t i = 0; i < estimate.stamps.size(); ++i) {
    const auto tp = interp(truth, estimate.stamps[i]);
    if (!tp) continue;
    ss += (estimate.positions[i] - *tp).squaredNorm();
    ++n;
  }
  if (n < 2) return R::fail(Err::EmptyOverlap);
  return R::ok(std::sqrt(ss / (3.0 * n)));
}

}  // namespace skypick::estimation
