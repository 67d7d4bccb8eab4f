#include "tracking/tracker.h"

#include <algorithm>

#include "tracking/hungarian.h"

namespace skypick::tracking {

namespace {
constexpr double kForbidden = 1e9;
}

void tracker_step(TrackerState& state, const std::vector<vision::Detection>& detections,
                  double dt, double stamp, const KfParams& params) {
  for (Track& t : state.tracks) {
    kf_predict(t, dt, params);
  }

  const int n_tracks = static_cast<int>(state.tracks.size());
  const int n_dets = static_cast<int>(detections.size());
  std::vector<char> det_used(n_dets, 0);
  std::vector<char> track_hit(n_tracks, 0);

  if (n_tracks > 0 && n_dets > 0) {
    CostMatrix m;
    m.rows = n_tracks;
    m.cols = n_dets;
    m.cost.resize(static_cast<size_t>(n_tracks) * n_dets);
    for (int r = 0; r < n_tracks; ++r) {
      for (int c = 0; c < n_dets; ++c) {
        const double d = (state.tracks[r].position() - detections[c].position_w).norm();
        const bool allowed = state.tracks[r].color == detections[c].color && d <= params.gate;
        m.at(r, c) = allowed ? d : kForbidden;
      }
    }
    for (const auto& [r, c] : hungarian(m)) {
      if (m.at(r, c) >= kForbidden) continue;  // matched only to fill size
      kf_update(state.tracks[r], detections[c].position_w, stamp, params);
      if (state.tracks[r].hits >= params.min_hits_confirm) {
        state.tracks[r].confirmed = true;
      }
      det_used[c] = 1;
      track_hit[r] = 1;
    }
  }

  for (int r = 0; r < n_tracks; ++r) {
    if (!track_hit[r]) {
      state.tracks[r].misses += 1;
    }
  }
  state.tracks.erase(
      std::remove_if(state.tracks.begin(), state.tracks.end(),
                     [&](const Track& t) { return t.misses > params.max_misses; }),
      state.tracks.end());

  for (int c = 0; c < n_dets; ++c) {
    if (det_used[c]) continue;
    state.tracks.push_back(
        make_track(state.next_id++, detections[c].position_w, detections[c].color, stamp, params));
  }
}

}  // namespace skypick::tracking
