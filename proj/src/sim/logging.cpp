#include "sim/logging.h"

#include <filesystem>

#include "core/format.h"

namespace skypick::sim {

Err RunLogs::open(const std::string& dir) {
  if (dir.empty()) {
    active_ = false;
    return Err::None;
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return Err::Io;

  auto start = [&](std::ofstream& f, const char* name, const char* header) {
    f.open(std::filesystem::path(dir) / name, std::ios::binary | std::ios::trunc);
    if (f) f << header << "\n";
  };
  start(poses_, "poses.csv", "t,agent,x,y,z,vx,vy,vz");
  start(estimates_, "estimates.csv", "t,agent,x,y,z,bias_x,bias_y,bias_z");
  start(tracks_, "tracks.csv", "t,agent,track,color,x,y,z,vx,vy,confirmed");
  start(references_, "references.csv", "t,agent,state,phase,x,y,z");
  start(events_, "events.csv", "t,agent,event,detail");
  if (!poses_ || !estimates_ || !tracks_ || !references_ || !events_) {
    return Err::Io;
  }
  active_ = true;
  return Err::None;
}

void RunLogs::pose(double t, int agent, const Vec3& p, const Vec3& v) {
  if (!active_) return;
  poses_ << fmt6(t) << ',' << agent << ',' << fmt6(p.x()) << ',' << fmt6(p.y()) << ','
         << fmt6(p.z()) << ',' << fmt6(v.x()) << ',' << fmt6(v.y()) << ',' << fmt6(v.z())
         << '\n';
}

void RunLogs::estimate(double t, int agent, const Vec3& p, const Vec3& bias) {
  if (!active_) return;
  estimates_ << fmt6(t) << ',' << agent << ',' << fmt6(p.x()) << ',' << fmt6(p.y()) << ','
             << fmt6(p.z()) << ',' << fmt6(bias.x()) << ',' << fmt6(bias.y()) << ','
             << fmt6(bias.z()) << '\n';
}

void RunLogs::track(double t, int agent, int64_t id, const std::string& color, const Vec3& p,
                    const Vec2& v, bool confirmed) {
  if (!active_) return;
  tracks_ << fmt6(t) << ',' << agent << ',' << id << ',' << color << ',' << fmt6(p.x()) << ','
          << fmt6(p.y()) << ',' << fmt6(p.z()) << ',' << fmt6(v.x()) << ',' << fmt6(v.y())
          << ',' << (confirmed ? 1 : 0) << '\n';
}

void RunLogs::reference(double t, int agent, const char* state, const char* phase,
                        const Vec3& p) {
  if (!active_) return;
  references_ << fmt6(t) << ',' << agent << ',' << state << ',' << phase << ',' << fmt6(p.x())
              << ',' << fmt6(p.y()) << ',' << fmt6(p.z()) << '\n';
}

void RunLogs::event(double t, int agent, const std::string& name, const std::string& detail) {
  if (!active_) return;
  events_ << fmt6(t) << ',' << agent << ',' << name << ',' << detail << '\n';
}

void RunLogs::close() {
  if (!active_) return;
  poses_.close();
  estimates_.close();
  tracks_.close();
  references_.close();
  events_.close();
  active_ = false;
}

}  // namespace skypick::sim
