#pragma once

#include <fstream>
#include <string>

#include "core/result.h"
#include "core/types.h"

namespace skypick::sim {

// The five run logs. Numeric cells are fixed to six decimals so repeated
// runs are byte-identical.
class RunLogs {
 public:
  RunLogs() = default;

  // No-op sink when dir is empty.
  Err open(const std::string& dir);
  bool active() const { return active_; }

  void pose(double t, int agent, const Vec3& p, const Vec3& v);
  void estimate(double t, int agent, const Vec3& p, const Vec3& bias);
  void track(double t, int agent, int64_t id, const std::string& color, const Vec3& p,
             const Vec2& v, bool confirmed);
  void reference(double t, int agent, const char* state, const char* phase, const Vec3& p);
  void event(double t, int agent, const std::string& name, const std::string& detail);

  void close();

 private:
  bool active_ = false;
  std::ofstream poses_;
  std::ofstream estimates_;
  std::ofstream tracks_;
  std::ofstream references_;
  std::ofstream events_;
};

}  // namespace skypick::sim
