#pragma once

#include <string>
#include <vector>

#include "core/types.h"

namespace skypick::sim {

// Every object is in exactly one of these phases at all times.
enum class ObjectPhase { OnGround, Attached, Delivered };

inline const char* object_phase_name(ObjectPhase p) {
  switch (p) {
    case ObjectPhase::OnGround: return "on_ground";
    case ObjectPhase::Attached: return "attached";
    case ObjectPhase::Delivered: return "delivered";
  }
  return "?";
}

struct ObjectSpec {
  Vec2 start = Vec2::Zero();
  Vec2 velocity = Vec2::Zero();
  std::string color = "red";
  double diameter = 0.2;
};

struct ObjectState {
  ObjectPhase phase = ObjectPhase::OnGround;
  Vec2 position = Vec2::Zero();
  Vec2 velocity = Vec2::Zero();
  int attached_to = -1;
  double attached_at = -1.0;
  double delivered_at = -1.0;
};

struct ArenaBounds {
  double xmin = 0.0;
  double xmax = 40.0;
  double ymin = 0.0;
  double ymax = 30.0;
};

// Constant velocity; hitting a wall reflects the position and flips the
// corresponding velocity component.
inline void step_object(ObjectState& o, const ArenaBounds& b, double dt) {
  if (o.phase != ObjectPhase::OnGround) return;
  o.position += o.velocity * dt;
  if (o.position.x() < b.xmin) {
    o.position.x() = 2.0 * b.xmin - o.position.x();
    o.velocity.x() = -o.velocity.x();
  } else if (o.position.x() > b.xmax) {
    o.position.x() = 2.0 * b.xmax - o.position.x();
    o.velocity.x() = -o.velocity.x();
  }
  if (o.position.y() < b.ymin) {
    o.position.y() = 2.0 * b.ymin - o.position.y();
    o.velocity.y() = -o.velocity.y();
  } else if (o.position.y() > b.ymax) {
    o.position.y() = 2.0 * b.ymax - o.position.y();
    o.velocity.y() = -o.velocity.y();
  }
}

}  // namespace skypick::sim
