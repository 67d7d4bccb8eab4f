#pragma once

#include <deque>
#include <vector>

#include "core/rng.h"
#include "core/types.h"

namespace skypick::sim {

// The only inter-agent communication: periodic state broadcasts.
struct NetMessage {
  int sender = 0;
  double stamp = 0.0;  // send time
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  bool claiming = false;
  std::vector<Vec2> claims;  // ground positions this agent has called
};

struct NetworkParams {
  double latency = 0.05;   // s
  double drop_rate = 0.0;  // per-link Bernoulli loss, decided at send
};

// Lossy fixed-latency broadcast. Per-sender delivery order is preserved
// because each recipient queue is filled in send order and latency is
// constant. Loss draws are consumed in recipient order at send time, so a
// run is reproducible from the seed alone.
class BroadcastBus {
 public:
  BroadcastBus(const NetworkParams& params, int agent_count, uint64_t seed);

  void send(const NetMessage& msg, double now);

  // Messages for one recipient that have aged past the latency.
  std::vector<NetMessage> deliver(int recipient, double now);

 private:
  struct Pending {
    NetMessage msg;
    double due = 0.0;
  };

  NetworkParams params_;
  std::vector<std::deque<Pending>> queues_;  // per recipient
  RandomStream rng_;
};

}  // namespace skypick::sim
