#include "sim/network.h"

namespace skypick::sim {

BroadcastBus::BroadcastBus(const NetworkParams& params, int agent_count, uint64_t seed)
    : params_(params), queues_(static_cast<size_t>(agent_count)), rng_(seed) {}

void BroadcastBus::send(const NetMessage& msg, double now) {
  for (size_t r = 0; r < queues_.size(); ++r) {
    if (static_cast<int>(r) == msg.sender) continue;
    const bool dropped = rng_.uniform() < params_.drop_rate;
    if (dropped) continue;
    queues_[r].push_back({msg, now + params_.latency});
  }
}

std::vector<NetMessage> BroadcastBus::deliver(int recipient, double now) {
  std::vector<NetMessage> out;
  auto& q = queues_[static_cast<size_t>(recipient)];
  // Due times are nondecreasing along the queue (constant latency, monotone
  // send times), so the due prefix is exactly what is deliverable.
  while (!q.empty() && q.front().due <= now + 1e-12) {
    out.push_back(std::move(q.front().msg));
    q.pop_front();
  }
  return out;
}

}  // namespace skypick::sim
