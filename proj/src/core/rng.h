#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace skypick {

// Deterministic stream of uniforms and gaussians. The gaussian is a
// hand-rolled Box-Muller so byte-identical replay does not depend on the
// standard library's unspecified normal_distribution algorithm.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return (engine_() >> 11) * (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stable seed derivation so subsystems get independent streams from one
// master seed regardless of construction order.
uint64_t derive_seed(uint64_t master, std::string_view stream_name, uint64_t index = 0);

}  // namespace skypick
