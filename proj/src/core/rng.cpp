#include "core/rng.h"

#include <cmath>

namespace skypick {

double RandomStream::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 1e-300);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

namespace {

// splitmix64 finalizer, used as a mixing function.
uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t derive_seed(uint64_t master, std::string_view stream_name, uint64_t index) {
  uint64_t h = mix64(master);
  for (char c : stream_name) {
    h = mix64(h ^ static_cast<uint64_t>(static_cast<unsigned char>(c)));
  }
  return mix64(h ^ index);
}

}  // namespace skypick
