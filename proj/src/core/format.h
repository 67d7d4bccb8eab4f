#pragma once

#include <cstdio>
#include <string>

namespace skypick {

// All numeric log output goes through fixed 6-decimal formatting so repeated
// runs produce byte-identical files.
inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline std::string fmt_int(long long v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld", v);
  return buf;
}

}  // namespace skypick
