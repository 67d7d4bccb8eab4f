#pragma once

#include <cassert>
#include <optional>
#include <utility>

namespace skypick {

enum class Err {
  None = 0,
  NonPositiveDepth,
  DegenerateGeometry,
  BehindCamera,
  DegenerateSpacing,
  StaleObstacle,
  NonMonotoneTime,
  EmptyOverlap,
  ConfigInvalid,
  Io,
  InvalidArgument,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::None: return "None";
    case Err::NonPositiveDepth: return "NonPositiveDepth";
    case Err::DegenerateGeometry: return "DegenerateGeometry";
    case Err::BehindCamera: return "BehindCamera";
    case Err::DegenerateSpacing: return "DegenerateSpacing";
    case Err::StaleObstacle: return "StaleObstacle";
    case Err::NonMonotoneTime: return "NonMonotoneTime";
    case Err::EmptyOverlap: return "EmptyOverlap";
    case Err::ConfigInvalid: return "ConfigInvalid";
    case Err::Io: return "Io";
    case Err::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// Value-or-error. value() asserts on error results; check first.
template <typename T>
class Result {
 public:
  static Result ok(T v) {
    Result r;
    r.value_ = std::move(v);
    r.err_ = Err::None;
    return r;
  }
  static Result fail(Err e) {
    Result r;
    r.err_ = e;
    return r;
  }

  bool has_value() const { return value_.has_value(); }
  explicit operator bool() const { return has_value(); }
  Err error() const { return err_; }

  const T& value() const {
    assert(value_.has_value());
    return *value_;
  }
  T& value() {
    assert(value_.has_value());
    return *value_;
  }

 private:
  std::optional<T> value_;
  Err err_ = Err::None;
};

}  // namespace skypick
