#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (bad parameter, mismatched inputs).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed file contents. `offset` is the byte position where decoding failed.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::uint64_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

/// Angle requested at a point that coincides with one of its arms.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A graph or neighbor selection breaks the invariants of its kind.
class StructuralError : public Error {
 public:
  using Error::Error;
};

}  // namespace dpg
