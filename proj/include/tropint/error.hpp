#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropint {

enum class ErrorKind {
  NotAMatroid,
  HasLoop,
  InvalidRank,
  SizeOverflow,
  NotAQuotient,
  NotElementaryQuotient,
  IndexOutOfRange,
  GroundSetMismatch,
  NotPure,
  NotBalanced,
  NotLinearOnFacet,
  NotInjective,
  PointNotOnCycle,
  NotALinealitySpace,
  NonConicalSlice,
  NotZeroDimensional,
  NotSubcycle,
  OutOfRange,
  DimensionMismatch,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAMatroid: return "NotAMatroid";
    case ErrorKind::HasLoop: return "HasLoop";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::SizeOverflow: return "SizeOverflow";
    case ErrorKind::NotAQuotient: return "NotAQuotient";
    case ErrorKind::NotElementaryQuotient: return "NotElementaryQuotient";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::GroundSetMismatch: return "GroundSetMismatch";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::NotBalanced: return "NotBalanced";
    case ErrorKind::NotLinearOnFacet: return "NotLinearOnFacet";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::PointNotOnCycle: return "PointNotOnCycle";
    case ErrorKind::NotALinealitySpace: return "NotALinealitySpace";
    case ErrorKind::NonConicalSlice: return "NonConicalSlice";
    case ErrorKind::NotZeroDimensional: return "NotZeroDimensional";
    case ErrorKind::NotSubcycle: return "NotSubcycle";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace tropint
