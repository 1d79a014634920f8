#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace convexcr {

enum class ErrorCode {
  DegenerateInput,
  DimensionMismatch,
  ZeroDirection,
  BadDimension,
  BadRadius,
  PointCoincidesWithO,
  NotOnBoundary,
  ONotOnBoundary,
  NoCriticalPoints,
  NoWitness,
  PointIsO,
  StalledAtCritical,
  NonuniformRadius,
  ResolutionTooCoarse,
  InvalidInput,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Per-point diagnostics attached to a StalledAtCritical failure.
struct StallRecord {
  std::size_t point_index = 0;
  std::vector<double> location;   // where the trajectory stopped
  double radius = 0.0;            // |location - O|
  std::vector<double> blocking_critical_point;
  double blocking_critical_distance = 0.0;
};

class StalledAtCritical : public Error {
 public:
  StalledAtCritical(const std::string& message, std::vector<StallRecord> records)
      : Error(ErrorCode::StalledAtCritical, message), records_(std::move(records)) {}

  const std::vector<StallRecord>& records() const { return records_; }

 private:
  std::vector<StallRecord> records_;
};

}  // namespace convexcr
