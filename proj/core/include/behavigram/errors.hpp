#pragma once

#include <stdexcept>
#include <string>

namespace behavigram {

// Failure categories raised by the toolkit. The CLI maps any of these to
// exit code 1; tests dispatch on the code, messages carry context
// (file, line number, offending values).
enum class Errc {
  MalformedFile,
  MissingFile,
  NonMonotoneTimestamps,
  GazeOutOfRange,
  EmptySeries,
  InsufficientOverlap,
  ZeroVariance,
  GridMismatch,
  NonUniformSeries,
  InvalidSpec,
  EmptyWindow,
  AllMissing,
  InsufficientCalibration,
  InvertedCalibration,
  OutOfRange,
  EmptyInterval,
  NoPhaseMarkers,
  NoSyncSegment,
  NoCalibrationSource,
  EmptyRange,
  ConfigError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace behavigram
