#include "behavigram/errors.hpp"

namespace behavigram {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedFile: return "MalformedFile";
    case Errc::MissingFile: return "MissingFile";
    case Errc::NonMonotoneTimestamps: return "NonMonotoneTimestamps";
    case Errc::GazeOutOfRange: return "GazeOutOfRange";
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::InsufficientOverlap: return "InsufficientOverlap";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::NonUniformSeries: return "NonUniformSeries";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::AllMissing: return "AllMissing";
    case Errc::InsufficientCalibration: return "InsufficientCalibration";
    case Errc::InvertedCalibration: return "InvertedCalibration";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::EmptyInterval: return "EmptyInterval";
    case Errc::NoPhaseMarkers: return "NoPhaseMarkers";
    case Errc::NoSyncSegment: return "NoSyncSegment";
    case Errc::NoCalibrationSource: return "NoCalibrationSource";
    case Errc::EmptyRange: return "EmptyRange";
    case Errc::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace behavigram
