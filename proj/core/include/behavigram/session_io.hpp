#pragma once

#include <filesystem>

#include "behavigram/time_series.hpp"

namespace behavigram {

// Session directory layout. All files are CSV with a header row, '.' decimal
// separator, empty field = missing:
//   accel_rh.csv, accel_lh.csv : t,acc_x,acc_y,acc_z   (seconds, g)
//   rssi_rh.csv,  rssi_lh.csv  : t,rssi                (seconds, dBm)
//   gaze.csv                   : t,gaze_x,gaze_y       (seconds, [0,1])
//   markers.csv                : t,label
//   meta.json                  : flat key/value object (optional on load)

// Parses and validates every stream. Raises MissingFile, MalformedFile
// (with file:line), NonMonotoneTimestamps, or GazeOutOfRange.
Recording load_recording(const std::filesystem::path& session_dir);

// Inverse of load_recording: numeric text is shortest-round-trip so that
// load(save(r)) reproduces r bit-exactly.
void save_recording(const Recording& recording, const std::filesystem::path& session_dir);

}  // namespace behavigram
