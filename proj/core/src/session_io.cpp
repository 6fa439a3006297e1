#include "behavigram/session_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "behavigram/csv.hpp"
#include "behavigram/errors.hpp"

namespace behavigram {

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(Errc::MissingFile, "missing required file: " + file.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(csv::strip_cr(std::move(line)));
  return lines;
}

TimeSeries load_series(const std::filesystem::path& file, const std::string& stream_id,
                       const std::vector<std::string>& expected_columns) {
  const auto lines = read_lines(file);
  const std::string fname = file.filename().string();
  if (lines.empty()) fail(Errc::MalformedFile, fname + ": empty file, expected header row");

  const auto header = csv::split(lines[0]);
  const std::size_t ncols = expected_columns.size();
  if (header.size() != ncols) {
    fail(Errc::MalformedFile, fname + ":1: expected " + std::to_string(ncols) +
                                  " columns in header, found " + std::to_string(header.size()));
  }
  for (std::size_t c = 0; c < ncols; ++c) {
    if (header[c] != expected_columns[c]) {
      fail(Errc::MalformedFile,
           fname + ":1: expected column '" + expected_columns[c] + "', found '" + header[c] + "'");
    }
  }

  TimeSeries out;
  out.stream_id = stream_id;
  out.channels.assign(expected_columns.begin() + 1, expected_columns.end());

  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;  // tolerate a trailing blank line
    const auto fields = csv::split(lines[li]);
    if (fields.size() != ncols) {
      fail(Errc::MalformedFile, fname + ":" + std::to_string(li + 1) + ": expected " +
                                    std::to_string(ncols) + " fields, found " +
                                    std::to_string(fields.size()));
    }
    const double t = csv::parse_number(fields[0], fname, li + 1);
    if (is_missing(t)) {
      fail(Errc::MalformedFile, fname + ":" + std::to_string(li + 1) + ": missing timestamp");
    }
    if (!out.timestamps.empty() && !(t > out.timestamps.back())) {
      fail(Errc::NonMonotoneTimestamps,
           fname + ":" + std::to_string(li + 1) + ": timestamp " + csv::format_number(t) +
               " does not increase over " + csv::format_number(out.timestamps.back()));
    }
    out.timestamps.push_back(t);
    for (std::size_t c = 1; c < ncols; ++c) {
      out.values.push_back(csv::parse_number(fields[c], fname, li + 1));
    }
  }
  out.validate();
  return out;
}

void check_gaze_range(const TimeSeries& gaze, const std::string& fname) {
  for (std::size_t i = 0; i < gaze.sample_count(); ++i) {
    for (std::size_t c = 0; c < gaze.channel_count(); ++c) {
      const double v = gaze.at(i, c);
      if (is_missing(v)) continue;
      if (v < 0.0 || v > 1.0) {
        // Data rows start on line 2 (after the header).
        fail(Errc::GazeOutOfRange, fname + ":" + std::to_string(i + 2) + ": " + gaze.channels[c] +
                                       "=" + csv::format_number(v) + " outside [0,1]");
      }
    }
  }
}

MarkerStream load_markers(const std::filesystem::path& file) {
  const auto lines = read_lines(file);
  const std::string fname = file.filename().string();
  if (lines.empty()) fail(Errc::MalformedFile, fname + ": empty file, expected header row");
  if (csv::strip_cr(lines[0]) != "t,label") {
    fail(Errc::MalformedFile, fname + ":1: expected header 't,label'");
  }

  MarkerStream out;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const auto fields = csv::split(lines[li], ',', 2);
    if (fields.size() != 2) {
      fail(Errc::MalformedFile, fname + ":" + std::to_string(li + 1) + ": expected 't,label'");
    }
    const double t = csv::parse_number(fields[0], fname, li + 1);
    if (is_missing(t)) {
      fail(Errc::MalformedFile, fname + ":" + std::to_string(li + 1) + ": missing timestamp");
    }
    if (fields[1].empty()) {
      fail(Errc::MalformedFile, fname + ":" + std::to_string(li + 1) + ": empty marker label");
    }
    if (!out.events.empty() && t < out.events.back().t) {
      fail(Errc::NonMonotoneTimestamps,
           fname + ":" + std::to_string(li + 1) + ": marker timestamps decrease");
    }
    out.events.push_back({t, fields[1]});
  }
  return out;
}

std::map<std::string, std::string> load_meta(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return {};  // meta is optional
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::MalformedFile, file.filename().string() + ": " + e.what());
  }
  if (!j.is_object()) {
    fail(Errc::MalformedFile, file.filename().string() + ": expected a JSON object");
  }
  std::map<std::string, std::string> meta;
  for (const auto& [key, value] : j.items()) {
    meta[key] = value.is_string() ? value.get<std::string>() : value.dump();
  }
  return meta;
}

void write_series(const std::filesystem::path& file, const TimeSeries& series,
                  const std::string& time_column) {
  std::ofstream out(file);
  if (!out) fail(Errc::MissingFile, "cannot write " + file.string());
  out << time_column;
  for (const auto& ch : series.channels) out << ',' << ch;
  out << '\n';
  for (std::size_t i = 0; i < series.sample_count(); ++i) {
    out << csv::format_number(series.timestamps[i]);
    for (std::size_t c = 0; c < series.channel_count(); ++c) {
      out << ',' << csv::format_number(series.at(i, c));
    }
    out << '\n';
  }
}

}  // namespace

Recording load_recording(const std::filesystem::path& session_dir) {
  if (!std::filesystem::is_directory(session_dir)) {
    fail(Errc::MissingFile, "not a session directory: " + session_dir.string());
  }
  Recording rec;
  const std::vector<std::string> accel_cols = {"t", "acc_x", "acc_y", "acc_z"};
  const std::vector<std::string> rssi_cols = {"t", "rssi"};
  const std::vector<std::string> gaze_cols = {"t", "gaze_x", "gaze_y"};

  rec.accel_rh = load_series(session_dir / "accel_rh.csv", "accel_rh", accel_cols);
  rec.accel_rh.nominal_rate_hz = 40.0;
  rec.accel_lh = load_series(session_dir / "accel_lh.csv", "accel_lh", accel_cols);
  rec.accel_lh.nominal_rate_hz = 40.0;
  rec.rssi_rh = load_series(session_dir / "rssi_rh.csv", "rssi_rh", rssi_cols);
  rec.rssi_lh = load_series(session_dir / "rssi_lh.csv", "rssi_lh", rssi_cols);
  rec.gaze = load_series(session_dir / "gaze.csv", "gaze", gaze_cols);
  rec.gaze.nominal_rate_hz = 50.0;
  check_gaze_range(rec.gaze, "gaze.csv");
  rec.markers = load_markers(session_dir / "markers.csv");
  rec.meta = load_meta(session_dir / "meta.json");
  return rec;
}

void save_recording(const Recording& recording, const std::filesystem::path& session_dir) {
  std::filesystem::create_directories(session_dir);
  write_series(session_dir / "accel_rh.csv", recording.accel_rh, "t");
  write_series(session_dir / "accel_lh.csv", recording.accel_lh, "t");
  write_series(session_dir / "rssi_rh.csv", recording.rssi_rh, "t");
  write_series(session_dir / "rssi_lh.csv", recording.rssi_lh, "t");
  write_series(session_dir / "gaze.csv", recording.gaze, "t");

  {
    std::ofstream out(session_dir / "markers.csv");
    if (!out) fail(Errc::MissingFile, "cannot write markers.csv");
    out << "t,label\n";
    for (const auto& e : recording.markers.events) {
      out << csv::format_number(e.t) << ',' << e.label << '\n';
    }
  }
  {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : recording.meta) j[k] = v;
    std::ofstream out(session_dir / "meta.json");
    if (!out) fail(Errc::MissingFile, "cannot write meta.json");
    out << j.dump(2) << '\n';
  }
}

}  // namespace behavigram
