#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "behavigram/time_series.hpp"

namespace testutil {

// Single-channel series on a uniform grid.
inline behavigram::TimeSeries series1(const std::vector<double>& values, double rate_hz,
                                      double t0 = 0.0, const std::string& id = "s",
                                      const std::string& channel = "v") {
  behavigram::TimeSeries s;
  s.stream_id = id;
  s.channels = {channel};
  s.nominal_rate_hz = rate_hz;
  for (std::size_t i = 0; i < values.size(); ++i) {
    s.timestamps.push_back(t0 + static_cast<double>(i) / rate_hz);
  }
  s.values = values;
  return s;
}

// Three-channel series from per-channel vectors.
inline behavigram::TimeSeries series3(const std::vector<double>& x, const std::vector<double>& y,
                                      const std::vector<double>& z, double rate_hz,
                                      double t0 = 0.0) {
  behavigram::TimeSeries s;
  s.stream_id = "s3";
  s.channels = {"x", "y", "z"};
  s.nominal_rate_hz = rate_hz;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s.timestamps.push_back(t0 + static_cast<double>(i) / rate_hz);
    s.values.push_back(x[i]);
    s.values.push_back(y[i]);
    s.values.push_back(z[i]);
  }
  return s;
}

// Unique scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("behavigram_test_" + tag + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

inline std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace testutil
