#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace behavigram {

// Counter-based generator: every draw is a pure hash of (seed, stream tag,
// counter), so fixtures reproduce everywhere regardless of platform RNG
// implementations. Streams are tagged by name so adding draws to one stream
// never shifts another.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::string_view stream)
      : seed_(seed), stream_(fnv1a(stream)) {}

  std::uint64_t next_u64() {
    std::uint64_t x = seed_ ^ (stream_ * 0x9e3779b97f4a7c15ULL) ^
                      (counter_++ * 0xbf58476d1ce4e5b9ULL);
    // splitmix64 finalizer, applied twice for good measure across the three
    // mixed inputs
    for (int round = 0; round < 2; ++round) {
      x += 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      x = x ^ (x >> 31);
    }
    return x;
  }

  // [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; one spare is cached per stream object.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

 private:
  static constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_{0};
  bool has_spare_{false};
  double spare_{0.0};
};

}  // namespace behavigram
