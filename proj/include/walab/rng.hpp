#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace walab {

// Seeded generator with hand-rolled uniform/normal draws so that sequences are
// identical across standard libraries (std::normal_distribution is not
// portable between implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double a = 0.0, double b = 1.0) {
    // 53-bit mantissa in [0, 1)
    const std::uint64_t r = eng_() >> 11;
    return a + (b - a) * (static_cast<double>(r) * 0x1.0p-53);
  }

  double normal(double mean = 0.0, double stddev = 1.0) {
    if (have_spare_) {
      have_spare_ = false;
      return mean + stddev * spare_;
    }
    double u, v, s;
    do {
      u = uniform(-1.0, 1.0);
      v = uniform(-1.0, 1.0);
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    have_spare_ = true;
    return mean + stddev * u * factor;
  }

  std::uint64_t integer() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace walab
