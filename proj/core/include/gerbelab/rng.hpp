#pragma once

#include <cstdint>
#include <string_view>

namespace gerbelab {

/// Counter-based generator: every draw is a hash of (key, counter), so
/// streams derived from (seed, suite, check, sample) are reproducible
/// independently of evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key) {}

  /// Stream for a named check and sample index under a master seed.
  static Rng stream(std::uint64_t seed, std::string_view suite,
                    std::string_view check, std::uint64_t sample);

  std::uint64_t next_u64();
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  long long uniform_int(long long lo, long long hi);  // inclusive
  double gaussian();                      // Box-Muller, one value per call

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gerbelab
