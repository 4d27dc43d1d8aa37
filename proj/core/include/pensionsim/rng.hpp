#pragma once

#include <cstdint>
#include <vector>

namespace pensionsim {

/// Parameters for sampling an agent attribute.
///
/// Two kinds are supported:
///   - UniformInt: integer uniform on {lo..hi} inclusive.
///   - ClampedNormal: a normal draw N(mu, sigma), optionally rounded to the
///     nearest integer (half away from zero), then clamped into [lo, hi].
///     Clamping instead of rejection keeps the number of generator draws per
///     sample fixed, which is what makes replays reproducible.
struct DistributionSpec {
  enum class Kind { UniformInt, ClampedNormal };

  Kind kind = Kind::UniformInt;
  double lo = 0.0;
  double hi = 0.0;
  double mu = 0.0;     // ClampedNormal only
  double sigma = 1.0;  // ClampedNormal only
  bool round_to_int = false;

  static DistributionSpec uniform_int(long long lo, long long hi);
  static DistributionSpec clamped_normal(double mu, double sigma, double lo,
                                         double hi, bool round_to_int);

  /// Throws std::invalid_argument on lo > hi, non-integral UniformInt bounds,
  /// or sigma <= 0 for the normal kind.
  void validate() const;

  bool operator==(const DistributionSpec&) const = default;
};

/// Deterministic generator: xoshiro256++ seeded by SplitMix64 expansion.
///
/// The public surface counts logical draws in "sample units":
///   sample() / uniform_int() / pick_index()  -> 1 unit each,
///   shuffle(n items)                         -> max(n - 1, 0) units.
/// Identical seeds yield identical draw sequences; streams from different
/// seeds are independent for practical purposes. Not cryptographic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Draw from a distribution spec. One sample unit.
  double sample(const DistributionSpec& dist);

  /// Integer uniform on {lo..hi} inclusive. One sample unit.
  long long uniform_int(long long lo, long long hi);

  /// Uniform index in [0, n). n must be >= 1. One sample unit.
  std::size_t pick_index(std::size_t n);

  /// Fisher-Yates shuffle, uniform over permutations.
  template <class T>
  void shuffle(std::vector<T>& items) {
    const std::size_t n = items.size();
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(items[i - 1], items[j]);
    }
    if (n > 1) draw_count_ += n - 1;
  }

  std::uint64_t draw_count() const { return draw_count_; }

  bool operator==(const Rng&) const = default;

 private:
  std::uint64_t next_u64();
  /// Uniform on [0, n) via 128-bit multiply-shift; bias < n / 2^64.
  std::uint64_t bounded(std::uint64_t n);
  double unit_open();    // (0, 1]
  double unit_closed();  // [0, 1)
  double normal(double mu, double sigma);

  std::uint64_t s_[4];
  std::uint64_t draw_count_ = 0;
};

/// Maps (master seed, sweep cell, replication) to an independent stream seed:
/// mix64(master ^ (cell * kCellSalt) ^ rotl(rep * kRepSalt, 32)), where mix64
/// is the SplitMix64 avalanche finalizer and the salts are fixed odd 64-bit
/// constants. Collision-free in practice over sweep-sized grids; sweeps scan
/// for collisions before running regardless.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell_index,
                          std::uint64_t rep_index);

}  // namespace pensionsim
