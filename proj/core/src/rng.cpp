#include "pensionsim/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pensionsim {

namespace {

// SplitMix64 avalanche finalizer (Steele, Lea & Flood; public domain).
std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  return mix64(state);
}

}  // namespace

DistributionSpec DistributionSpec::uniform_int(long long lo, long long hi) {
  DistributionSpec d;
  d.kind = Kind::UniformInt;
  d.lo = static_cast<double>(lo);
  d.hi = static_cast<double>(hi);
  d.validate();
  return d;
}

DistributionSpec DistributionSpec::clamped_normal(double mu, double sigma,
                                                  double lo, double hi,
                                                  bool round_to_int) {
  DistributionSpec d;
  d.kind = Kind::ClampedNormal;
  d.mu = mu;
  d.sigma = sigma;
  d.lo = lo;
  d.hi = hi;
  d.round_to_int = round_to_int;
  d.validate();
  return d;
}

void DistributionSpec::validate() const {
  if (!(lo <= hi)) {
    throw std::invalid_argument("DistributionSpec: lo (" + std::to_string(lo) +
                                ") must be <= hi (" + std::to_string(hi) + ")");
  }
  if (kind == Kind::UniformInt) {
    if (lo != std::floor(lo) || hi != std::floor(hi)) {
      throw std::invalid_argument("DistributionSpec: UniformInt bounds must be integers");
    }
  } else {
    if (!(sigma > 0.0)) {
      throw std::invalid_argument("DistributionSpec: sigma must be > 0");
    }
  }
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64_next(sm);
}

std::uint64_t Rng::next_u64() {
  // xoshiro256++ (Blackman & Vigna; public domain reference implementation).
  const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::bounded(std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

double Rng::unit_open() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::unit_closed() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal(double mu, double sigma) {
  // Box-Muller, cosine branch only: exactly two generator words per draw.
  const double u1 = unit_open();
  const double u2 = unit_closed();
  const double z = std::sqrt(-2.0 * std::log(u1)) *
                   std::cos(2.0 * std::numbers::pi * u2);
  return mu + sigma * z;
}

double Rng::sample(const DistributionSpec& dist) {
  ++draw_count_;
  if (dist.kind == DistributionSpec::Kind::UniformInt) {
    const auto lo = static_cast<long long>(dist.lo);
    const auto hi = static_cast<long long>(dist.hi);
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return static_cast<double>(lo + static_cast<long long>(bounded(span)));
  }
  double v = normal(dist.mu, dist.sigma);
  if (dist.round_to_int) v = std::round(v);  // half away from zero
  if (v < dist.lo) v = dist.lo;
  if (v > dist.hi) v = dist.hi;
  return v;
}

long long Rng::uniform_int(long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
  ++draw_count_;
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(bounded(span));
}

std::size_t Rng::pick_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("pick_index: n must be >= 1");
  ++draw_count_;
  return static_cast<std::size_t>(bounded(n));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell_index,
                          std::uint64_t rep_index) {
  constexpr std::uint64_t kCellSalt = 0x9E3779B97F4A7C15ull;
  constexpr std::uint64_t kRepSalt = 0xC2B2AE3D27D4EB4Full;
  return mix64(master ^ (cell_index * kCellSalt) ^
               std::rotl(rep_index * kRepSalt, 32));
}

}  // namespace pensionsim
