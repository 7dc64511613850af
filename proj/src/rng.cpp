#include "mcauchy/rng.hpp"

#include <cmath>

namespace mcauchy {
namespace philox {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& ctr, std::uint32_t k0,
                       std::uint32_t k1) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
}

constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53

}  // namespace

std::array<std::uint32_t, 4> block(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t counter) {
  std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32),
      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t k0 = static_cast<std::uint32_t>(seed);
  std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
  for (int r = 0; r < 10; ++r) {
    round_once(ctr, k0, k1);
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return ctr;
}

std::pair<double, double> uniforms_at(const RngStream& rng, std::uint64_t counter) {
  const auto b = block(rng.seed, rng.stream, counter);
  const std::uint64_t w0 = (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
  const std::uint64_t w1 = (static_cast<std::uint64_t>(b[3]) << 32) | b[2];
  // +1 keeps the value in (0,1], so log() in Box-Muller is always finite.
  return {static_cast<double>((w0 >> 11) + 1) * kInv53,
          static_cast<double>((w1 >> 11) + 1) * kInv53};
}

std::pair<double, double> normals_at(const RngStream& rng, std::uint64_t counter) {
  const auto [u1, u2] = uniforms_at(rng, counter);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace philox

double SequentialRng::uniform() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const auto [u1, u2] = philox::uniforms_at(rng_, counter_++);
  cached_ = u2;
  has_cached_ = true;
  return u1;
}

double SequentialRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double SequentialRng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const auto [z1, z2] = philox::normals_at(rng_, counter_++);
  cached_normal_ = z2;
  has_cached_normal_ = true;
  return z1;
}

std::uint64_t SequentialRng::next_u64() {
  const auto b = philox::block(rng_.seed, rng_.stream, counter_++);
  return (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
}

std::uint64_t SequentialRng::below(std::uint64_t n) {
  return n == 0 ? 0 : next_u64() % n;
}

}  // namespace mcauchy
