#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace mcauchy {

// Counter-based generator: Philox4x32-10. A (seed, stream, counter) triple
// maps to 128 output bits with no carried state, so any variate can be
// addressed directly and parallel generation is bit-identical to serial.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

namespace philox {

std::array<std::uint32_t, 4> block(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t counter);

// Two uniforms in (0,1] with 53 random bits each, from one block.
std::pair<double, double> uniforms_at(const RngStream& rng, std::uint64_t counter);

// Two standard normals (Box-Muller on the pair above).
std::pair<double, double> normals_at(const RngStream& rng, std::uint64_t counter);

}  // namespace philox

// Sequential convenience wrapper over the counter core; used by tests and
// random-input generators where addressability does not matter.
class SequentialRng {
 public:
  explicit SequentialRng(std::uint64_t seed, std::uint64_t stream = 0)
      : rng_{seed, stream} {}

  double uniform();                      // (0,1]
  double uniform(double lo, double hi);  // affine map of uniform()
  double normal();
  std::uint64_t next_u64();
  // Integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  RngStream rng_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;       // for uniform()
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace mcauchy
