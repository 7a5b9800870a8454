#pragma once

#include <array>
#include <cstdint>

namespace evf {

// Finalizing 64-bit mixer (splitmix64 increment + finalizer). Used to derive
// independent substream seeds from (master seed, index) pairs so that parallel
// simulations are reproducible regardless of scheduling.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Substream key for the index-th child of a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

// xoshiro256++ with splitmix64 state expansion. Deterministic across
// platforms; one instance per worker/replicate, never shared.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t next_u64() noexcept;

  // Uniform on the open interval (0,1), 53-bit resolution. Never returns an
  // endpoint, so inverse-cdf transforms stay finite.
  double next_unit() noexcept;

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace evf
