#pragma once

#include <array>
#include <cstdint>

namespace lacewalk {

/// Philox-4x32-10 block function: 128-bit counter, 64-bit key, 128 random bits out.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

/// Counter-based random stream addressed by (seed, stream). Draws are a pure
/// function of (seed, stream, position), so disjoint streams can be consumed
/// in parallel and any stream can be regenerated from its address alone.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform double in (0, 1), 53 usable bits.
  double uniform();

  /// Standard normal (Box-Muller; pairs cached).
  double normal();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int buf_pos_ = 4;  // consumed
  double normal_cache_ = 0.0;
  bool have_normal_ = false;
};

/// Composes a stream id from a purpose tag and a sample index so that
/// estimators draw from mutually independent streams.
constexpr std::uint64_t stream_id(std::uint32_t purpose, std::uint64_t index) {
  return (static_cast<std::uint64_t>(purpose) << 40) | (index & ((1ull << 40) - 1));
}

}  // namespace lacewalk
