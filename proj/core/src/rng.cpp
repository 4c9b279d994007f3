#include "lacewalk/rng.hpp"

#include <cmath>

#include "lacewalk/common.hpp"

namespace lacewalk {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> c = counter;
  std::array<std::uint32_t, 2> k = key;
  round_once(c, k);
  for (int r = 1; r < 10; ++r) {
    k[0] += kWeyl0;
    k[1] += kWeyl1;
    round_once(c, k);
  }
  return c;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

void CounterRng::refill() {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  buf_ = philox4x32(ctr, key_);
  ++block_;
  buf_pos_ = 0;
}

double CounterRng::uniform() {
  if (buf_pos_ > 2) refill();
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(buf_[buf_pos_]) << 32) | buf_[buf_pos_ + 1];
  buf_pos_ += 2;
  return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double CounterRng::normal() {
  if (have_normal_) {
    have_normal_ = false;
    return normal_cache_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * kPi * u2;
  normal_cache_ = r * std::sin(a);
  have_normal_ = true;
  return r * std::cos(a);
}


}  // namespace lacewalk
