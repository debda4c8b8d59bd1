#pragma once

#include <cstdint>

namespace sptsim {

// Per-trajectory pseudo-random stream: xoshiro256** seeded through
// SplitMix64 from (master_seed, stream_id). The same pair always yields a
// bit-identical sequence, independent of threading or launch order.
//
// Bounded draws use the multiply-shift reduction (Lemire); the bias is
// n / 2^64 and irrelevant for the n <= 2^20 used here.
class RngStream {
 public:
  RngStream(uint64_t master_seed, uint64_t stream_id) : stream_id_(stream_id) {
    uint64_t z = master_seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1));
    for (auto& w : s_) w = splitmix64(z);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  uint64_t stream_id() const { return stream_id_; }

  uint64_t next_u64() {
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  uint32_t next_index(uint32_t n) {
    return static_cast<uint32_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  static uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t s_[4];
  uint64_t stream_id_;
};

}  // namespace sptsim
