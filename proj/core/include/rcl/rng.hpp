#pragma once

#include <array>
#include <cstdint>

namespace rcl {

// Identifies one logical random stream inside an experiment. Distinct ids
// give draws from disjoint counter blocks, so streams never overlap.
struct StreamId {
  std::uint64_t experiment = 0;
  std::uint32_t cell = 0;
  std::uint32_t replicate = 0;

  friend bool operator==(const StreamId&, const StreamId&) = default;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace detail

// Counter-based stream of uniforms built on Philox4x32-10. The state is
// (seed, id, draw index); the same triple reproduces the same draws on any
// platform, and draws are randomly addressable, which is what lets coupled
// observations re-walk one uniform sequence without storing it.
//
// Block layout: key = mix(seed, experiment), counter = (block, block>>32,
// cell, replicate). Each block yields two 64-bit draws, so streams with
// distinct (cell, replicate) are disjoint by construction.
class RngStream {
 public:
  RngStream(std::uint64_t seed, StreamId id) : seed_(seed), id_(id) {
    std::uint64_t k = detail::splitmix64(detail::splitmix64(seed) ^ id.experiment);
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  }

  std::uint64_t next_u64() { return u64_at(index_++); }

  // Uniform on [0,1) with 53 random bits.
  double next_double() { return to_unit(next_u64()); }

  // Random access into the stream; does not move the cursor.
  std::uint64_t u64_at(std::uint64_t i) const {
    const std::uint64_t block = i >> 1;
    if (block != cached_block_) {
      cache_ = philox4x32({static_cast<std::uint32_t>(block),
                           static_cast<std::uint32_t>(block >> 32), id_.cell,
                           id_.replicate},
                          key_);
      cached_block_ = block;
    }
    const int lane = static_cast<int>(i & 1) * 2;
    return static_cast<std::uint64_t>(cache_[lane]) |
           (static_cast<std::uint64_t>(cache_[lane + 1]) << 32);
  }
  double uniform_at(std::uint64_t i) const { return to_unit(u64_at(i)); }

  std::uint64_t cursor() const { return index_; }
  void seek(std::uint64_t i) { index_ = i; }

  std::uint64_t seed() const { return seed_; }
  const StreamId& id() const { return id_; }

  // One Philox4x32-10 block; exposed for known-answer tests.
  static std::array<std::uint32_t, 4> philox4x32(
      std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u, kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
      key[0] += kW0;
      key[1] += kW1;
    }
    return ctr;
  }

 private:
  static double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed_;
  StreamId id_;
  std::array<std::uint32_t, 2> key_;
  std::uint64_t index_ = 0;

  mutable std::uint64_t cached_block_ = ~0ull;
  mutable std::array<std::uint32_t, 4> cache_{};
};

}  // namespace rcl
