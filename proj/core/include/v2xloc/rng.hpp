// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>

namespace v2xloc {

// SplitMix64 output finalizer. All stream derivation in the simulator goes
// through this function, so results are reproducible bit-for-bit given the
// base seed.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream families. Each family gets its own salt so a drop index can never
// collide with, say, an anchor id.
enum class Stream : std::uint64_t {
  kDrop = 0x01,
  kUe = 0x02,
  kSiteLink = 0x03,
  kSatLink = 0x04,
  kSiteFade = 0x05,
  kAnchorNoise = 0x06,
};

constexpr std::uint64_t derive_seed(std::uint64_t parent, Stream family,
                                    std::uint64_t index) {
  return mix64(mix64(parent ^ mix64(static_cast<std::uint64_t>(family))) + index);
}

// Minimal UniformRandomBitGenerator over the SplitMix64 sequence. Cheap to
// seed, which matters because every (UE, anchor) pair gets its own stream.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    const std::uint64_t out = mix64(state_);
    state_ += 0x9E3779B97F4A7C15ULL;
    return out;
  }

 private:
  std::uint64_t state_;
};

}  // namespace v2xloc
