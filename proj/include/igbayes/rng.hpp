#pragma once

#include <cstdint>
#include <random>

namespace igb {

// Seedable stream of pseudo-random bits. A stream is identified by
// (seed, stream_id); the same pair always yields the same sequence,
// and distinct stream_ids give statistically independent streams.
// Replication k of a harness run owns stream_id = k, so results do
// not depend on thread scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  // Derived stream for an independent sub-task (e.g. one bootstrap
  // layer inside a replication). Deterministic in (this stream, key).
  [[nodiscard]] RngStream child(std::uint64_t key) const;

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace igb
