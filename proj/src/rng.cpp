#include "igbayes/rng.hpp"

namespace igb {
namespace {

// splitmix64 step; used only to spread (seed, stream_id) into
// well-mixed seeding material for the engine.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state);
  state ^= stream_id * 0xda942042e4dd58b5ULL;
  std::uint64_t words[4] = {mixed, splitmix64(state), splitmix64(state),
                            splitmix64(state)};
  std::seed_seq seq{static_cast<std::uint32_t>(words[0]),
                    static_cast<std::uint32_t>(words[0] >> 32),
                    static_cast<std::uint32_t>(words[1]),
                    static_cast<std::uint32_t>(words[1] >> 32),
                    static_cast<std::uint32_t>(words[2]),
                    static_cast<std::uint32_t>(words[2] >> 32),
                    static_cast<std::uint32_t>(words[3]),
                    static_cast<std::uint32_t>(words[3] >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

RngStream RngStream::child(std::uint64_t key) const {
  std::uint64_t state = stream_id_ ^ (key * 0xd6e8feb86659fd93ULL);
  std::uint64_t derived = splitmix64(state);
  return RngStream(seed_, derived);
}

}  // namespace igb
