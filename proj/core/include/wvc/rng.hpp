#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace wvc {

/// mt19937_64 output is fixed by the standard; the distributions below are
/// written out by hand because std:: distributions are implementation-defined,
/// and trial results must be bit-identical across toolchains.
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return splitmix64(seed ^ splitmix64(value));
}

/// Uniform on [0, 1) with 53 bits of resolution.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

inline double exponential(Rng& rng, double rate) { return -std::log1p(-uniform01(rng)) / rate; }

enum class StreamTag : std::uint64_t { Arrivals = 1, Behaviour = 2, Detection = 3 };

/// Independent per-trial substreams. The arrival stream depends only on
/// (master_seed, trial_id), so all modes see the same arrivals for a trial.
struct RngStreams {
  Rng arrivals;
  Rng behaviour;
  Rng detection;

  static std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t trial_id, StreamTag tag,
                                   std::uint64_t mode_salt);

  static RngStreams make(std::uint64_t master_seed, std::uint64_t trial_id, std::uint64_t mode_salt);
};

inline std::uint64_t RngStreams::stream_seed(std::uint64_t master_seed, std::uint64_t trial_id, StreamTag tag,
                                             std::uint64_t mode_salt) {
  std::uint64_t h = hash_combine(master_seed, trial_id);
  h = hash_combine(h, static_cast<std::uint64_t>(tag));
  if (tag != StreamTag::Arrivals) h = hash_combine(h, mode_salt);
  return h;
}

inline RngStreams RngStreams::make(std::uint64_t master_seed, std::uint64_t trial_id, std::uint64_t mode_salt) {
  return RngStreams{
      Rng{stream_seed(master_seed, trial_id, StreamTag::Arrivals, mode_salt)},
      Rng{stream_seed(master_seed, trial_id, StreamTag::Behaviour, mode_salt)},
      Rng{stream_seed(master_seed, trial_id, StreamTag::Detection, mode_salt)},
  };
}

}  // namespace wvc
