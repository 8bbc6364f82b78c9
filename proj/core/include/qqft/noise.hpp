#pragma once

#include <cstdint>

namespace qqft {

/// Multiplicative Gaussian noise on Hamiltonian steps, H_s -> (1 + delta_s) H_s.
///
/// Draws are counter-based: delta depends only on (seed, stream_id, channel,
/// step), never on evaluation order, so realizations can run on any number
/// of threads and reproduce bit for bit. A realization is one stream_id;
/// channels separate the independent sequences inside a realization (for
/// example the forward and inverse transform along each axis).
///
/// The same standard-normal variate z is used for every sigma, so sweeps over
/// sigma share their random numbers and delta = sigma * z.
struct NoiseModel {
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  static NoiseModel none() { return {}; }

  double delta(std::uint64_t channel, std::uint64_t step) const;
  NoiseModel with_stream(std::uint64_t stream) const { return {sigma, seed, stream}; }
};

/// Standard normal variate keyed by four counters (Box-Muller over a
/// SplitMix64-hashed counter).
double keyed_standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t channel,
                             std::uint64_t index);

}  // namespace qqft
