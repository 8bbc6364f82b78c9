#include "qqft/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "qqft/linalg.hpp"

namespace qqft {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1], 53 random bits.
double to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

double keyed_standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t channel,
                             std::uint64_t index) {
  std::uint64_t key = splitmix64(seed);
  key = splitmix64(key ^ stream);
  key = splitmix64(key ^ channel);
  key = splitmix64(key ^ index);
  const double u1 = to_open_unit(key);
  const double u2 = to_open_unit(splitmix64(key));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double NoiseModel::delta(std::uint64_t channel, std::uint64_t step) const {
  if (!(sigma >= 0.0)) throw std::invalid_argument("NoiseModel: sigma must be >= 0");
  if (sigma == 0.0) return 0.0;
  return sigma * keyed_standard_normal(seed, stream_id, channel, step);
}

}  // namespace qqft
