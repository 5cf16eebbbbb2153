#include "fir/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace fir {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer; full-period bijection on 64-bit counters.
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

RngStream RngStream::substream(std::uint64_t k) const {
  return RngStream{seed, mix64(stream_id ^ mix64(k + 0xD1B54A32D192ED03ULL))};
}

RngEngine::RngEngine(RngStream stream)
    : state_(mix64(mix64(stream.seed + kGamma) ^ stream.stream_id)) {}

std::uint64_t RngEngine::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double RngEngine::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngEngine::gaussian() {
  // u1 shifted into (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t RngEngine::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("RngEngine::below: n must be > 0");
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

}  // namespace fir
