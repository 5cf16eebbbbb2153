#pragma once

#include <cstdint>

namespace fir {

/// Immutable descriptor of a deterministic random stream. A given
/// (seed, stream_id) pair always reproduces the same draw sequence,
/// and distinct stream ids behave as independent streams, so parallel
/// work can be seeded up front and stays reproducible regardless of
/// execution order.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// Independent child stream for subtask `k`.
  [[nodiscard]] RngStream substream(std::uint64_t k) const;
};

/// Counter-based generator over an RngStream (splitmix-style output
/// function). Value semantics: copying the engine forks the sequence.
class RngEngine {
public:
  explicit RngEngine(RngStream stream);

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform();

  /// Standard normal via Box-Muller (two uniforms per draw, no cache).
  double gaussian();

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

private:
  std::uint64_t state_;
};

}  // namespace fir
