#pragma once

#include <cstdint>
#include <random>

namespace lindblad {

/// Deterministic random stream addressed by (master_seed, stream_index).
///
/// Two streams built from the same pair produce identical sequences;
/// distinct indices give statistically independent streams. Batch code
/// assigns one stream per realization so results never depend on how
/// work is scheduled across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform();

  /// Standard normal via Box-Muller. Not std::normal_distribution, whose
  /// output sequence is implementation defined.
  double gaussian();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace lindblad
