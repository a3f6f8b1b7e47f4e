#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "sepvol/linalg.hpp"

namespace sepvol {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// The key is the master seed; the 128-bit counter is (block, stream_id),
/// so distinct (seed, stream_id) pairs never share a block.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next_u64(); }
  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Standard normal via the Marsaglia polar method; draws are consumed in
  /// a fixed order, and the second variate of each pair is cached.
  double normal() noexcept;
  /// Standard exponential.
  double exponential() noexcept;

  std::uint64_t master_seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  using Block = std::array<std::uint32_t, 4>;
  /// The raw Philox4x32-10 bijection, exposed for known-answer tests.
  static Block philox(Block counter, std::array<std::uint32_t, 2> key) noexcept;

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

RandomStream derive_stream(std::uint64_t master_seed,
                           std::uint64_t stream_id) noexcept;

/// Probability vector: non-negative components summing to one.
class SimplexPoint {
 public:
  /// Throws InvalidInput if a component is negative (beyond -1e-12) or the
  /// sum deviates from 1 by more than 1e-12 * size.
  explicit SimplexPoint(std::vector<double> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// Haar-distributed d x d unitary: complex Ginibre matrix, Householder QR,
/// then columns rephased so that R has a positive diagonal.
ComplexMatrix haar_unitary(std::size_t dim, RandomStream& rng);

/// Uniform point of the (d-1)-simplex from normalized exponential variates.
SimplexPoint sample_simplex(std::size_t dim, RandomStream& rng);

/// Allocation-free variant of sample_simplex for hot loops.
void sample_simplex_into(RandomStream& rng, std::span<double> out) noexcept;

}  // namespace sepvol
