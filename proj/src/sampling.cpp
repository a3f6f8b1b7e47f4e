#include "sepvol/sampling.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "sepvol/error.hpp"

namespace sepvol {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;
constexpr int kPhiloxRounds = 10;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) noexcept {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline std::uint32_t lo32(std::uint64_t x) noexcept {
  return static_cast<std::uint32_t>(x);
}
inline std::uint32_t hi32(std::uint64_t x) noexcept {
  return static_cast<std::uint32_t>(x >> 32);
}

}  // namespace

RandomStream::Block RandomStream::philox(
    Block ctr, std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < kPhiloxRounds; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t master_seed,
                           std::uint64_t stream_id) noexcept
    : seed_(master_seed), stream_(stream_id) {}

void RandomStream::refill() noexcept {
  const Block out = philox(
      {lo32(block_), hi32(block_), lo32(stream_), hi32(stream_)},
      {lo32(seed_), hi32(seed_)});
  ++block_;
  buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  buffered_ = 2;
}

std::uint64_t RandomStream::next_u64() noexcept {
  if (buffered_ == 0) refill();
  return buffer_[2 - buffered_--];
}

double RandomStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

double RandomStream::exponential() noexcept { return -std::log1p(-uniform()); }

RandomStream derive_stream(std::uint64_t master_seed,
                           std::uint64_t stream_id) noexcept {
  return RandomStream(master_seed, stream_id);
}

SimplexPoint::SimplexPoint(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidInput("SimplexPoint: empty vector");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= -1e-12)) {
      throw InvalidInput("SimplexPoint: negative component " +
                         std::to_string(p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12 * static_cast<double>(probs_.size())) {
    throw InvalidInput("SimplexPoint: components sum to " +
                       std::to_string(sum));
  }
}

ComplexMatrix haar_unitary(std::size_t dim, RandomStream& rng) {
  if (dim == 0) throw InvalidInput("haar_unitary: dimension must be positive");
  const std::size_t n = dim;
  const double scale = std::sqrt(0.5);
  ComplexMatrix z(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      z(i, j) = Complex(re, im) * scale;
    }

  ComplexMatrix q = ComplexMatrix::identity(n);
  std::vector<Complex> r_diag(n);
  ComplexVector v(n);
  for (std::size_t k = 0; k < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) xnorm2 += std::norm(z(i, k));
    const double xnorm = std::sqrt(xnorm2);
    const double x0abs = std::abs(z(k, k));
    const Complex x0phase = x0abs > 0.0 ? z(k, k) / x0abs : Complex(1.0);
    const Complex alpha = -x0phase * xnorm;
    r_diag[k] = alpha;

    for (std::size_t i = k; i < n; ++i) v[i] = z(i, k);
    v[k] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = k; i < n; ++i) v[i] *= inv;

    // z <- (I - 2 v v^dagger) z on the trailing block.
    for (std::size_t j = k; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += std::conj(v[i]) * z(i, j);
      for (std::size_t i = k; i < n; ++i) z(i, j) -= 2.0 * v[i] * dot;
    }
    // q <- q (I - 2 v v^dagger).
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t l = k; l < n; ++l) dot += q(i, l) * v[l];
      for (std::size_t l = k; l < n; ++l) q(i, l) -= 2.0 * dot * std::conj(v[l]);
    }
  }

  // Z = Q R; rescale so that R has a positive real diagonal.
  for (std::size_t k = 0; k < n; ++k) {
    const double a = std::abs(r_diag[k]);
    const Complex phase = a > 0.0 ? r_diag[k] / a : Complex(1.0);
    for (std::size_t i = 0; i < n; ++i) q(i, k) *= phase;
  }
  return q;
}

void sample_simplex_into(RandomStream& rng, std::span<double> out) noexcept {
  if (out.size() == 1) {
    out[0] = 1.0;
    return;
  }
  double sum = 0.0;
  for (auto& x : out) {
    x = rng.exponential();
    sum += x;
  }
  // The all-zero draw has probability 2^-53 per component; resample it.
  while (sum == 0.0) {
    for (auto& x : out) {
      x = rng.exponential();
      sum += x;
    }
  }
  const double inv = 1.0 / sum;
  for (auto& x : out) x *= inv;
}

SimplexPoint sample_simplex(std::size_t dim, RandomStream& rng) {
  if (dim == 0) throw InvalidInput("sample_simplex: dimension must be positive");
  std::vector<double> p(dim);
  sample_simplex_into(rng, p);
  return SimplexPoint(std::move(p));
}

}  // namespace sepvol
