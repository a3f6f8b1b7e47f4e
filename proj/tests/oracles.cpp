#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace sepvol::oracle {

namespace {

// Number of eigenvalues of the real symmetric tridiagonal (diag, off) below x.
std::size_t sturm_count(const std::vector<double>& diag, const std::vector<double>& off2,
                        double x) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    q = diag[i] - x - (i > 0 ? off2[i - 1] / q : 0.0);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> charpoly_eigenvalues(const ComplexMatrix& h) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h;
  // Householder reduction to Hermitian tridiagonal form: a <- P a P.
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;
    const double x0abs = std::abs(a(k + 1, k));
    const Complex phase = x0abs > 0.0 ? a(k + 1, k) / x0abs : Complex(1.0);
    ComplexVector v(n);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] += phase * xnorm;
    const double vn = norm(v);
    for (auto& z : v) z /= vn;
    ComplexMatrix p = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) -= 2.0 * v[i] * std::conj(v[j]);
    a = p * a * p;
  }

  std::vector<double> diag(n), off2(n > 0 ? n - 1 : 0);
  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = a(i, i).real();
    if (i + 1 < n) off2[i] = std::norm(a(i + 1, i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::sqrt(off2[i - 1]);
    if (i + 1 < n) r += std::sqrt(off2[i]);
    radius = std::max(radius, std::abs(diag[i]) + r);
  }
  const double lo0 = -radius - 1.0, hi0 = radius + 1.0;

  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Smallest x with more than k eigenvalues below it.
    double lo = lo0, hi = hi0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, radius); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(diag, off2, mid) > k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    values[k] = 0.5 * (lo + hi);
  }
  return values;
}

ComplexMatrix random_hermitian(std::size_t dim, RandomStream& rng) {
  ComplexMatrix h(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    h(i, i) = rng.normal();
    for (std::size_t j = 0; j < i; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      h(i, j) = Complex(re, im);
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

ComplexMatrix random_density(std::size_t dim, RandomStream& rng) {
  ComplexMatrix w(dim);
  for (auto& z : w.entries()) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = Complex(re, im);
  }
  ComplexMatrix rho = w * w.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

ComplexVector random_state(std::size_t dim, RandomStream& rng) {
  ComplexVector v(dim);
  for (auto& z : v) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = Complex(re, im);
  }
  const double n = norm(v);
  for (auto& z : v) z /= n;
  return v;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return std::sqrt(n) * d;
}

}  // namespace sepvol::oracle
