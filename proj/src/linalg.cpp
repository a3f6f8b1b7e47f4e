#include "sepvol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepvol/error.hpp"

namespace sepvol {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiRelativeThreshold = 1e-12;

void require_same_dim(const ComplexMatrix& x, const ComplexMatrix& y,
                      const char* op) {
  if (x.dim() != y.dim()) {
    throw InvalidInput(std::string(op) + ": dimension mismatch (" +
                       std::to_string(x.dim()) + " vs " +
                       std::to_string(y.dim()) + ")");
  }
}

void require_hermitian(const ComplexMatrix& h, const char* op) {
  if (!is_hermitian(h)) {
    throw InvalidInput(std::string(op) + ": matrix is not Hermitian (error " +
                       std::to_string(hermiticity_error(h)) + ")");
  }
}

void require_composite(const ComplexMatrix& rho, const BipartiteDims& dims,
                       const char* op) {
  if (rho.dim() != dims.total()) {
    throw InvalidInput(std::string(op) + ": matrix dimension " +
                       std::to_string(rho.dim()) + " does not match " +
                       std::to_string(dims.dim_a()) + "x" +
                       std::to_string(dims.dim_b()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
  if (entries_.size() != dim * dim) {
    throw InvalidInput("ComplexMatrix: expected " + std::to_string(dim * dim) +
                       " entries, got " + std::to_string(entries_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t col) const {
  ComplexVector v(dim_);
  for (std::size_t i = 0; i < dim_; ++i) v[i] = (*this)(i, col);
  return v;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

Complex ComplexMatrix::trace() const noexcept {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+=");
  for (std::size_t k = 0; k < entries_.size(); ++k)
    entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-=");
  for (std::size_t k = 0; k < entries_.size(); ++k)
    entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  const std::size_t n = lhs.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      for (std::size_t j = 0; j < n; ++j) r(i, j) += a * rhs(k, j);
    }
  return r;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
  m *= scale;
  return m;
}

ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (v.size() != m.dim()) throw InvalidInput("matrix-vector: size mismatch");
  ComplexVector r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix r(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          r(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return r;
}

ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw InvalidInput("outer: size mismatch");
  ComplexMatrix r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw InvalidInput("inner: size mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

BipartiteDims::BipartiteDims(std::size_t dim_a, std::size_t dim_b)
    : dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a == 0 || dim_b == 0) {
    throw InvalidInput("BipartiteDims: subsystem dimensions must be positive");
  }
}

long long BipartiteDims::orbit_param_count() const noexcept {
  const auto a = static_cast<long long>(dim_a_);
  const auto b = static_cast<long long>(dim_b_);
  return (a * a - 1) * (b * b - 1) - a * b + 1;
}

double hermiticity_error(const ComplexMatrix& m) noexcept {
  double err = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      err = std::max(err, std::abs(m(i, j) - std::conj(m(j, i))));
  return err;
}

bool is_hermitian(const ComplexMatrix& m, double tol) noexcept {
  return hermiticity_error(m) <= tol * std::max(1.0, m.max_abs());
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  require_hermitian(h, "hermitian_eigenvalues");
  std::vector<Complex> work(h.entries().begin(), h.entries().end());
  std::vector<double> values(h.dim());
  detail::jacobi_eigenvalues(work, h.dim(), values);
  std::sort(values.begin(), values.end());
  return values;
}

double min_eigenvalue(const ComplexMatrix& h) {
  const auto values = hermitian_eigenvalues(h);
  return values.empty() ? 0.0 : values.front();
}

bool is_psd(const ComplexMatrix& h, double tol) {
  require_hermitian(h, "is_psd");
  if (tol < 0.0) throw InvalidInput("is_psd: tolerance must be non-negative");
  std::vector<Complex> work(h.entries().begin(), h.entries().end());
  return detail::cholesky_succeeds(work, h.dim(),
                                   tol * std::max(1.0, h.max_abs()));
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho,
                                const BipartiteDims& dims, Subsystem side) {
  require_composite(rho, dims, "partial_transpose");
  const std::size_t da = dims.dim_a(), db = dims.dim_b();
  ComplexMatrix r(rho.dim());
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b2 = 0; b2 < db; ++b2) {
          const std::size_t row = a * db + b, col = a2 * db + b2;
          r(row, col) = side == Subsystem::B ? rho(a * db + b2, a2 * db + b)
                                             : rho(a2 * db + b, a * db + b2);
        }
  return r;
}

ComplexMatrix reduced_density(std::span<const Complex> psi,
                              const BipartiteDims& dims, Subsystem keep) {
  if (psi.size() != dims.total()) {
    throw InvalidInput("reduced_density: vector length does not match dims");
  }
  if (std::abs(norm(psi) - 1.0) > 1e-10) {
    throw InvalidInput("reduced_density: state is not normalized");
  }
  const std::size_t da = dims.dim_a(), db = dims.dim_b();
  if (keep == Subsystem::A) {
    ComplexMatrix r(da);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b = 0; b < db; ++b)
          r(a, a2) += psi[a * db + b] * std::conj(psi[a2 * db + b]);
    return r;
  }
  ComplexMatrix r(db);
  for (std::size_t b = 0; b < db; ++b)
    for (std::size_t b2 = 0; b2 < db; ++b2)
      for (std::size_t a = 0; a < da; ++a)
        r(b, b2) += psi[a * db + b] * std::conj(psi[a * db + b2]);
  return r;
}

Complex trace_inner_product(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_dim(x, y, "trace_inner_product");
  Complex s = 0.0;
  for (std::size_t k = 0; k < x.entries().size(); ++k)
    s += std::conj(x.entries()[k]) * y.entries()[k];
  return s;
}

namespace detail {

bool cholesky_succeeds(std::span<Complex> a, std::size_t n, double shift) {
  for (std::size_t j = 0; j < n; ++j) {
    Complex* row_j = a.data() + j * n;
    double pivot = row_j[j].real() + shift;
    for (std::size_t k = 0; k < j; ++k) pivot -= std::norm(row_j[k]);
    if (!(pivot > 0.0)) return false;
    const double diag = std::sqrt(pivot);
    row_j[j] = diag;
    const double inv = 1.0 / diag;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex* row_i = a.data() + i * n;
      Complex s = row_i[j];
      for (std::size_t k = 0; k < j; ++k) s -= row_i[k] * std::conj(row_j[k]);
      row_i[j] = s * inv;
    }
  }
  return true;
}

void jacobi_eigenvalues(std::span<Complex> a, std::size_t n,
                        std::span<double> eigenvalues) {
  auto at = [&](std::size_t i, std::size_t j) -> Complex& {
    return a[i * n + j];
  };
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    at(i, i) = at(i, i).real();
    total += std::norm(at(i, i));
    for (std::size_t j = 0; j < i; ++j) {
      at(j, i) = std::conj(at(i, j));
      total += 2.0 * std::norm(at(i, j));
    }
  }
  const double threshold = kJacobiRelativeThreshold * std::sqrt(total);

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) off += 2.0 * std::norm(at(i, j));
    if (std::sqrt(off) <= threshold) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = at(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = apq / r;  // e^{i phi}
        const double app = at(p, p).real(), aqq = at(q, q).real();

        // Real rotation zeroing [[app, r], [r, aqq]].
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex jqp = -std::conj(phase) * s;
        const Complex jqq = std::conj(phase) * c;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex hp = at(k, p), hq = at(k, q);
          at(k, p) = hp * c + hq * jqp;
          at(k, q) = hp * s + hq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex hp = at(p, k), hq = at(q, k);
          at(p, k) = c * hp + std::conj(jqp) * hq;
          at(q, k) = s * hp + std::conj(jqq) * hq;
        }
        at(p, p) = app - t * r;
        at(q, q) = aqq + t * r;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = at(i, i).real();
}

}  // namespace detail

}  // namespace sepvol
