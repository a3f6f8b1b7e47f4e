#pragma once

// Small dense complex linear algebra for bipartite density matrices.
//
// Composite index convention: the basis state |a>|b> of a d_A x d_B system
// sits at row/column a * d_B + b. Every routine in this library uses it.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sepvol {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Relative tolerance used by is_psd and the PPT classifier.
inline constexpr double kDefaultPsdTolerance = 1e-9;

/// Relative tolerance for accepting a matrix as Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;

/// Square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
  ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept {
    return entries_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * dim_ + col];
  }

  std::span<Complex> entries() noexcept { return entries_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexVector column(std::size_t col) const;

  double max_abs() const noexcept;
  double frobenius_norm() const noexcept;
  Complex trace() const noexcept;
  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// Kronecker product A (x) B in the composite index convention above.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Outer product |u><v|.
ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);

/// <u|v>, conjugate-linear in u.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm(std::span<const Complex> v);

/// Factorization d = d_A * d_B of a composite Hilbert space.
class BipartiteDims {
 public:
  BipartiteDims(std::size_t dim_a, std::size_t dim_b);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t total() const noexcept { return dim_a_ * dim_b_; }

  /// Number of parameters labelling frames modulo local unitaries,
  /// (d_A^2 - 1)(d_B^2 - 1) - d_A d_B + 1.
  long long orbit_param_count() const noexcept;

  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
};

enum class Subsystem { A, B };

/// max |M_ij - conj(M_ji)| over all entries, including the diagonal.
double hermiticity_error(const ComplexMatrix& m) noexcept;
bool is_hermitian(const ComplexMatrix& m,
                  double tol = kHermitianTolerance) noexcept;

/// All eigenvalues, ascending. Cyclic complex Jacobi; throws InvalidInput
/// unless `h` is Hermitian.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

double min_eigenvalue(const ComplexMatrix& h);

/// True iff min eigenvalue >= -tol * max(1, max_abs(h)).
bool is_psd(const ComplexMatrix& h, double tol = kDefaultPsdTolerance);

ComplexMatrix partial_transpose(const ComplexMatrix& rho,
                                const BipartiteDims& dims, Subsystem side);

/// Reduced state of the `keep` factor of a unit pure state.
ComplexMatrix reduced_density(std::span<const Complex> psi,
                              const BipartiteDims& dims, Subsystem keep);

/// Tr(X^dagger Y).
Complex trace_inner_product(const ComplexMatrix& x, const ComplexMatrix& y);

namespace detail {

// Unchecked kernels shared with the Monte Carlo hot loops. `a` is an n x n
// row-major Hermitian matrix; only its lower triangle is read.

/// Attempts a Cholesky factorization of a + shift * I in place. Returns
/// false at the first non-positive pivot.
bool cholesky_succeeds(std::span<Complex> a, std::size_t n, double shift);

/// Diagonalizes `a` in place by cyclic Jacobi rotations and writes the
/// (unsorted) diagonal to `eigenvalues`.
void jacobi_eigenvalues(std::span<Complex> a, std::size_t n,
                        std::span<double> eigenvalues);

}  // namespace detail

}  // namespace sepvol
