#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "sepvol/error.hpp"
#include "sepvol/linalg.hpp"
#include "sepvol/sampling.hpp"

using namespace sepvol;

namespace {

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

}  // namespace

TEST_CASE("BipartiteDims derived counts") {
  CHECK(BipartiteDims(2, 3).total() == 6);
  // Twelve frame parameters minus six local-unitary ones.
  CHECK(BipartiteDims(2, 2).orbit_param_count() == 6);
  CHECK(BipartiteDims(3, 3).orbit_param_count() == 56);
  CHECK_THROWS_AS(BipartiteDims(0, 2), InvalidInput);
}

TEST_CASE("hermitian_eigenvalues on known spectra") {
  const std::vector<double> d = {3.0, 1.0, 2.0};
  const auto diag = hermitian_eigenvalues(ComplexMatrix::diagonal(d));
  CHECK(diag == std::vector<double>{1.0, 2.0, 3.0});

  const auto px = hermitian_eigenvalues(pauli_x());
  CHECK(px[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(px[1] == doctest::Approx(1.0).epsilon(1e-14));

  // Pauli-y: purely imaginary off-diagonal.
  const auto py = hermitian_eigenvalues(ComplexMatrix(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}));
  CHECK(py[0] == doctest::Approx(-1.0));
  CHECK(py[1] == doctest::Approx(1.0));

  CHECK(hermitian_eigenvalues(ComplexMatrix(1, {Complex(2.5)})) == std::vector<double>{2.5});
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input") {
  CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0})), InvalidInput);
  CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix(1, {Complex(0.0, 1.0)})), InvalidInput);
}

TEST_CASE("hermitian_eigenvalues match the characteristic-polynomial oracle") {
  RandomStream rng(20240611, 0);
  for (std::size_t dim : {2u, 3u, 4u, 4u, 4u, 6u, 9u, 12u, 24u}) {
    const auto h = oracle::random_hermitian(dim, rng);
    const auto jac = hermitian_eigenvalues(h);
    const auto ref = oracle::charpoly_eigenvalues(h);
    REQUIRE(jac.size() == dim);
    for (std::size_t k = 0; k < dim; ++k) CHECK(std::abs(jac[k] - ref[k]) <= 1e-8);
  }
}

TEST_CASE("eigenvalue trace identities on random Hermitian matrices") {
  RandomStream rng(7, 3);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t dim = 2 + static_cast<std::size_t>(rep % 11);
    const auto h = oracle::random_hermitian(dim, rng);
    const auto ev = hermitian_eigenvalues(h);
    const double sum = std::accumulate(ev.begin(), ev.end(), 0.0);
    double sum_sq = 0.0;
    for (double v : ev) sum_sq += v * v;
    const double tol = 1e-10 * static_cast<double>(dim) * std::max(1.0, h.frobenius_norm());
    CHECK(std::abs(sum - h.trace().real()) <= tol);
    CHECK(std::abs(sum_sq - (h * h).trace().real()) <= tol * h.frobenius_norm());
    CHECK(std::is_sorted(ev.begin(), ev.end()));
  }
}

TEST_CASE("is_psd") {
  CHECK(is_psd(0.25 * ComplexMatrix::identity(4)));
  const std::vector<double> neg = {0.5, 0.5, 0.5, -0.5};
  CHECK_FALSE(is_psd(ComplexMatrix::diagonal(neg)));
  // Rank-one projector: min eigenvalue exactly 0.
  const ComplexVector v = {1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0))};
  CHECK(is_psd(outer(v, v)));
  // Just below the relative tolerance is still accepted; well below is not.
  const std::vector<double> edge = {1.0, -0.5e-9};
  CHECK(is_psd(ComplexMatrix::diagonal(edge)));
  const std::vector<double> below = {1.0, -2e-9};
  CHECK_FALSE(is_psd(ComplexMatrix::diagonal(below)));
  CHECK_THROWS_AS(is_psd(ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0})), InvalidInput);
  CHECK_THROWS_AS(is_psd(ComplexMatrix::identity(2), -1.0), InvalidInput);
}

TEST_CASE("is_psd agrees with the eigenvalue criterion away from the boundary") {
  RandomStream rng(11, 0);
  int checked = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const std::size_t dim = 2 + static_cast<std::size_t>(rep % 9);
    auto h = oracle::random_hermitian(dim, rng);
    // Shift so that roughly half the samples are PSD.
    const auto ref = oracle::charpoly_eigenvalues(h);
    h += (-ref.front() + (rep % 2 == 0 ? 1e-3 : -1e-3)) * ComplexMatrix::identity(dim);
    const bool expected = rep % 2 == 0;
    CHECK(is_psd(h) == expected);
    ++checked;
  }
  CHECK(checked == 400);
}

TEST_CASE("partial_transpose product rule, involution and spectra") {
  const BipartiteDims dims(2, 2);
  const ComplexMatrix a(2, {1.0, Complex(0.5, 0.25), Complex(-0.3, 2.0), 4.0});
  const ComplexMatrix b(2, {0.0, 1.0, 0.0, 0.0});
  CHECK(partial_transpose(kron(a, b), dims, Subsystem::B) == kron(a, b.transpose()));
  CHECK(partial_transpose(kron(a, b), dims, Subsystem::A) == kron(a.transpose(), b));

  RandomStream rng(5, 5);
  for (const auto& d : {BipartiteDims(2, 2), BipartiteDims(2, 3), BipartiteDims(3, 2),
                        BipartiteDims(3, 4)}) {
    const auto rho = oracle::random_density(d.total(), rng);
    for (auto side : {Subsystem::A, Subsystem::B}) {
      const auto pt = partial_transpose(rho, d, side);
      CHECK(partial_transpose(pt, d, side) == rho);
      CHECK(pt.trace() == rho.trace());
      CHECK(hermiticity_error(pt) <= 1e-14);
    }
    const auto pa = partial_transpose(rho, d, Subsystem::A);
    const auto pb = partial_transpose(rho, d, Subsystem::B);
    CHECK(pa == pb.transpose());
    const auto sa = hermitian_eigenvalues(pa);
    const auto sb = hermitian_eigenvalues(pb);
    for (std::size_t k = 0; k < sa.size(); ++k) CHECK(std::abs(sa[k] - sb[k]) <= 1e-10);
  }
  CHECK_THROWS_AS(partial_transpose(ComplexMatrix::identity(5), dims, Subsystem::B),
                  InvalidInput);
}

TEST_CASE("reduced_density") {
  const BipartiteDims qubits(2, 2);
  const ComplexVector zero_one = {0.0, 1.0, 0.0, 0.0};  // |0>|1>
  const auto ra = reduced_density(zero_one, qubits, Subsystem::A);
  CHECK(ra == ComplexMatrix(2, {1.0, 0.0, 0.0, 0.0}));
  const auto rb = reduced_density(zero_one, qubits, Subsystem::B);
  CHECK(rb == ComplexMatrix(2, {0.0, 0.0, 0.0, 1.0}));

  const double h = 1.0 / std::sqrt(2.0);
  const ComplexVector bell = {h, 0.0, 0.0, h};
  const auto rbell = reduced_density(bell, qubits, Subsystem::A);
  CHECK(std::abs(rbell(0, 0) - 0.5) <= 1e-15);
  CHECK(std::abs(rbell(1, 1) - 0.5) <= 1e-15);
  CHECK(std::abs(rbell(0, 1)) <= 1e-15);

  CHECK_THROWS_AS(reduced_density(ComplexVector{1.0, 1.0, 0.0, 0.0}, qubits, Subsystem::A),
                  InvalidInput);
  CHECK_THROWS_AS(reduced_density(ComplexVector{1.0, 0.0}, qubits, Subsystem::A),
                  InvalidInput);
}

TEST_CASE("reduced states of a random 2x3 pure state share their nonzero spectrum") {
  RandomStream rng(99, 1);
  const BipartiteDims dims(2, 3);
  for (int rep = 0; rep < 20; ++rep) {
    const auto psi = oracle::random_state(6, rng);
    const auto ra = reduced_density(psi, dims, Subsystem::A);
    const auto rb = reduced_density(psi, dims, Subsystem::B);
    CHECK(std::abs(ra.trace().real() - 1.0) <= 1e-10);
    CHECK(std::abs(rb.trace().real() - 1.0) <= 1e-10);
    const auto ea = hermitian_eigenvalues(ra);
    const auto eb = hermitian_eigenvalues(rb);
    CHECK(std::abs(eb[0]) <= 1e-10);
    CHECK(std::abs(ea[0] - eb[1]) <= 1e-10);
    CHECK(std::abs(ea[1] - eb[2]) <= 1e-10);
    CHECK(ea[0] >= -1e-10);
  }
}

TEST_CASE("trace_inner_product") {
  const ComplexMatrix half = (1.0 / std::sqrt(2.0)) * ComplexMatrix::identity(2);
  CHECK(std::abs(trace_inner_product(half, half) - 1.0) <= 1e-15);
  CHECK(trace_inner_product(pauli_x(), pauli_z()) == Complex(0.0));

  RandomStream rng(3, 3);
  const auto x = oracle::random_hermitian(3, rng) + Complex(0, 1) * oracle::random_hermitian(3, rng);
  const auto y = oracle::random_hermitian(3, rng);
  CHECK(std::abs(trace_inner_product(x, y) - std::conj(trace_inner_product(y, x))) <= 1e-12);
  CHECK(trace_inner_product(x, x).real() > 0.0);
  CHECK_THROWS_AS(trace_inner_product(pauli_x(), ComplexMatrix::identity(3)), InvalidInput);
}
