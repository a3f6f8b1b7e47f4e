#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sepvol/error.hpp"
#include "sepvol/separability.hpp"

using namespace sepvol;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBand = 1e-9;

void check_xyz(const CartesianPoint& c, double x, double y, double z) {
  CHECK(std::abs(c.x - x) <= 1e-15);
  CHECK(std::abs(c.y - y) <= 1e-15);
  CHECK(std::abs(c.z - z) <= 1e-15);
}

ComplexMatrix local_unitary(RandomStream& rng, const BipartiteDims& dims) {
  return kron(haar_unitary(dims.dim_a(), rng), haar_unitary(dims.dim_b(), rng));
}

}  // namespace

TEST_CASE("simplex_to_xyz and xyz_to_simplex") {
  check_xyz(simplex_to_xyz(SimplexPoint({1.0, 0.0, 0.0, 0.0})), 1, 1, 1);
  check_xyz(simplex_to_xyz(SimplexPoint({0.0, 1.0, 0.0, 0.0})), 1, -1, -1);
  check_xyz(simplex_to_xyz(SimplexPoint({0.0, 0.0, 1.0, 0.0})), -1, 1, -1);
  check_xyz(simplex_to_xyz(SimplexPoint({0.25, 0.25, 0.25, 0.25})), 0, 0, 0);

  const auto centre = xyz_to_simplex({0, 0, 0});
  for (std::size_t k = 0; k < 4; ++k) CHECK(centre[k] == 0.25);
  const auto v4 = xyz_to_simplex({-1, -1, 1});
  CHECK(v4.probs()[3] == 1.0);
  CHECK(v4[0] == 0.0);
  check_xyz(simplex_to_xyz(xyz_to_simplex({1, 1, 1})), 1, 1, 1);

  RandomStream rng(2, 2);
  for (int rep = 0; rep < 100; ++rep) {
    const auto p = sample_simplex(4, rng);
    const auto q = xyz_to_simplex(simplex_to_xyz(p));
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(p[k] - q[k]) <= 1e-15);
  }

  try {
    xyz_to_simplex({1, 1, -1});
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.constraint() == "inside-tetrahedron");
  }
  CHECK_THROWS_AS(simplex_to_xyz(SimplexPoint({0.5, 0.5})), InvalidInput);
}

TEST_CASE("ppt_separable examples") {
  const BipartiteDims qubits(2, 2);
  RandomStream rng(3, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = haar_unitary(2, rng), b = haar_unitary(2, rng);
    const auto psi = kron(a, b).column(0);
    CHECK(ppt_separable(outer(psi, psi), qubits));
  }

  const double h = 1.0 / std::sqrt(2.0);
  const ComplexVector bell = {h, 0.0, 0.0, h};
  const auto proj = outer(bell, bell);
  CHECK_FALSE(ppt_separable(proj, qubits));
  const auto spectrum = hermitian_eigenvalues(partial_transpose(proj, qubits, Subsystem::B));
  const std::vector<double> expected = {-0.5, 0.5, 0.5, 0.5};
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(spectrum[k] - expected[k]) <= 1e-12);
  CHECK(std::abs(ppt_min_eigenvalue(proj, qubits) + 0.5) <= 1e-12);

  const auto magic = bell_frame(qubits);
  const SimplexPoint p({0.7, 0.1, 0.1, 0.1});
  CHECK_FALSE(ppt_separable(assemble_state(magic, p), qubits));
  CHECK_FALSE(octahedron_member(p));

  CHECK_THROWS_AS(ppt_separable(proj, BipartiteDims(2, 3)), InvalidInput);
}

TEST_CASE("two_param_separable examples") {
  CHECK_FALSE(two_param_separable(kPi / 4, kPi / 4, SimplexPoint({0.6, 0.2, 0.1, 0.1})));
  RandomStream rng(4, 0);
  for (int rep = 0; rep < 100; ++rep) {
    CHECK(two_param_separable(0.0, 0.0, sample_simplex(4, rng)));
    CHECK(two_param_separable(rng.uniform() * kPi, rng.uniform() * kPi,
                              SimplexPoint({0.25, 0.25, 0.25, 0.25})));
  }
  CHECK_THROWS_AS(two_param_separable(0.1, 0.2, SimplexPoint({1.0})), InvalidInput);
}

TEST_CASE("octahedron_member examples") {
  CHECK(octahedron_member(SimplexPoint({0.25, 0.25, 0.25, 0.25})));
  CHECK_FALSE(octahedron_member(SimplexPoint({0.51, 0.49, 0.0, 0.0})));
  CHECK(octahedron_member(SimplexPoint({0.5, 0.5, 0.0, 0.0})));
}

TEST_CASE("closed-form two-parameter test agrees with full PPT") {
  RandomStream rng(5, 0);
  int compared = 0, disagreements = 0;
  for (int rep = 0; rep < 20000; ++rep) {
    const double theta = rng.uniform() * kPi / 2;
    const double alpha = rng.uniform() * kPi / 2;
    const auto frame = two_param_frame(theta, alpha);
    const auto p = sample_simplex(4, rng);
    const auto rho = assemble_state(frame, p);
    if (std::abs(ppt_min_eigenvalue(rho, frame.dims())) <= kBand) continue;
    ++compared;
    disagreements += two_param_separable(theta, alpha, p) != ppt_separable(rho, frame.dims());
  }
  CHECK(compared > 19000);
  CHECK(disagreements == 0);
}

TEST_CASE("octahedron agrees with full PPT in the Bell frame") {
  const auto frame = bell_frame(BipartiteDims(2, 2));
  RandomStream rng(6, 0);
  int disagreements = 0, separable = 0;
  for (int rep = 0; rep < 20000; ++rep) {
    const auto p = sample_simplex(4, rng);
    if (std::abs(*std::max_element(p.probs().begin(), p.probs().end()) - 0.5) <= kBand) continue;
    const bool ppt = ppt_separable(assemble_state(frame, p), frame.dims());
    separable += ppt;
    disagreements += ppt != octahedron_member(p);
  }
  CHECK(disagreements == 0);
  CHECK(separable > 0);
}

TEST_CASE("PPT verdict is invariant under local unitaries") {
  RandomStream rng(7, 0);
  for (const auto& dims : {BipartiteDims(2, 2), BipartiteDims(2, 3), BipartiteDims(3, 3)}) {
    int compared = 0;
    for (int rep = 0; rep < 200; ++rep) {
      const auto frame = frame_from_unitary(haar_unitary(dims.total(), rng), dims);
      const auto p = sample_simplex(dims.total(), rng);
      const auto rho = assemble_state(frame, p);
      const double lambda = ppt_min_eigenvalue(rho, dims);
      if (std::abs(lambda) <= kBand) continue;
      const auto u = local_unitary(rng, dims);
      const auto moved = u * rho * u.adjoint();
      CHECK(ppt_separable(moved, dims) == (lambda > 0));
      CHECK(std::abs(ppt_min_eigenvalue(moved, dims) - lambda) <= 1e-10);
      ++compared;
    }
    CHECK(compared > 190);
  }
}

TEST_CASE("PptClassifier matches the reference PPT test") {
  RandomStream rng(8, 0);
  for (const auto& dims : {BipartiteDims(2, 2), BipartiteDims(2, 3), BipartiteDims(3, 2),
                           BipartiteDims(3, 4)}) {
    const auto frame = frame_from_unitary(haar_unitary(dims.total(), rng), dims);
    PptClassifier classifier(frame);
    CHECK(classifier.dim() == dims.total());
    for (int rep = 0; rep < 200; ++rep) {
      const auto p = sample_simplex(dims.total(), rng);
      const auto rho = assemble_state(frame, p);
      const double lambda = ppt_min_eigenvalue(rho, dims);
      CHECK(std::abs(classifier.min_pt_eigenvalue(p.probs()) - lambda) <= 1e-10);
      if (std::abs(lambda) > kBand) {
        CHECK(classifier.separable(p.probs()) == ppt_separable(rho, dims));
      }
    }
  }
}

TEST_CASE("region_mesh") {
  const auto smoke = region_mesh(two_param_frame(0.3, 0.4), 2);
  CHECK(smoke.cells.size() == 8);
  CHECK(smoke.cell_center(0) == -0.5);
  CHECK(smoke.cell_center(1) == 0.5);

  const auto product = region_mesh(two_param_frame(0.0, 0.0), 16);
  CHECK(product.count(CellClass::Entangled) == 0);
  CHECK(product.count(CellClass::Separable) > 0);
  CHECK(product.separable_ratio() == 1.0);

  const auto bell = region_mesh(bell_frame(BipartiteDims(2, 2)), 64, 2);
  CHECK(std::abs(bell.separable_ratio() - 0.5) <= 0.02);
  // Cell centre classes follow the octahedron directly.
  for (std::size_t i = 0; i < 64; i += 7) {
    for (std::size_t j = 0; j < 64; j += 5) {
      for (std::size_t k = 0; k < 64; k += 3) {
        const CartesianPoint c{bell.cell_center(i), bell.cell_center(j), bell.cell_center(k)};
        const auto probs = xyz_probabilities(c);
        const double lo = *std::min_element(probs.begin(), probs.end());
        const double hi = *std::max_element(probs.begin(), probs.end());
        const auto cls = bell.at(i, j, k);
        if (lo < 0) {
          CHECK(cls == CellClass::Outside);
        } else {
          CHECK(cls == (hi <= 0.5 ? CellClass::Separable : CellClass::Entangled));
        }
      }
    }
  }

  const auto serial = region_mesh(two_param_frame(0.5, 0.2), 12, 1);
  const auto pooled = region_mesh(two_param_frame(0.5, 0.2), 12, 3);
  CHECK(serial.cells == pooled.cells);

  CHECK_THROWS_AS(region_mesh(two_param_frame(0.1, 0.1), 1), InvalidInput);
  CHECK_THROWS_AS(region_mesh(bell_frame(BipartiteDims(3, 3)), 8), InvalidInput);
  CHECK(std::string(to_string(CellClass::Entangled)) == "entangled");
}
