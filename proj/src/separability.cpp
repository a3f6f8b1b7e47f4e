#include "sepvol/separability.hpp"

#include <algorithm>
#include <cmath>

#include "sepvol/error.hpp"
#include "sepvol/parallel.hpp"

namespace sepvol {

namespace {

constexpr double kGeometrySlack = 1e-12;

void require_four(const SimplexPoint& p, const char* op) {
  if (p.size() != 4) {
    throw InvalidInput(std::string(op) + ": expected 4 probabilities, got " +
                       std::to_string(p.size()));
  }
}

}  // namespace

CartesianPoint simplex_to_xyz(const SimplexPoint& p) {
  require_four(p, "simplex_to_xyz");
  return {p[0] + p[1] - p[2] - p[3], p[0] - p[1] + p[2] - p[3],
          p[0] - p[1] - p[2] + p[3]};
}

std::array<double, 4> xyz_probabilities(const CartesianPoint& pt) noexcept {
  return {(1.0 + pt.x + pt.y + pt.z) / 4.0, (1.0 + pt.x - pt.y - pt.z) / 4.0,
          (1.0 - pt.x + pt.y - pt.z) / 4.0, (1.0 - pt.x - pt.y + pt.z) / 4.0};
}

SimplexPoint xyz_to_simplex(const CartesianPoint& pt) {
  const auto p = xyz_probabilities(pt);
  for (double v : p) {
    if (!(v >= -kGeometrySlack)) {
      throw DomainError("inside-tetrahedron",
                        "xyz_to_simplex: point (" + std::to_string(pt.x) + ", " +
                            std::to_string(pt.y) + ", " + std::to_string(pt.z) +
                            ") lies outside the tetrahedron");
    }
  }
  std::vector<double> probs(p.begin(), p.end());
  for (auto& v : probs) v = std::max(v, 0.0);
  return SimplexPoint(std::move(probs));
}

bool ppt_separable(const ComplexMatrix& rho, const BipartiteDims& dims, double tol) {
  return is_psd(partial_transpose(rho, dims, Subsystem::B), tol);
}

double ppt_min_eigenvalue(const ComplexMatrix& rho, const BipartiteDims& dims) {
  return min_eigenvalue(partial_transpose(rho, dims, Subsystem::B));
}

bool two_param_separable(double theta, double alpha, const SimplexPoint& p) {
  require_four(p, "two_param_separable");
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double mix_t = st * st * ct * ct;
  const double mix_a = sa * sa * ca * ca;
  const double quartic_t = st * st * st * st + ct * ct * ct * ct;
  const double quartic_a = sa * sa * sa * sa + ca * ca * ca * ca;
  const double d12 = p[0] - p[1], d34 = p[2] - p[3];

  const double first = (p[0] * p[0] + p[1] * p[1]) * mix_t +
                       p[0] * p[1] * quartic_t - d34 * d34 * mix_a;
  const double second = (p[2] * p[2] + p[3] * p[3]) * mix_a +
                        p[2] * p[3] * quartic_a - d12 * d12 * mix_t;
  return first >= -kGeometrySlack && second >= -kGeometrySlack;
}

bool octahedron_member(const SimplexPoint& p) {
  require_four(p, "octahedron_member");
  const auto probs = p.probs();
  return *std::max_element(probs.begin(), probs.end()) <= 0.5 + kGeometrySlack;
}

PptClassifier::PptClassifier(const Frame& frame, double tol)
    : dims_(frame.dims()),
      dim_(frame.size()),
      // Entries of a density matrix are bounded by one, so the relative
      // tolerance of is_psd reduces to an absolute shift.
      shift_(tol),
      vectors_(dim_ * dim_),
      weighted_(dim_ * dim_),
      rho_(dim_ * dim_),
      pt_(dim_ * dim_),
      eigenvalues_(dim_) {
  // Stored transposed: vectors_[i * dim_ + k] = psi_k[i].
  for (std::size_t k = 0; k < dim_; ++k) {
    const auto psi = frame.vector(k);
    for (std::size_t i = 0; i < dim_; ++i) vectors_[i * dim_ + k] = psi[i];
  }
}

void PptClassifier::build_partial_transpose(std::span<const double> probs) {
  const std::size_t d = dim_;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      weighted_[j * d + k] = probs[k] * std::conj(vectors_[j * d + k]);

  // Lower triangle of rho, mirrored.
  for (std::size_t i = 0; i < d; ++i) {
    const Complex* vi = vectors_.data() + i * d;
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex* wj = weighted_.data() + j * d;
      Complex s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += vi[k] * wj[k];
      rho_[i * d + j] = s;
      rho_[j * d + i] = std::conj(s);
    }
  }

  // Lower triangle of the B-side partial transpose:
  // PT(a b, a' b') = rho(a b', a' b).
  const std::size_t db = dims_.dim_b();
  for (std::size_t r = 0; r < d; ++r) {
    const std::size_t a = r / db, b = r % db;
    for (std::size_t c = 0; c <= r; ++c) {
      const std::size_t a2 = c / db, b2 = c % db;
      pt_[r * d + c] = rho_[(a * db + b2) * d + (a2 * db + b)];
    }
  }
}

bool PptClassifier::separable(std::span<const double> probs) {
  build_partial_transpose(probs);
  return detail::cholesky_succeeds(pt_, dim_, shift_);
}

double PptClassifier::min_pt_eigenvalue(std::span<const double> probs) {
  build_partial_transpose(probs);
  detail::jacobi_eigenvalues(pt_, dim_, eigenvalues_);
  return *std::min_element(eigenvalues_.begin(), eigenvalues_.end());
}

const char* to_string(CellClass c) noexcept {
  switch (c) {
    case CellClass::Outside:
      return "outside";
    case CellClass::Separable:
      return "separable";
    case CellClass::Entangled:
      return "entangled";
  }
  return "unknown";
}

double RegionMesh::cell_center(std::size_t index) const noexcept {
  return -1.0 + (2.0 * static_cast<double>(index) + 1.0) /
                    static_cast<double>(resolution);
}

std::size_t RegionMesh::count(CellClass c) const noexcept {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), c));
}

double RegionMesh::separable_ratio() const noexcept {
  const double sep = static_cast<double>(count(CellClass::Separable));
  const double ent = static_cast<double>(count(CellClass::Entangled));
  return sep + ent > 0.0 ? sep / (sep + ent) : 0.0;
}

RegionMesh region_mesh(const Frame& frame, std::size_t resolution,
                       unsigned threads) {
  if (!(frame.dims() == BipartiteDims(2, 2))) {
    throw InvalidInput("region_mesh: two-qubit frame required");
  }
  if (resolution < 2) throw InvalidInput("region_mesh: resolution must be >= 2");

  RegionMesh mesh;
  mesh.resolution = resolution;
  mesh.cells.resize(resolution * resolution * resolution);
  parallel_for(resolution, threads, [&](std::size_t i) {
    PptClassifier classifier(frame);
    for (std::size_t j = 0; j < resolution; ++j)
      for (std::size_t k = 0; k < resolution; ++k) {
        const CartesianPoint pt{mesh.cell_center(i), mesh.cell_center(j),
                                mesh.cell_center(k)};
        const auto p = xyz_probabilities(pt);
        CellClass c = CellClass::Outside;
        if (std::all_of(p.begin(), p.end(), [](double v) { return v >= 0.0; })) {
          c = classifier.separable(p) ? CellClass::Separable : CellClass::Entangled;
        }
        mesh.cells[(i * resolution + j) * resolution + k] = c;
      }
  });
  return mesh;
}

}  // namespace sepvol
