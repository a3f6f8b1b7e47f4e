#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sepvol/frames.hpp"
#include "sepvol/linalg.hpp"
#include "sepvol/sampling.hpp"

namespace sepvol {

/// Affine coordinates of the two-qubit 3-simplex. The vertices p = e_1..e_4
/// map to (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1).
struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

CartesianPoint simplex_to_xyz(const SimplexPoint& p);

/// Throws DomainError("inside-tetrahedron") if a probability is below -1e-12.
SimplexPoint xyz_to_simplex(const CartesianPoint& pt);

/// The four probabilities (1 +- x +- y +- z) / 4 without domain checks.
std::array<double, 4> xyz_probabilities(const CartesianPoint& pt) noexcept;

/// PPT test on the B-side partial transpose. For d_A d_B <= 6 this decides
/// separability; above that it is only a necessary condition.
bool ppt_separable(const ComplexMatrix& rho, const BipartiteDims& dims,
                   double tol = kDefaultPsdTolerance);

/// Smallest eigenvalue of the partial transpose (boundary diagnostics).
double ppt_min_eigenvalue(const ComplexMatrix& rho, const BipartiteDims& dims);

/// Closed-form PPT conditions for states diagonal in two_param_frame(theta,
/// alpha): both quadratic inequalities must hold with -1e-12 slack.
bool two_param_separable(double theta, double alpha, const SimplexPoint& p);

/// Separable region of Bell-diagonal two-qubit states: max p_j <= 1/2.
bool octahedron_member(const SimplexPoint& p);

/// Reusable PPT classifier for states diagonal in a fixed frame. Holds its
/// own scratch space, so one instance must not be shared between threads.
class PptClassifier {
 public:
  explicit PptClassifier(const Frame& frame, double tol = kDefaultPsdTolerance);

  std::size_t dim() const noexcept { return dim_; }

  /// `probs` must have dim() entries summing to one; unchecked.
  bool separable(std::span<const double> probs);
  double min_pt_eigenvalue(std::span<const double> probs);

 private:
  void build_partial_transpose(std::span<const double> probs);

  BipartiteDims dims_;
  std::size_t dim_;
  double shift_;
  std::vector<Complex> vectors_;  // vector k at [k * dim_, (k + 1) * dim_)
  std::vector<Complex> weighted_;
  std::vector<Complex> rho_;
  std::vector<Complex> pt_;
  std::vector<double> eigenvalues_;
};

enum class CellClass : std::uint8_t { Outside = 0, Separable = 1, Entangled = 2 };

const char* to_string(CellClass c) noexcept;

/// Classification of the cell centres of a resolution^3 grid over [-1, 1]^3.
struct RegionMesh {
  std::size_t resolution = 0;
  std::vector<CellClass> cells;  // index (i * res + j) * res + k for x_i, y_j, z_k

  double cell_center(std::size_t index) const noexcept;
  CellClass at(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return cells[(i * resolution + j) * resolution + k];
  }
  std::size_t count(CellClass c) const noexcept;
  /// separable / (separable + entangled).
  double separable_ratio() const noexcept;
};

/// Throws InvalidInput unless frame is two-qubit and resolution >= 2.
/// Slabs along x are distributed over `threads` workers (0 = hardware
/// concurrency); the result does not depend on the worker count.
RegionMesh region_mesh(const Frame& frame, std::size_t resolution,
                       unsigned threads = 1);

}  // namespace sepvol
