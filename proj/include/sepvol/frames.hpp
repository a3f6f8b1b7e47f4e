#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sepvol/linalg.hpp"
#include "sepvol/sampling.hpp"

namespace sepvol {

/// Tolerance on the Gram-matrix residual for accepting a set of vectors as
/// an orthonormal frame.
inline constexpr double kFrameTolerance = 1e-10;

/// Ordered orthonormal basis of a composite Hilbert space. Vector k has
/// components psi_k[a * d_B + b] = C^(k)_{ab}, the coefficient matrix of the
/// pure state.
class Frame {
 public:
  /// Throws InvalidInput if the vectors have the wrong count or length, or
  /// are not orthonormal within kFrameTolerance.
  Frame(BipartiteDims dims, std::vector<ComplexVector> vectors);

  const BipartiteDims& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  std::span<const Complex> vector(std::size_t k) const noexcept {
    return vectors_[k];
  }
  const std::vector<ComplexVector>& vectors() const noexcept { return vectors_; }

  Complex coefficient(std::size_t k, std::size_t a, std::size_t b) const noexcept {
    return vectors_[k][a * dims_.dim_b() + b];
  }

  /// Unitary whose columns are the frame vectors.
  ComplexMatrix basis_matrix() const;

 private:
  BipartiteDims dims_;
  std::vector<ComplexVector> vectors_;
};

/// max |<psi_j|psi_k> - delta_jk|.
double orthonormality_residual(std::span<const ComplexVector> vectors);

Frame computational_frame(const BipartiteDims& dims);

/// Columns of `unitary`, in order. Throws InvalidInput unless `unitary` is
/// unitary within kFrameTolerance and matches `dims`.
Frame frame_from_unitary(const ComplexMatrix& unitary, const BipartiteDims& dims);

/// Two-qubit frame mixing |00>,|11> by theta and |01>,|10> by alpha:
///   cos t|00> + sin t|11>,  sin t|00> - cos t|11>,
///   cos a|01> + sin a|10>,  sin a|01> - cos a|10>.
Frame two_param_frame(double theta, double alpha);

/// Six free parameters of a two-qubit frame modulo local unitaries.
struct CanonicalTwoQubitParams {
  double theta1 = 0.0;  // [0, pi/4]
  double alpha = 1.0;   // [0, 1]
  double theta2 = 0.0;  // [0, pi/2]
  double theta3 = 0.0;  // [0, pi/2]
  double phi = 0.0;     // periodic
  double phi3 = 0.0;    // periodic
};

/// Parameters of the third coefficient matrix fixed by orthogonality to the
/// second one.
struct CanonicalDependents {
  double phi3_prime;
  double beta;
  double gamma;  // cos-weighted overlap; must be <= 0
};

/// Solves the orthogonality condition between the second and third
/// coefficient matrices. Throws DomainError naming the violated constraint:
/// "parameter-box", "arcsin-argument" or "gamma-nonpositive".
CanonicalDependents canonical_dependents(const CanonicalTwoQubitParams& params);

/// Canonical two-qubit frame. The first three coefficient matrices are
/// built in closed form; the fourth is the orthogonal complement in the
/// space of 2x2 matrices.
Frame canonical_two_qubit_frame(const CanonicalTwoQubitParams& params);

/// Uniform on the parameter box, rejected until feasible. This is not the
/// Haar-induced measure and is only meant for coverage tests.
CanonicalTwoQubitParams random_canonical_params(RandomStream& rng);

/// Three-parameter qubit-qutrit family: pairs {|00>,|11>}, {|01>,|12>},
/// {|02>,|10>} each rotated by theta, alpha, beta respectively.
Frame qubit_qutrit_frame(double theta, double alpha, double beta);

/// Frame of maximally entangled vectors. Supported: d_A = d_B = n
/// (clock-and-shift basis; for n = 2 the magic basis two_param_frame(pi/4,
/// pi/4)) and 2x3 (qubit_qutrit_frame at pi/4). Throws Unsupported otherwise.
Frame bell_frame(const BipartiteDims& dims);

/// sum_j p_j |psi_j><psi_j|.
ComplexMatrix assemble_state(const Frame& frame, const SimplexPoint& p);

enum class EntanglementMeasure { Entropy, Concurrence };

/// Von Neumann entropy of the reduced state over log(min(d_A, d_B)).
double vector_entanglement(std::span<const Complex> psi, const BipartiteDims& dims);

/// Two-qubit concurrence 2|psi00 psi11 - psi01 psi10|.
double concurrence(std::span<const Complex> psi);

double frame_entanglement(const Frame& frame,
                          EntanglementMeasure measure = EntanglementMeasure::Entropy);

std::string to_string(EntanglementMeasure measure);
EntanglementMeasure parse_entanglement_measure(const std::string& name);

}  // namespace sepvol
