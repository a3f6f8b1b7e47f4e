#include "sepvol/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sepvol/error.hpp"

namespace sepvol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kParamSlack = 1e-12;

ComplexVector basis_state(std::size_t dim, std::size_t index) {
  ComplexVector v(dim);
  v[index] = 1.0;
  return v;
}

void check_range(double value, double lo, double hi, const char* name) {
  if (!(value >= lo - kParamSlack && value <= hi + kParamSlack)) {
    throw DomainError("parameter-box", std::string("canonical frame: ") + name +
                                           " = " + std::to_string(value) +
                                           " outside [" + std::to_string(lo) +
                                           ", " + std::to_string(hi) + "]");
  }
}

// Removes the components of `v` along the orthonormal `basis`, twice for
// stability.
void project_out(ComplexVector& v, std::span<const ComplexVector> basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& u : basis) {
      const Complex c = inner(u, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
    }
  }
}

}  // namespace

Frame::Frame(BipartiteDims dims, std::vector<ComplexVector> vectors)
    : dims_(dims), vectors_(std::move(vectors)) {
  const std::size_t d = dims_.total();
  if (vectors_.size() != d) {
    throw InvalidInput("Frame: expected " + std::to_string(d) +
                       " vectors, got " + std::to_string(vectors_.size()));
  }
  for (const auto& v : vectors_) {
    if (v.size() != d) throw InvalidInput("Frame: vector length mismatch");
  }
  const double residual = orthonormality_residual(vectors_);
  if (!(residual <= kFrameTolerance)) {
    throw InvalidInput("Frame: vectors are not orthonormal (residual " +
                       std::to_string(residual) + ")");
  }
}

ComplexMatrix Frame::basis_matrix() const {
  const std::size_t d = size();
  ComplexMatrix u(d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) u(i, k) = vectors_[k][i];
  return u;
}

double orthonormality_residual(std::span<const ComplexVector> vectors) {
  double worst = 0.0;
  for (std::size_t j = 0; j < vectors.size(); ++j)
    for (std::size_t k = j; k < vectors.size(); ++k) {
      const Complex g = inner(vectors[j], vectors[k]);
      worst = std::max(worst, std::abs(g - (j == k ? 1.0 : 0.0)));
    }
  return worst;
}

Frame computational_frame(const BipartiteDims& dims) {
  std::vector<ComplexVector> v;
  for (std::size_t k = 0; k < dims.total(); ++k)
    v.push_back(basis_state(dims.total(), k));
  return Frame(dims, std::move(v));
}

Frame frame_from_unitary(const ComplexMatrix& unitary,
                         const BipartiteDims& dims) {
  if (unitary.dim() != dims.total()) {
    throw InvalidInput("frame_from_unitary: matrix dimension does not match dims");
  }
  std::vector<ComplexVector> v;
  v.reserve(unitary.dim());
  for (std::size_t k = 0; k < unitary.dim(); ++k) v.push_back(unitary.column(k));
  return Frame(dims, std::move(v));
}

Frame two_param_frame(double theta, double alpha) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  // |00> = 0, |01> = 1, |10> = 2, |11> = 3.
  std::vector<ComplexVector> v = {
      {ct, 0.0, 0.0, st},
      {st, 0.0, 0.0, -ct},
      {0.0, ca, sa, 0.0},
      {0.0, sa, -ca, 0.0},
  };
  return Frame(BipartiteDims(2, 2), std::move(v));
}

CanonicalDependents canonical_dependents(const CanonicalTwoQubitParams& p) {
  check_range(p.theta1, 0.0, kPi / 4, "theta1");
  check_range(p.alpha, 0.0, 1.0, "alpha");
  check_range(p.theta2, 0.0, kPi / 2, "theta2");
  check_range(p.theta3, 0.0, kPi / 2, "theta3");

  // Imaginary part of Tr(C3^dagger C2) = 0:
  //   sin t2 cos t3 sin(phi - phi3) = cos t2 sin t3 sin(phi - phi3').
  const double numer = std::sin(p.theta2) * std::cos(p.theta3) * std::sin(p.phi - p.phi3);
  const double denom = std::cos(p.theta2) * std::sin(p.theta3);
  double phi3_prime;
  if (std::abs(denom) <= kParamSlack) {
    // phi3' multiplies a vanishing entry; only the left side is constrained.
    if (std::abs(numer) > kParamSlack) {
      throw DomainError("arcsin-argument",
                        "canonical frame: sin(theta2) cos(theta3) sin(phi - phi3) "
                        "must vanish when cos(theta2) sin(theta3) = 0");
    }
    phi3_prime = p.phi;
  } else {
    double arg = numer / denom;
    if (std::abs(arg) > 1.0 + kParamSlack) {
      throw DomainError("arcsin-argument",
                        "canonical frame: |tan(theta2)/tan(theta3) sin(phi - phi3)| = " +
                            std::to_string(std::abs(arg)) + " > 1");
    }
    arg = std::clamp(arg, -1.0, 1.0);
    phi3_prime = p.phi - std::asin(arg);
  }

  const double gamma =
      std::sin(p.theta2) * std::cos(p.theta3) * std::cos(p.phi - p.phi3) -
      std::cos(p.theta2) * std::sin(p.theta3) * std::cos(p.phi - phi3_prime);
  if (gamma > kParamSlack) {
    throw DomainError("gamma-nonpositive", "canonical frame: Gamma = " +
                                               std::to_string(gamma) + " > 0");
  }

  // Real part: alpha beta + sqrt((1 - alpha^2)(1 - beta^2)) Gamma = 0.
  const double a2 = p.alpha * p.alpha;
  const double g2 = gamma * gamma;
  const double denom_beta = a2 + (1.0 - a2) * g2;
  // alpha = Gamma = 0 leaves beta free; take the diagonal-free choice.
  const double beta = denom_beta > 0.0 ? std::sqrt((1.0 - a2) * g2 / denom_beta) : 0.0;
  return {phi3_prime, beta, gamma};
}

Frame canonical_two_qubit_frame(const CanonicalTwoQubitParams& p) {
  const auto dep = canonical_dependents(p);
  const double c1 = std::cos(p.theta1), s1 = std::sin(p.theta1);
  const double ra = std::sqrt(std::max(0.0, 1.0 - p.alpha * p.alpha));
  const double rb = std::sqrt(std::max(0.0, 1.0 - dep.beta * dep.beta));
  const Complex e_phi = std::polar(1.0, p.phi);
  const Complex e_phi3 = std::polar(1.0, p.phi3);
  const Complex e_phi3p = std::polar(1.0, dep.phi3_prime);

  // Coefficient matrices flattened as (C00, C01, C10, C11).
  std::vector<ComplexVector> v(3);
  v[0] = {c1, 0.0, 0.0, s1};
  v[1] = {p.alpha * s1, ra * e_phi * std::sin(p.theta2),
          ra * e_phi * std::cos(p.theta2), -p.alpha * c1};
  v[2] = {dep.beta * s1, rb * e_phi3 * std::cos(p.theta3),
          -rb * e_phi3p * std::sin(p.theta3), -dep.beta * c1};

  ComplexVector best;
  double best_norm = -1.0;
  for (std::size_t m = 0; m < 4; ++m) {
    ComplexVector w = basis_state(4, m);
    project_out(w, v);
    const double n = norm(w);
    if (n > best_norm) {
      best_norm = n;
      best = std::move(w);
    }
  }
  for (auto& z : best) z /= best_norm;
  v.push_back(std::move(best));
  return Frame(BipartiteDims(2, 2), std::move(v));
}

CanonicalTwoQubitParams random_canonical_params(RandomStream& rng) {
  for (;;) {
    CanonicalTwoQubitParams p;
    p.theta1 = rng.uniform() * kPi / 4;
    p.alpha = rng.uniform();
    p.theta2 = rng.uniform() * kPi / 2;
    p.theta3 = rng.uniform() * kPi / 2;
    p.phi = rng.uniform() * 2 * kPi;
    p.phi3 = rng.uniform() * 2 * kPi;
    try {
      canonical_dependents(p);
      return p;
    } catch (const DomainError&) {
    }
  }
}

Frame qubit_qutrit_frame(double theta, double alpha, double beta) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  // Index a * 3 + b.
  auto state = [](std::size_t i, double x, std::size_t j, double y) {
    ComplexVector v(6);
    v[i] = x;
    v[j] = y;
    return v;
  };
  std::vector<ComplexVector> v = {
      state(0, ct, 4, st),  state(0, st, 4, -ct),  // |00>, |11>
      state(1, ca, 5, sa),  state(1, sa, 5, -ca),  // |01>, |12>
      state(2, cb, 3, sb),  state(2, sb, 3, -cb),  // |02>, |10>
  };
  return Frame(BipartiteDims(2, 3), std::move(v));
}

Frame bell_frame(const BipartiteDims& dims) {
  const std::size_t da = dims.dim_a(), db = dims.dim_b();
  if (da == 2 && db == 2) return two_param_frame(kPi / 4, kPi / 4);
  if (da == 2 && db == 3) return qubit_qutrit_frame(kPi / 4, kPi / 4, kPi / 4);
  if (da != db) {
    throw Unsupported("bell_frame: only d x d, 2x2 and 2x3 are supported, got " +
                      std::to_string(da) + "x" + std::to_string(db));
  }
  const std::size_t n = da;
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<ComplexVector> v;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      ComplexVector psi(n * n);
      for (std::size_t a = 0; a < n; ++a) {
        const double angle = 2.0 * kPi * static_cast<double>((j * a) % n) /
                             static_cast<double>(n);
        psi[a * n + (a + k) % n] = std::polar(amp, angle);
      }
      v.push_back(std::move(psi));
    }
  return Frame(dims, std::move(v));
}

ComplexMatrix assemble_state(const Frame& frame, const SimplexPoint& p) {
  if (p.size() != frame.size()) {
    throw InvalidInput("assemble_state: simplex point has " +
                       std::to_string(p.size()) + " components, frame has " +
                       std::to_string(frame.size()));
  }
  const std::size_t d = frame.size();
  ComplexMatrix rho(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double w = p[k];
    if (w == 0.0) continue;
    const auto psi = frame.vector(k);
    for (std::size_t i = 0; i < d; ++i) {
      const Complex wi = w * psi[i];
      for (std::size_t j = 0; j < d; ++j) rho(i, j) += wi * std::conj(psi[j]);
    }
  }
  return rho;
}

double vector_entanglement(std::span<const Complex> psi,
                           const BipartiteDims& dims) {
  const std::size_t smaller = std::min(dims.dim_a(), dims.dim_b());
  if (smaller < 2) return 0.0;
  const Subsystem keep = dims.dim_a() <= dims.dim_b() ? Subsystem::A : Subsystem::B;
  const auto spectrum = hermitian_eigenvalues(reduced_density(psi, dims, keep));
  double entropy = 0.0;
  for (double lambda : spectrum)
    if (lambda > 0.0) entropy -= lambda * std::log(lambda);
  return std::clamp(entropy / std::log(static_cast<double>(smaller)), 0.0, 1.0);
}

double concurrence(std::span<const Complex> psi) {
  if (psi.size() != 4) throw InvalidInput("concurrence: two-qubit state required");
  return std::min(1.0, 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]));
}

double frame_entanglement(const Frame& frame, EntanglementMeasure measure) {
  if (measure == EntanglementMeasure::Concurrence &&
      !(frame.dims() == BipartiteDims(2, 2))) {
    throw Unsupported("frame_entanglement: concurrence is defined for 2x2 only");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < frame.size(); ++k) {
    sum += measure == EntanglementMeasure::Entropy
               ? vector_entanglement(frame.vector(k), frame.dims())
               : concurrence(frame.vector(k));
  }
  return sum / static_cast<double>(frame.size());
}

std::string to_string(EntanglementMeasure measure) {
  return measure == EntanglementMeasure::Entropy ? "entropy" : "concurrence";
}

EntanglementMeasure parse_entanglement_measure(const std::string& name) {
  if (name == "entropy") return EntanglementMeasure::Entropy;
  if (name == "concurrence") return EntanglementMeasure::Concurrence;
  throw InvalidInput("unknown entanglement measure '" + name + "'");
}

}  // namespace sepvol
