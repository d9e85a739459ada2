#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "onticlab/errors.hpp"
#include "onticlab/tolerances.hpp"

namespace onticlab {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Vec3 = Eigen::Vector3d;

/// Point of (or inside) the Bloch ball.
class BlochVector {
public:
  explicit BlochVector(const Vec3& r);
  BlochVector(double x, double y, double z) : BlochVector(Vec3(x, y, z)) {}

  const Vec3& r() const { return r_; }
  double norm() const { return r_.norm(); }

private:
  Vec3 r_;
};

/// Normalized state vector on C^d.
class PureState {
public:
  explicit PureState(CVec amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const CVec& amplitudes() const { return amps_; }
  CMat projector() const { return amps_ * amps_.adjoint(); }

  static PureState basis_state(int dim, int index);
  /// Qubit state with the given unit Bloch direction.
  static PureState qubit_from_bloch(const Vec3& direction);
  /// Bloch vector of a qubit state.
  Vec3 bloch() const;

private:
  CVec amps_;
};

Cplx inner(const PureState& a, const PureState& b);
/// |<a|b>|^2.
double overlap_sq(const PureState& a, const PureState& b);

/// Hermitian, positive semidefinite, unit-trace operator on C^d.
class DensityOperator {
public:
  explicit DensityOperator(CMat matrix);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMat& matrix() const { return m_; }

  static DensityOperator pure(const PureState& psi);
  static DensityOperator maximally_mixed(int dim);

  /// Eigenpairs sorted by descending eigenvalue; eigenvalues clamped at 0.
  std::vector<std::pair<double, PureState>> spectral() const;
  int rank(double eigenvalue_threshold = tol().eigenvalue_rank) const;

private:
  CMat m_;
};

/// Positive-operator-valued measure: effects summing to the identity.
class Povm {
public:
  Povm(int dim, std::vector<CMat> effects);

  int dim() const { return dim_; }
  const std::vector<CMat>& effects() const { return effects_; }
  std::size_t size() const { return effects_.size(); }

private:
  int dim_;
  std::vector<CMat> effects_;
};

/// Pure state of a dimA x dimB composite, stored as the coefficient table
/// amplitudes(i, j) of |i>_A |j>_B.
class BipartiteState {
public:
  BipartiteState(int dim_a, int dim_b, CMat amplitudes);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  const CMat& amplitudes() const { return amps_; }

  static BipartiteState product(const PureState& a, const PureState& b);

private:
  int dim_a_, dim_b_;
  CMat amps_;
};

struct SchmidtData {
  std::vector<double> coefficients;  // descending, all retained
  std::vector<PureState> basis_a;
  std::vector<PureState> basis_b;
  int rank(double threshold = tol().schmidt_rank) const;
};

// -------------------------------------------------------------- operations

DensityOperator bloch_to_density(const BlochVector& b);
BlochVector density_to_bloch(const DensityOperator& rho);

/// Tr(E rho); the imaginary residue (always below the discard tolerance for
/// valid inputs) is dropped and the value clamped to [0, 1].
double born_probability(const DensityOperator& rho, const CMat& effect);

SchmidtData schmidt(const BipartiteState& psi);

/// Bob's reduced state Tr_A |psi><psi|.
DensityOperator partial_trace_A(const BipartiteState& psi);

/// Unnormalized conditional states of Bob after a measurement of `effects`
/// on Alice: entry k is Tr_A[(E_k (x) I) |psi><psi|]. Traces are the outcome
/// probabilities; the matrices sum to the reduced state.
std::vector<CMat> conditional_states_A(const BipartiteState& psi,
                                       const std::vector<CMat>& effects);

/// <psi| rho |psi> for a normalized rho.
double fidelity_pure(const PureState& psi, const CMat& rho);

/// Completes a unit row vector to an isometry M (rows x dim) with
/// orthonormal columns and M.row(0) == first_row. Additional rows beyond
/// `dim` spread the remaining column mass so every row is generically
/// nonzero. Requires rows >= dim and ||first_row|| == 1 (up to unit_norm).
CMat complete_isometry(const Eigen::RowVectorXcd& first_row, int rows);

/// Frobenius distance.
double operator_distance(const CMat& x, const CMat& y);

/// (X + X^dagger) / 2, squashing round-off asymmetry.
CMat hermitize(const CMat& x);

}  // namespace onticlab
