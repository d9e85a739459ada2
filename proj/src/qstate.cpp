#include "onticlab/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace onticlab {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

}  // namespace

// ------------------------------------------------------------- BlochVector

BlochVector::BlochVector(const Vec3& r) : r_(r) {
  require(r_.norm() <= 1.0 + tol().bloch_ball,
          "Bloch vector leaves the unit ball: |r| = " + std::to_string(r_.norm()));
}

// --------------------------------------------------------------- PureState

PureState::PureState(CVec amplitudes) : amps_(std::move(amplitudes)) {
  require(amps_.size() > 0, "pure state needs at least one amplitude");
  require(std::abs(amps_.norm() - 1.0) <= tol().unit_norm,
          "pure state is not normalized: |psi| = " + std::to_string(amps_.norm()));
}

PureState PureState::basis_state(int dim, int index) {
  require(dim > 0 && index >= 0 && index < dim, "basis index out of range");
  CVec v = CVec::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

PureState PureState::qubit_from_bloch(const Vec3& direction) {
  require(std::abs(direction.norm() - 1.0) <= 1e-9,
          "qubit direction must be a unit vector");
  const Vec3 d = direction / direction.norm();
  const double theta = std::acos(std::clamp(d.z(), -1.0, 1.0));
  const double phi = std::atan2(d.y(), d.x());
  CVec v(2);
  v(0) = Cplx(std::cos(theta / 2.0), 0.0);
  v(1) = std::exp(Cplx(0.0, phi)) * std::sin(theta / 2.0);
  // renormalize to kill the last-ulp drift from the trig calls
  v /= v.norm();
  return PureState(std::move(v));
}

Vec3 PureState::bloch() const {
  require(dim() == 2, "Bloch vector only defined for qubit states");
  const Cplx a = amps_(0), b = amps_(1);
  const Cplx ab = std::conj(a) * b;
  return Vec3(2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b));
}

Cplx inner(const PureState& a, const PureState& b) {
  require(a.dim() == b.dim(), "inner product dimension mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

double overlap_sq(const PureState& a, const PureState& b) {
  return std::norm(inner(a, b));
}

// --------------------------------------------------------- DensityOperator

DensityOperator::DensityOperator(CMat matrix) : m_(std::move(matrix)) {
  require(m_.rows() == m_.cols() && m_.rows() > 0, "density operator must be square");
  require((m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol().hermiticity,
          "density operator is not Hermitian");
  require(std::abs(m_.trace().real() - 1.0) <= tol().trace_one &&
              std::abs(m_.trace().imag()) <= tol().trace_one,
          "density operator trace is not 1");
  Eigen::SelfAdjointEigenSolver<CMat> es(m_, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= tol().psd_floor,
          "density operator has a negative eigenvalue: " +
              std::to_string(es.eigenvalues().minCoeff()));
}

DensityOperator DensityOperator::pure(const PureState& psi) {
  return DensityOperator(psi.projector());
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  require(dim > 0, "dimension must be positive");
  return DensityOperator(CMat::Identity(dim, dim) / static_cast<double>(dim));
}

std::vector<std::pair<double, PureState>> DensityOperator::spectral() const {
  Eigen::SelfAdjointEigenSolver<CMat> es(m_);
  std::vector<std::pair<double, PureState>> out;
  out.reserve(dim());
  for (int i = dim() - 1; i >= 0; --i) {  // Eigen sorts ascending
    CVec v = es.eigenvectors().col(i);
    v /= v.norm();
    out.emplace_back(std::max(0.0, es.eigenvalues()(i)), PureState(std::move(v)));
  }
  return out;
}

int DensityOperator::rank(double eigenvalue_threshold) const {
  Eigen::SelfAdjointEigenSolver<CMat> es(m_, Eigen::EigenvaluesOnly);
  int r = 0;
  for (int i = 0; i < dim(); ++i)
    if (es.eigenvalues()(i) > eigenvalue_threshold) ++r;
  return r;
}

// -------------------------------------------------------------------- Povm

Povm::Povm(int dim, std::vector<CMat> effects) : dim_(dim), effects_(std::move(effects)) {
  require(dim_ > 0, "POVM dimension must be positive");
  require(!effects_.empty(), "POVM needs at least one effect");
  CMat sum = CMat::Zero(dim_, dim_);
  for (const CMat& e : effects_) {
    require(e.rows() == dim_ && e.cols() == dim_, "effect dimension mismatch");
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(e), Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -tol().povm_psd,
            "effect is not positive semidefinite");
    sum += e;
  }
  require((sum - CMat::Identity(dim_, dim_)).cwiseAbs().maxCoeff() <= tol().povm_completeness,
          "effects do not sum to the identity");
}

// ---------------------------------------------------------- BipartiteState

BipartiteState::BipartiteState(int dim_a, int dim_b, CMat amplitudes)
    : dim_a_(dim_a), dim_b_(dim_b), amps_(std::move(amplitudes)) {
  require(dim_a_ > 0 && dim_b_ > 0, "bipartite dimensions must be positive");
  require(amps_.rows() == dim_a_ && amps_.cols() == dim_b_,
          "amplitude table shape mismatch");
  require(std::abs(amps_.norm() - 1.0) <= tol().unit_norm,
          "bipartite state is not normalized");
}

BipartiteState BipartiteState::product(const PureState& a, const PureState& b) {
  CMat m = a.amplitudes() * b.amplitudes().transpose();
  return BipartiteState(a.dim(), b.dim(), std::move(m));
}

int SchmidtData::rank(double threshold) const {
  return static_cast<int>(std::count_if(coefficients.begin(), coefficients.end(),
                                        [&](double c) { return c > threshold; }));
}

// -------------------------------------------------------------- operations

DensityOperator bloch_to_density(const BlochVector& b) {
  const Vec3& r = b.r();
  CMat m(2, 2);
  m << Cplx(1.0 + r.z(), 0.0), Cplx(r.x(), -r.y()),
       Cplx(r.x(), r.y()), Cplx(1.0 - r.z(), 0.0);
  return DensityOperator(0.5 * m);
}

BlochVector density_to_bloch(const DensityOperator& rho) {
  require(rho.dim() == 2, "Bloch vector only defined for qubits");
  const CMat& m = rho.matrix();
  return BlochVector(2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(),
                     (m(0, 0) - m(1, 1)).real());
}

double born_probability(const DensityOperator& rho, const CMat& effect) {
  require(effect.rows() == rho.dim() && effect.cols() == rho.dim(),
          "effect dimension does not match the state");
  const Cplx value = (effect * rho.matrix()).trace();
  return std::clamp(value.real(), 0.0, 1.0);
}

SchmidtData schmidt(const BipartiteState& psi) {
  Eigen::JacobiSVD<CMat> svd(psi.amplitudes(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtData out;
  const int n = static_cast<int>(svd.singularValues().size());
  out.coefficients.reserve(n);
  out.basis_a.reserve(n);
  out.basis_b.reserve(n);
  for (int j = 0; j < n; ++j) {
    out.coefficients.push_back(svd.singularValues()(j));
    CVec a = svd.matrixU().col(j);
    CVec b = svd.matrixV().col(j).conjugate();
    a /= a.norm();
    b /= b.norm();
    out.basis_a.emplace_back(std::move(a));
    out.basis_b.emplace_back(std::move(b));
  }
  return out;
}

DensityOperator partial_trace_A(const BipartiteState& psi) {
  const CMat& m = psi.amplitudes();
  return DensityOperator(hermitize(m.transpose() * m.conjugate()));
}

std::vector<CMat> conditional_states_A(const BipartiteState& psi,
                                       const std::vector<CMat>& effects) {
  const CMat& m = psi.amplitudes();
  std::vector<CMat> out;
  out.reserve(effects.size());
  for (const CMat& e : effects) {
    if (e.rows() != psi.dim_a() || e.cols() != psi.dim_a())
      throw DomainError("effect dimension does not match Alice's system");
    out.push_back(m.transpose() * e.transpose() * m.conjugate());
  }
  return out;
}

double fidelity_pure(const PureState& psi, const CMat& rho) {
  const CVec& v = psi.amplitudes();
  return std::max(0.0, (v.adjoint() * rho * v)(0, 0).real());
}

CMat complete_isometry(const Eigen::RowVectorXcd& first_row, int rows) {
  const int dim = static_cast<int>(first_row.size());
  if (rows < dim) throw DomainError("isometry needs at least `dim` rows");
  if (std::abs(first_row.norm() - 1.0) > 1e-9)
    throw DomainError("first row of a row-isometry completion must be unit");

  // Orthonormal columns v_1 = first_row^dagger, v_2..v_dim by Gram-Schmidt
  // over the standard basis.
  CMat v(dim, dim);
  v.col(0) = first_row.adjoint();
  int filled = 1;
  for (int e = 0; e < dim && filled < dim; ++e) {
    CVec w = CVec::Zero(dim);
    w(e) = 1.0;
    for (int c = 0; c < filled; ++c) w -= v.col(c) * (v.col(c).dot(w));
    const double n = w.norm();
    if (n > 1e-7) {
      v.col(filled++) = w / n;
    }
  }
  if (filled != dim) throw DomainError("Gram-Schmidt completion failed");

  CMat m = CMat::Zero(rows, dim);
  m.row(0) = first_row;
  if (dim == 1) {
    // nothing left to distribute; extra rows stay zero
    return m;
  }
  const CMat w_block = v.rightCols(dim - 1);  // dim x (dim-1)
  // Spread the orthogonal complement over the remaining rows with a DFT
  // frame so that no row degenerates to zero when rows > dim.
  const int extra_rows = rows - 1;
  const int extra_cols = dim - 1;
  CMat f(extra_rows, extra_cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(extra_rows));
  for (int r = 0; r < extra_rows; ++r)
    for (int c = 0; c < extra_cols; ++c)
      f(r, c) = scale * std::exp(Cplx(0.0, 2.0 * std::numbers::pi * r * c / extra_rows));
  m.bottomRows(extra_rows) = f * w_block.adjoint();
  return m;
}

double operator_distance(const CMat& x, const CMat& y) { return (x - y).norm(); }

CMat hermitize(const CMat& x) { return 0.5 * (x + x.adjoint()); }

}  // namespace onticlab
