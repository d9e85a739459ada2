#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

#include "onticlab/onticmodel.hpp"
#include "onticlab/qstate.hpp"

using namespace onticlab;

namespace {

CMat random_complex(int rows, int cols, std::uint64_t seed) {
  DirectionSampler s(seed);
  CMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m(r, c) = Cplx(2.0 * s.next_unit_interval() - 1.0, 2.0 * s.next_unit_interval() - 1.0);
  return m;
}

CMat random_unitary(int n, std::uint64_t seed) {
  Eigen::HouseholderQR<CMat> qr(random_complex(n, n, seed));
  CMat q = qr.householderQ();
  return q;
}

BipartiteState random_bipartite(int da, int db, std::uint64_t seed) {
  CMat m = random_complex(da, db, seed);
  m /= m.norm();
  return BipartiteState(da, db, std::move(m));
}

/// Independent singular-value oracle: sqrt of the eigenvalues of M^H M.
std::vector<double> singular_values_oracle(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (int i = static_cast<int>(es.eigenvalues().size()) - 1; i >= 0; --i)
    out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
  return out;
}

}  // namespace

TEST_CASE("bloch vectors map to density operators and back") {
  CHECK(operator_distance(bloch_to_density(BlochVector(0, 0, 0)).matrix(),
                          CMat::Identity(2, 2) / 2.0) < 1e-15);

  const CMat pole = bloch_to_density(BlochVector(0, 0, 1)).matrix();
  CHECK(operator_distance(pole, PureState::basis_state(2, 0).projector()) < 1e-15);

  const CMat mixed = bloch_to_density(BlochVector(0, 0, 0.5)).matrix();
  CHECK(std::abs(mixed(0, 0).real() - 0.75) < 1e-15);
  CHECK(std::abs(mixed(1, 1).real() - 0.25) < 1e-15);

  CHECK_THROWS_AS(BlochVector(0.8, 0.8, 0.8), DomainError);

  DirectionSampler sampler(11);
  for (int i = 0; i < 50; ++i) {
    const Vec3 r = sampler.next() * sampler.next_unit_interval();
    const BlochVector back = density_to_bloch(bloch_to_density(BlochVector(r)));
    CHECK((back.r() - r).norm() < 1e-12);
  }
}

TEST_CASE("qubit state from a Bloch direction round trips") {
  DirectionSampler sampler(3);
  for (int i = 0; i < 40; ++i) {
    const Vec3 d = sampler.next();
    const PureState s = PureState::qubit_from_bloch(d);
    CHECK((s.bloch() - d).norm() < 1e-12);
  }
}

TEST_CASE("born probabilities for basic effects") {
  const PureState zero = PureState::basis_state(2, 0);
  const PureState one = PureState::basis_state(2, 1);
  const PureState plus = PureState::qubit_from_bloch(Vec3(1, 0, 0));

  CHECK(born_probability(DensityOperator::pure(zero), zero.projector()) == doctest::Approx(1.0));
  CHECK(born_probability(DensityOperator::pure(zero), one.projector()) == doctest::Approx(0.0));
  CHECK(born_probability(DensityOperator::maximally_mixed(2), plus.projector()) ==
        doctest::Approx(0.5));

  CHECK_THROWS_AS(born_probability(DensityOperator::maximally_mixed(2), CMat::Identity(3, 3)),
                  DomainError);
}

TEST_CASE("projector overlap is symmetric and matches born probabilities") {
  DirectionSampler sampler(17);
  for (int i = 0; i < 30; ++i) {
    const PureState a = PureState::qubit_from_bloch(sampler.next());
    const PureState b = PureState::qubit_from_bloch(sampler.next());
    const double direct = overlap_sq(a, b);
    CHECK(direct == doctest::Approx(overlap_sq(b, a)).epsilon(1e-12));
    CHECK(direct ==
          doctest::Approx(born_probability(DensityOperator::pure(b), a.projector()))
              .epsilon(1e-12));
  }
}

TEST_CASE("schmidt decomposition of simple states") {
  const BipartiteState product =
      BipartiteState::product(PureState::basis_state(2, 0), PureState::basis_state(2, 1));
  const SchmidtData sp = schmidt(product);
  CHECK(sp.rank() == 1);
  CHECK(sp.coefficients[0] == doctest::Approx(1.0));

  CMat bell(2, 2);
  bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  const SchmidtData sb = schmidt(BipartiteState(2, 2, bell));
  CHECK(sb.rank() == 2);
  CHECK(sb.coefficients[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(sb.coefficients[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("schmidt decomposition: equal-weight rank-3 state against the SVD oracle") {
  const CMat u = random_unitary(3, 5);
  const CMat v = random_unitary(3, 6);
  CMat amps = u * (CMat::Identity(3, 3) / std::sqrt(3.0)) * v.adjoint();
  const BipartiteState psi(3, 3, amps);

  const SchmidtData sd = schmidt(psi);
  CHECK(sd.rank() == 3);
  const auto oracle = singular_values_oracle(amps);
  REQUIRE(oracle.size() == sd.coefficients.size());
  double csum = 0.0;
  for (std::size_t j = 0; j < oracle.size(); ++j) {
    CHECK(sd.coefficients[j] == doctest::Approx(oracle[j]).epsilon(1e-10));
    csum += sd.coefficients[j] * sd.coefficients[j];
  }
  CHECK(csum == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("schmidt reconstruction matches the state") {
  for (std::uint64_t seed : {100, 101, 102}) {
    const BipartiteState psi = random_bipartite(3, 4, seed);
    const SchmidtData sd = schmidt(psi);
    CMat rebuilt = CMat::Zero(3, 4);
    for (std::size_t j = 0; j < sd.coefficients.size(); ++j)
      rebuilt += sd.coefficients[j] * sd.basis_a[j].amplitudes() *
                 sd.basis_b[j].amplitudes().transpose();
    CHECK((rebuilt - psi.amplitudes()).norm() < 1e-10);
    for (std::size_t i = 0; i < sd.basis_b.size(); ++i)
      for (std::size_t j = i + 1; j < sd.basis_b.size(); ++j)
        CHECK(std::abs(inner(sd.basis_b[i], sd.basis_b[j])) < 1e-10);
  }
}

TEST_CASE("partial trace over Alice") {
  const BipartiteState product =
      BipartiteState::product(PureState::basis_state(2, 0), PureState::basis_state(2, 1));
  CHECK(operator_distance(partial_trace_A(product).matrix(),
                          PureState::basis_state(2, 1).projector()) < 1e-12);

  CMat bell(2, 2);
  bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  CHECK(operator_distance(partial_trace_A(BipartiteState(2, 2, bell)).matrix(),
                          CMat::Identity(2, 2) / 2.0) < 1e-12);

  CMat weighted(2, 2);
  weighted << std::sqrt(0.7), 0, 0, std::sqrt(0.3);
  const DensityOperator rho = partial_trace_A(BipartiteState(2, 2, weighted));
  // oracle: explicit contraction rho(k,l) = sum_i M(i,k) conj(M(i,l))
  CMat expected = CMat::Zero(2, 2);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i)
        expected(k, l) += weighted(i, k) * std::conj(weighted(i, l));
  CHECK(operator_distance(rho.matrix(), expected) < 1e-12);
  CHECK(std::abs(rho.matrix()(0, 0).real() - 0.7) < 1e-12);
}

TEST_CASE("partial trace eigenvalues are squared Schmidt coefficients") {
  for (std::uint64_t seed : {7, 8, 9, 10}) {
    const BipartiteState psi = random_bipartite(3, 3, seed);
    const SchmidtData sd = schmidt(psi);
    const DensityOperator rho = partial_trace_A(psi);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
    CHECK(rho.rank() == sd.rank());
    auto spectrum = rho.spectral();
    for (std::size_t j = 0; j < sd.coefficients.size(); ++j)
      CHECK(spectrum[j].first ==
            doctest::Approx(sd.coefficients[j] * sd.coefficients[j]).epsilon(1e-9));
  }
}

TEST_CASE("conditional states sum to the reduced state") {
  const BipartiteState psi = random_bipartite(3, 2, 40);
  std::vector<CMat> effects;
  const CMat u = random_unitary(3, 41);
  for (int k = 0; k < 3; ++k) effects.push_back(u.col(k) * u.col(k).adjoint());
  const auto conds = conditional_states_A(psi, effects);
  CMat total = CMat::Zero(2, 2);
  for (const CMat& c : conds) total += c;
  CHECK(operator_distance(total, partial_trace_A(psi).matrix()) < 1e-12);
}

TEST_CASE("isometry completion keeps the first row and orthonormal columns") {
  DirectionSampler sampler(55);
  for (int dim : {1, 2, 3, 4}) {
    for (int extra : {0, 1, 3}) {
      CVec row(dim);
      for (int i = 0; i < dim; ++i)
        row(i) = Cplx(2.0 * sampler.next_unit_interval() - 1.0,
                      2.0 * sampler.next_unit_interval() - 1.0);
      row /= row.norm();
      const CMat m = complete_isometry(row.transpose(), dim + extra);
      CHECK((m.row(0).transpose() - row).norm() < 1e-12);
      CHECK((m.adjoint() * m - CMat::Identity(dim, dim)).norm() < 1e-12);
    }
  }
  CHECK_THROWS_AS(complete_isometry(Eigen::RowVectorXcd::Ones(3) / std::sqrt(3.0), 2),
                  DomainError);
}

TEST_CASE("type invariants are enforced") {
  CHECK_THROWS_AS(PureState(CVec::Ones(2)), DomainError);  // norm sqrt(2)

  CMat bad = CMat::Identity(2, 2);
  bad(0, 1) = Cplx(0.3, 0.0);
  CHECK_THROWS_AS(DensityOperator(0.5 * bad), DomainError);  // not Hermitian

  CMat negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS((DensityOperator(negative)), DomainError);  // negative eigenvalue

  CHECK_THROWS_AS(DensityOperator(CMat::Identity(2, 2)), DomainError);  // trace 2

  std::vector<CMat> effects{CMat::Identity(2, 2) * 0.5, CMat::Identity(2, 2) * 0.4};
  CHECK_THROWS_AS(Povm(2, effects), DomainError);  // incomplete

  CHECK_THROWS_AS(BipartiteState(2, 2, CMat::Ones(2, 2)), DomainError);  // norm 2
}
