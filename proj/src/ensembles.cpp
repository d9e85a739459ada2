#include "onticlab/ensembles.hpp"

#include <cmath>
#include <numbers>

namespace onticlab {

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 unit_or_throw(const Vec3& v, const char* what) {
  const double n = v.norm();
  if (std::abs(n - 1.0) > 1e-9) throw DomainError(std::string(what) + " must be a unit vector");
  return v / n;
}

/// Right-handed frame (u, v, n) with u seeded from the coordinate axis
/// least aligned with n.
std::pair<Vec3, Vec3> equatorial_frame(const Vec3& n) {
  int smallest = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(n(i)) < std::abs(n(smallest))) smallest = i;
  Vec3 seed = Vec3::Zero();
  seed(smallest) = 1.0;
  Vec3 u = seed - n * n.dot(seed);
  u /= u.norm();
  Vec3 v = n.cross(u);
  return {u, v};
}

/// Phase expressed as an exact multiple of 30 degrees, if it is one.
std::optional<long> phase_grid_steps(double phase_radians) {
  const double steps = phase_radians / (kPi / 6.0);
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-12) return std::nullopt;
  return static_cast<long>(rounded);
}

bool is_plus_z(const Vec3& n) { return n.x() == 0.0 && n.y() == 0.0 && n.z() == 1.0; }

ExactBloch exact_equatorial(long degrees) {
  return ExactBloch{*exact_cos_deg(degrees), *exact_sin_deg(degrees), Root3{}};
}

}  // namespace

bool Decomposition::is_exact() const {
  if (!exact_target_bloch) return false;
  for (const auto& m : members)
    if (!m.exact_weight || !m.exact_bloch) return false;
  return true;
}

std::vector<Violation> validate(const Decomposition& d) {
  std::vector<Violation> out;
  const int dim = d.target.dim();

  double weight_sum = 0.0;
  CMat mix = CMat::Zero(dim, dim);
  for (std::size_t i = 0; i < d.members.size(); ++i) {
    const WeightedMember& m = d.members[i];
    if (m.state.dim() != dim) {
      out.push_back({"member-dimension", std::abs(double(m.state.dim() - dim)),
                     "member " + std::to_string(i) + " has dimension " +
                         std::to_string(m.state.dim())});
      return out;
    }
    if (m.weight < 0.0)
      out.push_back({"negative-weight", -m.weight,
                     "member " + std::to_string(i) + " has weight " + std::to_string(m.weight)});
    weight_sum += m.weight;
    mix += m.weight * m.state.projector();
  }

  if (std::abs(weight_sum - 1.0) > tol().weight_sum)
    out.push_back({"weight-sum", std::abs(weight_sum - 1.0),
                   "weights sum to " + std::to_string(weight_sum)});

  const double dist = operator_distance(mix, d.target.matrix());
  if (dist > tol().mixture_reconstruction)
    out.push_back({"reconstruction", dist,
                   "members mix to an operator at Frobenius distance " + std::to_string(dist) +
                       " from the target"});

  if (d.is_exact()) {
    Rational wsum{0};
    ExactBloch moment{Root3{}, Root3{}, Root3{}};
    for (const auto& m : d.members) {
      wsum += *m.exact_weight;
      moment = add(moment, scale(*m.exact_bloch, *m.exact_weight));
      const Root3 norm2 = dot(*m.exact_bloch, *m.exact_bloch);
      if (!(norm2 == Root3::rational(Rational(1))))
        out.push_back({"exact-member-norm", std::abs(norm2.value() - 1.0),
                       "exact Bloch vector is not unit"});
    }
    if (wsum != 1)
      out.push_back({"exact-weight-sum", std::abs(to_double(wsum) - 1.0),
                     "exact weights sum to " + format_rational(wsum)});
    for (int c = 0; c < 3; ++c)
      if (!(moment[c] == (*d.exact_target_bloch)[c])) {
        out.push_back({"exact-reconstruction",
                       std::abs(moment[c].value() - (*d.exact_target_bloch)[c].value()),
                       "exact Bloch moment differs from the target in component " +
                           std::to_string(c)});
        break;
      }
  }

  return out;
}

EquatorialTriple equatorial_triple(const Vec3& n_hat, double phase_radians) {
  const Vec3 n = unit_or_throw(n_hat, "n_hat");
  auto [u, v] = equatorial_frame(n);

  EquatorialTriple out;
  // Primary directions 120 degrees apart (so they sum to zero); the pair
  // lines then sit 60 degrees apart.
  for (int k = 0; k < 3; ++k) {
    const double angle = phase_radians + 2.0 * kPi * k / 3.0;
    const Vec3 dir = std::cos(angle) * u + std::sin(angle) * v;
    out.directions[2 * k] = dir;
    out.directions[2 * k + 1] = -dir;
  }

  if (is_plus_z(n)) {
    if (auto steps = phase_grid_steps(phase_radians)) {
      std::array<ExactBloch, 6> exact;
      for (int k = 0; k < 3; ++k) {
        const long deg = *steps * 30 + 120 * k;
        exact[2 * k] = exact_equatorial(deg);
        exact[2 * k + 1] = exact_equatorial(deg + 180);
      }
      out.exact = exact;
    }
  }
  return out;
}

namespace {

WeightedMember make_member(double w, const Vec3& dir,
                           const std::optional<Rational>& w_exact,
                           const std::optional<ExactBloch>& bloch_exact) {
  PureState s = PureState::qubit_from_bloch(dir);
  if (w_exact && bloch_exact) return WeightedMember(*w_exact, std::move(s), *bloch_exact);
  return WeightedMember(w, std::move(s));
}

}  // namespace

std::vector<Decomposition> six_decompositions(double q, const Vec3& n_hat,
                                              double phase_radians,
                                              const std::optional<Rational>& q_exact) {
  if (q < 0.0 || q >= 1.0)
    throw DomainError("six decompositions need a mixed state: 0 <= q < 1, got q = " +
                      std::to_string(q));
  if (q_exact && (*q_exact < 0 || *q_exact >= 1))
    throw DomainError("six decompositions need a mixed state: 0 <= q < 1");
  const Vec3 n = unit_or_throw(n_hat, "n_hat");

  const EquatorialTriple triple = equatorial_triple(n, phase_radians);
  const bool exact = q_exact && triple.exact.has_value();

  const DensityOperator target = bloch_to_density(BlochVector(q * n));
  const std::optional<ExactBloch> target_bloch =
      exact ? std::optional<ExactBloch>(
                  ExactBloch{Root3{}, Root3{}, Root3::rational(*q_exact)})
            : std::nullopt;
  const std::optional<ExactBloch> axis_plus =
      exact ? std::optional<ExactBloch>(ExactBloch{Root3{}, Root3{}, Root3::rational(1)})
            : std::nullopt;
  const std::optional<ExactBloch> axis_minus =
      exact ? std::optional<ExactBloch>(ExactBloch{Root3{}, Root3{}, Root3::rational(-1)})
            : std::nullopt;

  auto opt_exact_dir = [&](int idx) -> std::optional<ExactBloch> {
    if (!exact) return std::nullopt;
    return (*triple.exact)[idx];
  };
  auto opt_w = [&](const Rational& w) -> std::optional<Rational> {
    if (!exact) return std::nullopt;
    return w;
  };

  const double half_minus = (1.0 - q) / 2.0;
  const double half_plus = (1.0 + q) / 2.0;
  const double third = (1.0 - q) / 3.0;
  const Rational rq = q_exact ? *q_exact : Rational(0);
  const Rational r_half_minus = (1 - rq) / 2;
  const Rational r_half_plus = (1 + rq) / 2;
  const Rational r_third = (1 - rq) / 3;

  std::vector<Decomposition> out;
  out.reserve(6);

  {  // (1) eigen pair
    Decomposition d{target, {}, "eigen-pair", target_bloch};
    d.members.push_back(make_member(half_plus, n, opt_w(r_half_plus), axis_plus));
    d.members.push_back(make_member(half_minus, -n, opt_w(r_half_minus), axis_minus));
    out.push_back(std::move(d));
  }

  const char* pair_labels[3] = {"equator-pair-a", "equator-pair-b", "equator-pair-c"};
  for (int k = 0; k < 3; ++k) {  // (2)-(4)
    Decomposition d{target, {}, pair_labels[k], target_bloch};
    d.members.push_back(make_member(half_minus, triple.directions[2 * k],
                                    opt_w(r_half_minus), opt_exact_dir(2 * k)));
    d.members.push_back(make_member(half_minus, triple.directions[2 * k + 1],
                                    opt_w(r_half_minus), opt_exact_dir(2 * k + 1)));
    d.members.push_back(make_member(q, n, opt_w(rq), axis_plus));
    out.push_back(std::move(d));
  }

  {  // (5) trine
    Decomposition d{target, {}, "equator-trine", target_bloch};
    for (int k = 0; k < 3; ++k)
      d.members.push_back(make_member(third, triple.directions[2 * k], opt_w(r_third),
                                      opt_exact_dir(2 * k)));
    d.members.push_back(make_member(q, n, opt_w(rq), axis_plus));
    out.push_back(std::move(d));
  }
  {  // (6) mirrored trine
    Decomposition d{target, {}, "equator-trine-mirror", target_bloch};
    for (int k = 0; k < 3; ++k)
      d.members.push_back(make_member(third, triple.directions[2 * k + 1], opt_w(r_third),
                                      opt_exact_dir(2 * k + 1)));
    d.members.push_back(make_member(q, n, opt_w(rq), axis_plus));
    out.push_back(std::move(d));
  }

  return out;
}

std::vector<Decomposition> six_decompositions(const Rational& q, double phase_radians) {
  return six_decompositions(to_double(q), Vec3(0, 0, 1), phase_radians, q);
}

Decomposition range_decomposition(const DensityOperator& rho, const PureState& psi1,
                                  int member_count) {
  if (psi1.dim() != rho.dim()) throw DomainError("state dimension does not match the operator");

  auto spectrum = rho.spectral();
  std::vector<std::pair<double, PureState>> support;
  for (auto& [p, phi] : spectrum)
    if (p > tol().eigenvalue_rank) support.emplace_back(p, phi);
  const int rank = static_cast<int>(support.size());
  if (member_count < rank)
    throw DomainError("a decomposition needs at least rank(rho) = " + std::to_string(rank) +
                      " members, got " + std::to_string(member_count));

  // range membership: psi1 must be reproduced by projection onto the support
  CVec projected = CVec::Zero(rho.dim());
  for (const auto& [p, phi] : support)
    projected += phi.amplitudes() * inner(phi, psi1);
  const double residual = (psi1.amplitudes() - projected).norm();
  if (residual > tol().range_membership)
    throw RangeError("state lies outside the range of the operator (residual " +
                     std::to_string(residual) + ")");

  // maximal weight for psi1: 1 / <psi1| rho^+ |psi1>
  double inv_expectation = 0.0;
  for (const auto& [p, phi] : support)
    inv_expectation += std::norm(inner(phi, psi1)) / p;
  const double q1 = 1.0 / inv_expectation;

  Eigen::RowVectorXcd first_row(rank);
  for (int j = 0; j < rank; ++j)
    first_row(j) = std::sqrt(q1) * inner(support[j].second, psi1) / std::sqrt(support[j].first);
  const CMat m = complete_isometry(first_row, member_count);

  // Purify rho on a rank-dimensional ancilla and measure the completed
  // rank-one family on it.
  CMat purification_amps = CMat::Zero(rank, rho.dim());
  for (int j = 0; j < rank; ++j)
    purification_amps.row(j) = std::sqrt(support[j].first) *
                               support[j].second.amplitudes().transpose();
  const BipartiteState purification(rank, rho.dim(), std::move(purification_amps));

  std::vector<CMat> effects;
  effects.reserve(member_count);
  for (int k = 0; k < member_count; ++k) {
    const CVec u = m.row(k).conjugate().transpose();
    effects.push_back(u * u.adjoint());
  }
  const std::vector<CMat> conditionals = conditional_states_A(purification, effects);

  Decomposition out{rho, {}, "range-completion", std::nullopt};
  for (int k = 0; k < member_count; ++k) {
    CVec v = CVec::Zero(rho.dim());
    for (int j = 0; j < rank; ++j)
      v += m(k, j) * std::sqrt(support[j].first) * support[j].second.amplitudes();
    const double weight = v.squaredNorm();
    if (weight <= 1e-14) {
      // degenerate completion row (only possible when rank == 1); keep a
      // harmless zero-weight member
      out.members.emplace_back(0.0, support[0].second);
      continue;
    }
    PureState state(v / v.norm());
    // the steered conditional must agree with the directly collected vector
    const double agreement = operator_distance(conditionals[k], weight * state.projector());
    if (agreement > 1e-9)
      throw StateError("steered conditional diverged from the collected member");
    out.members.emplace_back(weight, std::move(state));
  }
  return out;
}

}  // namespace onticlab
