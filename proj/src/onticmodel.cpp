#include "onticlab/onticmodel.hpp"

#include <cmath>
#include <numbers>

namespace onticlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

bool same_tag(const Vec3& a, const Vec3& b) {
  return (a - b).norm() <= tol().state_identity;
}

/// Lattice density of the maximally overlapping construction for
/// preparation direction s, renormalized to unit quadrature mass.
std::vector<double> hemisphere_density(const OnticSpace& space, const Vec3& s) {
  std::vector<double> d(space.size());
  double mass = 0.0;
  for (std::size_t p = 0; p < space.size(); ++p) {
    const double c = s.dot(space.points[p]);
    d[p] = c > 0.0 ? c / kPi : 0.0;
    mass += d[p] * space.weights[p];
  }
  if (mass <= 0.0) throw DomainError("degenerate quadrature: preparation has no mass");
  for (auto& v : d) v /= mass;
  return d;
}

}  // namespace

// --------------------------------------------------------------- OnticSpace

OnticSpace OnticSpace::fibonacci_sphere(std::size_t n) {
  if (n == 0) throw DomainError("sphere quadrature needs at least one point");
  OnticSpace s;
  s.kind = Kind::FibonacciSphere;
  s.declared_total = kFourPi;
  s.points.reserve(n);
  s.weights.assign(n, kFourPi / static_cast<double>(n));
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden_angle * static_cast<double>(i);
    s.points.emplace_back(r * std::cos(a), r * std::sin(a), z);
  }
  return s;
}

OnticSpace OnticSpace::monte_carlo_sphere(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("sphere quadrature needs at least one point");
  OnticSpace s;
  s.kind = Kind::MonteCarloSphere;
  s.declared_total = kFourPi;
  s.seed = seed;
  s.points.reserve(n);
  s.weights.assign(n, kFourPi / static_cast<double>(n));
  DirectionSampler sampler(seed);
  for (std::size_t i = 0; i < n; ++i) s.points.push_back(sampler.next());
  return s;
}

OnticSpace OnticSpace::custom(std::vector<Vec3> points, std::vector<double> weights,
                              double declared_total) {
  if (points.size() != weights.size())
    throw DomainError("points and weights must have matching lengths");
  OnticSpace s;
  s.kind = Kind::Custom;
  s.points = std::move(points);
  s.weights = std::move(weights);
  s.declared_total = declared_total;
  return s;
}

// ----------------------------------------------------------- EpistemicState

double EpistemicState::total_mass() const {
  double m = 0.0;
  for (std::size_t p = 0; p < shared_density.size(); ++p)
    m += shared_density[p] * space->weights[p];
  for (const auto& layer : exclusive)
    for (std::size_t p = 0; p < layer.density.size(); ++p)
      m += layer.density[p] * space->weights[p];
  return m;
}

QubitBasis QubitBasis::from_direction(const Vec3& d) {
  const Vec3 u = d / d.norm();
  return {PureState::qubit_from_bloch(u), PureState::qubit_from_bloch(-u)};
}

// ----------------------------------------------------------------- models

OnticModel::OnticModel(std::shared_ptr<const OnticSpace> space) : space_(std::move(space)) {
  if (!space_ || !space_->is_sphere())
    throw DomainError("this model family needs a sphere quadrature");
  double total = 0.0;
  for (double w : space_->weights) {
    if (w < 0.0) throw DomainError("quadrature weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - space_->declared_total) > tol().sphere_measure)
    throw DomainError("quadrature weights do not sum to the declared measure");
}

double OnticModel::born_tolerance() const {
  return 10.0 * quadrature_noise_floor(space_->size());
}

EpistemicState OnticModel::prepare_mixture(const Decomposition& context) const {
  EpistemicState out{space_, std::vector<double>(space_->size(), 0.0), {}};
  for (const auto& member : context.members) {
    if (member.weight == 0.0) continue;
    const EpistemicState mu = prepare(member.state);
    for (std::size_t p = 0; p < out.shared_density.size(); ++p)
      out.shared_density[p] += member.weight * mu.shared_density[p];
    for (const auto& layer : mu.exclusive) {
      TaggedDensity* slot = nullptr;
      for (auto& existing : out.exclusive)
        if (same_tag(existing.tag, layer.tag)) slot = &existing;
      if (!slot) {
        out.exclusive.push_back({layer.tag, std::vector<double>(space_->size(), 0.0)});
        slot = &out.exclusive.back();
      }
      for (std::size_t p = 0; p < layer.density.size(); ++p)
        slot->density[p] += member.weight * layer.density[p];
    }
  }
  return out;
}

namespace {

class KsModel final : public OnticModel {
public:
  explicit KsModel(std::shared_ptr<const OnticSpace> space) : OnticModel(std::move(space)) {}

  std::string name() const override { return "ks"; }

  EpistemicState prepare(const PureState& psi) const override {
    if (psi.dim() != 2) throw DomainError("this model prepares qubit states only");
    return {space_, hemisphere_density(*space_, psi.bloch()), {}};
  }

  ResponseFunction respond(const QubitBasis& basis) const override {
    const Vec3 d = basis.first.bloch();
    ResponseFunction r{space_, {std::vector<double>(space_->size(), 0.0),
                                std::vector<double>(space_->size(), 0.0)}};
    for (std::size_t p = 0; p < space_->size(); ++p) {
      const double c = d.dot(space_->points[p]);
      if (c > 0.0) {
        r.outcomes[0][p] = 1.0;
      } else if (c < 0.0) {
        r.outcomes[1][p] = 1.0;
      } else {
        r.outcomes[0][p] = r.outcomes[1][p] = 0.5;  // equator points split
      }
    }
    return r;
  }
};

class DeficitModel final : public OnticModel {
public:
  DeficitModel(std::shared_ptr<const OnticSpace> space, double epsilon)
      : OnticModel(std::move(space)), epsilon_(epsilon), ks_(space_) {
    if (epsilon_ < 0.0 || epsilon_ > 1.0)
      throw DomainError("epsilon must lie in [0, 1], got " + std::to_string(epsilon_));
  }

  std::string name() const override { return "deficit"; }

  EpistemicState prepare(const PureState& psi) const override {
    if (psi.dim() != 2) throw DomainError("this model prepares qubit states only");
    const Vec3 s = psi.bloch();
    std::vector<double> base = hemisphere_density(*space_, s);
    EpistemicState out{space_, base, {}};
    if (epsilon_ > 0.0) {
      // weight epsilon moves onto a copy of the sphere that only this
      // preparation occupies; the response does not distinguish layers, so
      // outcome statistics are preserved while support overlap shrinks
      std::vector<double> priv = base;
      for (auto& v : priv) v *= epsilon_;
      out.exclusive.push_back({s, std::move(priv)});
    }
    for (auto& v : out.shared_density) v *= (1.0 - epsilon_);
    return out;
  }

  ResponseFunction respond(const QubitBasis& basis) const override {
    return ks_.respond(basis);
  }

  double epsilon() const { return epsilon_; }

private:
  double epsilon_;
  KsModel ks_;
};

}  // namespace

std::unique_ptr<OnticModel> ks_model(std::shared_ptr<const OnticSpace> space) {
  return std::make_unique<KsModel>(std::move(space));
}

std::unique_ptr<OnticModel> deficit_model(std::shared_ptr<const OnticSpace> space,
                                          double epsilon) {
  return std::make_unique<DeficitModel>(std::move(space), epsilon);
}

// ------------------------------------------------------------- operations

SupportSet support_of(const EpistemicState& mu) {
  SupportSet s{mu.space, std::vector<std::uint8_t>(mu.space->size(), 0), {}, 0.0};
  for (std::size_t p = 0; p < mu.shared_density.size(); ++p) {
    if (mu.shared_density[p] > tol().support_density) {
      s.shared_member[p] = 1;
      s.measure += mu.space->weights[p];
    }
  }
  for (const auto& layer : mu.exclusive) {
    TaggedFlags flags{layer.tag, std::vector<std::uint8_t>(mu.space->size(), 0)};
    for (std::size_t p = 0; p < layer.density.size(); ++p) {
      if (layer.density[p] > tol().support_density) {
        flags.member[p] = 1;
        s.measure += mu.space->weights[p];
      }
    }
    s.exclusive.push_back(std::move(flags));
  }
  return s;
}

SupportSet support(const OnticModel& model, const PureState& psi) {
  return support_of(model.prepare(psi));
}

double mass_on(const EpistemicState& mu, const SupportSet& region) {
  double m = 0.0;
  for (std::size_t p = 0; p < mu.shared_density.size(); ++p)
    if (region.shared_member[p]) m += mu.shared_density[p] * mu.space->weights[p];
  for (const auto& layer : mu.exclusive) {
    for (const auto& flags : region.exclusive) {
      if (!same_tag(layer.tag, flags.tag)) continue;
      for (std::size_t p = 0; p < layer.density.size(); ++p)
        if (flags.member[p]) m += layer.density[p] * mu.space->weights[p];
    }
  }
  return m;
}

double ontic_overlap(const OnticModel& model, const PureState& phi, const PureState& psi) {
  return mass_on(model.prepare(psi), support(model, phi));
}

std::optional<double> epistemicity_degree(const OnticModel& model, const PureState& phi,
                                          const PureState& psi) {
  const double born = overlap_sq(phi, psi);
  if (born < 1e-9) return std::nullopt;
  const double f = ontic_overlap(model, phi, psi) / born;
  return std::clamp(f, 0.0, 1.0);
}

OmegaSet find_omega(const OnticModel& model, const PureState& phi, const PureState& psi,
                    const QubitBasis& basis) {
  int outcome;
  if (overlap_sq(phi, basis.first) > 1.0 - 1e-9) {
    outcome = 0;
  } else if (overlap_sq(phi, basis.second) > 1.0 - 1e-9) {
    outcome = 1;
  } else {
    throw DomainError("the outcome state is not a member of the measurement basis");
  }

  const EpistemicState mu_psi = model.prepare(psi);
  const SupportSet supp_phi = support(model, phi);
  const ResponseFunction resp = model.respond(basis);
  const auto& fire = resp.outcomes[outcome];
  const auto& space = *model.space();

  OmegaSet omega{{model.space(), std::vector<std::uint8_t>(space.size(), 0), {}, 0.0}, 0.0};
  for (std::size_t p = 0; p < space.size(); ++p) {
    if (mu_psi.shared_density[p] > tol().support_density && !supp_phi.shared_member[p] &&
        fire[p] > 0.0) {
      omega.set.shared_member[p] = 1;
      omega.set.measure += space.weights[p];
      omega.psi_mass += mu_psi.shared_density[p] * space.weights[p];
    }
  }
  for (const auto& layer : mu_psi.exclusive) {
    const std::vector<std::uint8_t>* phi_layer = nullptr;
    for (const auto& flags : supp_phi.exclusive)
      if (same_tag(flags.tag, layer.tag)) phi_layer = &flags.member;
    TaggedFlags flags{layer.tag, std::vector<std::uint8_t>(space.size(), 0)};
    for (std::size_t p = 0; p < space.size(); ++p) {
      if (layer.density[p] > tol().support_density &&
          !(phi_layer && (*phi_layer)[p]) && fire[p] > 0.0) {
        flags.member[p] = 1;
        omega.set.measure += space.weights[p];
        omega.psi_mass += layer.density[p] * space.weights[p];
      }
    }
    omega.set.exclusive.push_back(std::move(flags));
  }
  return omega;
}

double born_quadrature(const OnticModel& model, const PureState& phi, const PureState& psi) {
  const EpistemicState mu = model.prepare(psi);
  const QubitBasis basis = QubitBasis::from_direction(phi.bloch());
  const ResponseFunction resp = model.respond(basis);
  const auto& fire = resp.outcomes[0];
  const auto& space = *model.space();
  double value = 0.0;
  for (std::size_t p = 0; p < space.size(); ++p)
    value += fire[p] * mu.shared_density[p] * space.weights[p];
  for (const auto& layer : mu.exclusive)
    for (std::size_t p = 0; p < space.size(); ++p)
      value += fire[p] * layer.density[p] * space.weights[p];
  return value;
}

BornReport verify_born(const OnticModel& model, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("verification needs at least one trial");
  DirectionSampler sampler(seed);
  BornReport report{trials, seed, 0.0, Vec3::Zero(), Vec3::Zero()};
  for (std::size_t t = 0; t < trials; ++t) {
    const Vec3 a = sampler.next();
    const Vec3 b = sampler.next();
    const PureState phi = PureState::qubit_from_bloch(a);
    const PureState psi = PureState::qubit_from_bloch(b);
    const double quad = born_quadrature(model, phi, psi);
    const double exact = overlap_sq(phi, psi);
    const double dev = std::abs(quad - exact);
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_phi = a;
      report.worst_psi = b;
    }
  }
  return report;
}

// -------------------------------------------------------- DirectionSampler

std::uint64_t DirectionSampler::next_raw() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double DirectionSampler::next_unit_interval() {
  return static_cast<double>(next_raw() >> 11) * 0x1.0p-53;
}

Vec3 DirectionSampler::next() {
  const double z = 1.0 - 2.0 * next_unit_interval();
  const double a = 2.0 * kPi * next_unit_interval();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(r * std::cos(a), r * std::sin(a), z);
}

}  // namespace onticlab
