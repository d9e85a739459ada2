#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "onticlab/ensembles.hpp"
#include "onticlab/qstate.hpp"

namespace onticlab {

/// Discretized ontic state space. The production constructions are sphere
/// quadratures; Custom exists for tests of the precondition paths.
struct OnticSpace {
  enum class Kind { FibonacciSphere, MonteCarloSphere, Custom };

  Kind kind = Kind::Custom;
  std::vector<Vec3> points;
  std::vector<double> weights;
  double declared_total = 0.0;
  std::uint64_t seed = 0;  // Monte-Carlo draws only

  /// Deterministic golden-angle lattice, equal weights 4*pi/n.
  static OnticSpace fibonacci_sphere(std::size_t n);
  /// Seeded uniform draws, equal weights 4*pi/n.
  static OnticSpace monte_carlo_sphere(std::size_t n, std::uint64_t seed);
  static OnticSpace custom(std::vector<Vec3> points, std::vector<double> weights,
                           double declared_total);

  std::size_t size() const { return points.size(); }
  bool is_sphere() const { return kind != Kind::Custom; }
};

/// Density carried on a private copy of the point set, keyed by the Bloch
/// direction of the state that owns the copy.
struct TaggedDensity {
  Vec3 tag;
  std::vector<double> density;
};

/// Probability density over the ontic space: a component on the shared
/// layer plus any number of state-exclusive layers.
struct EpistemicState {
  std::shared_ptr<const OnticSpace> space;
  std::vector<double> shared_density;
  std::vector<TaggedDensity> exclusive;

  /// Quadrature integral over all layers (1 for a valid preparation).
  double total_mass() const;
};

/// Outcome probabilities per ontic point. The constructions here respond to
/// the sphere point only, so one row applies uniformly across layers.
struct ResponseFunction {
  std::shared_ptr<const OnticSpace> space;
  std::vector<std::vector<double>> outcomes;  // [outcome][point]
};

struct TaggedFlags {
  Vec3 tag;
  std::vector<std::uint8_t> member;
};

/// Measurable subset of the (layered) ontic space.
struct SupportSet {
  std::shared_ptr<const OnticSpace> space;
  std::vector<std::uint8_t> shared_member;
  std::vector<TaggedFlags> exclusive;
  double measure = 0.0;  // quadrature measure of the member points
};

/// Two-outcome projective qubit measurement.
struct QubitBasis {
  PureState first;
  PureState second;
  static QubitBasis from_direction(const Vec3& d);
};

/// An ontological model for a qubit: preparations map to epistemic states,
/// projective measurements to response functions, and the pairing
/// reproduces the Born rule up to the declared quadrature tolerance.
class OnticModel {
public:
  virtual ~OnticModel() = default;

  const std::shared_ptr<const OnticSpace>& space() const { return space_; }
  virtual std::string name() const = 0;
  /// Accuracy the model promises for reproducing outcome statistics.
  double born_tolerance() const;

  virtual EpistemicState prepare(const PureState& psi) const = 0;
  virtual ResponseFunction respond(const QubitBasis& basis) const = 0;

  /// Convex mixing of preparations: the epistemic state of a preparation
  /// context is the weighted sum of its members' epistemic states.
  EpistemicState prepare_mixture(const Decomposition& context) const;

protected:
  explicit OnticModel(std::shared_ptr<const OnticSpace> space);
  std::shared_ptr<const OnticSpace> space_;
};

/// Spin-1/2 model in which the ontic supports of nonorthogonal states
/// overlap as much as outcome statistics allow: density
/// (1/pi) max(s . lambda, 0) for preparation direction s, response
/// [d . lambda > 0] for outcome direction d. Densities are renormalized on
/// the discrete lattice so preparations integrate to exactly 1.
std::unique_ptr<OnticModel> ks_model(std::shared_ptr<const OnticSpace> space);

/// Fixture model with a tunable overlap deficit: weight (1 - epsilon) of
/// each preparation follows the maximally overlapping construction on the
/// shared layer and weight epsilon moves to a state-exclusive copy of the
/// sphere. Outcome statistics are unchanged; the ontic overlap of every
/// distinct pair scales by (1 - epsilon).
std::unique_ptr<OnticModel> deficit_model(std::shared_ptr<const OnticSpace> space,
                                          double epsilon);

// ------------------------------------------------------------- operations

/// Points where the preparation's density exceeds the support threshold.
SupportSet support_of(const EpistemicState& mu);
SupportSet support(const OnticModel& model, const PureState& psi);

/// Integral of mu over a region (layer tags matched).
double mass_on(const EpistemicState& mu, const SupportSet& region);

/// Integral of psi's density over the support of phi's preparation.
double ontic_overlap(const OnticModel& model, const PureState& phi, const PureState& psi);

/// Ratio of ontic overlap to |<phi|psi>|^2, clipped to [0, 1];
/// nullopt for orthogonal pairs (the ratio is 0/0).
std::optional<double> epistemicity_degree(const OnticModel& model, const PureState& phi,
                                          const PureState& psi);

struct OmegaSet {
  SupportSet set;      // outside phi's support, positive phi-response
  double psi_mass;     // integral of psi's density over the set
};

/// The overlap-deficit carrier: points that psi's preparation weights,
/// that lie outside phi's support, and where the phi outcome still fires.
/// `phi` must be a member of `basis`.
OmegaSet find_omega(const OnticModel& model, const PureState& phi, const PureState& psi,
                    const QubitBasis& basis);

/// Quadrature value of the phi-outcome probability under psi's preparation.
double born_quadrature(const OnticModel& model, const PureState& phi, const PureState& psi);

struct BornReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double max_deviation = 0.0;
  Vec3 worst_phi = Vec3::Zero();
  Vec3 worst_psi = Vec3::Zero();
};

/// Samples random state pairs and reports the worst |quadrature - analytic|
/// deviation of the outcome statistics.
BornReport verify_born(const OnticModel& model, std::size_t trials, std::uint64_t seed);

/// Deterministic uniform direction stream (used by verify_born and the
/// samplers in tests; hand-rolled so seeds mean the same thing everywhere).
class DirectionSampler {
public:
  explicit DirectionSampler(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}
  Vec3 next();
  double next_unit_interval();

private:
  std::uint64_t next_raw();
  std::uint64_t state_;
};

}  // namespace onticlab
