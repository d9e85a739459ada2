#pragma once

#include <optional>
#include <string>
#include <vector>

#include "onticlab/qstate.hpp"
#include "onticlab/rational.hpp"

namespace onticlab {

/// One member of a convex pure-state decomposition. The exact fields are
/// populated in rational mode (axis-aligned target, 30-degree phase grid)
/// and carry the same data without rounding.
struct WeightedMember {
  double weight = 0.0;
  PureState state;
  std::optional<Rational> exact_weight;
  std::optional<ExactBloch> exact_bloch;

  WeightedMember(double w, PureState s) : weight(w), state(std::move(s)) {}
  WeightedMember(Rational w, PureState s, ExactBloch b)
      : weight(to_double(w)),
        state(std::move(s)),
        exact_weight(std::move(w)),
        exact_bloch(std::move(b)) {}
};

/// A preparation context: a weighted list of pure states realizing a target
/// density operator.
struct Decomposition {
  DensityOperator target;
  std::vector<WeightedMember> members;
  std::string label;
  /// Exact Bloch vector of the target, present in rational mode.
  std::optional<ExactBloch> exact_target_bloch;

  bool is_exact() const;
};

struct Violation {
  std::string name;
  double magnitude;
  std::string detail;
};

/// Empty iff the weights sum to one and the members mix back to the target
/// (exact checks included when the decomposition carries exact data).
std::vector<Violation> validate(const Decomposition& d);

/// Directions of three antipodal qubit pairs lying in the plane orthogonal
/// to `n_hat`; consecutive pair lines are 60 degrees apart and the three
/// primary directions sum to zero. `phase_radians` rotates the whole frame
/// about n_hat.
struct EquatorialTriple {
  // order: a, a_perp, b, b_perp, c, c_perp
  std::array<Vec3, 6> directions;
  std::optional<std::array<ExactBloch, 6>> exact;  // when phase is on the 30-degree grid and n_hat = +z
};

EquatorialTriple equatorial_triple(const Vec3& n_hat, double phase_radians);

/// The six decompositions of the mixed qubit with Bloch vector q * n_hat:
///   (1) eigen pair with weights (1 -+ q)/2,
///   (2)-(4) one antipodal equatorial pair at (1-q)/2 each plus q on the
///           Bloch-direction state,
///   (5)-(6) an equatorial trine at (1-q)/3 each plus q on the same state.
/// Exact weights/Bloch data are attached when `q_exact` is given, n_hat is
/// +z and the phase sits on the 30-degree grid.
std::vector<Decomposition> six_decompositions(double q, const Vec3& n_hat,
                                              double phase_radians = 0.0,
                                              const std::optional<Rational>& q_exact = std::nullopt);

/// Convenience overload: exact q, n_hat = +z.
std::vector<Decomposition> six_decompositions(const Rational& q, double phase_radians = 0.0);

/// Decomposition of `rho` with `member_count` members whose first member is
/// `psi1` (which must lie in the range of rho) at the maximal weight
/// 1 / <psi1| rho^+ |psi1>. Built by purifying rho and steering the
/// purification with a completed rank-one measurement.
Decomposition range_decomposition(const DensityOperator& rho, const PureState& psi1,
                                  int member_count);

}  // namespace onticlab
