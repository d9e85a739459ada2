#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "onticlab/ensembles.hpp"
#include "onticlab/qstate.hpp"
#include "onticlab/rational.hpp"

namespace onticlab {

enum class Arithmetic { ExactRational, Float };

struct LabeledState {
  std::string label;
  PureState state;
  std::optional<ExactBloch> exact_bloch;
};

/// A preparation-equivalence feasibility instance: can one nonnegative
/// assignment per state, at a single ontic point, satisfy every
/// decomposition's mixing equation simultaneously while respecting the
/// complementarity of every orthogonal pair?
///
/// The unknown shared value assigned to the target is normalized to 1, so a
/// row reads  sum_j w[d][j] * m_j = 1.  This is lossless: the system is
/// homogeneous in the target value, and the point is only interesting where
/// that value is positive.
struct PncInstance {
  std::vector<LabeledState> states;
  std::vector<std::pair<int, int>> orthogonal_pairs;
  std::vector<Decomposition> decompositions;
  DensityOperator target;

  /// weights[d][s]: weight decomposition d puts on state s (0 if absent).
  std::vector<std::vector<double>> weights;
  std::optional<std::vector<std::vector<Rational>>> exact_weights;

  Arithmetic arithmetic = Arithmetic::Float;
  double float_epsilon = tol().float_pivot;

  /// Set by build_lemma1_instance: states are laid out as
  /// axis+, axis-, eq-a, eq-a', eq-b, eq-b', eq-c, eq-c' with the four
  /// canonical orthogonal pairs, enabling branch case-lettering.
  bool canonical_qubit_layout = false;
  double q = 0.0;
  std::optional<Rational> q_exact;
  double phase = 0.0;
};

enum class BranchStatus { Infeasible, Feasible };

/// How an infeasibility was derived.
///  - EmptyRow: a decomposition lost all of its members to the zero pattern,
///    forcing 0 = 1.
///  - CoefficientMismatch: two decompositions pin the same single state with
///    different weights, forcing it (and then the target value) to vanish.
///  - Pivot: general exact phase-1 elimination ending with a separating
///    row combination.
enum class InfeasibilityRoute { EmptyRow, CoefficientMismatch, Pivot };

struct PivotStep {
  int column;  // tableau column: state-index within free list
  int row;     // tableau row
};

struct BranchCertificate {
  std::vector<int> zeroed;       // state indices forced to zero
  std::vector<int> free_states;  // complement, in ascending order
  BranchStatus status = BranchStatus::Feasible;

  InfeasibilityRoute route = InfeasibilityRoute::Pivot;
  int empty_row = -1;                              // EmptyRow
  int mismatch_row_a = -1, mismatch_row_b = -1;    // CoefficientMismatch
  int mismatch_state = -1;

  /// Row multipliers y with  y . W_free <= 0  and  y . 1 > 0 (infeasible),
  /// or the per-state witness values (feasible). Rational values are
  /// present in exact mode; doubles always.
  std::vector<double> farkas;
  std::vector<double> witness;
  std::optional<std::vector<Rational>> farkas_exact;
  std::optional<std::vector<Rational>> witness_exact;

  std::vector<PivotStep> pivots;  // phase-1 pivot log (Pivot route)

  std::optional<char> case_letter;  // 'a'..'h' on the canonical layout
};

struct FeasibilityReport {
  enum class Verdict { Contextual, NotDecided };
  Verdict verdict = Verdict::NotDecided;
  std::vector<BranchCertificate> branches;

  bool contextual() const { return verdict == Verdict::Contextual; }
};

/// The eight-state, four-pair, six-decomposition instance for the mixed
/// qubit with Bloch length q (0 <= q < 1). Exact arithmetic when q is given
/// as a rational (axis +z; phase on the 30-degree grid keeps the state data
/// exact as well).
PncInstance build_lemma1_instance(const Rational& q, double phase_radians = 0.0);
PncInstance build_lemma1_instance(double q, double phase_radians = 0.0);

/// Decides every zero pattern consistent with the orthogonal pairs.
/// Verdict is Contextual iff every branch is infeasible.
///
/// The decision is pointwise: Contextual proves that no single-point
/// assignment exists, hence no noncontextual model; NotDecided means some
/// branch admits a pointwise witness and proves nothing about the existence
/// of a full noncontextual model.
FeasibilityReport check(const PncInstance& instance);

/// Instance restricted to a subset of its decompositions (states and pairs
/// are kept).
PncInstance restrict_decompositions(const PncInstance& instance,
                                    const std::vector<int>& decomposition_indices);

/// All minimal decomposition subsets that are still Contextual on their
/// own. Requires check(instance) to be Contextual (StateError otherwise).
std::vector<std::vector<int>> minimal_contradiction(const PncInstance& instance);

struct ReplayResult {
  bool ok = false;
  std::string detail;
};

/// Independently re-derives a certificate: substitutes witnesses into every
/// constraint, checks the Farkas inequalities, and re-runs the recorded
/// pivot chain. Exact in rational mode.
ReplayResult replay(const PncInstance& instance, const BranchCertificate& cert);

/// Human-readable derivation of one branch.
std::string explain(const PncInstance& instance, const BranchCertificate& cert);

}  // namespace onticlab
