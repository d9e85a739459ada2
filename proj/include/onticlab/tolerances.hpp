#pragma once

#include <cmath>
#include <cstddef>

namespace onticlab {

/// Every floating-point tolerance used by the toolkit, in one place.
/// The exact-rational feasibility engine never consults these; certificates
/// produced in rational mode are tolerance-free by construction.
struct Tolerances {
  // qstate type invariants
  double unit_norm = 1e-12;          // pure / bipartite state normalization
  double hermiticity = 1e-12;        // density operator symmetry
  double psd_floor = -1e-12;         // density operator eigenvalue floor
  double trace_one = 1e-12;          // density operator trace
  double bloch_ball = 1e-12;         // |r| <= 1 slack
  double povm_psd = 1e-10;           // effect eigenvalue floor (absolute)
  double povm_completeness = 1e-10;  // || sum effects - I ||

  // spectra and ranks
  double schmidt_rank = 1e-9;        // coefficient threshold for rank counting
  double schmidt_reconstruction = 1e-10;
  double range_membership = 1e-9;    // projection residual for range tests
  double eigenvalue_rank = 1e-9;     // density operator rank counting

  // ensembles
  double weight_sum = 1e-12;
  double mixture_reconstruction = 1e-10;
  double orthogonality = 1e-12;      // |<a|b>|^2 for declared orthogonal pairs

  // ontic models
  double sphere_measure = 1e-6;      // quadrature weights vs declared total
  double epistemic_norm = 1e-6;      // integral of a density vs 1
  double response_completeness = 1e-9;
  double support_density = 1e-12;    // density threshold defining supports
  double state_identity = 1e-12;     // Bloch distance treating states as equal

  // steering
  double steering_target_match = 1e-9;
  double assemblage_consistency = 1e-10;

  // feasibility engine, float mode
  double float_pivot = 1e-9;

  // misc numerics
  double imaginary_discard = 1e-12;  // Born values: imaginary part ignored below
};

/// Process-wide defaults. Operations take these unless documented otherwise.
inline const Tolerances& tol() {
  static const Tolerances t{};
  return t;
}

/// Estimated absolute quadrature error of hemisphere-type integrals on an
/// n-point sphere lattice. Calibrated against the analytic two-outcome
/// overlap; the observed worst case sits a factor ~2 below this.
inline double quadrature_noise_floor(std::size_t points) {
  return 0.15 / std::sqrt(static_cast<double>(points));
}

/// Mass threshold separating a genuine support gap from discretization
/// noise: ten times the noise floor.
inline double support_gap_threshold(std::size_t points) {
  return 10.0 * quadrature_noise_floor(points);
}

}  // namespace onticlab
