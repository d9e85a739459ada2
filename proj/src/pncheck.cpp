#include "onticlab/pncheck.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace onticlab {

namespace {

// ------------------------------------------------------- numeric policies

struct ExactOps {
  using Num = Rational;
  bool is_zero(const Num& x) const { return x == 0; }
  bool is_pos(const Num& x) const { return x > 0; }
  bool eq(const Num& a, const Num& b) const { return a == b; }
  static double to_f(const Num& x) { return to_double(x); }
};

struct FloatOps {
  double eps;
  using Num = double;
  bool is_zero(double x) const { return std::abs(x) <= eps; }
  bool is_pos(double x) const { return x > eps; }
  bool eq(double a, double b) const { return std::abs(a - b) <= eps; }
  static double to_f(double x) { return x; }
};

template <class Ops>
struct BranchSolve {
  using Num = typename Ops::Num;
  BranchStatus status = BranchStatus::Feasible;
  InfeasibilityRoute route = InfeasibilityRoute::Pivot;
  int empty_row = -1;
  int mismatch_row_a = -1, mismatch_row_b = -1, mismatch_state = -1;
  std::vector<Num> farkas;   // per decomposition row
  std::vector<Num> witness;  // per state (full length)
  std::vector<PivotStep> pivots;
};

/// Phase-1 elimination for { W_free x = 1, x >= 0 }. Bland's rule, so it
/// terminates; on infeasibility the separating multipliers sit in the
/// summed artificial-basic rows.
template <class Ops>
BranchSolve<Ops> solve_branch(const Ops& ops,
                              const std::vector<std::vector<typename Ops::Num>>& w,
                              const std::vector<char>& zeroed,
                              std::vector<PivotStep>* forced_pivots = nullptr) {
  using Num = typename Ops::Num;
  BranchSolve<Ops> out;
  const int m = static_cast<int>(w.size());
  const int n = m > 0 ? static_cast<int>(w[0].size()) : 0;

  std::vector<int> free_cols;
  for (int j = 0; j < n; ++j)
    if (!zeroed[j]) free_cols.push_back(j);
  const int f = static_cast<int>(free_cols.size());

  if (m == 0) {
    out.status = BranchStatus::Feasible;
    out.witness.assign(n, Num(0));
    return out;
  }

  // Short-circuit 1: a decomposition whose members are all zeroed reads 0 = 1.
  for (int i = 0; i < m; ++i) {
    bool empty = true;
    for (int fj = 0; fj < f && empty; ++fj)
      if (!ops.is_zero(w[i][free_cols[fj]])) empty = false;
    if (empty) {
      out.status = BranchStatus::Infeasible;
      out.route = InfeasibilityRoute::EmptyRow;
      out.empty_row = i;
      out.farkas.assign(m, Num(0));
      out.farkas[i] = Num(1);
      return out;
    }
  }

  // Short-circuit 2: two decompositions each reduce to a single term in the
  // same state but with different weights; the forced equality kills that
  // state and with it the normalized value.
  {
    std::map<int, std::vector<std::pair<int, Num>>> singletons;
    for (int i = 0; i < m; ++i) {
      int nonzero = 0, state = -1;
      for (int fj = 0; fj < f; ++fj) {
        if (!ops.is_zero(w[i][free_cols[fj]])) {
          ++nonzero;
          state = free_cols[fj];
        }
      }
      if (nonzero == 1) singletons[state].emplace_back(i, w[i][state]);
    }
    for (const auto& [state, rows] : singletons) {
      for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = a + 1; b < rows.size(); ++b) {
          if (!ops.eq(rows[a].second, rows[b].second)) {
            // order so the smaller coefficient gets the positive multiplier
            auto [ia, ca] = rows[a];
            auto [ib, cb] = rows[b];
            if (!(ca < cb)) {
              std::swap(ia, ib);
              std::swap(ca, cb);
            }
            out.status = BranchStatus::Infeasible;
            out.route = InfeasibilityRoute::CoefficientMismatch;
            out.mismatch_row_a = ia;
            out.mismatch_row_b = ib;
            out.mismatch_state = state;
            out.farkas.assign(m, Num(0));
            out.farkas[ia] = Num(1) / ca;
            out.farkas[ib] = Num(-1) / cb;
            return out;
          }
        }
      }
    }
  }

  // General case: tableau [W_free | I | 1] with artificial basis.
  const int cols = f + m + 1;
  std::vector<std::vector<Num>> t(m, std::vector<Num>(cols, Num(0)));
  for (int i = 0; i < m; ++i) {
    for (int fj = 0; fj < f; ++fj) t[i][fj] = w[i][free_cols[fj]];
    t[i][f + i] = Num(1);
    t[i][cols - 1] = Num(1);
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = f + i;

  auto objective_row = [&](std::vector<Num>& obj) {
    obj.assign(cols, Num(0));
    for (int i = 0; i < m; ++i)
      if (basis[i] >= f)
        for (int j = 0; j < cols; ++j) obj[j] += t[i][j];
  };

  auto pivot_at = [&](int row, int col) {
    const Num p = t[row][col];
    for (int j = 0; j < cols; ++j) t[row][j] = t[row][j] / p;
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      const Num factor = t[i][col];
      if (ops.is_zero(factor)) continue;
      for (int j = 0; j < cols; ++j) t[i][j] = t[i][j] - factor * t[row][j];
    }
    basis[row] = col;
  };

  std::vector<Num> obj;
  std::size_t forced_idx = 0;
  int iterations = 0;
  while (true) {
    if (++iterations > 100000) throw StateError("phase-1 elimination did not terminate");
    objective_row(obj);

    int entering = -1;
    int leaving = -1;
    if (forced_pivots) {
      // replay mode: apply the recorded chain verbatim
      if (forced_idx >= forced_pivots->size()) break;
      entering = (*forced_pivots)[forced_idx].column;
      leaving = (*forced_pivots)[forced_idx].row;
      ++forced_idx;
      if (entering < 0 || entering >= f || leaving < 0 || leaving >= m ||
          ops.is_zero(t[leaving][entering]))
        throw StateError("recorded pivot chain does not apply to this branch");
      pivot_at(leaving, entering);
      continue;
    }

    for (int j = 0; j < f; ++j) {
      if (ops.is_pos(obj[j])) {
        entering = j;
        break;  // Bland: smallest structural index
      }
    }
    if (entering < 0) break;

    bool have = false;
    Num best_ratio(0);
    for (int i = 0; i < m; ++i) {
      if (!ops.is_pos(t[i][entering])) continue;
      const Num ratio = t[i][cols - 1] / t[i][entering];
      if (!have || ratio < best_ratio ||
          (ops.eq(ratio, best_ratio) && basis[i] < basis[leaving])) {
        have = true;
        best_ratio = ratio;
        leaving = i;
      }
    }
    if (!have) break;  // cannot happen for a positive objective column; stay safe

    out.pivots.push_back({entering, leaving});
    pivot_at(leaving, entering);
  }

  objective_row(obj);
  const Num residue = obj[cols - 1];
  if (ops.is_zero(residue)) {
    out.status = BranchStatus::Feasible;
    out.witness.assign(n, Num(0));
    for (int i = 0; i < m; ++i)
      if (basis[i] < f) out.witness[free_cols[basis[i]]] = t[i][cols - 1];
  } else {
    out.status = BranchStatus::Infeasible;
    out.route = InfeasibilityRoute::Pivot;
    out.farkas.assign(m, Num(0));
    for (int k = 0; k < m; ++k) out.farkas[k] = obj[f + k];
  }
  return out;
}

// ------------------------------------------------------------- utilities

std::vector<char> pattern_mask(const PncInstance& inst, unsigned pattern) {
  std::vector<char> zeroed(inst.states.size(), 0);
  for (std::size_t p = 0; p < inst.orthogonal_pairs.size(); ++p) {
    const auto& [first, second] = inst.orthogonal_pairs[p];
    zeroed[(pattern >> p) & 1u ? second : first] = 1;
  }
  return zeroed;
}

std::optional<char> case_letter_for(const PncInstance& inst, unsigned pattern) {
  if (!inst.canonical_qubit_layout || inst.orthogonal_pairs.size() != 4 ||
      inst.states.size() != 8)
    return std::nullopt;
  const bool axis_second = (pattern & 1u) != 0;
  int primed = 0;
  for (int p = 1; p < 4; ++p)
    if ((pattern >> p) & 1u) ++primed;
  return static_cast<char>((axis_second ? 'e' : 'a') + primed);
}

void validate_instance(const PncInstance& inst) {
  const std::size_t m = inst.decompositions.size();
  const std::size_t n = inst.states.size();
  if (inst.weights.size() != m) throw DomainError("weight matrix row count mismatch");
  for (const auto& row : inst.weights)
    if (row.size() != n) throw DomainError("weight matrix column count mismatch");
  if (inst.arithmetic == Arithmetic::ExactRational) {
    if (!inst.exact_weights) throw DomainError("rational mode needs exact weights");
    if (inst.exact_weights->size() != m) throw DomainError("exact weight row count mismatch");
    for (const auto& row : *inst.exact_weights)
      if (row.size() != n) throw DomainError("exact weight column count mismatch");
  }

  for (const auto& d : inst.decompositions) {
    if (operator_distance(d.target.matrix(), inst.target.matrix()) >
        tol().mixture_reconstruction)
      throw DomainError("decomposition '" + d.label + "' has a different target");
    const auto violations = validate(d);
    if (!violations.empty())
      throw DomainError("decomposition '" + d.label + "' is invalid: " +
                        violations.front().name + " (" + violations.front().detail + ")");
  }

  for (const auto& [i, j] : inst.orthogonal_pairs) {
    if (i < 0 || j < 0 || i >= static_cast<int>(n) || j >= static_cast<int>(n) || i == j)
      throw DomainError("orthogonal pair indices out of range");
    const auto& a = inst.states[i];
    const auto& b = inst.states[j];
    if (a.exact_bloch && b.exact_bloch) {
      if (!(dot(*a.exact_bloch, *b.exact_bloch) == Root3::rational(Rational(-1))))
        throw DomainError("declared orthogonal pair (" + a.label + ", " + b.label +
                          ") is not exactly antipodal");
    } else if (overlap_sq(a.state, b.state) >= tol().orthogonality) {
      throw DomainError("declared orthogonal pair (" + a.label + ", " + b.label +
                        ") is not orthogonal");
    }
  }
}

template <class Ops>
BranchCertificate to_certificate(const PncInstance& inst, unsigned pattern,
                                 const std::vector<char>& zeroed,
                                 BranchSolve<Ops>&& solve) {
  BranchCertificate cert;
  for (std::size_t j = 0; j < zeroed.size(); ++j)
    (zeroed[j] ? cert.zeroed : cert.free_states).push_back(static_cast<int>(j));
  cert.status = solve.status;
  cert.route = solve.route;
  cert.empty_row = solve.empty_row;
  cert.mismatch_row_a = solve.mismatch_row_a;
  cert.mismatch_row_b = solve.mismatch_row_b;
  cert.mismatch_state = solve.mismatch_state;
  cert.pivots = std::move(solve.pivots);
  cert.case_letter = case_letter_for(inst, pattern);

  cert.farkas.reserve(solve.farkas.size());
  for (const auto& v : solve.farkas) cert.farkas.push_back(Ops::to_f(v));
  cert.witness.reserve(solve.witness.size());
  for (const auto& v : solve.witness) cert.witness.push_back(Ops::to_f(v));
  if constexpr (std::is_same_v<typename Ops::Num, Rational>) {
    cert.farkas_exact = std::move(solve.farkas);
    cert.witness_exact = std::move(solve.witness);
  }
  return cert;
}

}  // namespace

// ------------------------------------------------------------ construction

namespace {

PncInstance build_lemma1_common(double q, const std::optional<Rational>& q_exact,
                                double phase) {
  if (q < 0.0 || q >= 1.0)
    throw DomainError("the construction needs a mixed state: 0 <= q < 1, got q = " +
                      std::to_string(q));

  const Vec3 z(0, 0, 1);
  const EquatorialTriple triple = equatorial_triple(z, phase);
  auto decs = six_decompositions(q, z, phase, q_exact);

  PncInstance inst{.states = {},
                   .orthogonal_pairs = {{0, 1}, {2, 3}, {4, 5}, {6, 7}},
                   .decompositions = std::move(decs),
                   .target = bloch_to_density(BlochVector(q * z))};

  const bool exact_states = q_exact && triple.exact.has_value();
  auto push_state = [&](std::string label, const Vec3& dir,
                        std::optional<ExactBloch> exact) {
    inst.states.push_back({std::move(label), PureState::qubit_from_bloch(dir), exact});
  };
  push_state("axis+", z, exact_states
                             ? std::optional<ExactBloch>(ExactBloch{
                                   Root3{}, Root3{}, Root3::rational(1)})
                             : std::nullopt);
  push_state("axis-", -z, exact_states
                              ? std::optional<ExactBloch>(ExactBloch{
                                    Root3{}, Root3{}, Root3::rational(-1)})
                              : std::nullopt);
  const char* eq_labels[6] = {"eq-a", "eq-a'", "eq-b", "eq-b'", "eq-c", "eq-c'"};
  for (int k = 0; k < 6; ++k)
    push_state(eq_labels[k], triple.directions[k],
               exact_states ? std::optional<ExactBloch>((*triple.exact)[k]) : std::nullopt);

  // weight matrix over  axis+, axis-, eq-a, eq-a', eq-b, eq-b', eq-c, eq-c'
  const double hm = (1.0 - q) / 2.0, hp = (1.0 + q) / 2.0, th = (1.0 - q) / 3.0;
  inst.weights = {
      {hp, hm, 0, 0, 0, 0, 0, 0},   // eigen-pair
      {q, 0, hm, hm, 0, 0, 0, 0},   // equator-pair-a
      {q, 0, 0, 0, hm, hm, 0, 0},   // equator-pair-b
      {q, 0, 0, 0, 0, 0, hm, hm},   // equator-pair-c
      {q, 0, th, 0, th, 0, th, 0},  // equator-trine
      {q, 0, 0, th, 0, th, 0, th},  // equator-trine-mirror
  };

  if (q_exact) {
    const Rational rq = *q_exact;
    const Rational rhm = (1 - rq) / 2, rhp = (1 + rq) / 2, rth = (1 - rq) / 3;
    const Rational r0(0);
    inst.exact_weights = std::vector<std::vector<Rational>>{
        {rhp, rhm, r0, r0, r0, r0, r0, r0},
        {rq, r0, rhm, rhm, r0, r0, r0, r0},
        {rq, r0, r0, r0, rhm, rhm, r0, r0},
        {rq, r0, r0, r0, r0, r0, rhm, rhm},
        {rq, r0, rth, r0, rth, r0, rth, r0},
        {rq, r0, r0, rth, r0, rth, r0, rth},
    };
    inst.arithmetic = Arithmetic::ExactRational;
    inst.q_exact = rq;
  } else {
    inst.arithmetic = Arithmetic::Float;
  }
  inst.canonical_qubit_layout = true;
  inst.q = q;
  inst.phase = phase;
  return inst;
}

}  // namespace

PncInstance build_lemma1_instance(const Rational& q, double phase_radians) {
  if (q < 0 || q >= 1)
    throw DomainError("the construction needs a mixed state: 0 <= q < 1, got q = " +
                      format_rational(q));
  return build_lemma1_common(to_double(q), q, phase_radians);
}

PncInstance build_lemma1_instance(double q, double phase_radians) {
  return build_lemma1_common(q, std::nullopt, phase_radians);
}

// ------------------------------------------------------------------ check

FeasibilityReport check(const PncInstance& inst) {
  validate_instance(inst);
  const std::size_t k = inst.orthogonal_pairs.size();
  if (k > 20) throw DomainError("too many orthogonal pairs for branch enumeration");

  FeasibilityReport report;
  report.branches.reserve(1u << k);
  bool all_infeasible = true;

  for (unsigned pattern = 0; pattern < (1u << k); ++pattern) {
    const std::vector<char> zeroed = pattern_mask(inst, pattern);
    BranchCertificate cert;
    if (inst.arithmetic == Arithmetic::ExactRational) {
      ExactOps ops;
      cert = to_certificate(inst, pattern, zeroed,
                            solve_branch(ops, *inst.exact_weights, zeroed));
    } else {
      FloatOps ops{inst.float_epsilon};
      cert = to_certificate(inst, pattern, zeroed,
                            solve_branch(ops, inst.weights, zeroed));
    }
    all_infeasible = all_infeasible && cert.status == BranchStatus::Infeasible;
    report.branches.push_back(std::move(cert));
  }

  report.verdict = all_infeasible ? FeasibilityReport::Verdict::Contextual
                                  : FeasibilityReport::Verdict::NotDecided;
  return report;
}

PncInstance restrict_decompositions(const PncInstance& inst,
                                    const std::vector<int>& indices) {
  PncInstance out = inst;
  out.decompositions.clear();
  out.weights.clear();
  if (out.exact_weights) out.exact_weights->clear();
  out.canonical_qubit_layout = false;
  for (int i : indices) {
    if (i < 0 || i >= static_cast<int>(inst.decompositions.size()))
      throw DomainError("decomposition index out of range");
    out.decompositions.push_back(inst.decompositions[i]);
    out.weights.push_back(inst.weights[i]);
    if (inst.exact_weights) out.exact_weights->push_back((*inst.exact_weights)[i]);
  }
  return out;
}

std::vector<std::vector<int>> minimal_contradiction(const PncInstance& inst) {
  if (!check(inst).contextual())
    throw StateError("minimal contradictions exist only for Contextual instances");

  const int m = static_cast<int>(inst.decompositions.size());
  std::vector<std::vector<int>> minimal;
  auto contains_known = [&](const std::vector<int>& subset) {
    for (const auto& known : minimal)
      if (std::includes(subset.begin(), subset.end(), known.begin(), known.end()))
        return true;
    return false;
  };

  for (int size = 1; size <= m; ++size) {
    std::vector<int> pick(size);
    // lexicographic subset enumeration
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      for (int i = 0; i < size; ++i) pick[i] = idx[i];
      if (!contains_known(pick) &&
          check(restrict_decompositions(inst, pick)).contextual())
        minimal.push_back(pick);

      int pos = size - 1;
      while (pos >= 0 && idx[pos] == m - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return minimal;
}

// ----------------------------------------------------------------- replay

namespace {

template <class Ops>
ReplayResult replay_impl(const Ops& ops,
                         const std::vector<std::vector<typename Ops::Num>>& w,
                         const PncInstance& inst, const BranchCertificate& cert,
                         const std::vector<typename Ops::Num>& farkas,
                         const std::vector<typename Ops::Num>& witness) {
  using Num = typename Ops::Num;
  const int m = static_cast<int>(w.size());
  const int n = static_cast<int>(inst.states.size());

  std::vector<char> zeroed(n, 0);
  for (int j : cert.zeroed) {
    if (j < 0 || j >= n) return {false, "zeroed index out of range"};
    zeroed[j] = 1;
  }
  for (const auto& [a, b] : inst.orthogonal_pairs)
    if (!zeroed[a] && !zeroed[b])
      return {false, "branch leaves an orthogonal pair with both members free"};

  if (cert.status == BranchStatus::Feasible) {
    if (static_cast<int>(witness.size()) != n) return {false, "witness length mismatch"};
    for (int j = 0; j < n; ++j) {
      if (ops.is_pos(Num(0) - witness[j])) return {false, "negative witness value"};
      if (zeroed[j] && !ops.is_zero(witness[j]))
        return {false, "witness is nonzero on a zeroed state"};
    }
    for (int i = 0; i < m; ++i) {
      Num acc(0);
      for (int j = 0; j < n; ++j) acc += w[i][j] * witness[j];
      if (!ops.eq(acc, Num(1)))
        return {false, "witness violates decomposition row " + std::to_string(i)};
    }
    return {true, "witness satisfies all constraints"};
  }

  // infeasible: separating multipliers
  if (static_cast<int>(farkas.size()) != m) return {false, "multiplier length mismatch"};
  Num total(0);
  for (int i = 0; i < m; ++i) total += farkas[i];
  if (!ops.is_pos(total)) return {false, "multipliers do not separate the right-hand side"};
  for (int j = 0; j < n; ++j) {
    if (zeroed[j]) continue;
    Num acc(0);
    for (int i = 0; i < m; ++i) acc += farkas[i] * w[i][j];
    if (ops.is_pos(acc))
      return {false, "multiplier combination is positive on free state " +
                         inst.states[j].label};
  }

  // structural routes re-derived from the raw weights
  if (cert.route == InfeasibilityRoute::EmptyRow) {
    if (cert.empty_row < 0 || cert.empty_row >= m) return {false, "empty-row index invalid"};
    for (int j = 0; j < n; ++j)
      if (!zeroed[j] && !ops.is_zero(w[cert.empty_row][j]))
        return {false, "cited row is not empty on the free states"};
  } else if (cert.route == InfeasibilityRoute::CoefficientMismatch) {
    for (int row : {cert.mismatch_row_a, cert.mismatch_row_b}) {
      if (row < 0 || row >= m) return {false, "mismatch row index invalid"};
      for (int j = 0; j < n; ++j)
        if (!zeroed[j] && j != cert.mismatch_state && !ops.is_zero(w[row][j]))
          return {false, "cited mismatch row has support beyond the cited state"};
      if (ops.is_zero(w[row][cert.mismatch_state]))
        return {false, "cited mismatch row does not touch the cited state"};
    }
    if (ops.eq(w[cert.mismatch_row_a][cert.mismatch_state],
               w[cert.mismatch_row_b][cert.mismatch_state]))
      return {false, "cited rows do not actually disagree"};
  } else {
    // re-run the recorded pivot chain and confirm it reproduces the
    // certificate's multipliers
    try {
      std::vector<PivotStep> chain = cert.pivots;
      auto redo = solve_branch(ops, w, zeroed, &chain);
      if (redo.status != BranchStatus::Infeasible)
        return {false, "pivot chain replay did not end infeasible"};
      if (redo.farkas.size() != farkas.size())
        return {false, "pivot chain replay produced a different multiplier count"};
      for (std::size_t i = 0; i < farkas.size(); ++i)
        if (!ops.eq(redo.farkas[i], farkas[i]))
          return {false, "pivot chain replay produced different multipliers"};
    } catch (const StateError& e) {
      return {false, std::string("pivot chain replay failed: ") + e.what()};
    }
  }
  return {true, "multipliers certify infeasibility"};
}

}  // namespace

ReplayResult replay(const PncInstance& inst, const BranchCertificate& cert) {
  if (inst.arithmetic == Arithmetic::ExactRational) {
    if (!inst.exact_weights) return {false, "instance lacks exact weights"};
    ExactOps ops;
    std::vector<Rational> farkas, witness;
    if (cert.status == BranchStatus::Infeasible) {
      if (!cert.farkas_exact) return {false, "certificate lacks exact multipliers"};
      farkas = *cert.farkas_exact;
    } else {
      if (!cert.witness_exact) return {false, "certificate lacks an exact witness"};
      witness = *cert.witness_exact;
    }
    return replay_impl(ops, *inst.exact_weights, inst, cert, farkas, witness);
  }
  FloatOps ops{inst.float_epsilon};
  return replay_impl(ops, inst.weights, inst, cert, cert.farkas, cert.witness);
}

// ---------------------------------------------------------------- explain

std::string explain(const PncInstance& inst, const BranchCertificate& cert) {
  std::ostringstream os;
  os << "branch";
  if (cert.case_letter) os << " (" << *cert.case_letter << ")";
  os << " zeroed {";
  for (std::size_t i = 0; i < cert.zeroed.size(); ++i)
    os << (i ? ", " : "") << inst.states[cert.zeroed[i]].label;
  os << "}: ";

  auto fmt = [&](int row, int state) -> std::string {
    if (inst.exact_weights)
      return format_rational((*inst.exact_weights)[row][state]);
    std::ostringstream v;
    v << inst.weights[row][state];
    return v.str();
  };

  if (cert.status == BranchStatus::Feasible) {
    os << "feasible; witness";
    for (int j : cert.free_states) {
      if (cert.witness[j] == 0.0 && !(cert.witness_exact && (*cert.witness_exact)[j] != 0))
        continue;
      os << " " << inst.states[j].label << " = "
         << (cert.witness_exact ? format_rational((*cert.witness_exact)[j])
                                : std::to_string(cert.witness[j]));
    }
    return os.str();
  }

  switch (cert.route) {
    case InfeasibilityRoute::EmptyRow:
      os << "infeasible; decomposition '" << inst.decompositions[cert.empty_row].label
         << "' loses every member, forcing the shared value to 0";
      break;
    case InfeasibilityRoute::CoefficientMismatch:
      os << "infeasible; '" << inst.decompositions[cert.mismatch_row_a].label << "' and '"
         << inst.decompositions[cert.mismatch_row_b].label
         << "' both reduce to a single term in " << inst.states[cert.mismatch_state].label
         << " with weights " << fmt(cert.mismatch_row_a, cert.mismatch_state) << " vs "
         << fmt(cert.mismatch_row_b, cert.mismatch_state)
         << "; the forced equality zeroes it and collapses the shared value";
      break;
    case InfeasibilityRoute::Pivot:
      os << "infeasible; separating multipliers";
      for (std::size_t i = 0; i < cert.farkas.size(); ++i)
        os << " " << (cert.farkas_exact ? format_rational((*cert.farkas_exact)[i])
                                        : std::to_string(cert.farkas[i]));
      os << " over the decompositions sum to a positive total yet stay nonpositive on "
            "every free state";
      break;
  }
  return os.str();
}

}  // namespace onticlab
