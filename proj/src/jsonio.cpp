#include "onticlab/jsonio.hpp"

#include <cstdint>
#include <sstream>

namespace onticlab {

namespace {

Json rational_or_number(const std::optional<Rational>& exact, double value) {
  if (exact) return format_rational(*exact);
  return value;
}

}  // namespace

Json complex_to_json(const Cplx& z) { return Json::array({z.real(), z.imag()}); }

Cplx complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex values are [re, im] pairs");
  return Cplx(j[0].get<double>(), j[1].get<double>());
}

Json matrix_to_json(const CMat& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  CMat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Json vec3_to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected a 3-vector");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Json to_json(const PureState& s) {
  Json amps = Json::array();
  for (int i = 0; i < s.dim(); ++i) amps.push_back(complex_to_json(s.amplitudes()(i)));
  return Json{{"dim", s.dim()}, {"amplitudes", std::move(amps)}};
}

PureState pure_state_from_json(const Json& j) {
  if (!j.contains("amplitudes")) throw ParseError("pure state needs 'amplitudes'");
  const Json& amps = j["amplitudes"];
  if (!amps.is_array() || amps.empty()) throw ParseError("'amplitudes' must be a nonempty array");
  CVec v(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) v(i) = complex_from_json(amps[i]);
  if (j.contains("dim") && j["dim"].get<int>() != static_cast<int>(amps.size()))
    throw ParseError("'dim' disagrees with the amplitude count");
  try {
    return PureState(std::move(v));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid pure state: ") + e.what());
  }
}

Json to_json(const DensityOperator& rho) {
  return Json{{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}};
}

DensityOperator density_from_json(const Json& j) {
  if (!j.contains("matrix")) throw ParseError("density operator needs 'matrix'");
  try {
    return DensityOperator(matrix_from_json(j["matrix"]));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid density operator: ") + e.what());
  }
}

Json to_json(const Povm& povm) {
  Json effects = Json::array();
  for (const CMat& e : povm.effects()) effects.push_back(matrix_to_json(e));
  return Json{{"dim", povm.dim()}, {"effects", std::move(effects)}};
}

Json to_json(const BipartiteState& psi) {
  return Json{{"dim_a", psi.dim_a()},
              {"dim_b", psi.dim_b()},
              {"amplitudes", matrix_to_json(psi.amplitudes())}};
}

BipartiteState bipartite_from_json(const Json& j) {
  for (const char* key : {"dim_a", "dim_b", "amplitudes"})
    if (!j.contains(key)) throw ParseError(std::string("bipartite state needs '") + key + "'");
  try {
    return BipartiteState(j["dim_a"].get<int>(), j["dim_b"].get<int>(),
                          matrix_from_json(j["amplitudes"]));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid bipartite state: ") + e.what());
  }
}

Json to_json(const Decomposition& d) {
  Json members = Json::array();
  for (const auto& m : d.members) {
    Json member{{"weight", rational_or_number(m.exact_weight, m.weight)},
                {"state", to_json(m.state)}};
    if (m.exact_bloch) {
      const PureState& s = m.state;
      if (s.dim() == 2) member["bloch"] = vec3_to_json(s.bloch());
    }
    members.push_back(std::move(member));
  }
  return Json{{"label", d.label},
              {"target", to_json(d.target)},
              {"members", std::move(members)}};
}

Decomposition decomposition_from_json(const Json& j) {
  if (!j.contains("members") || !j["members"].is_array() || j["members"].empty())
    throw ParseError("decomposition needs a nonempty 'members' array");

  std::vector<WeightedMember> members;
  for (const Json& mj : j["members"]) {
    if (!mj.contains("weight") || !mj.contains("state"))
      throw ParseError("each member needs 'weight' and 'state'");
    std::optional<Rational> exact;
    double w = 0.0;
    if (mj["weight"].is_string()) {
      exact = parse_rational(mj["weight"].get<std::string>());
      w = to_double(*exact);
    } else if (mj["weight"].is_number()) {
      w = mj["weight"].get<double>();
    } else {
      throw ParseError("member weight must be a number or a 'p/q' string");
    }
    if (w < 0.0) throw ParseError("member weights must be nonnegative");
    members.emplace_back(w, pure_state_from_json(mj["state"]));
    members.back().exact_weight = exact;
  }

  const int dim = members.front().state.dim();
  CMat mix = CMat::Zero(dim, dim);
  for (const auto& m : members) mix += m.weight * m.state.projector();

  DensityOperator target = j.contains("target")
                               ? density_from_json(j["target"])
                               : DensityOperator(hermitize(mix));
  Decomposition d{std::move(target), std::move(members),
                  j.value("label", std::string("unnamed")), std::nullopt};
  return d;
}

namespace {

const char* route_name(InfeasibilityRoute route) {
  switch (route) {
    case InfeasibilityRoute::EmptyRow: return "empty-row";
    case InfeasibilityRoute::CoefficientMismatch: return "coefficient-mismatch";
    default: return "pivot";
  }
}

}  // namespace

Json to_json(const FeasibilityReport& report, const PncInstance& inst,
             bool include_explanations) {
  Json out;
  out["verdict"] = report.contextual() ? "Contextual" : "NotDecided";
  out["arithmetic"] = inst.arithmetic == Arithmetic::ExactRational ? "rational" : "float";
  if (inst.arithmetic == Arithmetic::Float) out["epsilon"] = inst.float_epsilon;
  out["q"] = inst.q_exact ? Json(format_rational(*inst.q_exact)) : Json(inst.q);
  out["phase"] = inst.phase;
  out["note"] = "verdicts are pointwise: Contextual rules out any single-point "
                "assignment; NotDecided is not a proof that a noncontextual model exists";

  Json states = Json::array();
  for (const auto& s : inst.states) {
    Json sj{{"label", s.label}, {"state", to_json(s.state)}};
    if (s.state.dim() == 2) sj["bloch"] = vec3_to_json(s.state.bloch());
    states.push_back(std::move(sj));
  }
  out["states"] = std::move(states);

  Json pairs = Json::array();
  for (const auto& [a, b] : inst.orthogonal_pairs) pairs.push_back(Json::array({a, b}));
  out["orthogonal_pairs"] = std::move(pairs);

  Json decs = Json::array();
  for (const auto& d : inst.decompositions) decs.push_back(to_json(d));
  out["decompositions"] = std::move(decs);

  Json branches = Json::array();
  for (std::size_t i = 0; i < report.branches.size(); ++i) {
    const BranchCertificate& cert = report.branches[i];
    Json bj;
    bj["index"] = i;
    if (cert.case_letter) bj["case"] = std::string(1, *cert.case_letter);
    Json zeroed = Json::array();
    for (int s : cert.zeroed) zeroed.push_back(inst.states[s].label);
    bj["zeroed"] = std::move(zeroed);
    bj["status"] = cert.status == BranchStatus::Infeasible ? "infeasible" : "feasible";

    if (cert.status == BranchStatus::Infeasible) {
      bj["route"] = route_name(cert.route);
      if (cert.route == InfeasibilityRoute::EmptyRow)
        bj["empty_decomposition"] = inst.decompositions[cert.empty_row].label;
      if (cert.route == InfeasibilityRoute::CoefficientMismatch) {
        bj["mismatch"] = Json{
            {"decomposition_a", inst.decompositions[cert.mismatch_row_a].label},
            {"decomposition_b", inst.decompositions[cert.mismatch_row_b].label},
            {"state", inst.states[cert.mismatch_state].label}};
      }
      Json farkas = Json::array();
      for (std::size_t k = 0; k < cert.farkas.size(); ++k) {
        if (cert.farkas_exact)
          farkas.push_back(format_rational((*cert.farkas_exact)[k]));
        else
          farkas.push_back(cert.farkas[k]);
      }
      bj["multipliers"] = std::move(farkas);
      Json pivots = Json::array();
      for (const auto& p : cert.pivots) pivots.push_back(Json::array({p.column, p.row}));
      bj["pivots"] = std::move(pivots);
    } else {
      Json witness = Json::object();
      for (int s : cert.free_states) {
        if (cert.witness_exact)
          witness[inst.states[s].label] = format_rational((*cert.witness_exact)[s]);
        else
          witness[inst.states[s].label] = cert.witness[s];
      }
      bj["witness"] = std::move(witness);
    }
    if (include_explanations) bj["explanation"] = explain(inst, cert);
    branches.push_back(std::move(bj));
  }
  out["branches"] = std::move(branches);
  return out;
}

Json to_json(const SteerResult& result) {
  Json outcomes = Json::array();
  for (const auto& o : result.assemblage.outcomes()) {
    outcomes.push_back(Json{{"probability", o.probability},
                            {"conditional", to_json(o.conditional)}});
  }
  return Json{
      {"alice_povm", to_json(result.alice)},
      {"assemblage",
       Json{{"outcomes", std::move(outcomes)},
            {"probability_sum", result.assemblage.probability_sum()},
            {"no_signaling_residual", result.assemblage.no_signaling_residual()},
            {"reduced", to_json(result.assemblage.reduced())}}},
      {"diagnostics",
       Json{{"povm_completeness_residual", result.povm_completeness_residual},
            {"povm_psd_residual", result.povm_psd_residual},
            {"min_member_fidelity", result.min_member_fidelity},
            {"max_probability_error", result.max_probability_error}}}};
}

Json to_json(const WitnessReport& report) {
  Json out;
  out["verdict"] = report.verdict == WitnessVerdict::Nonlocal ? "Nonlocal" : "Inconclusive";
  out["schmidt_rank"] = report.schmidt_rank;
  out["q"] = report.q;
  out["r"] = report.r;
  out["model"] = report.model_name;
  out["notes"] = report.notes;

  if (report.omega) {
    const OmegaEvidence& e = *report.omega;
    out["evidence"] = Json{{"kind", "support-gap"},
                           {"phi_direction", vec3_to_json(e.phi_direction)},
                           {"psi_direction", vec3_to_json(e.psi_direction)},
                           {"chi_direction", vec3_to_json(e.chi_direction)},
                           {"born", e.born},
                           {"overlap", e.overlap},
                           {"deficit", e.deficit},
                           {"omega_psi_mass", e.omega_psi_mass},
                           {"omega_context2_mass", e.omega_context2_mass},
                           {"omega_context1_mass", e.omega_context1_mass},
                           {"disjoint_from_context1", e.disjoint_from_context1},
                           {"threshold", e.threshold},
                           {"candidates_tried", e.candidates_tried}};
  } else if (report.assumption) {
    out["evidence"] = Json{{"kind", "structural-assumed"}, {"assumption", *report.assumption}};
  } else {
    out["evidence"] = Json{{"kind", "none"}};
  }

  Json contexts = Json::object();
  if (report.context_1) contexts["context_1"] = to_json(*report.context_1);
  if (report.context_2) contexts["context_2"] = to_json(*report.context_2);
  out["contexts"] = std::move(contexts);

  Json steering = Json::object();
  if (report.steer_1) steering["context_1"] = to_json(*report.steer_1);
  if (report.steer_2) steering["context_2"] = to_json(*report.steer_2);
  out["steering"] = std::move(steering);
  return out;
}

Json to_json(const BornReport& report) {
  return Json{{"trials", report.trials},
              {"seed", report.seed},
              {"max_deviation", report.max_deviation},
              {"worst_phi", vec3_to_json(report.worst_phi)},
              {"worst_psi", vec3_to_json(report.worst_psi)}};
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace onticlab
