#include "onticlab/onticlab.h"

#include <cstring>
#include <memory>
#include <string>

#include "onticlab/jsonio.hpp"
#include "onticlab/version.hpp"

using namespace onticlab;

struct olab_model {
  std::unique_ptr<OnticModel> impl;
  Json config;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

olab_status fail(olab_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <class Fn>
olab_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return OLAB_OK;
  } catch (const ParseError& e) {
    return fail(OLAB_PARSE, e.what());
  } catch (const DomainError& e) {
    return fail(OLAB_DOMAIN, e.what());
  } catch (const RangeError& e) {
    return fail(OLAB_RANGE, e.what());
  } catch (const StateError& e) {
    return fail(OLAB_STATE, e.what());
  } catch (const Json::exception& e) {
    return fail(OLAB_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(OLAB_INTERNAL, e.what());
  }
}

Json parse_request(const char* request_json) {
  if (!request_json) throw ParseError("request is null");
  Json j = Json::parse(request_json, nullptr, false);
  if (j.is_discarded()) throw ParseError("request is not valid JSON");
  if (!j.is_object()) throw ParseError("request must be a JSON object");
  return j;
}

void emit(char** out, Json body) {
  if (!out) throw ParseError("response pointer is null");
  body["version"] = kVersion;
  *out = dup_string(body.dump());
}

/// q appears either as a "p/q" string (exact) or a plain number.
std::pair<double, std::optional<Rational>> read_q(const Json& request, bool want_rational) {
  if (!request.contains("q")) throw ParseError("request needs 'q'");
  const Json& qj = request["q"];
  if (qj.is_string()) {
    Rational q = parse_rational(qj.get<std::string>());
    return {to_double(q), q};
  }
  if (!qj.is_number()) throw ParseError("'q' must be a number or a 'p/q' string");
  if (want_rational)
    throw DomainError("rational mode needs 'q' as a 'p/q' string");
  return {qj.get<double>(), std::nullopt};
}

std::size_t read_points(const Json& j, std::size_t fallback) {
  if (!j.contains("points")) return fallback;
  const long long n = j["points"].get<long long>();
  if (n < 1) throw DomainError("'points' must be positive");
  return static_cast<std::size_t>(n);
}

constexpr std::size_t kDefaultPoints = 200000;

}  // namespace

extern "C" {

const char* olab_version(void) { return kVersion; }

const char* olab_status_name(olab_status status) {
  switch (status) {
    case OLAB_OK: return "ok";
    case OLAB_USAGE: return "usage";
    case OLAB_DOMAIN: return "domain";
    case OLAB_RANGE: return "range";
    case OLAB_STATE: return "state";
    case OLAB_PARSE: return "parse";
    default: return "internal";
  }
}

const char* olab_last_error(void) { return g_last_error.c_str(); }

void olab_free(char* text) { std::free(text); }

olab_status olab_decomp(const char* request_json, char** response_json) {
  return guarded([&] {
    const Json request = parse_request(request_json);
    const bool rational = request.value("rational", false);
    auto [q, q_exact] = read_q(request, rational);
    const double phase = request.value("phase", 0.0);
    const Vec3 nhat = request.contains("nhat") ? vec3_from_json(request["nhat"])
                                               : Vec3(0, 0, 1);
    if (rational && !(nhat.x() == 0.0 && nhat.y() == 0.0 && nhat.z() == 1.0))
      throw DomainError("rational mode needs the +z axis");

    const auto decs =
        six_decompositions(q, nhat, phase, rational ? q_exact : std::nullopt);
    Json list = Json::array();
    for (const auto& d : decs) list.push_back(to_json(d));
    emit(response_json, Json{{"decompositions", std::move(list)},
                             {"rational", rational && decs.front().is_exact()}});
  });
}

olab_status olab_pncheck(const char* request_json, char** response_json) {
  return guarded([&] {
    const Json request = parse_request(request_json);
    const bool rational = request.value("rational", false);
    auto [q, q_exact] = read_q(request, rational);
    const double phase = request.value("phase", 0.0);

    PncInstance instance = (rational && q_exact)
                               ? build_lemma1_instance(*q_exact, phase)
                               : build_lemma1_instance(q, phase);
    if (request.contains("subset"))
      instance = restrict_decompositions(instance,
                                         request["subset"].get<std::vector<int>>());

    const FeasibilityReport report = check(instance);
    Json body = to_json(report, instance, request.value("explain", false));
    if (request.value("minimal", false) && report.contextual()) {
      Json subsets = Json::array();
      for (const auto& subset : minimal_contradiction(instance)) {
        Json labels = Json::array();
        for (int i : subset) labels.push_back(instance.decompositions[i].label);
        subsets.push_back(std::move(labels));
      }
      body["minimal_contextual_subsets"] = std::move(subsets);
    }
    emit(response_json, std::move(body));
  });
}

olab_status olab_model_create(const char* config_json, olab_model** model) {
  return guarded([&] {
    if (!model) throw ParseError("model out-pointer is null");
    const Json config = parse_request(config_json);
    const std::string kind = config.value("model", "ks");
    const std::size_t points = read_points(config, kDefaultPoints);
    const std::uint64_t seed = config.value("seed", 0ull);
    const std::string quadrature = config.value("quadrature", "fibonacci");

    std::shared_ptr<const OnticSpace> space;
    if (quadrature == "fibonacci") {
      space = std::make_shared<OnticSpace>(OnticSpace::fibonacci_sphere(points));
    } else if (quadrature == "montecarlo") {
      space = std::make_shared<OnticSpace>(OnticSpace::monte_carlo_sphere(points, seed));
    } else {
      throw DomainError("unknown quadrature '" + quadrature + "'");
    }

    std::unique_ptr<OnticModel> impl;
    if (kind == "ks") {
      impl = ks_model(space);
    } else if (kind == "deficit") {
      if (!config.contains("epsilon"))
        throw DomainError("the deficit model needs 'epsilon'");
      impl = deficit_model(space, config["epsilon"].get<double>());
    } else {
      throw DomainError("unknown model '" + kind + "'");
    }
    *model = new olab_model{std::move(impl), config};
  });
}

void olab_model_free(olab_model* model) { delete model; }

olab_status olab_model_verify(const olab_model* model, const char* request_json,
                              char** response_json) {
  return guarded([&] {
    if (!model) throw ParseError("model handle is null");
    const Json request = parse_request(request_json);
    const long long trials = request.value("trials", 100ll);
    if (trials < 0) throw DomainError("'trials' must be nonnegative");
    const std::uint64_t seed = request.value("seed", 0ull);
    const BornReport report =
        verify_born(*model->impl, static_cast<std::size_t>(trials), seed);
    Json body = to_json(report);
    body["model"] = model->impl->name();
    body["points"] = model->impl->space()->size();
    body["declared_tolerance"] = model->impl->born_tolerance();
    emit(response_json, std::move(body));
  });
}

olab_status olab_model_overlap(const olab_model* model, const char* request_json,
                               char** response_json) {
  return guarded([&] {
    if (!model) throw ParseError("model handle is null");
    const Json request = parse_request(request_json);

    Vec3 phi_dir, psi_dir;
    if (request.contains("pair")) {
      const Json& pair = request["pair"];
      phi_dir = vec3_from_json(pair.at("phi")).normalized();
      psi_dir = vec3_from_json(pair.at("psi")).normalized();
    } else if (request.contains("angle_deg")) {
      const double a = request["angle_deg"].get<double>() * 3.14159265358979323846 / 180.0;
      psi_dir = Vec3(0, 0, 1);
      phi_dir = Vec3(std::sin(a), 0, std::cos(a));
    } else {
      throw ParseError("request needs 'pair' {phi, psi} or 'angle_deg'");
    }

    const PureState phi = PureState::qubit_from_bloch(phi_dir);
    const PureState psi = PureState::qubit_from_bloch(psi_dir);
    const double born = overlap_sq(phi, psi);
    const double overlap = ontic_overlap(*model->impl, phi, psi);
    const auto f = epistemicity_degree(*model->impl, phi, psi);
    const QubitBasis basis{phi, PureState::qubit_from_bloch(-phi_dir)};
    const OmegaSet omega = find_omega(*model->impl, phi, psi, basis);

    emit(response_json,
         Json{{"model", model->impl->name()},
              {"points", model->impl->space()->size()},
              {"pair", Json{{"phi", vec3_to_json(phi_dir)}, {"psi", vec3_to_json(psi_dir)}}},
              {"born", born},
              {"overlap", overlap},
              {"f", f ? Json(*f) : Json(nullptr)},
              {"omega_measure", omega.psi_mass}});
  });
}

olab_status olab_steer(const char* request_json, char** response_json) {
  return guarded([&] {
    const Json request = parse_request(request_json);
    if (!request.contains("state") || !request.contains("target"))
      throw ParseError("request needs 'state' and 'target'");
    const BipartiteState psi = bipartite_from_json(request["state"]);
    const Decomposition target = decomposition_from_json(request["target"]);
    emit(response_json, to_json(steer(psi, target)));
  });
}

olab_status olab_witness(const olab_model* model, const char* request_json,
                         char** response_json) {
  return guarded([&] {
    const Json request = parse_request(request_json);
    if (!request.contains("state")) throw ParseError("request needs 'state'");
    const BipartiteState psi = bipartite_from_json(request["state"]);

    const SchmidtData sd = schmidt(psi);
    WitnessReport report;
    if (sd.rank() > 2) {
      report = witness_rank_gt2(psi, model ? model->impl.get() : nullptr);
    } else {
      if (!model)
        throw DomainError("two-qubit witnesses need a model handle");
      const double r = request.value("r", 0.5);
      const long long samples = request.value("samples", 64ll);
      if (samples < 1) throw DomainError("'samples' must be positive");
      report = witness_rank2(psi, *model->impl, r, static_cast<std::size_t>(samples));
    }
    emit(response_json, to_json(report));
  });
}

}  // extern "C"
