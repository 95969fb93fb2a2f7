#include "compro/compro.h"

#include <cstring>
#include <string>

#include "core/axioms.hpp"
#include "core/calibrate.hpp"
#include "core/complex.hpp"
#include "core/errors.hpp"
#include "core/greendlinger.hpp"
#include "core/json_io.hpp"
#include "core/model.hpp"
#include "core/rotors.hpp"
#include "core/windmill.hpp"

using namespace compro;

struct compro_system {
  CompositeSystem sys;
  Metrics metrics;
  explicit compro_system(CompositeSystem s) : sys(std::move(s)), metrics(sys) {}
};

struct compro_model {
  std::unique_ptr<GraphProductModel> model;
  // the presentation is produced on demand and reused for symbol words
  std::optional<RunResult> run;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
compro_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const usage_error& e) {
    g_last_error = e.what();
    return COMPRO_INVALID;
  } catch (const contradiction_error& e) {
    g_last_error = e.what();
    return COMPRO_CONTRADICTION;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return COMPRO_ERROR;
  }
}

const RunResult& ensure_run(compro_model* m) {
  if (!m->run) m->run = run_windmill(*m->model);
  return *m->run;
}

}  // namespace

extern "C" {

const char* compro_last_error(void) { return g_last_error.c_str(); }

void compro_string_free(char* s) { std::free(s); }

compro_status compro_system_load_file(const char* path, int strict,
                                      compro_system** out) {
  return guarded([&]() -> compro_status {
    if (!path || !out) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    LoadOptions opt;
    opt.strict = strict != 0;
    *out = new compro_system(load_system_file(path, opt));
    return COMPRO_OK;
  });
}

compro_status compro_system_load_json(const char* json, int strict,
                                      compro_system** out) {
  return guarded([&]() -> compro_status {
    if (!json || !out) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    LoadOptions opt;
    opt.strict = strict != 0;
    Json doc = Json::parse(json);
    *out = new compro_system(load_system_json(doc, opt));
    return COMPRO_OK;
  });
}

void compro_system_free(compro_system* sys) { delete sys; }

compro_status compro_check(compro_system* sys, const char* theta, char** report) {
  return guarded([&]() -> compro_status {
    if (!sys || !report) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    Rational t = theta ? Rational::parse(theta) : sys->sys.theta();
    auto rep = check_axioms(sys->sys, t);
    *report = dup_string(canonical(report_json(rep)));
    return rep.pass() ? COMPRO_OK : COMPRO_REPORTED_FAILURES;
  });
}

compro_status compro_calibrate(compro_system* sys, char** ladder_json) {
  return guarded([&]() -> compro_status {
    if (!sys || !ladder_json) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    auto cal = calibrate_constants(sys->metrics);
    if (!cal.ok) {
      g_last_error = cal.failure;
      return COMPRO_REPORTED_FAILURES;
    }
    Json j = compro::ladder_json(cal.ladder);
    Json binding = Json::array();
    for (const auto& b : cal.binding) binding.push_back(b);
    j["binding"] = binding;
    *ladder_json = dup_string(canonical(j));
    return COMPRO_OK;
  });
}

compro_status compro_complex_dot(compro_system* sys, int coord, const char* K,
                                 char** dot) {
  return guarded([&]() -> compro_status {
    if (!sys || !K || !dot) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    auto pc = build_projection_complex(sys->metrics, coord, Rational::parse(K));
    *dot = dup_string(complex_dot(sys->sys, pc));
    return COMPRO_OK;
  });
}

compro_status compro_system_to_json(compro_system* sys, char** json) {
  return guarded([&]() -> compro_status {
    if (!sys || !json) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    *json = dup_string(canonical(system_json(sys->sys)));
    return COMPRO_OK;
  });
}

compro_status compro_gen_instance(const char* model_spec_json, char** instance_json) {
  return guarded([&]() -> compro_status {
    if (!model_spec_json || !instance_json) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    auto spec = parse_model_spec(Json::parse(model_spec_json));
    Json out;
    if (spec.kind == "tree-segments") {
      auto res = gen_tree_segments(spec.tree_segments);
      out = system_json(*res.system);
      out["generator"] = Json{{"kind", "tree-segments"}, {"seed", res.seed}};
    } else if (spec.kind == "adversarial") {
      if (spec.adversarial == AdversarialKind::RotationTooSmall) {
        g_last_error = "rotation-too-small is model-backed; use a graph-product "
                       "spec with q = 1 and allow_unsafe";
        return COMPRO_INVALID;
      }
      auto sys = gen_adversarial(spec.adversarial, spec.theta);
      out = system_json(*sys);
      out["generator"] =
          Json{{"kind", "adversarial"},
               {"break", adversarial_kind_name(spec.adversarial)}};
    } else if (spec.kind == "graph-product") {
      auto model = GraphProductModel::build(spec.graph_product);
      out = system_json(model->system());
      out["generator"] = Json{{"kind", "graph-product"}, {"q", model->q()}};
    } else {
      g_last_error = "unknown model kind";
      return COMPRO_INVALID;
    }
    *instance_json = dup_string(canonical(out));
    return COMPRO_OK;
  });
}

compro_status compro_model_create(const char* model_spec_json, compro_model** out) {
  return guarded([&]() -> compro_status {
    if (!model_spec_json || !out) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    auto spec = parse_model_spec(Json::parse(model_spec_json));
    if (spec.kind != "graph-product") {
      g_last_error = "model handles require a graph-product spec";
      return COMPRO_INVALID;
    }
    auto m = new compro_model;
    m->model = GraphProductModel::build(spec.graph_product);
    *out = m;
    return COMPRO_OK;
  });
}

void compro_model_free(compro_model* m) { delete m; }

compro_status compro_model_ladder(compro_model* m, char** ladder_json) {
  return guarded([&]() -> compro_status {
    if (!m || !ladder_json) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    *ladder_json = dup_string(canonical(compro::ladder_json(m->model->ladder())));
    return COMPRO_OK;
  });
}

compro_status compro_verify_family(compro_model* m, char** report) {
  return guarded([&]() -> compro_status {
    if (!m || !report) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    auto rep = verify_rotating_family(*m->model);
    auto stat = [](const CheckStat& s) {
      Json w = Json::array();
      for (const auto& x : s.witnesses) w.push_back(x);
      return Json{{"pass", s.pass_count},
                  {"fail", s.fail_count},
                  {"inconclusive", s.inconclusive},
                  {"witnesses", w}};
    };
    Json j{{"conjugation", stat(rep.conjugation)},
           {"commutation", stat(rep.commutation)},
           {"rotation_bound", stat(rep.rotation_bound)},
           {"fixes_inactive", stat(rep.fixes_inactive)},
           {"ok", rep.ok()}};
    *report = dup_string(canonical(j));
    return rep.ok() ? COMPRO_OK : COMPRO_REPORTED_FAILURES;
  });
}

compro_status compro_windmill(compro_model* m, int budget, const char* form,
                              char** trace, char** presentation) {
  return guarded([&]() -> compro_status {
    if (!m || !trace || !presentation) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    PresentationForm f = PresentationForm::Transversal;
    if (form && std::string(form) == "closure") f = PresentationForm::Closure;
    else if (form && std::string(form) != "transversal") {
      g_last_error = "form must be 'transversal' or 'closure'";
      return COMPRO_INVALID;
    }
    auto res = run_windmill(*m->model, budget > 0 ? budget : 500, f);
    std::string lines;
    for (const auto& r : res.trace) lines += trace_json(*m->model, r).dump() + "\n";
    *trace = dup_string(lines);
    *presentation = dup_string(canonical(presentation_json(*m->model, res.presentation)));
    compro_status st = res.absorbed ? COMPRO_OK : COMPRO_REPORTED_FAILURES;
    if (!res.absorbed) g_last_error = "budget exhausted before full absorption";
    m->run = std::move(res);
    return st;
  });
}

compro_status compro_greendlinger(compro_model* m, const char* word, int max_steps,
                                  char** report) {
  return guarded([&]() -> compro_status {
    if (!m || !word || !report) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    Word parsed = Word::parse(word);
    bool symbolic = std::any_of(parsed.syl.begin(), parsed.syl.end(),
                                [](const Syllable& s) { return s.gen < 0; });
    Word gamma = parsed;
    int cap = max_steps;
    if (symbolic) {
      const auto& run = ensure_run(m);
      gamma = symbols_to_group(run.presentation, m->model->calc(), parsed);
      if (cap <= 0) cap = static_cast<int>(parsed.size()) + 1;
    }
    if (cap <= 0) cap = 64;
    auto red = greendlinger_reduce(*m->model, gamma, cap);
    bool trivial = m->model->trivial(gamma);
    Json steps = Json::array();
    for (const auto& s : red.steps)
      steps.push_back(Json{{"coord", s.coord},
                           {"witness", id_json(s.witness)},
                           {"center", id_json(s.center)},
                           {"exponent", s.exponent},
                           {"displacement", s.displacement.str()},
                           {"after", s.after.str()}});
    Json j{{"trivial", trivial},
           {"steps", steps},
           {"reached_identity", red.reached_identity},
           {"diagnostic", red.diagnostic}};
    *report = dup_string(canonical(j));
    if (!trivial && !red.reached_identity) return COMPRO_CONTRADICTION;
    return COMPRO_OK;
  });
}

compro_status compro_oracle(compro_model* m, const char* word, char** verdict) {
  return guarded([&]() -> compro_status {
    if (!m || !word || !verdict) {
      g_last_error = "null argument";
      return COMPRO_INVALID;
    }
    Word parsed = Word::parse(word);
    for (const auto& s : parsed.syl)
      if (s.gen < 0) {
        g_last_error = "oracle takes group words over a1..am";
        return COMPRO_INVALID;
      }
    bool tr = m->model->trivial(parsed);
    bool ker = m->model->kernel_member(parsed);
    Word qnf = m->model->quotient_normal_form(parsed);
    Json j{{"trivial_in_group", tr},
           {"kernel_member", ker},
           {"quotient_normal_form", qnf.str()}};
    *verdict = dup_string(canonical(j));
    return COMPRO_OK;
  });
}

}  // extern "C"
