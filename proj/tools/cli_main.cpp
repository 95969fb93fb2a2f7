// Command-line surface over the shared library. Everything below talks to
// the C API only; exit codes are 0 (all checks pass), 1 (reported check
// failures), 2 (usage or schema error), 3 (theory contradiction).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "compro/compro.h"

namespace {

int status_to_exit(compro_status st) {
  switch (st) {
    case COMPRO_OK: return 0;
    case COMPRO_REPORTED_FAILURES: return 1;
    case COMPRO_INVALID: return 2;
    case COMPRO_CONTRADICTION: return 3;
    default: return 2;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { compro_string_free(s); }
};

struct SystemGuard {
  compro_system* sys = nullptr;
  ~SystemGuard() { compro_system_free(sys); }
};

struct ModelGuard {
  compro_model* m = nullptr;
  ~ModelGuard() { compro_model_free(m); }
};

int fail(compro_status st) {
  std::cerr << "error: " << compro_last_error() << "\n";
  return status_to_exit(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"composite projection systems, rotating families, windmills"};
  app.require_subcommand(1);

  // ---- check ----
  std::string check_file, check_theta, check_report;
  bool strict = false;
  auto* check = app.add_subcommand("check", "verify the axioms of an instance");
  check->add_option("file", check_file)->required();
  check->add_option("--theta", check_theta, "rational p/q; default: instance theta");
  check->add_flag("--strict", strict, "reject load warnings");
  check->add_option("--report", check_report, "write the JSON report here");

  // ---- calibrate ----
  std::string cal_file, cal_report;
  auto* cal = app.add_subcommand("calibrate", "compute the constant stack");
  cal->add_option("file", cal_file)->required();
  cal->add_option("--report", cal_report);

  // ---- complex ----
  std::string cx_file, cx_K, cx_out;
  int cx_coord = 1;
  auto* cx = app.add_subcommand("complex", "projection complex of one coordinate, DOT");
  cx->add_option("file", cx_file)->required();
  cx->add_option("--coord", cx_coord)->required();
  cx->add_option("--K", cx_K)->required();
  cx->add_option("--out", cx_out);

  // ---- gen ----
  std::string gen_kind, gen_out, gen_break, gen_theta = "0";
  std::uint64_t gen_seed = 1;
  int gen_vertices = 40, gen_segments = 12, gen_overlap = 0, gen_m = 2,
      gen_radius = 6;
  std::string gen_edges, gen_q = "auto", gen_D = "1";
  auto* gen = app.add_subcommand("gen", "materialize a model into instance tables");
  gen->add_option("--kind", gen_kind, "tree-segments | adversarial | graph-product")
      ->required();
  gen->add_option("--seed", gen_seed);
  gen->add_option("--vertices", gen_vertices);
  gen->add_option("--segments", gen_segments);
  gen->add_option("--overlap", gen_overlap);
  gen->add_option("--break", gen_break, "adversarial kind");
  gen->add_option("--theta", gen_theta);
  gen->add_option("--m", gen_m);
  gen->add_option("--edges", gen_edges, "commutation edges, e.g. \"1-2,2-3\"");
  gen->add_option("--q", gen_q, "rotation exponent or 'auto'");
  gen->add_option("--D", gen_D, "distance weight, rational");
  gen->add_option("--radius", gen_radius);
  gen->add_option("--out", gen_out);

  // ---- windmill ----
  std::string wm_model, wm_trace, wm_pres, wm_form = "transversal";
  int wm_budget = 500, wm_radius = 0;
  auto* wm = app.add_subcommand("windmill", "run the unfolding process");
  wm->add_option("--model", wm_model)->required();
  wm->add_option("--radius", wm_radius, "override the spec radius");
  wm->add_option("--budget", wm_budget);
  wm->add_option("--trace", wm_trace, "write JSON-lines trace here");
  wm->add_option("--presentation", wm_pres);
  wm->add_option("--form", wm_form);

  // ---- greendlinger ----
  std::string gl_model, gl_word, gl_report;
  int gl_steps = 0;
  auto* gl = app.add_subcommand("greendlinger", "shortening search and full reduction");
  gl->add_option("--model", gl_model)->required();
  gl->add_option("--word", gl_word)->required();
  gl->add_option("--max-steps", gl_steps);
  gl->add_option("--report", gl_report);

  // ---- present ----
  std::string pr_model, pr_form = "transversal", pr_out;
  int pr_budget = 500;
  auto* pr = app.add_subcommand("present", "emit the presentation of a windmill run");
  pr->add_option("--model", pr_model)->required();
  pr->add_option("--form", pr_form);
  pr->add_option("--budget", pr_budget);
  pr->add_option("--out", pr_out);

  // ---- oracle ----
  std::string or_model, or_word;
  auto* orc = app.add_subcommand("oracle", "word-problem verdicts for a group word");
  orc->add_option("--model", or_model)->required();
  orc->add_option("--word", or_word)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      SystemGuard sys;
      auto st = compro_system_load_file(check_file.c_str(), strict ? 1 : 0, &sys.sys);
      if (st != COMPRO_OK) return fail(st);
      StringGuard rep;
      st = compro_check(sys.sys, check_theta.empty() ? nullptr : check_theta.c_str(),
                        &rep.s);
      if (st != COMPRO_OK && st != COMPRO_REPORTED_FAILURES) return fail(st);
      spill(check_report, rep.s);
      return status_to_exit(st);
    }

    if (*cal) {
      SystemGuard sys;
      auto st = compro_system_load_file(cal_file.c_str(), 0, &sys.sys);
      if (st != COMPRO_OK) return fail(st);
      StringGuard rep;
      st = compro_calibrate(sys.sys, &rep.s);
      if (st != COMPRO_OK) return fail(st);
      spill(cal_report, rep.s);
      return 0;
    }

    if (*cx) {
      SystemGuard sys;
      auto st = compro_system_load_file(cx_file.c_str(), 0, &sys.sys);
      if (st != COMPRO_OK) return fail(st);
      StringGuard dot;
      st = compro_complex_dot(sys.sys, cx_coord, cx_K.c_str(), &dot.s);
      if (st != COMPRO_OK) return fail(st);
      spill(cx_out, dot.s);
      return 0;
    }

    if (*gen) {
      std::ostringstream spec;
      if (gen_kind == "tree-segments") {
        spec << "{\"kind\":\"tree-segments\",\"seed\":" << gen_seed
             << ",\"vertices\":" << gen_vertices << ",\"segment_count\":" << gen_segments
             << ",\"overlap\":" << gen_overlap << ",\"theta\":\"" << gen_theta << "\"}";
      } else if (gen_kind == "adversarial") {
        spec << "{\"kind\":\"adversarial\",\"break\":\"" << gen_break
             << "\",\"theta\":\"" << gen_theta << "\"}";
      } else if (gen_kind == "graph-product") {
        spec << "{\"kind\":\"graph-product\",\"m\":" << gen_m << ",\"radius\":"
             << gen_radius << ",\"D\":\"" << gen_D << "\",\"q\":";
        if (gen_q == "auto") spec << "\"auto\"";
        else spec << gen_q;
        spec << ",\"edges\":[";
        bool first = true;
        std::istringstream es(gen_edges);
        std::string tok;
        while (std::getline(es, tok, ',')) {
          auto dash = tok.find('-');
          if (dash == std::string::npos) continue;
          if (!first) spec << ",";
          spec << "[" << tok.substr(0, dash) << "," << tok.substr(dash + 1) << "]";
          first = false;
        }
        spec << "]}";
      } else {
        std::cerr << "error: unknown --kind\n";
        return 2;
      }
      StringGuard inst;
      auto st = compro_gen_instance(spec.str().c_str(), &inst.s);
      if (st != COMPRO_OK) return fail(st);
      spill(gen_out, inst.s);
      return 0;
    }

    auto load_model = [&](const std::string& path, int radius_override,
                          ModelGuard& mg) -> compro_status {
      std::string text = slurp(path);
      if (radius_override > 0) {
        // keep the spec file authoritative except for the radius knob
        auto pos = text.rfind('}');
        if (pos != std::string::npos) {
          std::string patched = text.substr(0, pos) +
                                ",\"radius\":" + std::to_string(radius_override) + "}";
          text = patched;
        }
      }
      return compro_model_create(text.c_str(), &mg.m);
    };

    if (*wm) {
      ModelGuard mg;
      auto st = load_model(wm_model, wm_radius, mg);
      if (st != COMPRO_OK) return fail(st);
      StringGuard trace, pres;
      st = compro_windmill(mg.m, wm_budget, wm_form.c_str(), &trace.s, &pres.s);
      if (st != COMPRO_OK && st != COMPRO_REPORTED_FAILURES) return fail(st);
      spill(wm_trace, trace.s);
      spill(wm_pres.empty() && wm_trace.empty() ? "-" : wm_pres, pres.s);
      return status_to_exit(st);
    }

    if (*gl) {
      ModelGuard mg;
      auto st = load_model(gl_model, 0, mg);
      if (st != COMPRO_OK) return fail(st);
      StringGuard rep;
      st = compro_greendlinger(mg.m, gl_word.c_str(), gl_steps, &rep.s);
      if (rep.s) spill(gl_report, rep.s);
      if (st != COMPRO_OK) return fail(st);
      return 0;
    }

    if (*pr) {
      ModelGuard mg;
      auto st = load_model(pr_model, 0, mg);
      if (st != COMPRO_OK) return fail(st);
      StringGuard trace, pres;
      st = compro_windmill(mg.m, pr_budget, pr_form.c_str(), &trace.s, &pres.s);
      if (st != COMPRO_OK && st != COMPRO_REPORTED_FAILURES) return fail(st);
      spill(pr_out, pres.s);
      return status_to_exit(st);
    }

    if (*orc) {
      ModelGuard mg;
      auto st = load_model(or_model, 0, mg);
      if (st != COMPRO_OK) return fail(st);
      StringGuard verdict;
      st = compro_oracle(mg.m, or_word.c_str(), &verdict.s);
      if (st != COMPRO_OK) return fail(st);
      spill("", verdict.s);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
