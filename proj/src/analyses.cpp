#include "affina/analyses.hpp"

#include <chrono>
#include <fstream>
#include <set>

#include "affina/version.hpp"

namespace affina {

namespace {

ordered_json report_to_json(Report const& R) {
  ordered_json sizes;
  for (auto const& [k, v] : R.sizes) {
    sizes[k] = v;
  }
  ordered_json clauses = ordered_json::array();
  for (auto const& c : R.clauses) {
    ordered_json entry{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) {
      entry["detail"] = c.detail;
    }
    clauses.push_back(entry);
  }
  return ordered_json{{"name", R.analysis},
                      {"ok", R.ok},
                      {"applicable", R.applicable},
                      {"sizes", sizes},
                      {"clauses", clauses}};
}

Report datum_analysis(Instance const& inst, ordered_json& extra) {
  Report R;
  R.analysis  = "datum";
  auto const& E = *inst.ext;
  if (!check_affine(E, inst.m_table)) {
    R.add("affine_check", false, "the supplied m is not an affine difference operation");
    return R;
  }
  R.add("affine_check", true, inst.m_searched ? "m found by term search" : "m supplied");
  auto [D, T] = deconstruct(E, inst.lifting, inst.m_table);

  PairAlgebra P = build_pair_algebra(E);
  R.sizes       = {{"algebra", E.A.size()},
                   {"quotient", E.Q.size()},
                   {"pair_algebra", P.P.size()},
                   {"fiber_algebra", static_cast<int>(D.rho.size())}};

  FiniteAlgebra AT = reconstruct(D, T);
  {
    std::set<int> hit(D.gamma.begin(), D.gamma.end());
    R.add("round_trip_gamma_isomorphism",
          static_cast<int>(hit.size()) == E.A.size()
              && is_homomorphism(E.A, AT, D.gamma));
  }
  R.add("semidirect_matches_fiber_algebra", semidirect(D) == D.S);
  R.add("cocycle_fiber_condition", fiber_respecting(D, T));
  {
    bool rho_hom = true;
    for (size_t s = 0; s < AT.signature().size(); ++s) {
      int              k = AT.signature()[s].arity;
      std::vector<int> tup(k, 0), img(k);
      do {
        for (int i = 0; i < k; ++i) {
          img[i] = D.rho[tup[i]];
        }
        if (D.rho[AT.apply(s, tup)] != D.Q.apply(s, img)) {
          rho_hom = false;
        }
      } while (next_tuple(tup, AT.size()));
    }
    R.add("rho_homomorphism", rho_hom);
  }
  {
    bool indep = true;
    for (auto const& l2 : all_liftings(E)) {
      if (!equivalent(D, cocycle_of_lifting(D, E, l2), T).has_value()) {
        indep = false;
      }
    }
    R.add("lifting_independence", indep);
  }
  extra["datum"]   = datum_to_json(D);
  extra["cocycle"] = cocycle_to_json(D, T);
  return R;
}

Report cohomology_analysis(Instance const& inst, ordered_json& extra) {
  Report R;
  R.analysis  = "cohomology";
  auto const& E = *inst.ext;
  if (!check_affine(E, inst.m_table)) {
    R.add("affine_check", false);
    return R;
  }
  auto [D, T] = deconstruct(E, inst.lifting, inst.m_table);
  CohomologyGroup H = cohomology_group(D, inst.identities);
  R.sizes           = {{"cocycles", static_cast<int>(H.cocycles.size())},
                       {"classes", H.order()}};
  R.add("group_axioms", true, "verified during construction");
  R.add("zero_class_is_semidirect_cocycle", H.zero_class >= 0);
  int t_cls = class_of_cocycle(D, H, T);
  R.add("witness_cocycle_in_a_class", t_cls >= 0,
        "class " + std::to_string(t_cls));
  ordered_json reps = ordered_json::array();
  for (int c = 0; c < H.order(); ++c) {
    reps.push_back(ordered_json{{"class", c},
                                {"members", H.classes[c].size()},
                                {"representative", cocycle_to_json(D, H.rep_cocycle(c))}});
  }
  extra["classes"]        = reps;
  extra["addition_table"] = H.add_table;
  extra["zero_class"]     = H.zero_class;
  return R;
}

Report modexp_analysis(Instance const& inst) {
  if (!inst.mod) {
    throw InputError("the modexp analysis needs a module-form instance");
  }
  return check_module_exactness(*inst.mod, inst.lifting, inst.identities);
}

std::string render_text(ordered_json const& report) {
  std::string out;
  out += "instance: " + report["instance"].get<std::string>() + "\n";
  for (auto const& a : report["analyses"]) {
    std::string status = a["ok"].get<bool>()
                             ? (a["applicable"].get<bool>() ? "PASS" : "NOT APPLICABLE")
                             : "FAIL";
    out += a["name"].get<std::string>() + ": " + status + "\n";
    if (a.contains("sizes")) {
      for (auto const& [k, v] : a["sizes"].items()) {
        out += "  " + k + " = " + v.dump() + "\n";
      }
    }
    for (auto const& c : a["clauses"]) {
      out += std::string("  [") + (c["pass"].get<bool>() ? "ok" : "FAIL") + "] "
             + c["name"].get<std::string>();
      if (c.contains("detail")) {
        out += " (" + c["detail"].get<std::string>() + ")";
      }
      out += "\n";
    }
  }
  out += report["all_pass"].get<bool>() ? "all analyses passed\n" : "failures present\n";
  return out;
}

}  // namespace

RunResult run_instance(nlohmann::json const& doc, RunOptions const& options) {
  auto start = std::chrono::steady_clock::now();
  RunResult result;
  try {
    Instance inst = load_instance(doc, options.force);
    std::vector<std::string> selected =
        options.analyses.empty() ? inst.analyses : options.analyses;
    if (selected.empty()) {
      throw InputError("no analyses selected (instance lists none; pass --analysis)");
    }
    ordered_json analyses = ordered_json::array();
    bool         all_pass = true;
    for (auto const& name : selected) {
      ordered_json extra;
      Report       R;
      try {
        if (name == "datum") {
          R = datum_analysis(inst, extra);
        } else if (name == "cohomology") {
          R = cohomology_analysis(inst, extra);
        } else if (name == "wells") {
          R = check_wells_exactness(*inst.ext, inst.lifting, inst.m_table,
                                   inst.identities);
        } else if (name == "decompose") {
          R = decompose_automorphisms(*inst.ext, inst.lifting, inst.m_table, inst.identities);
        } else if (name == "central") {
          R = central_simplification(*inst.ext, inst.lifting, inst.m_table);
        } else if (name == "modexp") {
          R = modexp_analysis(inst);
        } else {
          throw InputError("unknown analysis \"" + name + "\"");
        }
      } catch (std::logic_error const& e) {
        // failed theorem checks and broken internal invariants are report
        // content, never aborts
        R.analysis = name;
        R.add("internal_error", false, e.what());
      } catch (InputError const&) {
        throw;
      } catch (std::runtime_error const& e) {
        // search budgets exceeded mid-analysis count as guardrail errors
        throw InputError(e.what());
      }
      all_pass = all_pass && R.ok;
      ordered_json entry = report_to_json(R);
      for (auto const& [k, v] : extra.items()) {
        entry[k] = v;
      }
      analyses.push_back(entry);
    }
    result.report = ordered_json{{"instance", inst.id},
                                 {"version", version_string},
                                 {"analyses", analyses},
                                 {"all_pass", all_pass}};
    result.report["stability_hash"] = fnv1a_hex(result.report.dump());
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    result.report["timing_ms"] = elapsed.count();
    result.exit_code           = all_pass ? 0 : 1;
    result.rendered            = options.format == "text" ? render_text(result.report)
                                                          : result.report.dump(2) + "\n";
  } catch (InputError const& e) {
    result.exit_code = 2;
    result.report    = ordered_json{{"error", e.what()}};
    result.rendered  = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

RunResult run_file(std::string const& path, RunOptions const& options) {
  std::ifstream in(path);
  if (!in) {
    RunResult r;
    r.exit_code = 2;
    r.report    = ordered_json{{"error", "cannot open " + path}};
    r.rendered  = "error: cannot open " + path + "\n";
    return r;
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (nlohmann::json::exception const& e) {
    RunResult r;
    r.exit_code = 2;
    r.report    = ordered_json{{"error", e.what()}};
    r.rendered  = std::string("error: ") + e.what() + "\n";
    return r;
  }
  return run_instance(doc, options);
}

}  // namespace affina
