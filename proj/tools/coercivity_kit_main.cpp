// coercivity-kit: exact lattice/cone computations, coercivity criteria,
// pencil sweeps, alpha-model checks, and the numerical functional lab.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ck/json_io.hpp"
#include "ck/lab/suite.hpp"
#include "ck/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnsatisfied = 3;  // inputs valid, checked property fails
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

constexpr const char* kPencilNote =
    "pencil convention: L(t) = -K + (1 - t) E8 on dp8; t = 1 is the anticanonical "
    "polarization and the ample range is 0 < t < 4/3";

void emit_json(const std::string& path, ck::json j) {
  j["schema"] = 1;
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw ck::DataFileError("cannot write " + path);
  out << j.dump(2) << "\n";
}

void emit_csv(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ck::DataFileError("cannot write " + path);
  out << text;
}

ck::ExactVec parse_class_coeffs(const ck::SurfaceSpec& s, const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (static_cast<int>(parts.size()) != s.rank())
    throw ck::DataFileError("class for " + s.name() + " needs " + std::to_string(s.rank()) +
                            " comma-separated coefficients");
  ck::ExactVec v(s.rank());
  for (int i = 0; i < s.rank(); ++i) v[i] = ck::ExactScalar::parse(parts[i]);
  return v;
}

// ---------------------------------------------------------------------------

int run_curves(const std::string& surface, const std::string& json_path,
               const std::string& csv_path) {
  ck::SurfaceSpec s = ck::SurfaceSpec::from_name(surface);
  auto curves = ck::enumerate_curves(s);
  int minus_one = 0;
  for (const auto& c : curves)
    if (c.role == ck::CurveRole::MinusOne) ++minus_one;

  std::cout << "surface " << s.name() << ": " << curves.size() << " generator classes ("
            << minus_one << " with C^2 = -1, -K.C = 1)\n";
  for (const auto& c : curves) {
    const char* role = c.role == ck::CurveRole::MinusOne ? "minus-one"
                       : c.role == ck::CurveRole::Fiber  ? "fiber    "
                                                         : "line     ";
    std::cout << "  " << role << "  (" << c.str() << ")\n";
  }

  if (!json_path.empty()) {
    ck::json arr = ck::json::array();
    for (const auto& c : curves) arr.push_back(ck::to_json(c));
    emit_json(json_path, {{"command", "curves"},
                          {"surface", s.name()},
                          {"minus_one_count", minus_one},
                          {"curves", arr}});
  }
  if (!csv_path.empty()) {
    std::string csv = "role,coefficients\n";
    for (const auto& c : curves) {
      const char* role = c.role == ck::CurveRole::MinusOne ? "minus-one"
                         : c.role == ck::CurveRole::Fiber  ? "fiber"
                                                           : "line";
      csv += std::string(role) + ",\"" + c.str() + "\"\n";
    }
    emit_csv(csv_path, csv);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int run_check(const std::string& surface, const std::string& class_text,
              const std::string& lambda_text, const std::string& alpha_text,
              bool group_invariant, const std::string& provenance,
              std::vector<std::string> criteria, int dim, const std::string& json_path) {
  ck::SurfaceSpec s = ck::SurfaceSpec::from_name(surface);
  ck::DivisorClass L = ck::anticanonical(s);
  if (!lambda_text.empty()) {
    if (s != ck::SurfaceSpec::blowup(8))
      throw ck::DataFileError("--lambda refers to the dp8 pencil; use --L for other surfaces");
    std::cout << kPencilNote << "\n";
    L = ck::dp8_polarization_pencil().at(ck::ExactScalar::parse(lambda_text));
  } else if (!class_text.empty()) {
    L = ck::DivisorClass{s, parse_class_coeffs(s, class_text)};
  } else {
    L = ck::anticanonical(s);
  }
  ck::AlphaValue alpha{ck::ExactScalar::parse(alpha_text), group_invariant, provenance};

  if (criteria.empty() || (criteria.size() == 1 && criteria[0] == "all"))
    criteria = {"tian", "dervan", "extension", "lsy"};

  bool all_hold = true;
  ck::json verdicts = ck::json::array();
  for (const auto& name : criteria) {
    ck::CriterionVerdict v;
    switch (ck::criterion_from_name(name)) {
      case ck::Criterion::Tian: v = ck::tian_check(alpha, dim); break;
      case ck::Criterion::Dervan: v = ck::dervan_check(L, alpha); break;
      case ck::Criterion::Extension: v = ck::extension_check(L, alpha); break;
      case ck::Criterion::Lsy: v = ck::lsy_check(L, alpha); break;
    }
    all_hold = all_hold && v.holds;
    std::cout << name << ": " << (v.holds ? "holds" : "fails") << "\n";
    for (const auto& c : v.conditions)
      std::cout << "  " << c.name << ": value " << c.value.str() << " vs bound "
                << c.bound.str() << (c.holds ? "  [ok]" : "  [violated]") << "\n";
    if (v.witness) std::cout << "  witness curve: (" << v.witness->str() << ")\n";
    if (v.epsilon_witness)
      std::cout << "  feasible epsilon range: " << v.epsilon_witness->str() << "\n";
    verdicts.push_back(ck::to_json(v));
  }

  if (!json_path.empty())
    emit_json(json_path, {{"command", "check"},
                          {"surface", s.name()},
                          {"L", ck::to_json(L)},
                          {"alpha", ck::to_json(alpha.value)},
                          {"verdicts", verdicts}});
  return all_hold ? kExitOk : kExitUnsatisfied;
}

// ---------------------------------------------------------------------------

int run_pencil(const std::string& model_path, const std::string& criterion_name,
               bool assume_alpha, const std::string& json_path, const std::string& csv_path) {
  std::optional<ck::AlphaModel> model;
  ck::Pencil family = ck::dp8_polarization_pencil();
  if (!model_path.empty()) {
    model = ck::load_alpha_model(model_path);
    if (!model->family) throw ck::DataFileError("model carries no pencil family");
    family = *model->family;
  } else if (!assume_alpha) {
    throw ck::DataFileError("pencil sweep needs --model (or --assume-alpha for the dp8 pencil)");
  }
  std::cout << kPencilNote << "\n";
  ck::Criterion crit = ck::criterion_from_name(criterion_name);
  if (assume_alpha) model.reset();  // drop the alpha clause; curve clauses only
  ck::SweepReport rep = ck::sweep(family, crit, model);

  std::cout << "criterion " << ck::to_string(crit) << "\n";
  std::cout << "ample range:    " << rep.ample.str() << "\n";
  std::cout << "satisfied set:  " << rep.satisfied.str() << "\n";
  for (const auto& c : rep.binding) {
    std::cout << "binding clause: " << c.name;
    if (c.witness) std::cout << "  (curve " << c.witness->str() << ")";
    std::cout << "\n";
  }

  if (!json_path.empty()) {
    ck::json j = ck::to_json(rep);
    j["command"] = "pencil";
    j["model"] = model_path;
    emit_json(json_path, j);
  }
  if (!csv_path.empty()) {
    std::string csv = "clause,c2,c1,c0,strict\n";
    for (const auto& c : rep.clauses) {
      ck::json pj = ck::to_json(c.poly);
      csv += "\"" + c.name + "\"," + pj["c2"].get<std::string>() + "," +
             pj["c1"].get<std::string>() + "," + pj["c0"].get<std::string>() + "," +
             (c.strict ? "1" : "0") + "\n";
    }
    emit_csv(csv_path, csv);
  }
  return rep.satisfied.is_empty() ? kExitUnsatisfied : kExitOk;
}

// ---------------------------------------------------------------------------

int run_alpha(const std::string& model_path, const std::string& at_text,
              const std::string& budget_text, std::vector<std::string> modulus_pairs,
              const std::string& json_path) {
  ck::json report{{"command", "alpha"}, {"model", model_path}};
  bool ok = true;

  ck::AlphaModel model = ck::load_alpha_model(model_path);
  auto issues = ck::validate_model(model);
  if (issues.empty()) {
    std::cout << "model valid (" << model.pieces.size() << " piece(s))\n";
  } else {
    ok = false;
    for (const auto& i : issues) std::cout << "issue: " << i.what << " [" << i.where << "]\n";
  }
  ck::json jissues = ck::json::array();
  for (const auto& i : issues) jissues.push_back({{"what", i.what}, {"where", i.where}});
  report["issues"] = jissues;

  if (!at_text.empty()) {
    ck::ExactScalar t = ck::ExactScalar::parse(at_text);
    ck::ExactScalar v = model.eval(t);
    std::cout << "alpha(" << t.str() << ") = " << v.str() << " ~ " << v.approx() << "\n";
    report["value"] = ck::to_json(v);
  }

  if (!budget_text.empty()) {
    ck::ExactVec dummy;  // parse "alpha,c,eps"
    std::vector<std::string> parts;
    std::string cur;
    for (char c : budget_text) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else
        cur += c;
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw ck::DataFileError("--budget expects alpha,c,epsilon");
    auto b = ck::continuity_budget(ck::ExactScalar::parse(parts[0]),
                                   ck::ExactScalar::parse(parts[1]),
                                   ck::ExactScalar::parse(parts[2]));
    std::cout << "delta = " << b.delta.str() << ", gamma = " << b.gamma.str()
              << ", modulus bound = " << b.bound.str() << " (= epsilon/2)\n";
    report["budget"] = {{"delta", ck::to_json(b.delta)},
                       {"gamma", ck::to_json(b.gamma)},
                       {"bound", ck::to_json(b.bound)}};
  }

  if (!modulus_pairs.empty()) {
    std::vector<std::pair<ck::ExactScalar, ck::ExactScalar>> pairs;
    for (const auto& p : modulus_pairs) {
      auto comma = p.find(',');
      if (comma == std::string::npos) throw ck::DataFileError("--modulus expects t,t_prime");
      pairs.emplace_back(ck::ExactScalar::parse(p.substr(0, comma)),
                         ck::ExactScalar::parse(p.substr(comma + 1)));
    }
    auto entries = ck::check_continuity_modulus(model, pairs);
    ck::json jmod = ck::json::array();
    for (const auto& e : entries) {
      ok = ok && e.ok;
      std::cout << "modulus (" << e.t.str() << " -> " << e.t_prime.str()
                << "): |diff| = " << e.difference.approx() << ", bound = " << e.bound.approx()
                << (e.ok ? "  [ok]" : "  [violated]") << "\n";
      jmod.push_back({{"t", ck::to_json(e.t)},
                      {"t_prime", ck::to_json(e.t_prime)},
                      {"gamma", ck::to_json(e.gamma)},
                      {"difference", ck::to_json(e.difference)},
                      {"bound", ck::to_json(e.bound)},
                      {"ok", e.ok}});
    }
    report["modulus"] = jmod;
  }

  if (!json_path.empty()) emit_json(json_path, report);
  return ok ? kExitOk : kExitUnsatisfied;
}

// ---------------------------------------------------------------------------

int run_lab(const std::string& geometry, int samples, std::uint64_t seed, double beta,
            double tol, int grid, int path_samples, const std::string& json_path,
            const std::string& csv_path) {
  auto kind = ck::lab::geometry_from_name(geometry);
  auto suite = ck::lab::lemma_suite(kind, samples, seed, beta, tol, grid);
  std::cout << "geometry " << geometry << ", " << samples << " sample(s), seed " << seed
            << ", beta " << beta << "\n";
  std::cout << "inequality failures: " << suite.failures << "\n";
  std::cout << "worst residual:      " << suite.worst_residual << "\n";
  std::cout << "worst translation:   " << suite.worst_translation << "\n";
  std::cout << "coercivity fit:      M ~ " << suite.fit.slope << " * I + "
            << suite.fit.intercept << "\n";

  bool ok = suite.passed;
  ck::json j{{"command", "lab"},
             {"geometry", geometry},
             {"samples", samples},
             {"seed", seed},
             {"beta", beta},
             {"tolerance", tol},
             {"failures", suite.failures},
             {"worst_residual", suite.worst_residual},
             {"worst_translation", suite.worst_translation},
             {"fit", {{"slope", suite.fit.slope}, {"intercept", suite.fit.intercept}}}};

  if (path_samples > 0 && kind == ck::lab::GeometryKind::Sphere) {
    auto pc = ck::lab::path_check(path_samples, seed, 1e-4, grid);
    std::cout << "path-integral deviation (worst relative): " << pc.worst_rel_dev << "\n";
    std::cout << "grid-refinement ratio: " << pc.refine_ratio << " (expect ~4)\n";
    ok = ok && pc.passed;
    j["path_check"] = {{"samples", path_samples},
                       {"worst_rel_dev", pc.worst_rel_dev},
                       {"refine_ratio", pc.refine_ratio},
                       {"passed", pc.passed}};
  }

  if (!json_path.empty()) emit_json(json_path, j);
  if (!csv_path.empty()) {
    std::string csv =
        "index,min_ratio,halvings,aubin_i,entropy,energy,mabuchi,r_aubin,r_gibbs,r_sup,"
        "r_chain,translation_dev,ok\n";
    for (const auto& r : suite.records) {
      char line[512];
      std::snprintf(line, sizeof line,
                    "%d,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                    r.index, r.min_ratio, r.halvings, r.i_value, r.entropy_value,
                    r.energy_value, r.mabuchi_value, r.res.r_aubin, r.res.r_gibbs, r.res.r_sup,
                    r.res.r_chain, r.translation_dev, r.ok ? 1 : 0);
      csv += line;
    }
    emit_csv(csv_path, csv);
  }
  return ok ? kExitOk : kExitUnsatisfied;
}

// ---------------------------------------------------------------------------

int run_reproduce(const std::string& target, const std::string& fixtures_dir) {
  using ck::ExactScalar;
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << ": " << detail << "\n";
    all_ok = all_ok && ok;
  };
  const bool want_all = target == "all";

  if (want_all || target == "curve-counts") {
    static const int expected[] = {1, 3, 6, 10, 16, 27, 56, 240};
    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 8; ++k) {
      int n = 0;
      for (const auto& c : ck::enumerate_curves(ck::SurfaceSpec::blowup(k)))
        if (c.role == ck::CurveRole::MinusOne) ++n;
      ok = ok && n == expected[k - 1];
      detail += (k > 1 ? "," : "") + std::to_string(n);
    }
    report("curve-counts", ok, "k=1..8 -> " + detail);
  }

  if (want_all || target == "dervan-window" || target == "lsy-containment") {
    std::cout << kPencilNote << "\n";
    ck::AlphaModel model = ck::load_alpha_model(fixtures_dir + "/alpha_dp8_pencil.json");
    ck::SweepReport dervan = ck::sweep(*model.family, ck::Criterion::Dervan, model);

    ck::ExactScalar rt10 = ck::ExactScalar::sqrt_of(10);
    ck::IntervalSet want;
    want.unite_with(ck::Interval::open((ExactScalar(10) - rt10) / ExactScalar(9),
                                       rt10 - ExactScalar(2)));

    if (want_all || target == "dervan-window") {
      bool ok = dervan.satisfied == want;
      bool witness_lo = false, witness_hi = false;
      for (const auto& c : dervan.binding) {
        if (!c.witness) continue;
        std::string w = c.witness->str();
        if (w == "6,2,2,2,2,2,2,2,3") witness_lo = true;
        if (w == "0,0,0,0,0,0,0,0,-1") witness_hi = true;
      }
      report("dervan-window", ok && witness_lo && witness_hi,
             "dervan set = " + dervan.satisfied.str() + ", witnesses " +
                 (witness_lo ? "low-end curve ok" : "low-end curve missing") + " / " +
                 (witness_hi ? "E8 ok" : "E8 missing"));
    }

    if (want_all || target == "lsy-containment") {
      ck::SweepReport lsy = ck::sweep(*model.family, ck::Criterion::Lsy, model);
      auto rel = ck::compare_intervals(dervan.satisfied, lsy.satisfied);
      report("lsy-containment", rel == ck::IntervalRelation::AStrictlyContainsB,
             "lsy set = " + lsy.satisfied.str() + " vs dervan set = " +
                 dervan.satisfied.str() + " (" + ck::to_string(rel) + ")");
    }
  }

  if (want_all || target == "lemma-suite") {
    auto s1 = ck::lab::lemma_suite(ck::lab::GeometryKind::Sphere, 200, 20240801);
    auto s2 = ck::lab::lemma_suite(ck::lab::GeometryKind::ProductSpheres, 100, 20240802);
    report("lemma-suite",
           s1.passed && s2.passed && s1.fit.slope > 0 && s2.fit.slope > 0,
           "sphere failures " + std::to_string(s1.failures) + ", product failures " +
               std::to_string(s2.failures));
  }

  return all_ok ? kExitOk : kExitUnsatisfied;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coercivity-kit: exact coercivity criteria on del Pezzo lattices and a "
               "numerical functional lab"};
  app.require_subcommand(1);

  std::string surface = "dp8", json_path, csv_path;

  auto* curves_cmd = app.add_subcommand("curves", "enumerate Mori cone generator classes");
  curves_cmd->add_option("--surface", surface, "dp0..dp8 or p1xp1");
  curves_cmd->add_option("--json", json_path, "write a JSON report (path or -)");
  curves_cmd->add_option("--csv", csv_path, "write CSV (path or -)");

  std::string class_text, lambda_text, alpha_text = "1", provenance;
  std::vector<std::string> criteria;
  bool group_invariant = false;
  int dim = 2;
  auto* check_cmd = app.add_subcommand("check", "evaluate coercivity criteria at one class");
  check_cmd->add_option("--surface", surface, "dp0..dp8 or p1xp1");
  check_cmd->add_option("--L", class_text, "polarization coefficients, comma separated");
  check_cmd->add_option("--lambda", lambda_text, "parameter on the dp8 pencil instead of --L");
  check_cmd->add_option("--alpha", alpha_text, "alpha lower bound (exact, e.g. 5/6)")
      ->required();
  check_cmd->add_flag("--group-invariant", group_invariant,
                      "alpha is a group-invariant bound");
  check_cmd->add_option("--provenance", provenance, "where the alpha value comes from");
  check_cmd->add_option("--criterion", criteria, "tian|dervan|extension|lsy|all");
  check_cmd->add_option("--dim", dim, "complex dimension for the tian test");
  check_cmd->add_option("--json", json_path, "write a JSON report");

  std::string model_path, criterion_name = "dervan";
  bool assume_alpha = false;
  auto* pencil_cmd = app.add_subcommand("pencil", "sweep a criterion along a pencil");
  pencil_cmd->add_option("--model", model_path, "alpha model JSON file");
  pencil_cmd->add_flag("--assume-alpha", assume_alpha,
                       "drop the alpha clause and sweep the curve clauses alone "
                       "(defaults to the dp8 pencil when no model is given)");
  pencil_cmd->add_option("--criterion", criterion_name, "dervan|extension|lsy");
  pencil_cmd->add_option("--json", json_path, "write a JSON report");
  pencil_cmd->add_option("--csv", csv_path, "write clause CSV");

  std::string at_text, budget_text;
  std::vector<std::string> modulus_pairs;
  auto* alpha_cmd = app.add_subcommand("alpha", "validate and query an alpha model");
  alpha_cmd->add_option("--model", model_path, "alpha model JSON file")->required();
  alpha_cmd->add_option("--at", at_text, "evaluate the model at t");
  alpha_cmd->add_option("--budget", budget_text, "alpha,c,epsilon continuity budget");
  alpha_cmd->add_option("--modulus", modulus_pairs, "t,t_prime continuity-modulus pair");
  alpha_cmd->add_option("--json", json_path, "write a JSON report");

  std::string geometry = "sphere";
  int samples = 200, grid = 0, path_samples = 0;
  std::uint64_t seed = 20240801;
  double beta = 0.9, tol = 1e-6;
  auto* lab_cmd = app.add_subcommand("lab", "run the functional inequality suite");
  lab_cmd->add_option("--geometry", geometry, "sphere or product");
  lab_cmd->add_option("--samples", samples, "number of random potentials");
  lab_cmd->add_option("--seed", seed, "random seed");
  lab_cmd->add_option("--beta", beta, "inverse temperature for the free-energy bound");
  lab_cmd->add_option("--tol", tol, "relative tolerance for residual checks");
  lab_cmd->add_option("--grid", grid, "grid points per axis (0 = default)");
  lab_cmd->add_option("--path-check", path_samples,
                      "also cross-check the path-integral energy on this many samples");
  lab_cmd->add_option("--json", json_path, "write a JSON report");
  lab_cmd->add_option("--csv", csv_path, "write per-sample CSV");

  std::string target = "all", fixtures_dir = "fixtures";
  auto* repro_cmd = app.add_subcommand("reproduce", "re-run the headline computations");
  repro_cmd->add_option("--target", target,
                        "dervan-window|lsy-containment|curve-counts|lemma-suite|all");
  repro_cmd->add_option("--fixtures", fixtures_dir, "fixtures directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (curves_cmd->parsed()) return run_curves(surface, json_path, csv_path);
    if (check_cmd->parsed())
      return run_check(surface, class_text, lambda_text, alpha_text, group_invariant,
                       provenance, criteria, dim, json_path);
    if (pencil_cmd->parsed())
      return run_pencil(model_path, criterion_name, assume_alpha, json_path, csv_path);
    if (alpha_cmd->parsed())
      return run_alpha(model_path, at_text, budget_text, modulus_pairs, json_path);
    if (lab_cmd->parsed())
      return run_lab(geometry, samples, seed, beta, tol, grid, path_samples, json_path,
                     csv_path);
    if (repro_cmd->parsed()) return run_reproduce(target, fixtures_dir);
  } catch (const ck::DataFileError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const ck::ParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::domain_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
