#include "wavelab/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <set>
#include <sstream>

#include "wavelab/exact.hpp"
#include "wavelab/geometry.hpp"
#include "wavelab/interaction.hpp"
#include "wavelab/io.hpp"
#include "wavelab/liealg.hpp"
#include "wavelab/quasirect.hpp"
#include "wavelab/solver.hpp"
#include "wavelab/svg.hpp"

namespace wavelab {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& context) {
  if (!obj.is_object()) throw config_error(context + ": object expected");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw config_error(context + ": unknown key \"" + key + "\"");
  }
}

double get_num(const json& obj, const std::string& key, double fallback) {
  return obj.contains(key) ? obj.at(key).get<double>() : fallback;
}

GasParameters gas_from(const json& p) {
  return GasParameters(get_num(p, "kappa", 1.4), get_num(p, "A", 1.0), get_num(p, "p0", 0.0),
                       get_num(p, "u0", 0.0));
}

Convention convention_from(const json& p) {
  const std::string c = p.contains("convention") ? p.at("convention").get<std::string>() : "paper";
  if (c == "paper") return Convention::paper;
  if (c == "standard") return Convention::standard;
  throw config_error("convention must be \"paper\" or \"standard\"");
}

VectorField field_by_name(const std::string& name, const GasParameters& g) {
  if (name == "gamma+") return gamma_plus(g);
  if (name == "gamma-") return gamma_minus(g);
  if (name == "gamma0") return gamma_zero(g);
  if (name == "w1") return transformed_basis(g).first;
  if (name == "w2") return transformed_basis(g).second;
  throw config_error("unknown field name: " + name);
}

WaveKind wave_kind_from(const std::string& name) {
  if (name == "S+") return WaveKind::Splus;
  if (name == "E") return WaveKind::E;
  if (name == "S-") return WaveKind::Sminus;
  throw config_error("unknown wave kind: " + name);
}

BumpProfile bump_from(const json& b, const std::string& context) {
  require_keys(b, {"shape", "amplitude", "center", "width"}, context);
  BumpProfile p;
  p.shape = BumpProfile::shape_from_name(
      b.contains("shape") ? b.at("shape").get<std::string>() : "gauss");
  p.amplitude = get_num(b, "amplitude", 0.1);
  p.center = get_num(b, "center", 0.0);
  p.width = get_num(b, "width", 0.2);
  if (!(p.width > 0.0)) throw config_error(context + ": width must be positive");
  return p;
}

json pair_residuals_json(const QuasiRectReport& rep) {
  json pairs = json::array();
  for (const auto& pr : rep.per_pair)
    pairs.push_back({{"i", pr.i}, {"j", pr.j}, {"max_residual", pr.max_residual}});
  return pairs;
}

struct OutputWriter {
  std::filesystem::path dir;
  std::uint64_t seed;
  RunResult* result;

  void json_file(const std::string& name, json doc) {
    doc["version"] = kVersion;
    doc["seed"] = seed;
    doc["tolerances"] = {{"bracket", 1e-8}, {"rank", 1e-10}, {"exact_zero", 1e-12}};
    atomic_write(dir / name, doc.dump(2) + "\n");
    result->artifacts.push_back(dir / name);
  }
  void text_file(const std::string& name, const std::string& content) {
    atomic_write(dir / name, content);
    result->artifacts.push_back(dir / name);
  }
};

// -------------------------------------------------------------- analyze

void run_analyze(const json& p, const Scenario& sc, RunResult& res) {
  require_keys(p, {"kappa", "A", "p0", "u0", "family", "samples", "criteria", "flux",
                   "rescaling"},
               "analyze.parameters");
  const GasParameters g = gas_from(p);
  if (!p.contains("family")) throw config_error("analyze: family required");
  std::vector<VectorField> family;
  std::vector<std::string> names;
  for (const auto& n : p.at("family")) {
    names.push_back(n.get<std::string>());
    family.push_back(field_by_name(names.back(), g));
  }
  const int samples = static_cast<int>(get_num(p, "samples", 100));

  std::vector<std::string> criteria;
  if (p.contains("criteria"))
    for (const auto& c : p.at("criteria")) criteria.push_back(c.get<std::string>());
  else {
    criteria.push_back("span");
    if (family.size() == 3) criteria.push_back("curl");
  }

  json out;
  out["name"] = sc.name;
  out["family"] = names;
  out["kappa"] = g.kappa;
  for (const auto& c : criteria) {
    if (c == "span") {
      const auto rep = span_test(family, samples, sc.seed);
      out["span"] = {{"verdict", rep.verdict}, {"pairs", pair_residuals_json(rep)},
                     {"samples", rep.samples}, {"tolerance", rep.tolerance}};
    } else if (c == "curl") {
      const auto rep = curl_span_test(family, samples, sc.seed);
      out["curl"] = {{"verdict", rep.verdict}, {"pairs", pair_residuals_json(rep)},
                     {"samples", rep.samples}, {"tolerance", rep.tolerance}};
    } else {
      throw config_error("analyze: unknown criterion \"" + c + "\"");
    }
  }
  if (p.contains("flux")) {
    require_keys(p.at("flux"), {"point", "radii"}, "analyze.flux");
    const auto pt = p.at("flux").at("point");
    const StateVector v(pt.at(0).get<double>(), pt.at(1).get<double>(), pt.at(2).get<double>());
    std::vector<double> radii;
    for (const auto& r : p.at("flux").at("radii")) radii.push_back(r.get<double>());
    const auto table = flux_integral_test(family, v, radii);
    json pairs = json::array();
    for (const auto& pr : table.pairs)
      pairs.push_back({{"i", pr.i},
                       {"j", pr.j},
                       {"values", pr.values},
                       {"extrapolated", pr.extrapolated},
                       {"quadrature_converged", pr.quadrature_converged}});
    out["flux"] = {{"radii", radii}, {"pairs", pairs}};
  }
  if (p.contains("rescaling")) {
    require_keys(p.at("rescaling"), {"h", "orientation"}, "analyze.rescaling");
    const std::string hname = p.at("rescaling").contains("h")
                                  ? p.at("rescaling").at("h").get<std::string>()
                                  : "sound";
    std::vector<ScalarField> hs;
    for (size_t i = 0; i < family.size(); ++i)
      hs.push_back(hname == "one" ? ScalarField::constant(1.0) : rescale_h_sound(g));
    const auto rep = verify_rescaling(family, hs, samples, sc.seed);
    out["rescaling"] = {{"commute", rep.ok}, {"max_residual", rep.max_residual},
                        {"h", hname}};
    const bool want_orientation = !p.at("rescaling").contains("orientation") ||
                                  p.at("rescaling").at("orientation").get<bool>();
    if (want_orientation) {
      const auto orep = rescaling_orientation(family, hs, samples, sc.seed);
      out["rescaling"]["orientation"] = {
          {"d_h_eta_vanishes", orep.direct},
          {"d_hinv_eta_vanishes", orep.inverse},
          {"d_h_eta_max", orep.direct_max},
          {"d_hinv_eta_max", orep.inverse_max},
          {"satisfied_by",
           orep.inverse ? "h-inverse weighting" : (orep.direct ? "h weighting" : "neither")}};
    }
  }
  OutputWriter w{sc.output_dir, sc.seed, &res};
  w.json_file("analysis.json", out);
}

// -------------------------------------------------------------- simulate helpers

Grid1D initial_full(const json& p, const GasParameters& g) {
  const auto& dom = p.at("domain");
  require_keys(dom, {"x0", "x1", "nx"}, "domain");
  const auto& init = p.at("initial");
  require_keys(init, {"background", "waves"}, "initial");
  const auto& bg = init.at("background");
  require_keys(bg, {"rho", "p", "u"}, "initial.background");
  const StateVector background(bg.at("rho").get<double>(), bg.at("p").get<double>(),
                               bg.at("u").get<double>());
  std::vector<WavePatch> waves;
  if (init.contains("waves")) {
    for (const auto& wv : init.at("waves")) {
      require_keys(wv, {"kind", "shape", "amplitude", "center", "width"}, "initial.waves[]");
      WavePatch patch;
      patch.kind = wave_kind_from(wv.at("kind").get<std::string>());
      patch.profile = bump_from(json{{"shape", wv.contains("shape") ? wv.at("shape") : json("gauss")},
                                     {"amplitude", wv.at("amplitude")},
                                     {"center", wv.at("center")},
                                     {"width", wv.at("width")}},
                                "initial.waves[]");
      waves.push_back(patch);
    }
  }
  return compose_initial_frame(dom.at("x0").get<double>(), dom.at("x1").get<double>(),
                               dom.at("nx").get<int>(), background, g, waves);
}

void emit_series(OutputWriter& w, const TimeSeries& series, const std::string& stem) {
  const auto names = component_names_for(series.frames.front().kind());
  w.text_file(stem + ".csv", time_series_csv(series, w.seed, names));
  for (size_t c = 0; c < names.size(); ++c)
    w.text_file(stem + "_" + names[c] + ".svg",
                svg::heatmap(series, static_cast<int>(c), stem + " " + names[c]));
}

void run_simulate(const json& p, const Scenario& sc, RunResult& res) {
  require_keys(p, {"system", "kappa", "A", "p0", "u0", "convention", "domain", "T", "cfl",
                   "initial"},
               "simulate.parameters");
  const GasParameters g = gas_from(p);
  const double T = p.at("T").get<double>();
  RunOptions opts;
  opts.cfl = get_num(p, "cfl", 0.45);
  opts.convention = convention_from(p);
  const std::string system = p.at("system").get<std::string>();
  OutputWriter w{sc.output_dir, sc.seed, &res};

  json info;
  info["name"] = sc.name;
  info["system"] = system;
  info["kappa"] = g.kappa;
  info["convention"] = p.contains("convention") ? p.at("convention").get<std::string>() : "paper";
  info["T"] = T;

  if (system == "full") {
    const Grid1D init = initial_full(p, g);
    const TimeSeries series = run_quasilinear(init, QuasilinearSystem::full_euler(g), T, opts);
    emit_series(w, series, "frames");
    double max_cfl = 0.0;
    for (double c : series.cfl_history) max_cfl = std::max(max_cfl, c);
    info["steps"] = series.cfl_history.size();
    info["max_cfl"] = max_cfl;
  } else if (system == "reduced_sound") {
    const auto& dom = p.at("domain");
    require_keys(dom, {"x0", "x1", "nx"}, "domain");
    Grid1D init(dom.at("x0").get<double>(), dom.at("x1").get<double>(), dom.at("nx").get<int>(),
                2, GridKind::invariants);
    const auto& ini = p.at("initial");
    require_keys(ini, {"r1", "r2"}, "initial");
    for (int c = 0; c < 2; ++c) {
      const char* key = c == 0 ? "r1" : "r2";
      if (!ini.contains(key)) continue;
      const BumpProfile b = bump_from(ini.at(key), std::string("initial.") + key);
      for (int i = 0; i < init.nx(); ++i) init.at(i, c) = b(init.x(i));
    }
    const TimeSeries series = solve_reduced_sound(init, g, T, opts);
    emit_series(w, series, "frames");
    info["steps"] = series.cfl_history.size();
    // defect of the printed double-wave map: the Euler pressure equation
    // misses by k^{3/2} (r1_x - r2_x) ((k-1) rho + p0) on the mapped states
    double defect = 0.0;
    const double sk = std::sqrt(g.kappa);
    for (const auto& frame : series.frames) {
      for (int i = 1; i + 1 < frame.nx(); ++i) {
        const double r1x = (frame.at(i + 1, 0) - frame.at(i - 1, 0)) / (2.0 * frame.dx());
        const double r2x = (frame.at(i + 1, 1) - frame.at(i - 1, 1)) / (2.0 * frame.dx());
        const double rho = g.A * std::exp(frame.at(i, 0) + frame.at(i, 1));
        defect = std::max(defect, std::abs(g.kappa * sk * (r1x - r2x) *
                                           ((g.kappa - 1.0) * rho + g.p0)));
      }
    }
    info["printed_map_defect"] = defect;
    if (defect > 1e-6)
      res.discrepancies.push_back(
          "mapping the invariants through the printed double wave leaves a nonzero "
          "full-system residual (pressure defect " +
          std::to_string(defect) + ")");
    info["discrepancies"] = res.discrepancies;
  } else if (system == "reduced_kappa3") {
    const auto& dom = p.at("domain");
    require_keys(dom, {"x0", "x1", "nx"}, "domain");
    Grid1D init(dom.at("x0").get<double>(), dom.at("x1").get<double>(), dom.at("nx").get<int>(),
                3, GridKind::tvars);
    const auto& ini = p.at("initial");
    require_keys(ini, {"base", "bumps"}, "initial");
    Vec3 base{};
    if (ini.contains("base"))
      base = {{ini.at("base").at(0).get<double>(), ini.at("base").at(1).get<double>(),
               ini.at("base").at(2).get<double>()}};
    for (int i = 0; i < init.nx(); ++i) init.set_node3(i, base);
    if (ini.contains("bumps")) {
      for (const auto& bj : ini.at("bumps")) {
        require_keys(bj, {"component", "shape", "amplitude", "center", "width"},
                     "initial.bumps[]");
        const int comp = bj.at("component").get<int>();
        if (comp < 0 || comp > 2) throw config_error("bump component must be 0..2");
        const BumpProfile b = bump_from(json{{"shape", bj.contains("shape") ? bj.at("shape") : json("gauss")},
                                             {"amplitude", bj.at("amplitude")},
                                             {"center", bj.at("center")},
                                             {"width", bj.at("width")}},
                                        "initial.bumps[]");
        for (int i = 0; i < init.nx(); ++i) init.at(i, comp) += b(init.x(i));
      }
    }
    const ReducedComparison cmp = solve_reduced_kappa3(init, g, T, opts);
    // mapped euler columns alongside the t-variables
    std::vector<std::vector<double>> mapped(3);
    for (int f = 0; f < cmp.reduced.nframes(); ++f) {
      for (int i = 0; i < cmp.reduced.frames[f].nx(); ++i) {
        const Vec3 t = cmp.reduced.frames[f].node3(i);
        const Vec3 v = region_map(t[0], t[1], t[2]).vec();
        for (int c = 0; c < 3; ++c) mapped[c].push_back(v[c]);
      }
    }
    w.text_file("frames.csv",
                time_series_csv(cmp.reduced, sc.seed, component_names_for(GridKind::tvars),
                                &mapped, {"rho", "p", "u"}));
    emit_series(w, cmp.full, "full_frames");
    info["steps"] = cmp.full.cfl_history.size();
    info["l1_mapped_difference_final"] = cmp.l1_mapped_difference.back();
    double l1max = 0.0;
    for (double d : cmp.l1_mapped_difference) l1max = std::max(l1max, d);
    info["l1_mapped_difference_max"] = l1max;
  } else {
    throw config_error("simulate: unknown system \"" + system + "\"");
  }
  w.json_file("run.json", info);
}

// -------------------------------------------------------------- index

void run_index(const json& p, const Scenario& sc, RunResult& res) {
  require_keys(p, {"kappa", "A", "p0", "u0", "convention", "domain", "T", "cfl", "initial",
                   "detection", "expected"},
               "index.parameters");
  const GasParameters g = gas_from(p);
  RunOptions opts;
  opts.cfl = get_num(p, "cfl", 0.45);
  opts.convention = convention_from(p);

  DetectionParams det;
  det.seed = sc.seed;
  if (p.contains("detection")) {
    require_keys(p.at("detection"), {"threshold", "significance", "epsilon_cells"},
                 "detection");
    det.threshold = get_num(p.at("detection"), "threshold", det.threshold);
    det.significance = get_num(p.at("detection"), "significance", det.significance);
    det.epsilon_cells =
        static_cast<int>(get_num(p.at("detection"), "epsilon_cells", det.epsilon_cells));
  }

  const Grid1D init = initial_full(p, g);
  const TimeSeries series =
      run_quasilinear(init, QuasilinearSystem::full_euler(g), p.at("T").get<double>(), opts);
  const InteractionRegion region = interaction_region(series, g, det);
  const WaveSets sets = classify_waves(series, g, region, det);
  const IndexResult idx = interaction_index(sets);

  json out;
  out["name"] = sc.name;
  out["t_min"] = region.empty ? json() : json(region.t_min);
  out["t_max"] = region.empty ? json() : json(region.t_max);
  out["region_empty"] = region.empty;
  json entering = json::array(), leaving = json::array();
  for (auto k : sets.entering) entering.push_back(wave_kind_name(k));
  for (auto k : sets.leaving) leaving.push_back(wave_kind_name(k));
  out["entering"] = entering;
  out["leaving"] = leaving;
  out["index"] = idx.index;
  out["detection_error"] = idx.detection_error;
  out["diagnostics"] = sets.diagnostics;
  out["verdict"] = idx.detection_error
                       ? "detection-failure"
                       : (elasticity_verdict(idx.index) == Elasticity::elastic ? "elastic"
                                                                               : "non-elastic");
  out["thresholds"] = {{"threshold", det.threshold},
                       {"significance", det.significance},
                       {"epsilon_cells", det.epsilon_cells}};
  json gmax = json::array();
  for (double m : region.global_max) gmax.push_back(m);
  out["xi_global_max"] = gmax;

  if (idx.detection_error)
    throw std::runtime_error("wave-set detection failed: leaving < entering");

  if (p.contains("expected")) {
    require_keys(p.at("expected"), {"verdict", "leaving_includes"}, "expected");
    if (p.at("expected").contains("verdict")) {
      const std::string want = p.at("expected").at("verdict").get<std::string>();
      if (want != out["verdict"].get<std::string>())
        res.discrepancies.push_back("measured verdict " + out["verdict"].get<std::string>() +
                                    " differs from printed expectation " + want);
    }
    if (p.at("expected").contains("leaving_includes")) {
      for (const auto& kj : p.at("expected").at("leaving_includes")) {
        const std::string want = kj.get<std::string>();
        bool found = false;
        for (auto k : sets.leaving) found = found || want == wave_kind_name(k);
        if (!found)
          res.discrepancies.push_back("wave kind " + want +
                                      " expected in the leaving set but not detected");
      }
    }
  }
  out["discrepancies"] = res.discrepancies;

  OutputWriter w{sc.output_dir, sc.seed, &res};
  w.json_file("verdict.json", out);
  w.text_file("overlay.svg", svg::region_overlay(series, g, region, sc.name));
  emit_series(w, series, "frames");
}

// -------------------------------------------------------------- algebra

json fingerprint_json(const QuotientFingerprint& fp) {
  json out;
  out["dim"] = fp.dim;
  out["derived_dim"] = fp.derived_dim;
  out["center_dim"] = fp.center_dim;
  json basis = json::array();
  for (const auto& e : fp.quotient_basis) basis.push_back(graded_label(e));
  out["basis"] = basis;
  return out;
}

void run_algebra(const json& p, const Scenario& sc, RunResult& res) {
  require_keys(p, {"kappa", "A", "p0", "u0", "seed_elements", "N", "samples", "h_variant",
                   "witt_scan"},
               "algebra.parameters");
  const GasParameters g = gas_from(p);
  const int N = static_cast<int>(get_num(p, "N", 6));
  const int samples = static_cast<int>(get_num(p, "samples", 50));

  std::vector<GradedElement> seed_elems;
  if (p.contains("seed_elements")) {
    for (const auto& s : p.at("seed_elements")) {
      const std::string name = s.get<std::string>();
      BaseField b;
      if (name == "gamma+") b = BaseField::gamma_plus;
      else if (name == "gamma-") b = BaseField::gamma_minus;
      else if (name == "gamma0") b = BaseField::gamma_zero;
      else if (name == "w1") b = BaseField::w1;
      else if (name == "w2") b = BaseField::w2;
      else throw config_error("unknown seed element: " + name);
      seed_elems.push_back({0, b});
    }
  } else {
    seed_elems = {{0, BaseField::gamma_plus}, {0, BaseField::gamma_minus},
                  {0, BaseField::gamma_zero}};
  }

  const StructureTable table = close_under_bracket(seed_elems, N, g, samples, sc.seed);

  json out;
  out["name"] = sc.name;
  out["kappa"] = g.kappa;
  out["truncation"] = N;
  json basis = json::array();
  for (const auto& e : table.basis) basis.push_back(graded_label(e));
  out["basis"] = basis;
  out["max_fit_residual"] = table.max_residual;
  json entries = json::array();
  for (const auto& [key, e] : table.entries)
    entries.push_back({{"i", key.first},
                       {"j", key.second},
                       {"coefficients", e.coeffs},
                       {"residual", e.residual},
                       {"truncated", e.truncated}});
  out["table"] = entries;

  // the grade >= 1 w2 family is the candidate Abelian ideal
  std::vector<GradedElement> ideal;
  for (const auto& e : table.basis)
    if (e.base == BaseField::w2 && e.n >= 1) ideal.push_back(e);
  if (!ideal.empty()) {
    const IdealReport ir = ideal_check(table, ideal);
    out["ideal"] = {{"elements", [&] {
                       json a = json::array();
                       for (const auto& e : ideal) a.push_back(graded_label(e));
                       return a;
                     }()},
                    {"abelian", ir.abelian},
                    {"ideal", ir.ideal},
                    {"max_internal_bracket", ir.max_internal_bracket},
                    {"max_leak", ir.max_leak},
                    {"truncated_pairs", ir.truncated_pairs}};
    if (ir.abelian && ir.ideal) {
      const QuotientFingerprint fp = quotient_fingerprint(table, ideal);
      out["quotient"] = fingerprint_json(fp);
      if (!(fp.derived_dim == 1 && fp.center_dim == 1))
        res.discrepancies.push_back(
            "quotient fingerprint (derived " + std::to_string(fp.derived_dim) + ", center " +
            std::to_string(fp.center_dim) +
            ") differs from the printed direct-sum structure (derived 1, center 1)");
    }
  }

  // shift action of gamma0 on the graded ideal
  json shifts = json::array();
  {
    StateSampler sampler(sc.seed, 0.5, 2.0, -2.0, 2.0);
    const auto states = sampler.sample(20);
    for (int n = 1; n + 1 <= N; ++n) {
      const VectorField lhs =
          lie_bracket(gamma_zero(g), realize({n, BaseField::w2}, g));
      const VectorField target = realize({n + 1, BaseField::w2}, g);
      double worst_coeff = 0.0, worst_res = 0.0;
      for (const auto& v : states) {
        const auto e = expand_in_span(lhs, {target}, v);
        worst_coeff = std::max(worst_coeff, std::abs(e.coefficients[0] + (n + 0.5)));
        worst_res = std::max(worst_res, e.residual);
      }
      shifts.push_back({{"n", n}, {"coefficient_error", worst_coeff},
                        {"span_residual", worst_res}});
    }
  }
  out["shift_operator"] = {{"expected_coefficient", "-(n+1/2)"}, {"checks", shifts}};

  const bool h_variant = p.contains("h_variant") && p.at("h_variant").get<bool>();
  if (h_variant) {
    // w1-based ideal of the printed H decomposition, measured on the same closure
    std::vector<GradedElement> w1_ideal;
    for (const auto& e : table.basis)
      if (e.base == BaseField::w1 && e.n >= 1) w1_ideal.push_back(e);
    if (w1_ideal.empty()) {
      out["h_variant"] = {{"present", false},
                          {"note", "no rho^-n w1 elements arise in the closure"}};
      res.discrepancies.push_back(
          "printed w1-based Abelian ideal is absent from the measured closure");
    } else {
      const IdealReport ir = ideal_check(table, w1_ideal);
      out["h_variant"] = {{"present", true}, {"abelian", ir.abelian}, {"ideal", ir.ideal}};
      if (!(ir.abelian && ir.ideal))
        res.discrepancies.push_back("printed w1-based ideal fails the measured ideal check");
    }
  }

  if (p.contains("witt_scan") && p.at("witt_scan").get<bool>()) {
    std::vector<GradedElement> wseed;
    for (int n = 0; n <= 3; ++n) wseed.push_back({n, BaseField::gamma_plus});
    const WittPatternReport wrep = witt_pattern_scan(wseed, N, g, samples, sc.seed);
    json fams = json::array();
    for (const auto& f : wrep.families)
      fams.push_back({{"base", base_field_name(f.base)},
                      {"abelian", f.abelian},
                      {"pattern", f.pattern},
                      {"c", f.c},
                      {"fit_residual", f.fit_residual},
                      {"truncated_pairs", f.truncated_pairs}});
    out["witt_scan"] = fams;
  }

  out["discrepancies"] = res.discrepancies;
  OutputWriter w{sc.output_dir, sc.seed, &res};
  w.json_file("algebra_report.json", out);
  w.text_file("structure.md", table.markdown());
}

// -------------------------------------------------------------- geometry

void run_geometry(const json& p, const Scenario& sc, RunResult& res) {
  require_keys(p, {"t3_values", "grid", "samples"}, "geometry.parameters");
  std::vector<double> t3s = {0.0, 0.25, 0.5, 0.75, 1.0};
  if (p.contains("t3_values")) {
    t3s.clear();
    for (const auto& t : p.at("t3_values")) t3s.push_back(t.get<double>());
  }
  int n1 = 50, n2 = 50;
  if (p.contains("grid")) {
    require_keys(p.at("grid"), {"n1", "n2"}, "geometry.grid");
    n1 = static_cast<int>(get_num(p.at("grid"), "n1", 50));
    n2 = static_cast<int>(get_num(p.at("grid"), "n2", 50));
  }
  const int samples = static_cast<int>(get_num(p, "samples", 100));

  json out;
  out["name"] = sc.name;
  double maxK = 0.0, maxM = 0.0, maxN = 0.0, fd_err = 0.0;
  double ratio_lo = 1e300, ratio_hi = 0.0;
  std::vector<svg::Mesh> meshes;
  const char* colors[] = {"#b33", "#383", "#33b", "#a63", "#639"};
  std::ostringstream mesh_csv;
  mesh_csv << artifact_header(sc.seed) << "t3,t1,t2,rho,p,u,K,H,L\n";

  for (size_t li = 0; li < t3s.size(); ++li) {
    const SurfacePatch phi = phi_surface(t3s[li]);
    svg::Mesh mesh;
    mesh.color = colors[li % 5];
    const auto dom = phi.domain();
    for (int a = 0; a < n1; ++a) {
      std::vector<Vec3> row;
      const double s1 = dom.s1_lo + (dom.s1_hi - dom.s1_lo) * (a + 0.5) / n1;
      for (int b = 0; b < n2; ++b) {
        const double s2 = dom.s2_lo + (dom.s2_hi - dom.s2_lo) * (b + 0.5) / n2;
        const auto forms = phi.fundamental_forms(s1, s2);
        const auto curv = phi.curvatures(s1, s2);
        maxK = std::max(maxK, std::abs(curv.K));
        maxM = std::max(maxM, std::abs(forms.M));
        maxN = std::max(maxN, std::abs(forms.N));
        const double ratio = printed_L_formula(s1, t3s[li]) / std::abs(forms.L);
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
        row.push_back(phi.point(s1, s2));
        if (a % 8 == 0 && b % 8 == 0) {
          const Vec3 pt = phi.point(s1, s2);
          mesh_csv << format_double(t3s[li]) << "," << format_double(s1) << ","
                   << format_double(s2) << "," << format_double(pt[0]) << ","
                   << format_double(pt[1]) << "," << format_double(pt[2]) << ","
                   << format_double(curv.K) << "," << format_double(curv.H) << ","
                   << format_double(forms.L) << "\n";
        }
      }
      if (a % 4 == 0) mesh.rows.push_back(row);
    }
    meshes.push_back(mesh);

    // finite-difference cross-check of the analytic forms at a few points
    for (int q = 0; q < 5; ++q) {
      const double s1 = dom.s1_lo + (dom.s1_hi - dom.s1_lo) * (q + 0.5) / 5.0;
      const double s2 = dom.s2_lo + (dom.s2_hi - dom.s2_lo) * (q + 0.5) / 5.0;
      const auto forms = phi.fundamental_forms(s1, s2);
      const double h = 1e-5;
      auto P = [&](double a, double b) { return phi.point(a, b); };
      auto T1 = [&](double a, double b) { return phi.jet(a, b).d1; };
      const Vec3 d1 = (P(s1 + h, s2) - P(s1 - h, s2)) / (2.0 * h);
      const Vec3 d2 = (P(s1, s2 + h) - P(s1, s2 - h)) / (2.0 * h);
      const Vec3 d11 = (T1(s1 + h, s2) - T1(s1 - h, s2)) / (2.0 * h);
      const Vec3 nrm = normalized(cross(d1, d2));
      const double Efd = dot(d1, d1), Lfd = dot(d11, nrm);
      fd_err = std::max(fd_err, std::abs(Efd - forms.E) / std::max(1.0, std::abs(forms.E)));
      fd_err = std::max(fd_err, std::abs(Lfd - forms.L) / std::max(1.0, std::abs(forms.L)));
    }
  }

  const FoliationReport fol = foliation_check(t3s, true, samples, sc.seed);

  out["max_abs_K"] = maxK;
  out["max_abs_M"] = maxM;
  out["max_abs_N"] = maxN;
  out["fd_oracle_relative_error"] = fd_err;
  out["foliation"] = {{"disjoint", fol.disjoint},
                      {"min_cross_leaf_distance", fol.min_cross_leaf_distance},
                      {"inverse_recovery_error", fol.inverse_recovery_error}};
  out["printed_L_ratio"] = {{"min", ratio_lo}, {"max", ratio_hi}};
  if (std::abs(ratio_lo - 2.0) < 1e-6 && std::abs(ratio_hi - 2.0) < 1e-6)
    res.discrepancies.push_back(
        "printed second-form entry L is exactly twice the measured value (ratio 2)");
  else if (ratio_lo < 0.999 || ratio_hi > 1.001)
    res.discrepancies.push_back("printed second-form entry L deviates from the measured value");
  out["discrepancies"] = res.discrepancies;

  OutputWriter w{sc.output_dir, sc.seed, &res};
  w.json_file("geometry_report.json", out);
  w.text_file("phi_mesh.csv", mesh_csv.str());
  w.text_file("surfaces.svg", svg::wireframe(meshes, "Phi(t3) leaves"));
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  require_keys(doc, {"name", "command", "seed", "output_dir", "parameters"}, "config");
  Scenario sc;
  if (!doc.contains("command")) throw config_error("config: command required");
  sc.command = doc.at("command").get<std::string>();
  static const std::set<std::string> commands = {"analyze", "simulate", "index", "algebra",
                                                 "geometry"};
  if (!commands.count(sc.command)) throw config_error("unknown command: " + sc.command);
  sc.name = doc.contains("name") ? doc.at("name").get<std::string>() : sc.command;
  sc.seed = doc.contains("seed") ? doc.at("seed").get<std::uint64_t>() : 12345;
  sc.output_dir = doc.contains("output_dir") ? doc.at("output_dir").get<std::string>()
                                             : std::string("out/") + sc.name;
  sc.parameters_json = doc.contains("parameters") ? doc.at("parameters").dump() : "{}";
  return sc;
}

RunResult run_scenario(const Scenario& sc) {
  RunResult res;
  const json params = json::parse(sc.parameters_json);
  if (sc.command == "analyze")
    run_analyze(params, sc, res);
  else if (sc.command == "simulate")
    run_simulate(params, sc, res);
  else if (sc.command == "index")
    run_index(params, sc, res);
  else if (sc.command == "algebra")
    run_algebra(params, sc, res);
  else if (sc.command == "geometry")
    run_geometry(params, sc, res);
  else
    throw config_error("unknown command: " + sc.command);
  res.exit_code = res.discrepancies.empty() ? 0 : 2;
  return res;
}

std::vector<std::string> preset_names() {
  return {"elastic-spsm", "nonelastic-spe", "reduced-kappa3", "algebra-closure",
          "phi-geometry"};
}

std::string preset_config(const std::string& name) {
  if (name == "elastic-spsm") {
    return R"({
      "name": "elastic-spsm",
      "command": "index",
      "seed": 42,
      "parameters": {
        "kappa": 1.4, "convention": "standard",
        "domain": {"x0": -1.8, "x1": 1.8, "nx": 400},
        "T": 1.25, "cfl": 0.45,
        "initial": {
          "background": {"rho": 1.0, "p": 1.0, "u": 0.0},
          "waves": [
            {"kind": "S+", "shape": "cos2", "amplitude": 0.04, "center": -0.7, "width": 0.22},
            {"kind": "S-", "shape": "cos2", "amplitude": 0.04, "center": 0.7, "width": 0.22}
          ]
        },
        "detection": {"threshold": 0.02, "significance": 0.004, "epsilon_cells": 5},
        "expected": {"verdict": "elastic"}
      }
    })";
  }
  if (name == "nonelastic-spe") {
    return R"({
      "name": "nonelastic-spe",
      "command": "index",
      "seed": 42,
      "parameters": {
        "kappa": 3.0, "convention": "standard",
        "domain": {"x0": -1.8, "x1": 1.8, "nx": 400},
        "T": 0.95, "cfl": 0.45,
        "initial": {
          "background": {"rho": 1.0, "p": 1.0, "u": 0.0},
          "waves": [
            {"kind": "S+", "shape": "cos2", "amplitude": 0.05, "center": -0.85, "width": 0.25},
            {"kind": "E", "shape": "cos2", "amplitude": 0.45, "center": 0.25, "width": 0.18}
          ]
        },
        "detection": {"threshold": 0.02, "significance": 0.004, "epsilon_cells": 5},
        "expected": {"verdict": "non-elastic", "leaving_includes": ["S-"]}
      }
    })";
  }
  if (name == "reduced-kappa3") {
    return R"({
      "name": "reduced-kappa3",
      "command": "simulate",
      "seed": 42,
      "parameters": {
        "system": "reduced_kappa3",
        "kappa": 3.0, "convention": "paper",
        "domain": {"x0": -1.2, "x1": 1.2, "nx": 400},
        "T": 0.3, "cfl": 0.45,
        "initial": {
          "base": [0.0, 0.0, 0.0],
          "bumps": [
            {"component": 0, "shape": "gauss", "amplitude": 0.01, "center": -0.3, "width": 0.15},
            {"component": 2, "shape": "gauss", "amplitude": 0.05, "center": 0.3, "width": 0.15}
          ]
        }
      }
    })";
  }
  if (name == "algebra-closure") {
    return R"({
      "name": "algebra-closure",
      "command": "algebra",
      "seed": 42,
      "parameters": {
        "kappa": 2.0,
        "seed_elements": ["gamma+", "gamma-", "gamma0"],
        "N": 6, "samples": 50,
        "h_variant": true,
        "witt_scan": true
      }
    })";
  }
  if (name == "phi-geometry") {
    return R"({
      "name": "phi-geometry",
      "command": "geometry",
      "seed": 42,
      "parameters": {
        "t3_values": [0.0, 0.25, 0.5, 0.75, 1.0],
        "grid": {"n1": 50, "n2": 50},
        "samples": 100
      }
    })";
  }
  throw config_error("unknown preset: " + name);
}

}  // namespace wavelab
