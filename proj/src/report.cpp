#include "liewedge/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "liewedge/liealg.hpp"
#include "liewedge/reachable.hpp"

namespace liewedge {

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kAuditTol = 1e-10;

Json envelope(const std::string& command) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["input"] = Json::object();
  j["tolerances"] = Json::object();
  j["dimensions"] = Json::object();
  j["result"] = Json::object();
  return j;
}

Json doubles(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json sizes(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

Json conditions_json(const ConditionReport& c) {
  Json j;
  j["dim_kc"] = c.dim_kc;
  j["dim_kd"] = c.dim_kd;
  j["dim_s"] = c.dim_s;
  j["dim_target_k"] = c.dim_target_k;
  j["dim_target_s"] = c.dim_target_s;
  j["holds_H"] = c.holds_H;
  j["holds_WH"] = c.holds_WH;
  j["holds_A"] = c.holds_A;
  return j;
}

SaturateOptions saturation_options(const SystemFile& f, const SaturationArgs& a) {
  SaturateOptions opt;
  if (auto s = a.samples ? a.samples : f.samples) opt.orbit_samples = *s;
  if (auto r = a.rounds ? a.rounds : f.rounds) opt.max_rounds = *r;
  if (auto t = a.tol ? a.tol : f.tol) opt.tol = *t;
  if (f.seed) opt.seed = *f.seed;
  return opt;
}

Json saturation_input(const SaturateOptions& opt) {
  Json j;
  j["orbit_samples"] = opt.orbit_samples;
  j["max_rounds"] = opt.max_rounds;
  j["seed"] = opt.seed;
  return j;
}

struct Saturated {
  Wedge wedge;
  SaturateReport report;
};

Saturated run_saturation(const ControlSystem& sys, const SaturateOptions& opt) {
  Saturated s;
  s.wedge = saturate(initial_wedge(sys), opt, &s.report);
  return s;
}

void fill_wedge(Json& doc, const Saturated& s) {
  const std::size_t span = cone_span(s.wedge.cone).dim();
  doc["dimensions"]["edge"] = s.wedge.edge.dim();
  doc["dimensions"]["cone_span"] = span;
  doc["dimensions"]["wedge"] = s.wedge.dimension();
  doc["dimensions"]["generators"] = s.wedge.cone.generators.size();
  Json sat;
  sat["rounds"] = s.report.rounds;
  sat["converged"] = s.report.converged;
  sat["edge_dims"] = sizes(s.report.edge_dims);
  sat["generator_counts"] = sizes(s.report.generator_counts);
  sat["pointed"] = s.wedge.cone.pointed;
  doc["result"]["saturation"] = std::move(sat);
  doc["result"]["edge_basis"] = matrices_json(s.wedge.edge.basis());
}

const std::vector<std::string>& r3_basis_names() {
  static const std::vector<std::string> names{"H_x", "H_y", "H_z", "p_x", "p_y", "p_z", "E11", "E22", "E33"};
  return names;
}

std::vector<double> r3_coordinates(const Mat& g) {
  std::vector<double> out;
  for (const auto& name : r3_basis_names()) {
    const Mat b = r3_named(name);
    out.push_back(inner(g, b) / inner(b, b));
  }
  return out;
}

Json schedule_json(const Schedule& s) {
  Json d = Json::array(), u = Json::array();
  for (const auto& seg : s.segments) {
    d.push_back(seg.duration);
    u.push_back(doubles(seg.u));
  }
  Json j;
  j["durations"] = std::move(d);
  j["amplitudes"] = std::move(u);
  return j;
}

}  // namespace

Report example_report(int n) {
  if (n < 1 || n > 3) throw DomainError("example must be 1, 2 or 3");
  const ChannelName name = n == 1 ? ChannelName::example1 : n == 2 ? ChannelName::example2 : ChannelName::example3;
  const ChannelSpec spec = default_spec(name);
  const ControlSystem sys = build_system(spec);
  const SaturateOptions opt;

  Report r;
  r.doc = envelope("example");
  r.doc["input"]["example"] = n;
  r.doc["input"]["rates"] = doubles(spec.rates);
  r.doc["input"]["saturation"] = saturation_input(opt);
  r.doc["tolerances"]["rank"] = kRankTol;
  r.doc["tolerances"]["saturation"] = opt.tol;

  const ConditionReport cond = check_conditions(sys, kRankTol);
  const Saturated s = run_saturation(sys, opt);
  fill_wedge(r.doc, s);
  r.doc["result"]["system"] = system_json(sys);
  r.doc["result"]["conditions"] = conditions_json(cond);
  Json names = Json::array();
  for (const auto& nm : r3_basis_names()) names.push_back(nm);
  r.doc["result"]["basis_names"] = std::move(names);
  Json samples = Json::array();
  for (const auto& g : s.wedge.cone.generators) samples.push_back(doubles(r3_coordinates(g)));
  r.doc["result"]["cone_samples"] = std::move(samples);
  r.ok = s.report.converged;
  return r;
}

Report channel_report(ChannelName name, const std::vector<double>& rates, double t) {
  if (name != ChannelName::bit_flip && name != ChannelName::phase_flip && name != ChannelName::bit_phase_flip &&
      name != ChannelName::depolarizing)
    throw DomainError("channel takes bit_flip, phase_flip, bit_phase_flip or depolarizing");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("channel time must be finite and nonnegative");
  ChannelSpec spec = default_spec(name);
  if (!rates.empty()) {
    spec.rates = rates;
    if (name == ChannelName::depolarizing && rates.size() == 1) spec.rates.assign(3, rates[0]);
  }
  const ControlSystem sys = build_system(spec);
  const Superop gen = lindbladian(sys, {});
  const Superop prop{expm(-t * gen.matrix), Carrier::vec, hilbert_dim(sys.rep)};
  const CptpReport audit = cptp_audit(prop, kAuditTol, kAuditTol);
  const KrausSet kraus = kraus_family(spec, t);
  const double completeness = kraus_completeness_residual(kraus);
  const double superop_residual = max_abs_diff(kraus_superop(kraus), prop.matrix);
  const std::size_t rank = kraus_rank(prop);

  Report r;
  r.doc = envelope("channel");
  r.doc["input"]["channel"] = to_string(name);
  r.doc["input"]["rates"] = doubles(spec.rates);
  r.doc["input"]["t"] = t;
  r.doc["tolerances"]["tp"] = kAuditTol;
  r.doc["tolerances"]["cp"] = kAuditTol;
  r.doc["tolerances"]["kraus_rank_relative"] = 1e-8;
  r.doc["dimensions"]["hilbert"] = hilbert_dim(sys.rep);
  r.doc["dimensions"]["superop"] = prop.matrix.rows();
  r.doc["dimensions"]["kraus_operators"] = kraus.operators.size();
  auto& res = r.doc["result"];
  res["system"] = system_json(sys);
  res["generator"] = matrix_json(gen.matrix);
  res["propagator"] = matrix_json(prop.matrix);
  Json a;
  a["is_tp"] = audit.is_tp;
  a["tp_residual"] = audit.tp_residual;
  a["choi_min_eig"] = audit.choi_min_eig;
  a["is_cp"] = audit.is_cp;
  res["cptp"] = std::move(a);
  res["kraus_operators"] = matrices_json(kraus.operators);
  res["kraus_completeness_residual"] = completeness;
  res["kraus_superop_residual"] = superop_residual;
  res["kraus_rank"] = rank;
  r.ok = audit.is_tp && audit.is_cp && completeness <= kAuditTol && superop_residual <= kAuditTol;
  return r;
}

Report wedge_report(const SystemFile& f, const SaturationArgs& args) {
  const SaturateOptions opt = saturation_options(f, args);
  Report r;
  r.doc = envelope("wedge");
  r.doc["input"]["system"] = system_json(f.system);
  r.doc["input"]["saturation"] = saturation_input(opt);
  r.doc["tolerances"]["saturation"] = opt.tol;
  const Saturated s = run_saturation(f.system, opt);
  fill_wedge(r.doc, s);
  r.doc["result"]["generators"] = matrices_json(s.wedge.cone.generators);
  r.ok = s.report.converged;
  return r;
}

Report conditions_report(const SystemFile& f) {
  Report r;
  r.doc = envelope("conditions");
  r.doc["input"]["system"] = system_json(f.system);
  r.doc["tolerances"]["rank"] = kRankTol;
  const ConditionReport c = check_conditions(f.system, kRankTol);
  r.doc["dimensions"]["generator"] = generator_dim(f.system.rep);
  r.doc["dimensions"]["kc"] = c.dim_kc;
  r.doc["dimensions"]["kd"] = c.dim_kd;
  r.doc["dimensions"]["s"] = c.dim_s;
  r.doc["result"]["conditions"] = conditions_json(c);
  return r;
}

Report semialgebra_report(const SystemFile& f, const SemialgebraArgs& args) {
  if (!(args.t > 0.0)) throw DomainError("semialgebra needs a positive t");
  const SaturateOptions sopt = saturation_options(f, {});
  ProbeOptions popt;
  popt.pair_samples = args.pairs;
  popt.t_grid = {args.t};
  popt.tol = args.tol;
  popt.seed = args.seed;

  Report r;
  r.doc = envelope("semialgebra");
  r.doc["input"]["system"] = system_json(f.system);
  r.doc["input"]["saturation"] = saturation_input(sopt);
  r.doc["input"]["pairs"] = args.pairs;
  r.doc["input"]["t"] = args.t;
  r.doc["input"]["seed"] = args.seed;
  r.doc["tolerances"]["saturation"] = sopt.tol;
  r.doc["tolerances"]["membership"] = args.tol;
  r.doc["tolerances"]["bch_order"] = popt.order;

  const Saturated s = run_saturation(f.system, sopt);
  fill_wedge(r.doc, s);
  const auto hit = semialgebra_probe(s.wedge, popt);
  auto& res = r.doc["result"];
  res["verdict"] = hit ? "witness_found" : "no_witness_found";
  if (hit) {
    Json w;
    w["t"] = hit->t;
    w["A"] = matrix_json(hit->A);
    w["B"] = matrix_json(hit->B);
    w["product"] = matrix_json(hit->product);
    w["offending_component"] = matrix_json(hit->offending_component);
    w["residual"] = hit->residual;
    res["witness"] = std::move(w);
  } else {
    res["witness"] = nullptr;
  }
  r.ok = s.report.converged;
  return r;
}

Report semialgebra_case_report(SemialgebraCase id) {
  const CaseParams p;
  const CaseResult c = semialgebra_case(id, p);
  Report r;
  r.doc = envelope("semialgebra");
  r.doc["input"]["case"] = to_string(id);
  r.doc["input"]["face_samples"] = p.face_samples;
  r.doc["input"]["seed"] = p.seed;
  r.doc["tolerances"]["violation"] = 1e-8;
  r.doc["dimensions"]["tangent"] = c.tangent.dim();
  auto& res = r.doc["result"];
  res["verdict"] = c.semialgebra ? "semialgebra" : "not_semialgebra";
  res["gamma0"] = matrix_json(c.gamma0);
  res["A"] = matrix_json(c.A);
  res["tangent_basis"] = matrices_json(c.tangent.basis());
  res["B"] = c.B ? matrix_json(*c.B) : Json(nullptr);
  res["commutator"] = c.commutator ? matrix_json(*c.commutator) : Json(nullptr);
  res["violation"] = c.violation;
  return r;
}

Report reachable_report(const SystemFile& f, const ReachableArgs& args) {
  SampleOptions opt;
  opt.count = args.count;
  opt.depth = args.switches;
  opt.horizon = args.horizon;
  opt.u_max = args.u_max;
  opt.seed = args.seed;
  const auto samples = sample_reachable(f.system, opt);

  bool all_tp = true, all_cp = true, unital = true;
  double max_tp = 0.0, min_choi = std::numeric_limits<double>::infinity();
  double det_min = std::numeric_limits<double>::infinity(), det_max = -det_min, max_sv = 0.0;
  double max_increment = -std::numeric_limits<double>::infinity();
  Json schedules = Json::array();
  for (const auto& s : samples) {
    const CptpReport a = cptp_audit(s.map, kAuditTol, kAuditTol);
    all_tp = all_tp && a.is_tp;
    all_cp = all_cp && a.is_cp;
    max_tp = std::max(max_tp, a.tp_residual);
    min_choi = std::min(min_choi, a.choi_min_eig);
    schedules.push_back(schedule_json(s.schedule));
    if (!unital) continue;
    Mat c;
    try {
      c = coherence_rep(s.map);
    } catch (const DomainError&) {
      unital = false;
      continue;
    }
    // Determinant via the product of eigenvalue moduli of C^T C.
    const auto ev = eig_sym((c.adjoint() * c).realified(1e-9)).values;
    double det2 = 1.0;
    for (double v : ev) det2 *= std::max(v, 0.0);
    det_min = std::min(det_min, std::sqrt(det2));
    det_max = std::max(det_max, std::sqrt(det2));
    max_sv = std::max(max_sv, std::sqrt(std::max(ev.front(), 0.0)));
    max_increment = std::max(max_increment, contraction_audit(f.system, s.schedule, args.grid).max_increment);
  }

  Report r;
  r.doc = envelope("reachable");
  r.doc["input"]["system"] = system_json(f.system);
  r.doc["input"]["switches"] = args.switches;
  r.doc["input"]["count"] = args.count;
  r.doc["input"]["seed"] = args.seed;
  r.doc["input"]["horizon"] = args.horizon;
  r.doc["input"]["u_max"] = args.u_max;
  r.doc["input"]["grid"] = args.grid;
  r.doc["tolerances"]["tp"] = kAuditTol;
  r.doc["tolerances"]["cp"] = kAuditTol;
  r.doc["tolerances"]["contraction"] = 1e-9;
  r.doc["dimensions"]["generator"] = generator_dim(f.system.rep);
  r.doc["dimensions"]["controls"] = f.system.controls.size();
  r.doc["dimensions"]["samples"] = samples.size();
  auto& res = r.doc["result"];
  Json sum;
  sum["all_tp"] = all_tp;
  sum["all_cp"] = all_cp;
  sum["max_tp_residual"] = max_tp;
  sum["min_choi_eig"] = samples.empty() ? 0.0 : min_choi;
  sum["unital"] = unital;
  if (unital && !samples.empty()) {
    sum["coherence_abs_det_min"] = det_min;
    sum["coherence_abs_det_max"] = det_max;
    sum["coherence_max_singular_value"] = max_sv;
  } else {
    sum["coherence_abs_det_min"] = nullptr;
    sum["coherence_abs_det_max"] = nullptr;
    sum["coherence_max_singular_value"] = nullptr;
  }
  res["summary"] = std::move(sum);
  Json con;
  con["applicable"] = unital;
  con["max_increment"] = unital && !samples.empty() ? Json(max_increment) : Json(nullptr);
  const bool holds = !unital || samples.empty() || max_increment <= 1e-9;
  con["holds"] = holds;
  res["contraction"] = std::move(con);
  res["schedules"] = std::move(schedules);
  r.ok = all_tp && all_cp && holds;
  return r;
}

FigureTable figure_data(const std::string& figure, std::size_t steps) {
  if (figure != "2a" && figure != "2b" && figure != "3")
    throw DomainError("figure must be 2a, 2b or 3, got '" + figure + "'");
  if (steps == 0) throw DomainError("figure data needs at least one theta step");
  const ChannelName name = figure == "3" ? ChannelName::example3 : ChannelName::example2;
  const ControlSystem sys = build_system(default_spec(name));
  const Wedge w = saturate(initial_wedge(sys));
  if (w.edge.dim() != 1) throw ConvergenceError("figure data expects a one-dimensional edge");
  Mat e = w.edge.basis()[0];
  e *= (inner(e, H_y()) < 0.0 ? -1.0 : 1.0) * norm(H_y()) / norm(e);
  const Mat drift = drift_generator(sys);
  const Mat& gamma0 = sys.relaxation;
  const auto coef = [](const Mat& g, const Mat& b) { return inner(g, b) / inner(b, b); };

  FigureTable t;
  if (figure == "2b")
    t.header = {"theta", "edge_coef", "c_Hy", "c_Hz", "c_Gamma0"};
  else
    t.header = {"theta", "c_Hx", "c_Hz", "c_Gamma0"};
  for (std::size_t k = 0; k < steps; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(steps);
    const Mat r = expm(theta * e);
    const Mat g = r * drift * r.transpose();
    const double scale = coef(g, gamma0);
    if (figure == "2b") {
      for (double edge : {-1.0, 0.0, 1.0})
        t.rows.push_back({theta, edge, coef(g, H_y()) / scale + edge, coef(g, H_z()) / scale, coef(g, gamma0) / scale});
    } else {
      t.rows.push_back({theta, coef(g, H_x()) / scale, coef(g, H_z()) / scale, coef(g, gamma0) / scale});
    }
  }
  return t;
}

std::string figure_csv(const FigureTable& t) {
  std::string out;
  for (std::size_t k = 0; k < t.header.size(); ++k) out += (k ? "," : "") + t.header[k];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + format_double(row[k]);
    out += '\n';
  }
  return out;
}

}  // namespace liewedge
