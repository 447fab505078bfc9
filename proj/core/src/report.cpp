#include "lqrdecay/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace lqrdecay {

namespace {

// JSON has no infinities; encode them as strings so every numeric field
// survives a round trip exactly.
ordered_json real_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw PreconditionError("json: unexpected string where a real was expected");
  }
  return j.get<double>();
}

ordered_json real_vector_to_json(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(real_to_json(x));
  return a;
}

std::vector<double> real_vector_from_json(const nlohmann::json& j) {
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(real_from_json(x));
  return v;
}

ordered_json complex_vector_to_json(const std::vector<cxd>& v) {
  ordered_json a = ordered_json::array();
  for (cxd z : v) a.push_back(complex_to_json(z));
  return a;
}

std::vector<cxd> complex_vector_from_json(const nlohmann::json& j) {
  std::vector<cxd> v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(complex_from_json(x));
  return v;
}

ordered_json optional_to_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return real_to_json(*v);
}

std::optional<double> optional_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return real_from_json(j);
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ordered_json complex_to_json(cxd z) {
  return ordered_json::array({z.real(), z.imag()});
}

cxd complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return cxd{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return cxd{j[0].get<double>(), j[1].get<double>()};
  }
  throw PreconditionError("json: complex entries must be [re, im] pairs");
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw PreconditionError("json: matrix must be a nonempty array of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw PreconditionError("json: ragged matrix rows");
    }
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  if (!m.all_finite()) {
    throw PreconditionError("json: non-finite matrix entry");
  }
  return m;
}

SystemSpec system_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("B")) {
    throw PreconditionError("json: system object needs \"A\" and \"B\"");
  }
  ComplexMatrix a = matrix_from_json(j["A"]);
  ComplexMatrix b = matrix_from_json(j["B"]);
  ComplexMatrix q, r;
  if (j.contains("Q")) q = matrix_from_json(j["Q"]);
  if (j.contains("R")) r = matrix_from_json(j["R"]);
  std::string label = j.value("label", std::string{});
  return make_system(std::move(a), std::move(b), std::move(q), std::move(r),
                     std::move(label));
}

ordered_json system_to_json(const SystemSpec& sys) {
  ordered_json j;
  j["label"] = sys.label;
  j["A"] = matrix_to_json(sys.A);
  j["B"] = matrix_to_json(sys.B);
  j["Q"] = matrix_to_json(sys.Q);
  j["R"] = matrix_to_json(sys.R);
  return j;
}

StringConfig string_config_from_json(const nlohmann::json& j) {
  StringConfig cfg;
  if (!j.is_object()) {
    throw PreconditionError("json: string config must be an object");
  }
  cfg.N = j.at("N").get<std::size_t>();
  cfg.m = j.at("m").get<std::size_t>();
  cfg.tau_over_h = j.at("tau_over_h").get<double>();
  cfg.mass = j.at("mass").get<double>();
  if (j.contains("J")) {
    for (const auto& x : j["J"]) cfg.J.push_back(x.get<std::size_t>());
  }
  validate(cfg, /*require_indices=*/false);
  return cfg;
}

ordered_json string_config_to_json(const StringConfig& cfg) {
  ordered_json j;
  j["N"] = cfg.N;
  j["m"] = cfg.m;
  j["tau_over_h"] = cfg.tau_over_h;
  j["mass"] = cfg.mass;
  j["J"] = cfg.J;
  return j;
}

ordered_json bound_report_to_json(const BoundReport& r) {
  ordered_json j;
  j["ell_est"] = real_to_json(r.ell_est);
  j["ell_est1"] = optional_to_json(r.ell_est1);
  j["rho_k"] = real_vector_to_json(r.rho_k);
  j["rho1_k"] = r.rho1_k ? real_vector_to_json(*r.rho1_k) : ordered_json(nullptr);
  j["phi_k"] = real_vector_to_json(r.phi_k);
  j["Gamma_minus"] = optional_to_json(r.Gamma_minus);
  j["Gamma_plus"] = optional_to_json(r.Gamma_plus);
  j["rho"] = optional_to_json(r.rho);
  j["upper_B_norm"] = real_to_json(r.upper_B_norm);
  j["upper_sqrt3Delta"] = optional_to_json(r.upper_sqrt3Delta);
  j["upper_m1"] = optional_to_json(r.upper_m1);
  ordered_json disks = ordered_json::array();
  for (const RoucheDisk& d : r.rouche_disks) {
    ordered_json dj;
    dj["center"] = complex_to_json(d.center);
    dj["radius"] = d.radius;
    dj["applicable"] = d.applicable;
    disks.push_back(std::move(dj));
  }
  j["rouche_disks"] = std::move(disks);
  ordered_json band;
  band["applicable"] = r.band_split_info.applicable;
  if (r.band_split_info.applicable) {
    band["inner"] = ordered_json::array(
        {r.band_split_info.inner_lo, r.band_split_info.inner_hi});
    band["outer"] = ordered_json::array(
        {r.band_split_info.outer_lo, r.band_split_info.outer_hi});
    band["inner_count"] = r.band_split_info.inner_count;
    band["outer_count"] = r.band_split_info.outer_count;
  }
  j["band_split"] = std::move(band);
  j["best_lower"] = real_to_json(r.best_lower);
  j["best_upper"] = real_to_json(r.best_upper);
  return j;
}

BoundReport bound_report_from_json(const nlohmann::json& j) {
  BoundReport r;
  r.ell_est = real_from_json(j.at("ell_est"));
  r.ell_est1 = optional_from_json(j.at("ell_est1"));
  r.rho_k = real_vector_from_json(j.at("rho_k"));
  if (!j.at("rho1_k").is_null()) {
    r.rho1_k = real_vector_from_json(j.at("rho1_k"));
  }
  r.phi_k = real_vector_from_json(j.at("phi_k"));
  r.Gamma_minus = optional_from_json(j.at("Gamma_minus"));
  r.Gamma_plus = optional_from_json(j.at("Gamma_plus"));
  r.rho = optional_from_json(j.at("rho"));
  r.upper_B_norm = real_from_json(j.at("upper_B_norm"));
  r.upper_sqrt3Delta = optional_from_json(j.at("upper_sqrt3Delta"));
  r.upper_m1 = optional_from_json(j.at("upper_m1"));
  for (const auto& dj : j.at("rouche_disks")) {
    RoucheDisk d;
    d.center = complex_from_json(dj.at("center"));
    d.radius = dj.at("radius").get<double>();
    d.applicable = dj.at("applicable").get<bool>();
    r.rouche_disks.push_back(d);
  }
  const auto& band = j.at("band_split");
  r.band_split_info.applicable = band.at("applicable").get<bool>();
  if (r.band_split_info.applicable) {
    r.band_split_info.inner_lo = band.at("inner")[0].get<double>();
    r.band_split_info.inner_hi = band.at("inner")[1].get<double>();
    r.band_split_info.outer_lo = band.at("outer")[0].get<double>();
    r.band_split_info.outer_hi = band.at("outer")[1].get<double>();
    r.band_split_info.inner_count = band.at("inner_count").get<std::size_t>();
    r.band_split_info.outer_count = band.at("outer_count").get<std::size_t>();
  }
  r.best_lower = real_from_json(j.at("best_lower"));
  r.best_upper = real_from_json(j.at("best_upper"));
  return r;
}

AnalysisReport analyze(const SystemSpec& sys, bool allow_non_skew) {
  AnalysisReport rep;
  rep.label = sys.label;

  const SpectralData data = decompose(sys.A, sys.B, allow_non_skew);
  rep.n = data.n;
  rep.m = data.m;
  rep.lambdas = data.lambdas;
  rep.delta = data.delta;
  rep.delta_k = data.delta_k;
  rep.Delta = data.Delta;
  rep.Delta_table = data.Delta_table;
  rep.b_norms = data.b_norms;
  rep.B_norm = data.B_norm;
  rep.sigma = data.sigma;
  rep.d0 = d0(data);
  rep.duc = duc_bounds(data);

  const CareSolution care = solve_care(sys);
  rep.care.X_norm = care.X_norm();
  rep.care.residual = care.residual;
  rep.care.gamma_decay = gamma_decay(care.closed_loop_eigs);
  rep.care.closed_loop_eigs = care.closed_loop_eigs;
  rep.care.iterations = care.iterations;

  rep.bounds = summarize(data);

  const ExclusionGeometry geom = exclusion_geometry(data);
  rep.verdicts = check_spectrum_in_region(care.closed_loop_eigs, geom);

  const double tol = geom.tol;
  const double gamma = rep.care.gamma_decay;
  if (gamma > rep.B_norm + tol) {
    rep.flags.push_back("upper bound ||B|| violated");
  }
  if (gamma > rep.bounds.best_upper + tol) {
    rep.flags.push_back("best upper bound violated");
  }
  if (gamma < rep.bounds.best_lower - tol) {
    rep.flags.push_back("best lower bound violated");
  }
  bool region_ok = true;
  for (const RegionVerdict& v : rep.verdicts) region_ok &= v.ok();
  if (!region_ok) rep.flags.push_back("exclusion-region violation");
  rep.bound_violation = !rep.flags.empty();
  return rep;
}

ordered_json report_to_json(const AnalysisReport& r) {
  ordered_json j;
  j["label"] = r.label;
  j["n"] = r.n;
  j["m"] = r.m;
  ordered_json spectral;
  spectral["lambdas"] = real_vector_to_json(r.lambdas);
  spectral["delta"] = real_to_json(r.delta);
  spectral["delta_k"] = real_vector_to_json(r.delta_k);
  spectral["Delta"] = real_to_json(r.Delta);
  spectral["Delta_table"] = real_vector_to_json(r.Delta_table);
  spectral["b_norms"] = real_vector_to_json(r.b_norms);
  spectral["B_norm"] = real_to_json(r.B_norm);
  spectral["sigma"] = real_vector_to_json(r.sigma);
  spectral["d0"] = real_to_json(r.d0);
  ordered_json duc;
  duc["applicable"] = r.duc.applicable;
  duc["upper"] = real_to_json(r.duc.upper);
  duc["gamma_lower_m1"] = optional_to_json(r.duc.gamma_lower_m1);
  spectral["duc"] = std::move(duc);
  j["spectral"] = std::move(spectral);
  ordered_json care;
  care["X_norm"] = r.care.X_norm;
  care["residual"] = r.care.residual;
  care["gamma_decay"] = r.care.gamma_decay;
  care["closed_loop_eigs"] = complex_vector_to_json(r.care.closed_loop_eigs);
  care["iterations"] = r.care.iterations;
  j["care"] = std::move(care);
  j["bounds"] = bound_report_to_json(r.bounds);
  ordered_json verdicts = ordered_json::array();
  for (const RegionVerdict& v : r.verdicts) {
    ordered_json vj;
    vj["eigenvalue"] = complex_to_json(v.eigenvalue);
    vj["violations"] = v.violations;
    verdicts.push_back(std::move(vj));
  }
  j["verdicts"] = std::move(verdicts);
  j["flags"] = r.flags;
  j["bound_violation"] = r.bound_violation;
  return j;
}

AnalysisReport report_from_json(const nlohmann::json& j) {
  AnalysisReport r;
  r.label = j.at("label").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.m = j.at("m").get<std::size_t>();
  const auto& spectral = j.at("spectral");
  r.lambdas = real_vector_from_json(spectral.at("lambdas"));
  r.delta = real_from_json(spectral.at("delta"));
  r.delta_k = real_vector_from_json(spectral.at("delta_k"));
  r.Delta = real_from_json(spectral.at("Delta"));
  r.Delta_table = real_vector_from_json(spectral.at("Delta_table"));
  r.b_norms = real_vector_from_json(spectral.at("b_norms"));
  r.B_norm = real_from_json(spectral.at("B_norm"));
  r.sigma = real_vector_from_json(spectral.at("sigma"));
  r.d0 = real_from_json(spectral.at("d0"));
  const auto& duc = spectral.at("duc");
  r.duc.applicable = duc.at("applicable").get<bool>();
  r.duc.upper = real_from_json(duc.at("upper"));
  r.duc.gamma_lower_m1 = optional_from_json(duc.at("gamma_lower_m1"));
  const auto& care = j.at("care");
  r.care.X_norm = care.at("X_norm").get<double>();
  r.care.residual = care.at("residual").get<double>();
  r.care.gamma_decay = care.at("gamma_decay").get<double>();
  r.care.closed_loop_eigs = complex_vector_from_json(care.at("closed_loop_eigs"));
  r.care.iterations = care.at("iterations").get<std::size_t>();
  r.bounds = bound_report_from_json(j.at("bounds"));
  for (const auto& vj : j.at("verdicts")) {
    RegionVerdict v;
    v.eigenvalue = complex_from_json(vj.at("eigenvalue"));
    v.violations = vj.at("violations").get<std::vector<std::string>>();
    r.verdicts.push_back(std::move(v));
  }
  r.flags = j.at("flags").get<std::vector<std::string>>();
  r.bound_violation = j.at("bound_violation").get<bool>();
  return r;
}

ordered_json search_result_to_json(const SearchResult& r) {
  ordered_json j;
  j["gamma_star"] = r.gamma_star;
  j["best_configs"] = r.best_configs;
  j["lqr_solved"] = r.lqr_solved;
  j["total_configs"] = r.total_configs;
  ordered_json log = ordered_json::array();
  for (const SearchEvalEntry& e : r.evaluation_log) {
    ordered_json ej;
    ej["J"] = e.J;
    ej["upper"] = real_to_json(e.upper);
    ej["lower"] = real_to_json(e.lower);
    ej["gamma"] = optional_to_json(e.gamma);
    log.push_back(std::move(ej));
  }
  j["evaluation_log"] = std::move(log);
  return j;
}

std::string search_log_csv(const SearchResult& r) {
  std::string out = "config,upper,lower,gamma\n";
  for (const SearchEvalEntry& e : r.evaluation_log) {
    std::string cfg;
    for (std::size_t i = 0; i < e.J.size(); ++i) {
      if (i) cfg += '-';
      cfg += std::to_string(e.J[i]);
    }
    out += cfg;
    out += ',';
    out += csv_number(e.upper);
    out += ',';
    out += csv_number(e.lower);
    out += ',';
    out += e.gamma ? csv_number(*e.gamma) : "skipped";
    out += '\n';
  }
  return out;
}

}  // namespace lqrdecay
