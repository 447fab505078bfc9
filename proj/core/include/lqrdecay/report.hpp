#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "lqrdecay/bounds.hpp"
#include "lqrdecay/riccati.hpp"
#include "lqrdecay/search.hpp"
#include "lqrdecay/spectral.hpp"
#include "lqrdecay/string_model.hpp"

namespace lqrdecay {

// Field order in emitted JSON is fixed (insertion order), so identical
// inputs produce byte-identical output.
using ordered_json = nlohmann::ordered_json;

struct CareSummary {
  double X_norm = 0.0;
  double residual = 0.0;
  double gamma_decay = 0.0;
  std::vector<cxd> closed_loop_eigs;
  std::size_t iterations = 0;
};

/// Full single-system analysis: spectral summary, Riccati summary, every
/// bound, and the exclusion-region verdicts.
struct AnalysisReport {
  std::string label;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> lambdas;
  double delta = 0.0;
  std::vector<double> delta_k;
  double Delta = 0.0;
  std::vector<double> Delta_table;
  std::vector<double> b_norms;
  double B_norm = 0.0;
  std::vector<double> sigma;
  double d0 = 0.0;
  DucBounds duc;
  CareSummary care;
  BoundReport bounds;
  std::vector<RegionVerdict> verdicts;
  std::vector<std::string> flags;
  bool bound_violation = false;
};

/// Runs the whole pipeline: decompose -> solve_care -> bounds -> region
/// check. allow_non_skew bypasses the skew-Hermitian gate (demonstration
/// systems); bound violations are then expected and land in flags.
AnalysisReport analyze(const SystemSpec& sys, bool allow_non_skew = false);

// ---- JSON codecs (complex numbers as [re, im] pairs) ----

ordered_json complex_to_json(cxd z);
cxd complex_from_json(const nlohmann::json& j);
ordered_json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// {"A": [[[re,im],...],...], "B": ..., optional "Q", "R", "label"}
SystemSpec system_from_json(const nlohmann::json& j);
ordered_json system_to_json(const SystemSpec& sys);

/// {"N":30,"m":2,"tau_over_h":10,"mass":50,"J":[2,5]} (J optional)
StringConfig string_config_from_json(const nlohmann::json& j);
ordered_json string_config_to_json(const StringConfig& cfg);

ordered_json bound_report_to_json(const BoundReport& r);
BoundReport bound_report_from_json(const nlohmann::json& j);

ordered_json report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::json& j);

ordered_json search_result_to_json(const SearchResult& r);

/// evaluation_log as CSV: config,upper,lower,gamma ("skipped" when pruned).
std::string search_log_csv(const SearchResult& r);

}  // namespace lqrdecay
