#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lqrdecay/string_model.hpp"

namespace lqrdecay {

struct SearchEvalEntry {
  std::vector<std::size_t> J;
  double upper = 0.0;           // U_J
  double lower = 0.0;           // L_J
  std::optional<double> gamma;  // absent when the LQR solve was pruned away
};

struct SearchResult {
  double gamma_star = 0.0;
  std::vector<std::vector<std::size_t>> best_configs;
  std::size_t lqr_solved = 0;
  std::size_t total_configs = 0;
  std::vector<SearchEvalEntry> evaluation_log;  // lexicographic config order
};

struct SearchOptions {
  /// Worker threads for the per-configuration bound pass; 0 picks the
  /// LQRDECAY_THREADS environment setting (0 there again means sequential).
  std::size_t threads = 0;
  /// CARE solves launched per selection round; 1 reproduces the sequential
  /// pick-the-best-upper-bound loop exactly.
  std::size_t batch = 1;
  std::size_t brute_force_cap = 5000;
};

/// Resolves the effective worker count from options and LQRDECAY_THREADS.
std::size_t effective_workers(std::size_t requested);

/// Bound-pruned search over all C(N, m) actuator configurations. Bounds come
/// from the closed forms only; the LQR is solved just for configurations
/// whose upper bound can still beat the best decay rate found, so every
/// skipped configuration carries the certificate U_J < gamma_star.
SearchResult pruned_search(const StringConfig& base, std::size_t m,
                           const SearchOptions& opts = {});

/// Solves every configuration; ground truth for the pruned search.
SearchResult brute_force_search(const StringConfig& base, std::size_t m,
                                const SearchOptions& opts = {});

/// gamma_decay for one explicit configuration.
double solve_configuration(const StringConfig& cfg);

}  // namespace lqrdecay
