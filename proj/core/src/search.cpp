#include "lqrdecay/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>

#include "lqrdecay/bounds.hpp"

namespace lqrdecay {

namespace {

std::string config_to_string(const std::vector<std::size_t>& j) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) os << ',';
    os << j[i];
  }
  os << ')';
  return os.str();
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n,
                                                   std::size_t m) {
  std::vector<std::vector<std::size_t>> all;
  std::vector<std::size_t> cur(m);
  for (std::size_t i = 0; i < m; ++i) cur[i] = i + 1;
  while (true) {
    all.push_back(cur);
    // advance lexicographically
    std::size_t i = m;
    while (i-- > 0) {
      if (cur[i] < n - (m - 1 - i)) {
        ++cur[i];
        for (std::size_t k = i + 1; k < m; ++k) cur[k] = cur[k - 1] + 1;
        break;
      }
      if (i == 0) return all;
    }
  }
}

std::size_t binomial(std::size_t n, std::size_t m) {
  if (m > n) return 0;
  m = std::min(m, n - m);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    r = r * (n - m + i) / i;
  }
  return r;
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t spawned = std::min(workers, count);
  pool.reserve(spawned);
  for (std::size_t w = 0; w < spawned; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double solve_one(const StringConfig& base, std::size_t m,
                 const std::vector<std::size_t>& j) {
  StringConfig cfg = base;
  cfg.m = m;
  cfg.J = j;
  try {
    return solve_configuration(cfg);
  } catch (const std::exception& e) {
    throw ConvergenceError("search: LQR solve failed for configuration " +
                           config_to_string(j) + ": " + e.what());
  }
}

struct BoundedConfigs {
  std::vector<std::vector<std::size_t>> configs;
  std::vector<double> upper, lower;
  // d_0 > 0: an actuator set sitting exactly on the nodes of some mode
  // (possible when N+1 is composite) cannot be stabilized at all, so its
  // decay rate is 0 and no LQR solve is attempted.
  std::vector<char> controllable;
};

BoundedConfigs evaluate_bounds(const StringConfig& base, std::size_t m,
                               std::size_t workers) {
  BoundedConfigs out;
  out.configs = combinations(base.N, m);
  const std::size_t count = out.configs.size();
  out.upper.assign(count, 0.0);
  out.lower.assign(count, 0.0);
  out.controllable.assign(count, 1);
  parallel_for(count, workers, [&](std::size_t i) {
    StringConfig cfg = base;
    cfg.m = m;
    cfg.J = out.configs[i];
    const SpectralData data = closed_form_bounds(cfg);
    const BoundReport report = summarize(data);
    out.upper[i] = report.best_upper;
    out.lower[i] = report.best_lower;
    out.controllable[i] = d0(data) > 1e-9 * data.B_norm ? 1 : 0;
  });
  return out;
}

SearchResult finalize(const BoundedConfigs& bounds,
                      const std::vector<std::optional<double>>& gamma,
                      std::size_t lqr_solved, std::size_t total) {
  SearchResult res;
  res.total_configs = total;
  res.lqr_solved = lqr_solved;
  res.gamma_star = -std::numeric_limits<double>::infinity();
  for (const auto& g : gamma) {
    if (g) res.gamma_star = std::max(res.gamma_star, *g);
  }
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i] && *gamma[i] == res.gamma_star) {
      res.best_configs.push_back(bounds.configs[i]);
    }
    res.evaluation_log.push_back(SearchEvalEntry{
        bounds.configs[i], bounds.upper[i], bounds.lower[i], gamma[i]});
  }
  return res;
}

}  // namespace

std::size_t effective_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LQRDECAY_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 0) {
      return v == 0 ? 1 : static_cast<std::size_t>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

double solve_configuration(const StringConfig& cfg) {
  const StringSystem sys = build_string(cfg);
  const CareSolution care = solve_care(sys.sys);
  return gamma_decay(care.closed_loop_eigs);
}

SearchResult pruned_search(const StringConfig& base, std::size_t m,
                           const SearchOptions& opts) {
  StringConfig probe = base;
  probe.m = m;
  probe.J.clear();
  validate(probe, /*require_indices=*/false);

  const std::size_t workers = effective_workers(opts.threads);
  const BoundedConfigs bounds = evaluate_bounds(base, m, workers);
  const std::size_t count = bounds.configs.size();
  std::vector<std::optional<double>> gamma(count);
  std::size_t solved = 0;

  const auto solve_index = [&](std::size_t i) {
    if (!bounds.controllable[i]) return 0.0;
    return solve_one(base, m, bounds.configs[i]);
  };

  // Step 3: start from the configuration with the best lower bound.
  std::size_t start = 0;
  for (std::size_t i = 1; i < count; ++i) {
    if (bounds.lower[i] > bounds.lower[start]) start = i;
  }
  gamma[start] = solve_index(start);
  solved += bounds.controllable[start] ? 1 : 0;
  double best = *gamma[start];

  // Steps 4-5: keep solving the unsolved configuration with the greatest
  // upper bound while that bound can still reach the incumbent. Ties go to
  // the lexicographically smallest configuration (the enumeration order).
  const std::size_t batch = std::max<std::size_t>(1, opts.batch);
  while (true) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < count; ++i) {
      if (!gamma[i] && bounds.upper[i] >= best) candidates.push_back(i);
    }
    if (candidates.empty()) break;
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) {
                       return bounds.upper[a] > bounds.upper[b];
                     });
    const std::size_t round = std::min(batch, candidates.size());
    std::vector<double> results(round);
    parallel_for(round, std::min(workers, round), [&](std::size_t r) {
      results[r] = solve_index(candidates[r]);
    });
    for (std::size_t r = 0; r < round; ++r) {
      gamma[candidates[r]] = results[r];
      solved += bounds.controllable[candidates[r]] ? 1 : 0;
      best = std::max(best, results[r]);
    }
  }
  return finalize(bounds, gamma, solved, count);
}

SearchResult brute_force_search(const StringConfig& base, std::size_t m,
                                const SearchOptions& opts) {
  StringConfig probe = base;
  probe.m = m;
  probe.J.clear();
  validate(probe, /*require_indices=*/false);

  const std::size_t total = binomial(base.N, m);
  if (total > opts.brute_force_cap) {
    throw PreconditionError(
        "brute_force_search: C(N,m) = " + std::to_string(total) +
        " exceeds the cap of " + std::to_string(opts.brute_force_cap));
  }
  const std::size_t workers = effective_workers(opts.threads);
  const BoundedConfigs bounds = evaluate_bounds(base, m, workers);
  const std::size_t count = bounds.configs.size();
  std::vector<std::optional<double>> gamma(count);
  std::vector<double> results(count, 0.0);
  std::size_t solved = 0;
  parallel_for(count, workers, [&](std::size_t i) {
    if (bounds.controllable[i]) {
      results[i] = solve_one(base, m, bounds.configs[i]);
    }
  });
  for (std::size_t i = 0; i < count; ++i) {
    gamma[i] = results[i];
    solved += bounds.controllable[i] ? 1 : 0;
  }
  return finalize(bounds, gamma, solved, count);
}

}  // namespace lqrdecay
