#include "absnorm/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

#include "absnorm/certify.hpp"
#include "absnorm/errors.hpp"
#include "absnorm/linalg.hpp"
#include "absnorm/random.hpp"

namespace absnorm {

// ---------------------------------------------------------------------------
// Nelder–Mead

namespace {

struct Vertex {
  std::vector<double> x;
  double f = 0.0;
};

double sanitize(double f) { return std::isfinite(f) ? f : std::numeric_limits<double>::infinity(); }

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

// x = from + scale·(to − from)
std::vector<double> along(const std::vector<double>& from, const std::vector<double>& to, double scale) {
  std::vector<double> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) out[i] = from[i] + scale * (to[i] - from[i]);
  return out;
}

}  // namespace

NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& objective,
                                      std::vector<double> start, const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    return sanitize(objective(x));
  };

  std::vector<Vertex> simplex(dim + 1);
  simplex[0].x = std::move(start);
  for (std::size_t i = 1; i <= dim; ++i) {
    simplex[i].x = simplex[0].x;
    simplex[i].x[i - 1] += options.initial_step;
  }
  for (auto& v : simplex) v.f = eval(v.x);

  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  auto spread = [&] {
    double worst = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i)
      worst = std::max(worst, distance(simplex[i].x, simplex[0].x));
    return worst;
  };

  order();
  result.best_history.push_back(simplex[0].f);

  std::vector<double> centroid(dim);
  while (true) {
    if (spread() < options.simplex_tol) {
      result.converged = true;
      break;
    }
    if (result.iterations >= options.max_iters) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i].x[k];
    for (double& c : centroid) c /= static_cast<double>(dim);

    Vertex& worst = simplex[dim];
    const double second_worst = simplex[dim - 1].f;
    const double best = simplex[0].f;

    Vertex reflected{along(centroid, worst.x, -options.reflection), 0.0};
    reflected.f = eval(reflected.x);

    bool do_shrink = false;
    if (reflected.f < best) {
      Vertex expanded{along(centroid, reflected.x, options.expansion), 0.0};
      expanded.f = eval(expanded.x);
      worst = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
    } else if (reflected.f < second_worst) {
      worst = std::move(reflected);
    } else if (reflected.f < worst.f) {
      Vertex outside{along(centroid, reflected.x, options.contraction), 0.0};
      outside.f = eval(outside.x);
      if (outside.f <= reflected.f) {
        worst = std::move(outside);
      } else {
        do_shrink = true;
      }
    } else {
      Vertex inside{along(centroid, worst.x, options.contraction), 0.0};
      inside.f = eval(inside.x);
      if (inside.f < worst.f) {
        worst = std::move(inside);
      } else {
        do_shrink = true;
      }
    }
    if (do_shrink) {
      for (std::size_t i = 1; i <= dim; ++i) {
        simplex[i].x = along(simplex[0].x, simplex[i].x, options.shrink);
        simplex[i].f = eval(simplex[i].x);
      }
    }

    order();
    ++result.iterations;
    result.best_history.push_back(simplex[0].f);
  }

  result.best_point = simplex[0].x;
  result.best_value = simplex[0].f;
  return result;
}

// ---------------------------------------------------------------------------
// Search

std::string to_string(SearchFamily family) {
  return family == SearchFamily::general ? "general" : "canonical";
}

std::optional<SearchFamily> parse_family(std::string_view text) {
  if (text == "general") return SearchFamily::general;
  if (text == "canonical") return SearchFamily::canonical;
  return std::nullopt;
}

void SearchConfig::validate() const {
  if (std::isnan(p) || p < 1.0) throw DomainError("search: p must lie in [1, ∞]");
  if (n < 1) throw DomainError("search: n must be at least 1");
  if (family == SearchFamily::canonical && n < 2)
    throw DomainError("search: the canonical family needs n >= 2");
  if (starts < 1) throw DomainError("search: starts must be at least 1");
  if (max_iters < 1) throw DomainError("search: max_iters must be at least 1");
  if (!(simplex_tol > 0.0)) throw DomainError("search: simplex_tol must be positive");
  if (restarts < 0) throw DomainError("search: restarts must be non-negative");
}

double ratio_p(const ComplexMatrix& a, const ComplexMatrix& b, double p) {
  require_same_order(a, b, "ratio_p");
  if (std::isnan(p) || p < 1.0) throw DomainError("ratio_p: p must lie in [1, ∞]");
  const double denom = schatten_norm(matrix_abs(a) + matrix_abs(b), p);
  if (!(denom > 0.0)) throw DomainError("ratio_p: undefined when A = B = 0");
  return schatten_norm(a + b, p) / denom;
}

std::uint64_t start_seed(std::uint64_t seed, std::size_t start_index) {
  return derive_seed(seed, start_index);
}

std::pair<ComplexMatrix, ComplexMatrix> decode_pair(SearchFamily family, std::size_t n,
                                                    std::span<const double> x) {
  if (family == SearchFamily::canonical) {
    auto [a, b] = canonical_pair(x[0]);
    return {embed(a, n), embed(b, n)};
  }
  const std::size_t nn = n * n;
  std::vector<Complex> a(nn), b(nn);
  for (std::size_t k = 0; k < nn; ++k) {
    a[k] = {x[2 * k], x[2 * k + 1]};
    b[k] = {x[2 * nn + 2 * k], x[2 * nn + 2 * k + 1]};
  }
  return {ComplexMatrix(n, std::move(a)), ComplexMatrix(n, std::move(b))};
}

std::vector<double> start_point(const SearchConfig& config, std::size_t start_index) {
  const std::uint64_t seed = start_seed(config.seed, start_index);
  if (config.family == SearchFamily::canonical) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    return {angle(rng)};
  }
  const ComplexMatrix a = random_ginibre(config.n, seed);
  const ComplexMatrix b = random_ginibre(config.n, mix64(seed));
  std::vector<double> x;
  x.reserve(4 * config.n * config.n);
  for (const auto* m : {&a, &b})
    for (const Complex& z : m->entries()) {
      x.push_back(z.real());
      x.push_back(z.imag());
    }
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  if (norm < 1e-8) {
    // Degenerate draw: move to the unit sphere (or to A = B = I if exactly zero).
    if (norm == 0.0) {
      for (std::size_t i = 0; i < config.n; ++i) {
        x[2 * (i * config.n + i)] = 1.0;
        x[2 * config.n * config.n + 2 * (i * config.n + i)] = 1.0;
      }
    } else {
      for (double& v : x) v /= norm;
    }
  }
  return x;
}

StartOutcome run_start(const SearchConfig& config, std::size_t start_index) {
  StartOutcome outcome;
  outcome.max_evaluated = -std::numeric_limits<double>::infinity();
  auto objective = [&](std::span<const double> x) {
    const auto [a, b] = decode_pair(config.family, config.n, x);
    double r;
    try {
      r = ratio_p(a, b, config.p);
    } catch (const DomainError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    outcome.max_evaluated = std::max(outcome.max_evaluated, r);
    return -r;
  };

  NelderMeadOptions options;
  options.max_iters = config.max_iters;
  options.simplex_tol = config.simplex_tol;

  std::vector<double> point = start_point(config, start_index);
  double best_value = std::numeric_limits<double>::infinity();
  for (int round = 0; round <= config.restarts; ++round) {
    if (config.family == SearchFamily::general) {
      // The objective is scale invariant, so size the simplex to the point.
      double sum = 0.0;
      for (double v : point) sum += v * v;
      options.initial_step = 0.25 * std::sqrt(sum / static_cast<double>(point.size()));
    }
    const NelderMeadResult nm = nelder_mead_minimize(objective, point, options);
    outcome.evaluations += nm.evaluations;
    outcome.iterations += nm.iterations;
    outcome.converged = nm.converged;
    for (std::size_t k = round == 0 ? 0 : 1; k < nm.best_history.size(); ++k)
      outcome.history.push_back(-nm.best_history[k]);
    const bool improved = nm.best_value < best_value;
    if (improved) {
      best_value = nm.best_value;
      point = nm.best_point;
    }
    outcome.restarts_used = round;
    if (round > 0 && !improved) break;
  }

  if (!std::isfinite(best_value)) {
    throw SearchError("search: start " + std::to_string(start_index) + " never evaluated");
  }
  outcome.best_ratio = -best_value;
  outcome.best_pair = decode_pair(config.family, config.n, point);
  return outcome;
}

namespace {

unsigned resolve_workers(unsigned requested, std::size_t jobs) {
  unsigned workers = requested;
  if (workers == 0) {
    if (const char* env = std::getenv("ABSNORM_WORKERS")) workers = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(workers, jobs));
}

}  // namespace

SearchResult multistart_search(const SearchConfig& config) {
  config.validate();

  std::vector<std::optional<StartOutcome>> outcomes(config.starts);
  std::vector<std::string> errors(config.starts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.starts; i = next++) {
      try {
        outcomes[i] = run_start(config, i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  const unsigned workers = resolve_workers(config.workers, config.starts);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  SearchResult result;
  result.p = config.p;
  result.n = config.n;
  result.max_evaluated = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < config.starts; ++i) {
    if (!outcomes[i]) {
      result.per_start_best.push_back(std::numeric_limits<double>::quiet_NaN());
      result.per_start.emplace_back();
      continue;
    }
    const StartOutcome& o = *outcomes[i];
    result.evaluations += o.evaluations;
    result.per_start_best.push_back(o.best_ratio);
    result.max_evaluated = std::max(result.max_evaluated, o.max_evaluated);
    if (!any || o.best_ratio > result.best_ratio) {
      result.best_ratio = o.best_ratio;
      result.best_pair = o.best_pair;
      result.best_start = i;
      any = true;
    }
    result.per_start.push_back(std::move(*outcomes[i]));
  }
  if (!any) {
    throw SearchError("search: every start failed" +
                      (errors.empty() || errors[0].empty() ? std::string() : " (" + errors[0] + ")"));
  }
  return result;
}

AlphaSweep alpha_sweep(std::size_t grid_points) {
  if (grid_points < 2) throw DomainError("alpha_sweep: grid_points must be at least 2");
  AlphaSweep sweep;
  sweep.samples.reserve(grid_points);
  sweep.max_ratio = -1.0;
  const double step = std::numbers::pi / static_cast<double>(grid_points - 1);
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double alpha = k + 1 == grid_points ? std::numbers::pi : step * static_cast<double>(k);
    const auto [a, b] = canonical_pair(alpha);
    const double r = ratio_p(a, b, 2.0);
    sweep.samples.push_back({alpha, r});
    if (r > sweep.max_ratio) {
      sweep.max_ratio = r;
      sweep.argmax_alpha = alpha;
    }
  }
  return sweep;
}

CpEstimate estimate_cp_detailed(double p, std::size_t n, const SearchConfig& budget) {
  SearchConfig config = budget;
  config.p = p;
  config.n = n;
  config.validate();

  CpEstimate estimate;
  estimate.value = -std::numeric_limits<double>::infinity();
  const std::size_t first = budget.family == SearchFamily::canonical ? 2 : 1;
  for (std::size_t m = first; m <= n; ++m) {
    config.n = m;
    const SearchResult r = multistart_search(config);
    estimate.per_order.resize(m, std::numeric_limits<double>::quiet_NaN());
    estimate.per_order[m - 1] = r.best_ratio;
    if (r.best_ratio > estimate.value) {
      estimate.value = r.best_ratio;
      estimate.best_order = m;
      estimate.best_pair = {embed(r.best_pair.first, n), embed(r.best_pair.second, n)};
    }
  }
  return estimate;
}

double estimate_cp(double p, std::size_t n, const SearchConfig& budget) {
  return estimate_cp_detailed(p, n, budget).value;
}

}  // namespace absnorm
