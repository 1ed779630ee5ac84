#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absnorm/matrix.hpp"

namespace absnorm {

// ---------------------------------------------------------------------------
// Nelder–Mead

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;  // used for both outside and inside contraction
  double shrink = 0.5;
  /// Stop once every vertex lies within this distance of the best vertex.
  double simplex_tol = 1e-10;
  int max_iters = 2000;
  /// Edge length of the initial axis-aligned simplex.
  double initial_step = 0.25;
};

struct NelderMeadResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
  /// Best (lowest) value after initialization and after each iteration.
  std::vector<double> best_history;
};

/// Minimizes `objective` from `start`. Non-finite objective values rank worst.
NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& objective,
                                      std::vector<double> start, const NelderMeadOptions& options);

// ---------------------------------------------------------------------------
// Extremal search for ‖A+B‖_p / ‖|A|+|B|‖_p

enum class SearchFamily { general, canonical };

std::string to_string(SearchFamily family);
std::optional<SearchFamily> parse_family(std::string_view text);

struct SearchConfig {
  double p = 2.0;
  std::size_t n = 2;
  std::size_t starts = 8;
  std::uint64_t seed = 0;
  int max_iters = 2000;
  double simplex_tol = 1e-10;
  /// Extra Nelder–Mead runs per start, each restarted from the best vertex
  /// with a fresh simplex; stops early once a restart gains nothing.
  int restarts = 10;
  SearchFamily family = SearchFamily::general;
  /// Threads running starts; 0 picks ABSNORM_WORKERS or the hardware count.
  /// Results do not depend on it.
  unsigned workers = 0;

  /// Throws DomainError naming the first invalid field.
  void validate() const;
};

struct StartOutcome {
  double best_ratio = 0.0;
  long evaluations = 0;
  int iterations = 0;
  int restarts_used = 0;
  bool converged = false;
  /// Largest ratio seen at any evaluation of this start.
  double max_evaluated = 0.0;
  /// Best-so-far ratio after initialization and after every iteration.
  std::vector<double> history;
  std::pair<ComplexMatrix, ComplexMatrix> best_pair;
};

struct SearchResult {
  double best_ratio = 0.0;
  std::pair<ComplexMatrix, ComplexMatrix> best_pair;
  double p = 2.0;
  std::size_t n = 0;
  long evaluations = 0;
  std::size_t best_start = 0;
  std::vector<double> per_start_best;
  std::vector<StartOutcome> per_start;
  double max_evaluated = 0.0;
};

/// ‖A+B‖_p / ‖|A|+|B|‖_p. Throws DomainError when A = B = 0 or p is outside [1, ∞].
double ratio_p(const ComplexMatrix& a, const ComplexMatrix& b, double p);

/// Seed of start i: derive_seed(config.seed, i).
std::uint64_t start_seed(std::uint64_t seed, std::size_t start_index);

/// Start point of one run as a parameter vector (general: re/im of A then B,
/// row-major, 4n² reals; canonical: the single angle α ∈ [0, π)).
std::vector<double> start_point(const SearchConfig& config, std::size_t start_index);

/// Matrix pair encoded by a parameter vector of the given family and order.
std::pair<ComplexMatrix, ComplexMatrix> decode_pair(SearchFamily family, std::size_t n,
                                                    std::span<const double> x);

/// Runs one local maximization.
StartOutcome run_start(const SearchConfig& config, std::size_t start_index);

/// Independent Nelder–Mead maximizations merged by maximum; ties go to the
/// lowest start index. Bit-identical for any worker count.
SearchResult multistart_search(const SearchConfig& config);

struct AlphaSample {
  double alpha = 0.0;
  double ratio = 0.0;
};

struct AlphaSweep {
  std::vector<AlphaSample> samples;
  double argmax_alpha = 0.0;
  double max_ratio = 0.0;
};

/// ratio_p(canonical_pair(α), 2) on grid_points uniform angles covering [0, π].
AlphaSweep alpha_sweep(std::size_t grid_points);

/// Empirical lower bound on c_p at order n: the best ratio over multistart
/// searches at every order m ≤ n (each embedded into order n by zero padding),
/// all sharing the budget's remaining settings. Never an upper bound.
double estimate_cp(double p, std::size_t n, const SearchConfig& budget);

struct CpEstimate {
  double value = 0.0;
  std::size_t best_order = 0;
  std::vector<double> per_order;  // index m−1 holds the order-m search result
  std::pair<ComplexMatrix, ComplexMatrix> best_pair;  // embedded at order n
};

CpEstimate estimate_cp_detailed(double p, std::size_t n, const SearchConfig& budget);

}  // namespace absnorm
