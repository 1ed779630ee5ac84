#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "absnorm/certify.hpp"

namespace absnorm::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

struct CheckOptions {
  std::string path;
  std::string ineq;  // lemma1 | lemma2 | theorem | chain
  std::optional<double> t;
};

struct FuzzOptions {
  std::string ineq;
  long long trials = 0;
  long long n_max = 0;
  std::uint64_t seed = 0;
  /// Where to write the replay MatrixFile on a violation; stdout when empty.
  std::string replay_path;
};

struct SearchOptions {
  double p = 2.0;
  long long n = 2;
  long long starts = 8;
  std::uint64_t seed = 0;
  std::string family = "general";
  std::string out;  // CSV path, optional
  int max_iters = 2000;
  double simplex_tol = 1e-10;
  unsigned workers = 0;
};

struct SweepOptions {
  long long grid_points = 0;
  std::string out;
};

int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err);
int cmd_fuzz(const FuzzOptions& options, std::ostream& out, std::ostream& err);
int cmd_search(const SearchOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Writes every field of a report on its own labeled line; steps are indented.
void print_report(std::ostream& out, const CertReport& report, int indent = 0);
void print_chain(std::ostream& out, const ProofChainTrace& trace);

/// 0 when satisfied, 1 otherwise.
int exit_code_for(const CertReport& report);
int exit_code_for(const ProofChainTrace& trace);

/// "%.17g".
std::string format_double(double value);

/// Accepts a decimal number or inf / infinity (any case).
std::optional<double> parse_p(const std::string& text);

}  // namespace absnorm::cli
