#include "absnorm/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <variant>

#include "CLI11.hpp"
#include "absnorm/errors.hpp"
#include "absnorm/linalg.hpp"
#include "absnorm/matrix_file.hpp"
#include "absnorm/random.hpp"
#include "absnorm/search.hpp"

namespace absnorm::cli {
namespace {

using Certificate = std::variant<CertReport, ProofChainTrace>;

bool known_inequality(const std::string& ineq) {
  return ineq == "lemma1" || ineq == "lemma2" || ineq == "theorem" || ineq == "chain";
}

bool all_satisfied(const Certificate& c) {
  if (const auto* r = std::get_if<CertReport>(&c)) return fully_satisfied(*r);
  return std::get<ProofChainTrace>(c).satisfied();
}

// Smallest (slack, relative slack) over the inequality reports of a certificate.
std::pair<double, double> min_slack(const Certificate& c) {
  if (const auto* r = std::get_if<CertReport>(&c)) return {r->slack, r->relative_slack};
  double slack = std::numeric_limits<double>::infinity();
  double rel = std::numeric_limits<double>::infinity();
  for (const auto& s : std::get<ProofChainTrace>(c).stage_reports) {
    if (s.kind != CertReport::Kind::inequality) continue;
    slack = std::min(slack, s.slack);
    rel = std::min(rel, s.relative_slack);
  }
  return {slack, rel};
}

const char* required_names(const std::string& ineq) {
  if (ineq == "lemma1") return "S, T";
  if (ineq == "lemma2") return "Q, X, Y";
  return "A, B";
}

// Throws MatrixFileError when a required matrix is absent.
Certificate certify_file(const std::string& ineq, const MatrixFile& file, double t) {
  if (ineq == "lemma1") return lemma1_certify(file.at("S"), file.at("T"), t);
  if (ineq == "lemma2") return lemma2_certify(file.at("Q"), file.at("X"), file.at("Y"), t);
  if (ineq == "theorem") return theorem_certify(file.at("A"), file.at("B"));
  return proof_chain_certify(file.at("A"), file.at("B"), t);
}

void print_certificate(std::ostream& out, const Certificate& c) {
  if (const auto* r = std::get_if<CertReport>(&c)) {
    print_report(out, *r);
  } else {
    print_chain(out, std::get<ProofChainTrace>(c));
  }
}

double log_uniform_t(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> exponent(-2.0, 2.0);
  return std::pow(10.0, exponent(rng));
}

// Random instance for `ineq` drawn from the fuzzing ensembles.
MatrixFile make_instance(const std::string& ineq, std::uint64_t sub_seed, long long n_max) {
  std::mt19937_64 rng(sub_seed);
  std::uniform_int_distribution<long long> order(1, n_max);
  const auto n = static_cast<std::size_t>(order(rng));
  MatrixFile file;
  file.n = n;
  if (ineq == "lemma1") {
    file.matrices.emplace("S", random_ginibre(n, rng()));
    file.matrices.emplace("T", random_ginibre(n, rng()));
    file.t = log_uniform_t(rng);
  } else if (ineq == "lemma2") {
    file.matrices.emplace("X", matrix_abs(random_ginibre(n, rng())));
    file.matrices.emplace("Y", matrix_abs(random_ginibre(n, rng())));
    std::uniform_real_distribution<double> shrink(0.0, 1.0);
    ComplexMatrix q = polar_decompose(random_ginibre(n, rng())).unitary;
    q *= shrink(rng);
    file.matrices.emplace("Q", std::move(q));
    file.t = log_uniform_t(rng);
  } else {
    file.matrices.emplace("A", random_ginibre(n, rng()));
    file.matrices.emplace("B", random_ginibre(n, rng()));
    if (ineq == "chain") file.t = optimal_t();
  }
  return file;
}

void print_search_table(std::ostream& out, const SearchResult& result) {
  out << "start,best_ratio,evaluations\n";
  for (std::size_t i = 0; i < result.per_start.size(); ++i) {
    out << i << ',' << format_double(result.per_start_best[i]) << ','
        << result.per_start[i].evaluations << '\n';
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::optional<double> parse_p(const std::string& text) {
  std::string lower;
  for (char ch : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "inf" || lower == "infinity") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || std::isnan(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void print_report(std::ostream& out, const CertReport& r, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  out << pad << "label: " << r.label << '\n'
      << pad << "kind: " << (r.kind == CertReport::Kind::identity ? "identity" : "inequality") << '\n'
      << pad << "lhs: " << format_double(r.lhs) << '\n'
      << pad << "rhs: " << format_double(r.rhs) << '\n'
      << pad << "slack: " << format_double(r.slack) << '\n'
      << pad << "relative_slack: " << format_double(r.relative_slack) << '\n'
      << pad << "tolerance: " << format_double(r.tolerance) << '\n';
  if (r.ratio) out << pad << "ratio: " << format_double(*r.ratio) << '\n';
  out << pad << "verdict: " << (r.satisfied ? "satisfied" : "violated") << '\n';
  for (const auto& step : r.steps) {
    out << pad << "step:\n";
    print_report(out, step, indent + 2);
  }
}

void print_chain(std::ostream& out, const ProofChainTrace& trace) {
  out << "t: " << format_double(trace.t) << '\n'
      << "q0: " << format_double(trace.q0) << '\n'
      << "q1: " << format_double(trace.q1) << '\n'
      << "q2: " << format_double(trace.q2) << '\n'
      << "q3: " << format_double(trace.q3) << '\n'
      << "bound_rhs: " << format_double(trace.bound_rhs) << '\n'
      << "cross_term: " << format_double(trace.cross_term.real()) << ' '
      << format_double(trace.cross_term.imag()) << '\n';
  for (const auto& stage : trace.stage_reports) {
    out << "stage:\n";
    print_report(out, stage, 2);
  }
  out << "verdict: " << (trace.satisfied() ? "satisfied" : "violated") << '\n';
}

int exit_code_for(const CertReport& report) {
  return fully_satisfied(report) ? kExitOk : kExitViolation;
}

int exit_code_for(const ProofChainTrace& trace) {
  return trace.satisfied() ? kExitOk : kExitViolation;
}

int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err) {
  if (!known_inequality(options.ineq)) {
    err << "error: unknown inequality '" << options.ineq << "' (lemma1, lemma2, theorem, chain)\n";
    return kExitInputError;
  }
  try {
    const MatrixFile file = load_matrix_file(options.path);
    const double t = options.t.value_or(file.t.value_or(optimal_t()));
    Certificate c;
    try {
      c = certify_file(options.ineq, file, t);
    } catch (const MatrixFileError& e) {
      err << "error: " << e.what() << " (" << options.ineq << " needs " << required_names(options.ineq)
          << ")\n";
      return kExitInputError;
    }
    print_certificate(out, c);
    return all_satisfied(c) ? kExitOk : kExitViolation;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& f : e.failures()) err << "failed precondition: " << f << '\n';
    return kExitInputError;
  } catch (const MatrixFileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

int cmd_fuzz(const FuzzOptions& options, std::ostream& out, std::ostream& err) {
  if (!known_inequality(options.ineq)) {
    err << "error: unknown inequality '" << options.ineq << "' (lemma1, lemma2, theorem, chain)\n";
    return kExitInputError;
  }
  if (options.trials < 1) {
    err << "error: --trials must be at least 1\n";
    return kExitInputError;
  }
  if (options.n_max < 1) {
    err << "error: --n-max must be at least 1\n";
    return kExitInputError;
  }

  double min_abs = std::numeric_limits<double>::infinity();
  double min_rel = std::numeric_limits<double>::infinity();
  std::uint64_t min_abs_seed = 0, min_rel_seed = 0;
  long long min_abs_trial = 0, min_rel_trial = 0;
  double max_ratio = 0.0;

  auto summary = [&](long long completed) {
    out << "inequality: " << options.ineq << '\n'
        << "seed: " << options.seed << '\n'
        << "trials: " << completed << '\n'
        << "n_max: " << options.n_max << '\n'
        << "min_slack: " << format_double(min_abs) << '\n'
        << "min_slack_trial: " << min_abs_trial << '\n'
        << "min_slack_sub_seed: " << min_abs_seed << '\n'
        << "min_relative_slack: " << format_double(min_rel) << '\n'
        << "min_relative_slack_trial: " << min_rel_trial << '\n'
        << "min_relative_slack_sub_seed: " << min_rel_seed << '\n';
    if (options.ineq == "theorem") out << "max_ratio: " << format_double(max_ratio) << '\n';
  };

  for (long long trial = 0; trial < options.trials; ++trial) {
    const std::uint64_t sub_seed = derive_seed(options.seed, static_cast<std::uint64_t>(trial));
    const MatrixFile instance = make_instance(options.ineq, sub_seed, options.n_max);
    const Certificate c = certify_file(options.ineq, instance, instance.t.value_or(optimal_t()));
    const auto [abs_slack, rel_slack] = min_slack(c);
    if (abs_slack < min_abs) {
      min_abs = abs_slack;
      min_abs_seed = sub_seed;
      min_abs_trial = trial;
    }
    if (rel_slack < min_rel) {
      min_rel = rel_slack;
      min_rel_seed = sub_seed;
      min_rel_trial = trial;
    }
    if (const auto* r = std::get_if<CertReport>(&c); r && r->ratio)
      max_ratio = std::max(max_ratio, *r->ratio);

    if (!all_satisfied(c)) {
      summary(trial + 1);
      out << "violation: trial " << trial << " (sub_seed " << sub_seed << ")\n";
      print_certificate(out, c);
      const std::string replay = to_text(instance);
      if (options.replay_path.empty()) {
        out << "replay:\n" << replay;
      } else {
        try {
          save_matrix_file(instance, options.replay_path);
          out << "replay: " << options.replay_path << '\n';
        } catch (const MatrixFileError& e) {
          err << "error: " << e.what() << '\n';
          out << "replay:\n" << replay;
        }
      }
      return kExitViolation;
    }
  }
  summary(options.trials);
  out << "violations: 0\n";
  return kExitOk;
}

int cmd_search(const SearchOptions& options, std::ostream& out, std::ostream& err) {
  const auto family = parse_family(options.family);
  if (!family) {
    err << "error: unknown family '" << options.family << "' (general, canonical)\n";
    return kExitInputError;
  }
  if (options.n < 1 || options.starts < 1) {
    err << "error: --n and --starts must be at least 1\n";
    return kExitInputError;
  }
  SearchConfig config;
  config.p = options.p;
  config.n = static_cast<std::size_t>(options.n);
  config.starts = static_cast<std::size_t>(options.starts);
  config.seed = options.seed;
  config.family = *family;
  config.max_iters = options.max_iters;
  config.simplex_tol = options.simplex_tol;
  config.workers = options.workers;

  SearchResult result;
  try {
    config.validate();
    result = multistart_search(config);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const SearchError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  out << "family: " << to_string(config.family) << '\n'
      << "p: " << format_double(config.p) << '\n'
      << "n: " << config.n << '\n'
      << "starts: " << config.starts << '\n'
      << "seed: " << config.seed << '\n'
      << "evaluations: " << result.evaluations << '\n'
      << "best_start: " << result.best_start << '\n'
      << "best_ratio: " << format_double(result.best_ratio) << '\n';
  if (config.p == 2.0) {
    const double bound = sharp_constant();
    out << "proven_bound: " << format_double(bound) << '\n'
        << "gap: " << format_double(bound - result.best_ratio) << '\n';
  } else {
    out << "note: empirical estimate (lower bound on c_p; no proven value)\n";
  }
  print_search_table(out, result);

  if (!options.out.empty()) {
    std::ofstream csv(options.out);
    if (!csv) {
      err << "error: cannot write '" << options.out << "'\n";
      return kExitInputError;
    }
    csv << "start_index,best_ratio,evaluations\n";
    for (std::size_t i = 0; i < result.per_start.size(); ++i) {
      csv << i << ',' << format_double(result.per_start_best[i]) << ','
          << result.per_start[i].evaluations << '\n';
    }
  }
  return kExitOk;
}

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  if (options.grid_points < 2) {
    err << "error: --grid-points must be at least 2\n";
    return kExitInputError;
  }
  std::ofstream csv(options.out);
  if (!csv) {
    err << "error: cannot write '" << options.out << "'\n";
    return kExitInputError;
  }
  const AlphaSweep sweep = alpha_sweep(static_cast<std::size_t>(options.grid_points));
  double worst_diff = 0.0;
  csv << "alpha,ratio,closed_form_ratio,abs_difference\n";
  for (const auto& s : sweep.samples) {
    const double closed = canonical_ratio(s.alpha);
    const double diff = std::abs(s.ratio - closed);
    worst_diff = std::max(worst_diff, diff);
    csv << format_double(s.alpha) << ',' << format_double(s.ratio) << ',' << format_double(closed)
        << ',' << format_double(diff) << '\n';
  }
  csv.flush();
  if (!csv) {
    err << "error: failed writing '" << options.out << "'\n";
    return kExitInputError;
  }
  out << "grid_points: " << options.grid_points << '\n'
      << "argmax_alpha: " << format_double(sweep.argmax_alpha) << '\n'
      << "max_ratio: " << format_double(sweep.max_ratio) << '\n'
      << "expected_argmax_alpha: " << format_double(std::acos(optimal_t())) << '\n'
      << "sharp_constant: " << format_double(sharp_constant()) << '\n'
      << "max_abs_difference: " << format_double(worst_diff) << '\n';
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"absnorm: certify ||A+B|| <= c || |A|+|B| || and search for extremal pairs"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Certify one inequality on matrices loaded from a file");
  check_cmd->add_option("path", check.path, "Matrix file (JSON)")->required();
  check_cmd->add_option("--ineq", check.ineq, "lemma1 | lemma2 | theorem | chain")->required();
  double check_t = 0.0;
  auto* t_opt = check_cmd->add_option("--t", check_t, "Weight t > 0 (default: file value or sqrt(2)-1)");

  FuzzOptions fuzz;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Certify randomly generated instances");
  fuzz_cmd->add_option("--ineq", fuzz.ineq, "lemma1 | lemma2 | theorem | chain")->required();
  fuzz_cmd->add_option("--trials", fuzz.trials, "Number of instances")->required();
  fuzz_cmd->add_option("--n-max", fuzz.n_max, "Largest matrix order")->required();
  fuzz_cmd->add_option("--seed", fuzz.seed, "Master seed")->required();
  fuzz_cmd->add_option("--replay", fuzz.replay_path, "Write a violating instance here");

  SearchOptions search;
  std::string p_text = "2";
  auto* search_cmd = app.add_subcommand("search", "Multistart Nelder-Mead maximization of the ratio");
  search_cmd->add_option("--p", p_text, "Schatten index in [1, inf]")->capture_default_str();
  search_cmd->add_option("--n", search.n, "Matrix order")->capture_default_str();
  search_cmd->add_option("--starts", search.starts, "Independent starts")->capture_default_str();
  search_cmd->add_option("--seed", search.seed, "Master seed")->capture_default_str();
  search_cmd->add_option("--family", search.family, "general | canonical")->capture_default_str();
  search_cmd->add_option("--out", search.out, "CSV of per-start results");
  search_cmd->add_option("--max-iters", search.max_iters, "Iterations per start")->capture_default_str();
  search_cmd->add_option("--simplex-tol", search.simplex_tol, "Simplex size stop")->capture_default_str();
  search_cmd->add_option("--workers", search.workers, "Threads (0: ABSNORM_WORKERS or hardware)");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate the canonical pair over alpha in [0, pi]");
  sweep_cmd->add_option("--grid-points", sweep.grid_points, "Number of angles")->required();
  sweep_cmd->add_option("--out", sweep.out, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (*check_cmd) {
    if (*t_opt) check.t = check_t;
    return cmd_check(check, out, err);
  }
  if (*fuzz_cmd) return cmd_fuzz(fuzz, out, err);
  if (*search_cmd) {
    const auto p = parse_p(p_text);
    if (!p) {
      err << "error: --p must be a number or inf\n";
      return kExitInputError;
    }
    search.p = *p;
    return cmd_search(search, out, err);
  }
  return cmd_sweep(sweep, out, err);
}

}  // namespace absnorm::cli
