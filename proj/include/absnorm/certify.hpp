#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absnorm/linalg.hpp"
#include "absnorm/matrix.hpp"

namespace absnorm {

/// An inequality lhs ≤ rhs counts as satisfied iff lhs ≤ rhs·(1 + kCertRelTol) + kCertAbsTol.
inline constexpr double kCertRelTol = 1e-9;
inline constexpr double kCertAbsTol = 1e-12;
/// Identities (lhs = rhs) are checked as |lhs − rhs| ≤ kIdentityRelTol · scale.
inline constexpr double kIdentityRelTol = 1e-9;
/// Tolerance handed to is_psd / is_contraction when checking Lemma-2 style preconditions.
inline constexpr double kPreconditionTol = 1e-10;

/// √((1+√2)/2), the sharp Frobenius constant.
double sharp_constant();

/// √2 − 1, the weight that balances (2 + t) against 1/t.
double optimal_t();

/// One certified instance of an inequality (or identity).
struct CertReport {
  enum class Kind { inequality, identity };

  std::string label;
  Kind kind = Kind::inequality;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;           // rhs − lhs
  double relative_slack = 0.0;  // slack / max(1, |rhs|)
  double tolerance = 0.0;       // allowance added to rhs (inequality) or to |lhs − rhs| (identity)
  bool satisfied = false;
  /// ‖A+B‖_F / ‖|A|+|B|‖_F; set only by theorem_certify with a nonzero denominator.
  std::optional<double> ratio;
  /// Intermediate inequalities whose composition gives this one.
  std::vector<CertReport> steps;
};

/// satisfied, and every nested step fully satisfied.
bool fully_satisfied(const CertReport& report);

/// Report for lhs ≤ rhs.
CertReport make_inequality_report(std::string label, double lhs, double rhs);

/// Report for lhs = rhs measured against `scale` (defaults to max(|lhs|, |rhs|)).
CertReport make_identity_report(std::string label, double lhs, double rhs,
                                std::optional<double> scale = std::nullopt);

/// 2|tr S*T| ≤ 2(tr S*S)^{1/2}(tr T*T)^{1/2}.
CertReport cauchy_schwarz_step(const ComplexMatrix& s, const ComplexMatrix& t);

/// 2√(ab) ≤ t·a + b/t; equality iff b = t²a.
CertReport am_gm_step(double a, double b, double t);

/// 2|tr S*T| ≤ t·tr S*S + (1/t)·tr T*T. steps = {cauchy_schwarz, am_gm}.
CertReport lemma1_certify(const ComplexMatrix& s, const ComplexMatrix& t, double weight);

/// 4|tr QXY| ≤ t·tr(X²+Y²) + (1/t)·tr(XY+YX) for PSD X, Y and contraction Q.
///
/// steps follow the three-stage argument:
///   4|tr QXY| ≤ 2t·tr(YQXQ*) + (2/t)·tr(XY)
///             ≤ t·(tr Q*Y²Q + tr QX²Q*) + (1/t)·tr(XY+YX)
///             ≤ t·tr(X²+Y²) + (1/t)·tr(XY+YX).
/// Throws PreconditionError listing every failed precondition.
CertReport lemma2_certify(const ComplexMatrix& q, const ComplexMatrix& x, const ComplexMatrix& y,
                          double weight);

/// ‖A+B‖_F ≤ √((1+√2)/2)·‖|A|+|B|‖_F. ratio is empty when A = B = 0.
CertReport theorem_certify(const ComplexMatrix& a, const ComplexMatrix& b);

/// Staged quantities of the polar-factor argument, with W = U*V for A = U|A|, B = V|B|:
///   q0 = 2‖A+B‖_F²
///   q1 = 2 tr(|A|²+|B|²) + 4 Re tr(W|B||A|)
///   q2 = 2 tr(|A|²+|B|²) + 4 |tr(W|B||A|)|
///   q3 = (2+t) tr(|A|²+|B|²) + (1/t) tr(|A||B|+|B||A|)
struct ProofChainTrace {
  double q0 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
  double t = 0.0;
  /// (√2+1)·‖|A|+|B|‖_F².
  double bound_rhs = 0.0;
  /// tr(W|B||A|), kept complex: q1 uses its real part, q2 its modulus.
  Complex cross_term;
  std::vector<CertReport> stage_reports;

  /// Every stage (and every nested step) satisfied.
  bool satisfied() const;
};

/// Stages reported: q0 = q1 (identity), q1 ≤ q2, q2 ≤ q3 (with the Lemma-2
/// report attached), q0 ≤ bound_rhs, and q3 = bound_rhs when t = √2−1.
ProofChainTrace proof_chain_certify(const ComplexMatrix& a, const ComplexMatrix& b, double t);

/// A = diag(1, 0), B = [[cos α, −sin α], [0, 0]].
std::pair<ComplexMatrix, ComplexMatrix> canonical_pair(double alpha);

/// √((1+cos α)/(1+cos²α)), the closed-form Frobenius ratio of canonical_pair(α).
double canonical_ratio(double alpha);

}  // namespace absnorm
