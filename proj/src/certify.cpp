#include "absnorm/certify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "absnorm/errors.hpp"

namespace absnorm {
namespace {

void require_positive_weight(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(what) + ": t must be a finite positive real");
  }
}

double squared_frobenius(const ComplexMatrix& m) {
  const double f = m.frobenius_norm();
  return f * f;
}

}  // namespace

double sharp_constant() { return std::sqrt((1.0 + std::sqrt(2.0)) / 2.0); }

double optimal_t() { return 1.0 / (1.0 + std::sqrt(2.0)); }

CertReport make_inequality_report(std::string label, double lhs, double rhs) {
  CertReport r;
  r.label = std::move(label);
  r.kind = CertReport::Kind::inequality;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.relative_slack = r.slack / std::max(1.0, std::abs(rhs));
  r.tolerance = rhs * kCertRelTol + kCertAbsTol;
  r.satisfied = lhs <= rhs * (1.0 + kCertRelTol) + kCertAbsTol;
  return r;
}

CertReport make_identity_report(std::string label, double lhs, double rhs,
                                std::optional<double> scale) {
  CertReport r;
  r.label = std::move(label);
  r.kind = CertReport::Kind::identity;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.relative_slack = r.slack / std::max(1.0, std::abs(rhs));
  const double s = std::max({std::abs(lhs), std::abs(rhs), scale.value_or(0.0)});
  r.tolerance = kIdentityRelTol * s;
  // Exact zero on both sides passes with zero tolerance.
  r.satisfied = std::abs(r.slack) <= r.tolerance;
  return r;
}

CertReport cauchy_schwarz_step(const ComplexMatrix& s, const ComplexMatrix& t) {
  require_same_order(s, t, "cauchy_schwarz_step");
  const double lhs = 2.0 * std::abs(trace_inner(s, t));
  const double rhs = 2.0 * s.frobenius_norm() * t.frobenius_norm();
  return make_inequality_report("cauchy-schwarz: 2|tr S*T| <= 2 (tr S*S)^1/2 (tr T*T)^1/2", lhs,
                                rhs);
}

CertReport am_gm_step(double a, double b, double t) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("am_gm_step: a and b must be non-negative");
  require_positive_weight(t, "am_gm_step");
  return make_inequality_report("am-gm: 2 sqrt(ab) <= t a + b / t", 2.0 * std::sqrt(a * b),
                                t * a + b / t);
}

CertReport lemma1_certify(const ComplexMatrix& s, const ComplexMatrix& t, double weight) {
  require_same_order(s, t, "lemma1_certify");
  require_positive_weight(weight, "lemma1_certify");
  const double ss = squared_frobenius(s);
  const double tt = squared_frobenius(t);
  CertReport report = make_inequality_report("lemma1: 2|tr S*T| <= t tr S*S + (1/t) tr T*T",
                                             2.0 * std::abs(trace_inner(s, t)),
                                             weight * ss + tt / weight);
  report.steps.push_back(cauchy_schwarz_step(s, t));
  report.steps.push_back(am_gm_step(ss, tt, weight));
  return report;
}

CertReport lemma2_certify(const ComplexMatrix& q, const ComplexMatrix& x, const ComplexMatrix& y,
                          double weight) {
  require_same_order(q, x, "lemma2_certify");
  require_same_order(x, y, "lemma2_certify");

  std::vector<std::string> failures;
  if (!is_psd(x, kPreconditionTol)) failures.emplace_back("X is not positive semidefinite");
  if (!is_psd(y, kPreconditionTol)) failures.emplace_back("Y is not positive semidefinite");
  if (!is_contraction(q, kPreconditionTol)) failures.emplace_back("Q is not a contraction");
  if (!(weight > 0.0) || !std::isfinite(weight)) failures.emplace_back("t must be positive");
  if (!failures.empty()) throw PreconditionError(std::move(failures));

  const ComplexMatrix q_adj = q.adjoint();
  const ComplexMatrix xy = x * y;
  const ComplexMatrix x2 = x * x;
  const ComplexMatrix y2 = y * y;

  const double lhs = 4.0 * std::abs((q * xy).trace());
  const double tr_xy = xy.trace().real();
  const double tr_sym = (xy + y * x).trace().real();
  const double tr_yqxq = (y * q * x * q_adj).trace().real();
  const double tr_conj_sq = (q_adj * y2 * q).trace().real() + (q * x2 * q_adj).trace().real();
  const double tr_sq = (x2 + y2).trace().real();

  const double r1 = 2.0 * weight * tr_yqxq + (2.0 / weight) * tr_xy;
  const double r2 = weight * tr_conj_sq + tr_sym / weight;
  const double r3 = weight * tr_sq + tr_sym / weight;

  CertReport report =
      make_inequality_report("lemma2: 4|tr QXY| <= t tr(X^2+Y^2) + (1/t) tr(XY+YX)", lhs, r3);
  report.steps.push_back(
      make_inequality_report("lemma2 step 1: 4|tr QXY| <= 2t tr(YQXQ*) + (2/t) tr(XY)", lhs, r1));
  report.steps.push_back(make_inequality_report(
      "lemma2 step 2: 2t tr(YQXQ*) + (2/t) tr(XY) <= t tr(Q*Y^2Q + QX^2Q*) + (1/t) tr(XY+YX)", r1,
      r2));
  report.steps.push_back(make_inequality_report(
      "lemma2 step 3: t tr(Q*Y^2Q + QX^2Q*) <= t tr(X^2+Y^2) (Q contraction)", r2, r3));
  return report;
}

CertReport theorem_certify(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_order(a, b, "theorem_certify");
  const double lhs = (a + b).frobenius_norm();
  const double denom = (matrix_abs(a) + matrix_abs(b)).frobenius_norm();
  CertReport report = make_inequality_report(
      "theorem: ||A+B||_F <= sqrt((1+sqrt2)/2) || |A|+|B| ||_F", lhs, sharp_constant() * denom);
  if (denom > 0.0) report.ratio = lhs / denom;
  return report;
}

bool fully_satisfied(const CertReport& report) {
  return report.satisfied && std::all_of(report.steps.begin(), report.steps.end(),
                                         [](const CertReport& s) { return fully_satisfied(s); });
}

bool ProofChainTrace::satisfied() const {
  return std::all_of(stage_reports.begin(), stage_reports.end(),
                     [](const CertReport& r) { return fully_satisfied(r); });
}

ProofChainTrace proof_chain_certify(const ComplexMatrix& a, const ComplexMatrix& b, double t) {
  require_same_order(a, b, "proof_chain_certify");
  require_positive_weight(t, "proof_chain_certify");

  const PolarFactors pa = polar_decompose(a);
  const PolarFactors pb = polar_decompose(b);
  const ComplexMatrix& abs_a = pa.psd;
  const ComplexMatrix& abs_b = pb.psd;
  const ComplexMatrix w = pa.unitary.adjoint() * pb.unitary;

  const double sum_sq = squared_frobenius(abs_a) + squared_frobenius(abs_b);
  const double sym = (abs_a * abs_b + abs_b * abs_a).trace().real();

  ProofChainTrace trace;
  trace.t = t;
  trace.cross_term = (w * abs_b * abs_a).trace();
  trace.q0 = 2.0 * squared_frobenius(a + b);
  trace.q1 = 2.0 * sum_sq + 4.0 * trace.cross_term.real();
  trace.q2 = 2.0 * sum_sq + 4.0 * std::abs(trace.cross_term);
  trace.q3 = (2.0 + t) * sum_sq + sym / t;
  trace.bound_rhs = (std::sqrt(2.0) + 1.0) * squared_frobenius(abs_a + abs_b);

  auto& stages = trace.stage_reports;
  stages.push_back(make_identity_report("chain q0 = q1: 2||A+B||_F^2 = 2 tr(|A|^2+|B|^2) + 4 Re tr(W|B||A|)",
                                        trace.q0, trace.q1, 2.0 * sum_sq));
  stages.push_back(make_inequality_report("chain q1 <= q2: Re z <= |z|", trace.q1, trace.q2));
  CertReport lemma_stage = make_inequality_report(
      "chain q2 <= q3: lemma2 with Q = W, X = |B|, Y = |A|", trace.q2, trace.q3);
  lemma_stage.steps.push_back(lemma2_certify(w, abs_b, abs_a, t));
  stages.push_back(std::move(lemma_stage));
  stages.push_back(make_inequality_report(
      "chain q0 <= (sqrt2+1) || |A|+|B| ||_F^2", trace.q0, trace.bound_rhs));
  if (std::abs(t - optimal_t()) <= 1e-12) {
    stages.push_back(make_identity_report("chain q3 = (sqrt2+1) || |A|+|B| ||_F^2 at t = sqrt2-1",
                                          trace.q3, trace.bound_rhs));
  }
  return trace;
}

std::pair<ComplexMatrix, ComplexMatrix> canonical_pair(double alpha) {
  ComplexMatrix a = ComplexMatrix::diagonal({1.0, 0.0});
  ComplexMatrix b(2);
  b(0, 0) = std::cos(alpha);
  b(0, 1) = -std::sin(alpha);
  return {std::move(a), std::move(b)};
}

double canonical_ratio(double alpha) {
  const double c = std::cos(alpha);
  return std::sqrt(std::max(0.0, 1.0 + c) / (1.0 + c * c));
}

}  // namespace absnorm
