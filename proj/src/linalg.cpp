#include "absnorm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "absnorm/errors.hpp"

namespace absnorm {
namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kEigenOffTol = 1e-13;
// One-sided Jacobi treats columns p, q as orthogonal once |<g_p, g_q>| is
// below this fraction of ‖g_p‖‖g_q‖.
constexpr double kSvdOrthTol = 1e-15;
// Singular values below this fraction of s_1 get completed left vectors.
constexpr double kRankTol = 1e-13;

// Unitary G acting on the (p, q) plane with G*·[[app, apq], [conj(apq), aqq]]·G diagonal.
struct PlaneRotation {
  Complex pp, pq, qp, qq;
};

PlaneRotation jacobi_rotation(double app, double aqq, Complex apq) {
  const double r = std::abs(apq);
  const Complex phase = std::conj(apq) / r;  // e^{-i·arg(apq)}
  const double theta = (aqq - app) / (2.0 * r);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  return {c, s, -s * phase, c * phase};
}

// M ← M·G on columns p, q.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const PlaneRotation& g) {
  for (std::size_t k = 0; k < m.order(); ++k) {
    const Complex mp = m(k, p);
    const Complex mq = m(k, q);
    m(k, p) = mp * g.pp + mq * g.qp;
    m(k, q) = mp * g.pq + mq * g.qq;
  }
}

// M ← G*·M on rows p, q.
void rotate_rows(ComplexMatrix& m, std::size_t p, std::size_t q, const PlaneRotation& g) {
  for (std::size_t k = 0; k < m.order(); ++k) {
    const Complex mp = m(p, k);
    const Complex mq = m(q, k);
    m(p, k) = std::conj(g.pp) * mp + std::conj(g.qp) * mq;
    m(q, k) = std::conj(g.pq) * mp + std::conj(g.qq) * mq;
  }
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j)
      if (i != j) sum += std::norm(m(i, j));
  return std::sqrt(sum);
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return idx;
}

ComplexMatrix permute_columns(const ComplexMatrix& m, const std::vector<std::size_t>& order) {
  ComplexMatrix out(m.order());
  for (std::size_t j = 0; j < order.size(); ++j)
    for (std::size_t i = 0; i < m.order(); ++i) out(i, j) = m(i, order[j]);
  return out;
}

// V·diag(d)·V*.
ComplexMatrix congruence(const ComplexMatrix& v, const std::vector<double>& d) {
  const std::size_t n = v.order();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += v(i, k) * d[k] * std::conj(v(j, k));
      out(i, j) = sum;
    }
  return hermitian_part(out);
}

Complex column_dot(const ComplexMatrix& m, std::size_t a, std::size_t b) {
  Complex sum = 0.0;
  for (std::size_t k = 0; k < m.order(); ++k) sum += std::conj(m(k, a)) * m(k, b);
  return sum;
}

double column_norm(const ComplexMatrix& m, std::size_t col) {
  double sum = 0.0;
  for (std::size_t k = 0; k < m.order(); ++k) sum += std::norm(m(k, col));
  return std::sqrt(sum);
}

// Projects column `col` of m off columns [0, col) twice and normalizes it.
// Returns the norm before normalization.
double orthonormalize_column(ComplexMatrix& m, std::size_t col) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t prev = 0; prev < col; ++prev) {
      const Complex proj = column_dot(m, prev, col);
      for (std::size_t k = 0; k < m.order(); ++k) m(k, col) -= proj * m(k, prev);
    }
  }
  const double norm = column_norm(m, col);
  if (norm > 0.0)
    for (std::size_t k = 0; k < m.order(); ++k) m(k, col) /= norm;
  return norm;
}

void check_hermitian(const ComplexMatrix& h) {
  const double asym = (h - h.adjoint()).frobenius_norm();
  if (asym > kHermitianTol * (1.0 + h.frobenius_norm())) {
    throw PreconditionError({"hermitian_eigen: input is not Hermitian (‖H − H*‖_F = " +
                             std::to_string(asym) + ")"});
  }
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  check_hermitian(h);
  const std::size_t n = h.order();
  ComplexMatrix a = hermitian_part(h);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = kEigenOffTol * a.frobenius_norm();

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > threshold) {
    if (sweep == kMaxJacobiSweeps) {
      throw ConvergenceError("hermitian_eigen: no convergence after " +
                                 std::to_string(kMaxJacobiSweeps) + " sweeps",
                             off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == Complex{}) continue;
        const PlaneRotation g = jacobi_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
        rotate_columns(a, p, q, g);
        rotate_rows(a, p, q, g);
        rotate_columns(v, p, q, g);
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    ++sweep;
    off = off_diagonal_norm(a);
  }

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  const auto order = descending_order(diag);
  HermitianEigen out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = diag[order[i]];
  out.vectors = permute_columns(v, order);
  out.sweeps = sweep;
  return out;
}

SingularValueDecomposition svd(const ComplexMatrix& a) {
  const std::size_t n = a.order();
  // Work on A / max|a_ij| so squared column norms neither underflow nor overflow.
  double scale = 0.0;
  for (const auto& z : a.entries()) scale = std::max({scale, std::abs(z.real()), std::abs(z.imag())});
  ComplexMatrix g = a;
  if (scale > 0.0) g *= 1.0 / scale;
  ComplexMatrix v = ComplexMatrix::identity(n);
  // Columns shorter than this are roundoff and need no further orthogonalization.
  const double negligible = std::pow(kSvdOrthTol * g.frobenius_norm(), 2);

  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex gamma = column_dot(g, p, q);
        if (gamma == Complex{}) continue;
        const double alpha = std::norm(column_norm(g, p));
        const double beta = std::norm(column_norm(g, q));
        if (std::abs(gamma) <= kSvdOrthTol * std::sqrt(alpha * beta)) continue;
        if (std::min(alpha, beta) <= negligible) continue;
        converged = false;
        const PlaneRotation rot = jacobi_rotation(alpha, beta, gamma);
        rotate_columns(g, p, q, rot);
        rotate_columns(v, p, q, rot);
      }
  }
  if (!converged) {
    double worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double denom = column_norm(g, p) * column_norm(g, q);
        if (std::min(column_norm(g, p), column_norm(g, q)) > std::sqrt(negligible)) worst = std::max(worst, std::abs(column_dot(g, p, q)) / denom);
      }
    throw ConvergenceError("svd: one-sided Jacobi did not converge", worst);
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = column_norm(g, j);
  const auto order = descending_order(sigma);

  SingularValueDecomposition out;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = sigma[order[j]];
  out.right = permute_columns(v, order);

  ComplexMatrix left = permute_columns(g, order);
  const double cutoff = n > 0 ? kRankTol * out.values[0] : 0.0;
  std::size_t kept = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (out.values[j] <= cutoff || out.values[j] == 0.0) break;
    for (std::size_t k = 0; k < n; ++k) left(k, j) /= out.values[j];
    if (orthonormalize_column(left, j) < 0.5) break;
    kept = j + 1;
  }
  for (double& s : out.values) s *= scale;
  // Complete with the standard basis vector that survives projection best.
  for (std::size_t j = kept; j < n; ++j) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t e = 0; e < n; ++e) {
      ComplexMatrix trial = left;
      for (std::size_t k = 0; k < n; ++k) trial(k, j) = k == e ? 1.0 : 0.0;
      const double norm = orthonormalize_column(trial, j);
      if (norm > best_norm + 1e-12) {
        best_norm = norm;
        best = e;
      }
    }
    for (std::size_t k = 0; k < n; ++k) left(k, j) = k == best ? 1.0 : 0.0;
    orthonormalize_column(left, j);
  }
  out.left = std::move(left);
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) { return svd(a).values; }

PolarFactors polar_decompose(const ComplexMatrix& a) {
  SingularValueDecomposition d = svd(a);
  PolarFactors out;
  out.unitary = d.left * d.right.adjoint();
  out.psd = congruence(d.right, d.values);
  out.singular_values = std::move(d.values);
  return out;
}

ComplexMatrix matrix_abs(const ComplexMatrix& a) {
  const SingularValueDecomposition d = svd(a);
  return congruence(d.right, d.values);
}

ComplexMatrix matrix_abs_gram(const ComplexMatrix& a) {
  HermitianEigen e = hermitian_eigen(a.adjoint() * a);
  const double top = e.values.empty() ? 0.0 : std::max(e.values.front(), 0.0);
  const double eps = 1e-12 * (1.0 + top);
  for (double& lambda : e.values) {
    if (lambda < -eps) {
      throw NumericalError("matrix_abs_gram: A*A has eigenvalue " + std::to_string(lambda) +
                           " below −" + std::to_string(eps));
    }
    lambda = std::sqrt(std::max(lambda, 0.0));
  }
  return congruence(e.vectors, e.values);
}

double schatten_norm(const std::vector<double>& sv, double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("schatten_norm: p must lie in [1, ∞]");
  double top = 0.0;
  for (double s : sv) top = std::max(top, std::abs(s));
  if (top == 0.0) return 0.0;
  if (std::isinf(p)) return top;
  double sum = 0.0;
  for (double s : sv) sum += std::pow(std::abs(s) / top, p);
  return top * std::pow(sum, 1.0 / p);
}

double schatten_norm(const ComplexMatrix& a, double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("schatten_norm: p must lie in [1, ∞]");
  if (p == 2.0) return a.frobenius_norm();
  return schatten_norm(singular_values(a), p);
}

Complex trace_inner(const ComplexMatrix& s, const ComplexMatrix& t) {
  require_same_order(s, t, "trace_inner");
  Complex sum = 0.0;
  const auto se = s.entries();
  const auto te = t.entries();
  for (std::size_t k = 0; k < se.size(); ++k) sum += std::conj(se[k]) * te[k];
  return sum;
}

bool is_contraction(const ComplexMatrix& q, double tol) {
  const auto sv = singular_values(q);
  return sv.empty() || sv.front() <= 1.0 + tol;
}

bool is_psd(const ComplexMatrix& x, double tol) {
  const double asym = (x - x.adjoint()).frobenius_norm();
  if (asym > tol * (1.0 + x.frobenius_norm())) return false;
  const HermitianEigen e = hermitian_eigen(hermitian_part(x));
  if (e.values.empty()) return true;
  const double s1 = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  return e.values.back() >= -tol * (1.0 + s1);
}

}  // namespace absnorm
