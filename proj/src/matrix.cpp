#include "absnorm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "absnorm/errors.hpp"

namespace absnorm {

PreconditionError::PreconditionError(std::vector<std::string> failures)
    : std::invalid_argument([&] {
        std::string msg = "precondition failed:";
        for (const auto& f : failures) msg += " [" + f + "]";
        return msg;
      }()),
      failures_(std::move(failures)) {}

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<Complex> entries)
    : n_(n), data_(std::move(entries)) {
  if (data_.size() != n_ * n_) {
    throw DimensionError("matrix of order " + std::to_string(n_) + " needs " +
                         std::to_string(n_ * n_) + " entries, got " +
                         std::to_string(data_.size()));
  }
  if (!all_finite()) throw DomainError("matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionError("matrix rows must have length equal to the row count");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw DomainError("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  if (!m.all_finite()) throw DomainError("matrix entries must be finite");
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::frobenius_norm() const {
  // Scaled accumulation so huge or tiny entries neither overflow nor underflow.
  double scale = 0.0;
  for (const auto& z : data_) scale = std::max({scale, std::abs(z.real()), std::abs(z.imag())});
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& z : data_) {
    const double re = z.real() / scale;
    const double im = z.imag() / scale;
    sum += re * re + im * im;
  }
  return scale * std::sqrt(sum);
}

bool ComplexMatrix::all_finite() const {
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_order(*this, rhs, "matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_order(*this, rhs, "matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_order(lhs, rhs, "matrix product");
  const std::size_t n = lhs.order();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

void require_same_order(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.order() != b.order()) {
    throw DimensionError(std::string(what) + ": order mismatch (" + std::to_string(a.order()) +
                         " vs " + std::to_string(b.order()) + ")");
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix out = m + m.adjoint();
  out *= 0.5;
  return out;
}

ComplexMatrix embed(const ComplexMatrix& m, std::size_t n) {
  if (n < m.order()) throw DimensionError("embed: target order smaller than source");
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace absnorm
