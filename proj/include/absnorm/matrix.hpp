#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace absnorm {

using Complex = std::complex<double>;

/// Dense square complex matrix stored row-major.
///
/// Every constructor that accepts entries rejects non-finite values and
/// non-square shapes, so a live ComplexMatrix is always square and finite.
/// Arithmetic results are not re-validated.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  /// Zero matrix of order n.
  explicit ComplexMatrix(std::size_t n);

  /// Row-major entries; throws DimensionError unless entries.size() == n*n,
  /// DomainError on a non-finite entry.
  ComplexMatrix(std::size_t n, std::vector<Complex> entries);

  /// Nested rows; every row must have as many entries as there are rows.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);

  std::size_t order() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  /// Conjugate transpose A*.
  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);

/// Throws DimensionError when the orders differ; `what` names the operation.
void require_same_order(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);

/// (M + M*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Direct sum M ⊕ 0 padded with zeros up to order n (n >= m.order()).
ComplexMatrix embed(const ComplexMatrix& m, std::size_t n);

}  // namespace absnorm
