#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "absnorm/errors.hpp"
#include "absnorm/matrix.hpp"

using namespace absnorm;

TEST(ComplexMatrix, IdentityAndDiagonal) {
  const auto id = ComplexMatrix::identity(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(id(i, j), Complex(i == j ? 1.0 : 0.0));
  const auto d = ComplexMatrix::diagonal({2.0, -3.0});
  EXPECT_EQ(d(0, 0), Complex(2.0));
  EXPECT_EQ(d(1, 1), Complex(-3.0));
  EXPECT_EQ(d(0, 1), Complex(0.0));
}

TEST(ComplexMatrix, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(ComplexMatrix(2, std::vector<Complex>(3)), DimensionError);
  EXPECT_THROW((ComplexMatrix{{1.0, 2.0}, {3.0}}), DimensionError);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW((ComplexMatrix{{1.0, Complex(0.0, nan)}, {0.0, 1.0}}), DomainError);
  EXPECT_THROW(ComplexMatrix::diagonal({std::numeric_limits<double>::infinity()}), DomainError);
}

TEST(ComplexMatrix, AdjointProductTrace) {
  const Complex i(0.0, 1.0);
  const ComplexMatrix a{{1.0, i}, {2.0, 3.0 - i}};
  const ComplexMatrix adj = a.adjoint();
  EXPECT_EQ(adj(0, 1), Complex(2.0));
  EXPECT_EQ(adj(1, 0), -i);
  EXPECT_EQ(adj(1, 1), 3.0 + i);

  const ComplexMatrix prod = a * adj;
  EXPECT_EQ(prod(0, 0), Complex(2.0));            // 1 + i·(−i)
  EXPECT_EQ(prod(0, 1), 2.0 + i * (3.0 + i));     // 1·2 + i·(3+i)
  EXPECT_EQ(prod(1, 1), 4.0 + (3.0 - i) * (3.0 + i));
  EXPECT_EQ(a.trace(), 4.0 - i);
}

TEST(ComplexMatrix, FrobeniusNormScaled) {
  const ComplexMatrix a = ComplexMatrix::diagonal({3.0, 4.0});
  EXPECT_DOUBLE_EQ(a.frobenius_norm(), 5.0);
  ComplexMatrix big = a;
  big *= 1e200;
  EXPECT_DOUBLE_EQ(big.frobenius_norm(), 5e200);
  ComplexMatrix tiny = a;
  tiny *= 1e-200;
  EXPECT_NEAR(tiny.frobenius_norm() / 5e-200, 1.0, 1e-15);
  EXPECT_EQ(ComplexMatrix(3).frobenius_norm(), 0.0);
}

TEST(ComplexMatrix, OrderMismatchThrows) {
  EXPECT_THROW(ComplexMatrix(2) + ComplexMatrix(3), DimensionError);
  EXPECT_THROW(ComplexMatrix(2) * ComplexMatrix(3), DimensionError);
}

TEST(ComplexMatrix, EmbedPadsWithZeros) {
  const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const ComplexMatrix e = embed(a, 3);
  EXPECT_EQ(e.order(), 3u);
  EXPECT_EQ(e(1, 0), Complex(3.0));
  EXPECT_EQ(e(2, 2), Complex(0.0));
  EXPECT_EQ(e(0, 2), Complex(0.0));
  EXPECT_THROW(embed(a, 1), DimensionError);
}
