#include <gtest/gtest.h>

#include <complex>

#include "ncr/functor.hpp"
#include "support.hpp"

using namespace ncr;

namespace {

std::complex<double> omega_of(std::int64_t disc) {
  const double s = std::sqrt(static_cast<double>(-disc));
  return disc % 4 == 0 ? std::complex<double>(0, s / 2) : std::complex<double>(0.5, s / 2);
}

std::int64_t random_disc() {
  for (;;) {
    const std::int64_t d = -ncr_test::uniform(3, 60);
    const std::int64_t r = ((d % 4) + 4) % 4;
    if (r == 0 || r == 1) return d;
  }
}

}  // namespace

TEST(ImagQuadElement, Validation) {
  EXPECT_THROW(ImagQuadElement(5, 1, 1), std::invalid_argument);
  EXPECT_THROW(ImagQuadElement(-5, 1, 1), std::invalid_argument);
  EXPECT_THROW(ImagQuadElement(0, 1, 1), std::invalid_argument);
  EXPECT_NO_THROW(ImagQuadElement(-4, 1, 1));
  EXPECT_NO_THROW(ImagQuadElement(-3, 1, 1));
}

TEST(ImagQuadElement, PropertyNormAndTraceMatchComplex) {
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t disc = random_disc();
    const std::int64_t u = ncr_test::uniform(-20, 20), v = ncr_test::uniform(-20, 20);
    const ImagQuadElement a(disc, u, v);
    const std::complex<double> z = static_cast<double>(u) + static_cast<double>(v) * omega_of(disc);
    EXPECT_NEAR(a.norm().convert_to<double>(), std::norm(z), 1e-9);
    EXPECT_NEAR(a.trace().convert_to<double>(), 2 * z.real(), 1e-9);
  }
}

// Row i of the raw matrix holds the coordinates of alpha * basis_i.
TEST(EndoMatrix, PropertyRawRowsAreProducts) {
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t disc = random_disc();
    const std::int64_t u = ncr_test::uniform(-15, 15), v = ncr_test::uniform(-15, 15);
    if (v == 0) continue;
    const ImagQuadElement a(disc, u, v);
    const EndoChain chain = endo_chain(a);
    const IntMatrix& m = chain.raw.matrix();
    const std::complex<double> w = omega_of(disc);
    const std::complex<double> alpha = static_cast<double>(u) + static_cast<double>(v) * w;
    const std::complex<double> basis[2] = {1.0, w};
    for (std::size_t i = 0; i < 2; ++i) {
      const std::complex<double> row = m(i, 0).convert_to<double>() + m(i, 1).convert_to<double>() * w;
      EXPECT_LT(std::abs(row - alpha * basis[i]), 1e-9) << to_string(m);
    }
    const std::vector<BigInt> expected{1, -a.trace(), a.norm()};
    EXPECT_EQ(char_poly(chain.raw.matrix()), expected);
    EXPECT_EQ(char_poly(chain.companion.matrix()), expected);
    EXPECT_EQ(chain.transposed.matrix(), (IntMatrix{{a.trace(), -a.norm()}, {1, 0}}));
    EXPECT_EQ(endo_matrix(a).tag(), BasisTag::transposed_companion);
  }
}

TEST(EndoMatrix, KnownAndRejections) {
  const ImagQuadElement a(-4, 1, 1);  // 1 + i
  EXPECT_EQ(endo_chain(a).raw.matrix(), (IntMatrix{{1, 1}, {-1, 1}}));
  EXPECT_EQ(endo_matrix(a).matrix(), (IntMatrix{{2, -2}, {1, 0}}));
  EXPECT_THROW(endo_chain(ImagQuadElement(-4, 3, 0)), std::invalid_argument);
  EXPECT_THROW(EndoMatrix(IntMatrix(3), BasisTag::raw), std::invalid_argument);
  EXPECT_THROW(EndoMatrix(IntMatrix{{1, 2}, {2, 4}}, BasisTag::raw), std::invalid_argument);
  EXPECT_THROW(EndoMatrix(IntMatrix{{2, -2}, {0, 1}}, BasisTag::transposed_companion), std::invalid_argument);
  EXPECT_STREQ(to_string(BasisTag::companion), "companion");
}

TEST(TeichmullerF, InvolutionNegatesDeterminant) {
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix m = ncr_test::random_matrix(2, -30, 30);
    const IntMatrix f = teichmuller_F(m);
    EXPECT_EQ(teichmuller_F(f), m);
    EXPECT_EQ(determinant(f), -determinant(m));
    EXPECT_EQ(f(0, 0), m(0, 0));
    EXPECT_EQ(f(0, 1), m(0, 1));
  }
  EXPECT_THROW(teichmuller_F(IntMatrix(3)), std::invalid_argument);
}

TEST(Rho, SublatticeIdentity) {
  for (std::int64_t t = -10; t <= 10; ++t)
    for (std::int64_t n = -10; n <= 10; ++n) {
      if (n == 0) continue;
      const IntMatrix w{{BigInt(t), BigInt(n)}, {-1, 0}};
      EXPECT_EQ(rho(w), (IntMatrix{{BigInt(t), 1}, {-1, 0}}));
    }
  EXPECT_EQ(rho(Matrix<std::int64_t>{{3, 7}, {-1, 0}}), (Matrix<std::int64_t>{{3, 1}, {-1, 0}}));
  EXPECT_THROW(rho(IntMatrix{{3, 0}, {-1, 0}}), std::invalid_argument);
  EXPECT_THROW(rho(IntMatrix{{3, 2}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(rho(IntMatrix(3)), std::invalid_argument);
}

// x^2 - t x + p has discriminant t^2 - 4p; its image under F has t^2 + 4p.
TEST(LpDiscriminants, ShiftByEightP) {
  for (std::int64_t t = -40; t <= 40; ++t)
    for (std::int64_t p : {2, 3, 5, 7, 11, 97}) {
      const auto [d, df] = lp_discriminants<std::int64_t>(t, p);
      EXPECT_EQ(d, t * t - 4 * p);
      EXPECT_EQ(df, t * t + 4 * p);
      EXPECT_EQ(df - d, 8 * p);
    }
}

TEST(IndexIota, Known) {
  const IotaResult r = index_iota(ImagQuadElement(-4, 1, 1), QuadraticIrrational::golden());
  EXPECT_EQ(r.n, 2u);
  EXPECT_EQ(r.index, 3u);
  ASSERT_TRUE(r.predicted.has_value());
  EXPECT_EQ(*r.predicted, 2u);
  EXPECT_FALSE(r.matches_prediction());
  const IotaResult s = index_iota(ImagQuadElement(-4, 2, 1), QuadraticIrrational::sqrt_of(2));
  EXPECT_EQ(s.n, 5u);
  EXPECT_EQ(s.index, unit_index(QuadraticIrrational::sqrt_of(2), 5));
  EXPECT_FALSE(index_iota(ImagQuadElement(-4, 2, 0), QuadraticIrrational::golden()).predicted.has_value());
  EXPECT_THROW(index_iota(ImagQuadElement(-4, 1, 0), QuadraticIrrational::golden()), std::invalid_argument);
  EXPECT_THROW(index_iota(ImagQuadElement(-4, 0, 1), QuadraticIrrational::golden()), std::invalid_argument);
}

// For the golden ratio, phi^g = F_(g-1) + F_g phi, so the index is the
// first g with n | F_g.
TEST(IndexIota, PropertyGoldenIsFibonacciRankOfApparition) {
  for (int trial = 0; trial < 60; ++trial) {
    const ImagQuadElement a(-4, ncr_test::uniform(-12, 12), ncr_test::uniform(1, 12));
    const std::uint64_t n = abs(a.norm()).convert_to<std::uint64_t>();
    if (n < 2) continue;
    std::uint64_t f0 = 0, f1 = 1, g = 1;
    while (f1 % n != 0) {
      const std::uint64_t f2 = (f0 + f1) % n;
      f0 = f1;
      f1 = f2;
      ++g;
    }
    EXPECT_EQ(index_iota(a, QuadraticIrrational::golden()).index, g) << "n = " << n;
  }
}
