#include <gtest/gtest.h>

#include <random>
#include <variant>

#include "nilblock/matrix.hpp"

using namespace nilblock;

namespace {

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int zero_bias) {
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (static_cast<int>(rng() % 10) >= zero_bias)
        m(i, j) = make_rational(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 7) + 1);
  return m;
}

}  // namespace

TEST(Matrix, TransformTimesInputIsReduced) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const RatMatrix a = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5, k % 6);
    const RowReduction rr = row_reduce(a);
    EXPECT_EQ(rr.transform * a, rr.reduced);
    EXPECT_LE(rr.rank(), std::min(a.rows(), a.cols()));
    // Pivot columns are unit vectors in reduced form.
    for (std::size_t i = 0; i < rr.rank(); ++i)
      for (std::size_t r = 0; r < a.rows(); ++r) EXPECT_EQ(rr.reduced(r, rr.pivot_cols[i]), r == i ? 1 : 0);
  }
}

TEST(Matrix, SolveReturnsSolutionOrCheckedCertificate) {
  std::mt19937_64 rng(12);
  int solved = 0, refuted = 0;
  for (int k = 0; k < 300; ++k) {
    const RatMatrix a = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, 3 + k % 5);
    std::vector<Rational> b(a.rows());
    for (auto& v : b) v = make_rational(static_cast<long>(rng() % 11) - 5, 1);
    const auto sol = solve_linear(a, b);
    if (const auto* x = std::get_if<std::vector<Rational>>(&sol)) {
      EXPECT_EQ(a.apply(*x), b);
      ++solved;
    } else {
      EXPECT_TRUE(certificate_holds(a, b, std::get<InconsistencyCertificate>(sol)));
      ++refuted;
    }
  }
  EXPECT_GT(solved, 0);
  EXPECT_GT(refuted, 0);
}

TEST(Matrix, RankOfKnownMatrices) {
  RatMatrix a(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = Rational(static_cast<long>(3 * i + j + 1));
  EXPECT_EQ(rank_of(a), 2u);
  EXPECT_EQ(rank_of(RatMatrix::identity(4)), 4u);
  EXPECT_EQ(rank_of(RatMatrix(2, 3)), 0u);
}

TEST(Matrix, ForgedCertificateIsRejected) {
  RatMatrix a(2, 1);
  a(0, 0) = 1;
  a(1, 0) = 1;
  const std::vector<Rational> b{1, 2};
  const auto sol = solve_linear(a, b);
  ASSERT_TRUE(std::holds_alternative<InconsistencyCertificate>(sol));
  auto cert = std::get<InconsistencyCertificate>(sol);
  EXPECT_TRUE(certificate_holds(a, b, cert));
  cert.functional[0] += 1;
  EXPECT_FALSE(certificate_holds(a, b, cert));
}
