#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <random>
#include <set>

#include "nilblock/sl2.hpp"

using namespace nilblock;

namespace {

Eigen::Matrix2d to_eigen(const Sl2Matrix& x) {
  Eigen::Matrix2d m;
  m << x.a().to_double(), x.b().to_double(), x.c().to_double(), x.d().to_double();
  return m;
}

Eigen::Matrix2d to_eigen(const Mat2Q& g) {
  Eigen::Matrix2d m;
  m << g.a.get_d(), g.b.get_d(), g.c.get_d(), g.d.get_d();
  return m;
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t s) : rng(s) {}
  Rational q(long b) { return make_rational(static_cast<long>(rng() % (2 * b + 1)) - b, static_cast<long>(rng() % b) + 1); }
  // [[a, b], [c, (1 + b c) / a]], a and c nonzero.
  Mat2Q matrix(long b) {
    for (;;) {
      const Rational a = q(b), bb = q(b), c = q(b);
      if (a != 0 && c != 0) return {a, bb, c, Rational((1 + bb * c) / a)};
    }
  }
};

}  // namespace

TEST(QuadElement, CanonicalFormAndArithmetic) {
  const QuadElement r5(5, 0, 1);
  EXPECT_EQ(r5 * r5, QuadElement(Rational(5)));
  EXPECT_EQ(QuadElement(7, 3, 0).D(), 1);
  EXPECT_EQ(QuadElement(1, 2, 3), QuadElement(Rational(5)));
  EXPECT_THROW(QuadElement(2, 0, 1) + QuadElement(3, 0, 1), DomainError);
  EXPECT_NEAR((r5 + Rational(1)).to_double(), std::sqrt(5.0) + 1, 1e-15);
}

TEST(Sl2, GoldenExample) {
  const Mat2Q g{1, 1, 1, 2};
  const auto res = sl2_sqrt(g);
  ASSERT_EQ(res.roots.size(), 2u);
  const Rational f = make_rational(1, 5);
  // (1 / sqrt5) [[2, 1], [1, 3]] = sqrt5/5 [[2, 1], [1, 3]].
  const Sl2Matrix want(QuadElement(5, 0, 2 * f), QuadElement(5, 0, f), QuadElement(5, 0, f), QuadElement(5, 0, 3 * f));
  EXPECT_TRUE(res.roots[0] == want || res.roots[1] == want);
  EXPECT_TRUE(res.roots[0] == -res.roots[1]);
  EXPECT_EQ(res.roots[0].radicand(), 5);
  // z^2 = c^2 / tau = 1/5.
  EXPECT_EQ(res.roots[0].c() * res.roots[0].c(), QuadElement(f));
}

TEST(Sl2, IdentityAndMinusIdentity) {
  const auto id = sl2_sqrt(Mat2Q::identity());
  ASSERT_EQ(id.roots.size(), 2u);
  EXPECT_TRUE(id.roots[0].equals(Mat2Q::identity()) || id.roots[1].equals(Mat2Q::identity()));
  EXPECT_TRUE(id.roots[0].equals(Mat2Q{-1, 0, 0, -1}) || id.roots[1].equals(Mat2Q{-1, 0, 0, -1}));
  const auto minus = sl2_sqrt(Mat2Q{-1, 0, 0, -1});
  EXPECT_TRUE(minus.family);
  EXPECT_TRUE(minus.roots.empty());
}

TEST(Sl2, EmptyCases) {
  EXPECT_TRUE(sl2_sqrt(Mat2Q{-1, 1, 0, -1}).roots.empty());
  EXPECT_FALSE(sl2_sqrt(Mat2Q{-1, 1, 0, -1}).family);
  EXPECT_TRUE(sl2_sqrt(Mat2Q{-2, 0, 0, make_rational(-1, 2)}).roots.empty());
  EXPECT_THROW(sl2_sqrt(Mat2Q{1, 1, 1, 1}), DomainError);
}

TEST(Sl2, TriangularAndDiagonal) {
  for (const Mat2Q& g : {Mat2Q{1, 1, 0, 1}, Mat2Q{4, 0, 0, make_rational(1, 4)}, Mat2Q{2, 3, 0, make_rational(1, 2)},
                         Mat2Q{1, 0, 5, 1}, Mat2Q{-1, 0, 3, -1}}) {
    const auto res = sl2_sqrt(g);
    const Rational tau = g.trace() + 2;
    ASSERT_EQ(res.roots.size(), tau > 0 ? 2u : 0u);
    for (const auto& x : res.roots) EXPECT_TRUE((x * x).equals(g));
  }
}

TEST(Sl2, RandomRootsAreExactAndMatchEigen) {
  Gen gen(1);
  int checked = 0;
  while (checked < 100) {
    const Mat2Q g = gen.matrix(7);
    if (g.trace() + 2 <= 0) continue;
    const auto res = sl2_sqrt(g);
    ASSERT_EQ(res.roots.size(), 2u);
    EXPECT_TRUE(res.roots[0] == -res.roots[1]);
    for (const auto& x : res.roots) {
      EXPECT_TRUE((x * x).equals(g));
      EXPECT_EQ(x.det(), QuadElement(Rational(1)));
    }
    // The principal square root has positive trace.
    const Eigen::Matrix2d principal = to_eigen(g).sqrt();
    const auto& pos = res.roots[0].a().to_double() + res.roots[0].d().to_double() > 0 ? res.roots[0] : res.roots[1];
    EXPECT_LT((to_eigen(pos) - principal).cwiseAbs().maxCoeff(), 1e-9);
    ++checked;
  }
}

TEST(Sl2, NegativeTauHasNoRoots) {
  Gen gen(2);
  int checked = 0;
  while (checked < 20) {
    const Mat2Q g = gen.matrix(9);
    if (g.trace() + 2 > 0) continue;
    const auto res = sl2_sqrt(g);
    EXPECT_TRUE(res.roots.empty());
    EXPECT_FALSE(res.family);
    ++checked;
  }
}

TEST(Sl2Z, WindowOneMatchesBruteForce) {
  std::vector<Mat2Z> brute;
  for (long p = -1; p <= 1; ++p)
    for (long q = -1; q <= 1; ++q)
      for (long r = -1; r <= 1; ++r)
        for (long s = -1; s <= 1; ++s)
          if (p * s - q * r == 1) brute.push_back({p, q, r, s});
  EXPECT_EQ(enumerate_sl2z(1), brute);
  auto has = [&](const Mat2Z& m) { return std::find(brute.begin(), brute.end(), m) != brute.end(); };
  EXPECT_TRUE(has({1, 0, 0, 1}));
  EXPECT_TRUE(has({-1, 0, 0, -1}));
  EXPECT_TRUE(has({1, 1, 0, 1}));
  EXPECT_TRUE(has({0, -1, 1, 0}));
}

TEST(Sl2Z, LargerWindowsMatchBruteForce) {
  for (long N : {2L, 4L, 6L}) {
    std::size_t brute = 0;
    for (long p = -N; p <= N; ++p)
      for (long q = -N; q <= N; ++q)
        for (long r = -N; r <= N; ++r)
          for (long s = -N; s <= N; ++s) brute += p * s - q * r == 1;
    const auto got = enumerate_sl2z(N);
    EXPECT_EQ(got.size(), brute);
    std::set<std::tuple<long, long, long, long>> uniq;
    for (const auto& m : got) {
      EXPECT_EQ(m.p * m.s - m.q * m.r, 1);
      EXPECT_LE(m.height(), N);
      uniq.insert({m.p, m.q, m.r, m.s});
    }
    EXPECT_EQ(uniq.size(), got.size());
  }
  EXPECT_THROW(enumerate_sl2z(0), DomainError);
}

TEST(Sl2Spread, SmallRadicalsAppearByWindowThree) {
  const auto rep = coset_spread(Mat2Q::identity(), 3);
  for (long D : {2L, 3L, 5L})
    EXPECT_TRUE(std::find(rep.radical_set.begin(), rep.radical_set.end(), Integer(D)) != rep.radical_set.end());
  EXPECT_EQ(rep.coset_lower_bound, rep.radical_set.size());
}

TEST(Sl2Spread, MatchesDirectOracle) {
  // Recompute the radical set from the definition with plain integers.
  auto sqfree = [](long v) {
    long d = 1;
    for (long p = 2; p * p <= v; ++p) {
      int e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      if (e % 2) d *= p;
    }
    return d * v;
  };
  const auto series = coset_spread_series(Mat2Q::identity(), 6);
  for (long N = 1; N <= 6; ++N) {
    std::set<long> want;
    for (const auto& m : enumerate_sl2z(N)) {
      const long tau = m.p + m.s + 2;
      if (m.r == 0 || tau <= 0) continue;
      const long D = sqfree(tau);
      if (D > 1) want.insert(D);
    }
    std::set<long> got;
    for (const auto& D : series[static_cast<std::size_t>(N - 1)].radical_set) got.insert(D.get_si());
    EXPECT_EQ(got, want) << N;
  }
}

TEST(Sl2Spread, GrowsAndIsMonotone) {
  const auto series = coset_spread_series(Mat2Q::identity(), 10);
  for (std::size_t k = 1; k < series.size(); ++k) {
    EXPECT_GE(series[k].coset_lower_bound, series[k - 1].coset_lower_bound);
    EXPECT_TRUE(std::includes(series[k].radical_set.begin(), series[k].radical_set.end(),
                              series[k - 1].radical_set.begin(), series[k - 1].radical_set.end()));
  }
  EXPECT_EQ(series.front().coset_lower_bound, 2u);
  EXPECT_EQ(series.back().coset_lower_bound, 11u);
  // A rational non-integral g spreads too.
  const auto g = coset_spread_series(Mat2Q{2, 0, 0, make_rational(1, 2)}, 6);
  EXPECT_GT(g.back().coset_lower_bound, g.front().coset_lower_bound);
}

TEST(Sl2Spread, IdentityPlateausAtWindowSix) {
  // Window 6 adds traces 11 and 12 at most, i.e. tau = 13, 14. Both need
  // p s - 1 = q r in {29, 35} with |q|, |r| <= 6, which is impossible.
  const auto series = coset_spread_series(Mat2Q::identity(), 6);
  EXPECT_EQ(series[4].radical_set, series[5].radical_set);
}
