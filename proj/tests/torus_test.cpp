#include <gtest/gtest.h>

#include <random>
#include <set>

#include "nilblock/torus.hpp"

using namespace nilblock;

namespace {

TorusPoint T(std::vector<Rational> c) { return TorusPoint(std::move(c)); }

// Oracle for "segment P + t V, 0 < t < 1, meets B mod 1": solve coordinate j
// for every integer shift m, then test the remaining coordinates.
bool segment_meets(const std::vector<Rational>& P, const std::vector<Rational>& V, const std::vector<Rational>& B) {
  std::size_t j = 0;
  while (j < V.size() && V[j] == 0) ++j;
  if (j == V.size()) return false;
  const long span = static_cast<long>(Rational(abs(V[j])).get_d()) + 2;
  for (long m = -span; m <= span; ++m) {
    const Rational t = (B[j] + m - P[j]) / V[j];
    if (t <= 0 || t >= 1) continue;
    bool ok = true;
    for (std::size_t i = 0; i < V.size() && ok; ++i) ok = Rational(P[i] + t * V[i] - B[i]).get_den() == 1;
    if (ok) return true;
  }
  return false;
}

bool verify_oracle(const TorusPoint& p, const TorusPoint& q, const std::vector<TorusPoint>& B, int K) {
  const std::size_t n = p.n();
  std::vector<int> k(n, -K);
  for (;;) {
    std::vector<Rational> V(n);
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      V[i] = q.coords()[i] - p.coords()[i] + k[i];
      if (V[i] != 0) zero = false;
    }
    if (!zero) {
      bool hit = false;
      for (const auto& b : B) hit = hit || segment_meets(p.coords(), V, b.coords());
      if (!hit) return false;
    }
    std::size_t i = n;
    while (i > 0 && k[i - 1] == K) k[--i] = -K;
    if (i == 0) return true;
    ++k[i - 1];
  }
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t s) : rng(s) {}
  Rational q(long b) { return make_rational(static_cast<long>(rng() % (2 * b + 1)) - b, static_cast<long>(rng() % b) + 1); }
  TorusPoint point(std::size_t n, long b) {
    std::vector<Rational> c(n);
    for (auto& v : c) v = q(b);
    return T(c);
  }
};

}  // namespace

TEST(Torus, OneDimensionalExampleMatchesBruteForce) {
  const auto p = T({0}), q = T({make_rational(1, 3)});
  const auto set = torus_block_set(p, q);
  EXPECT_FALSE(set.degenerate);
  ASSERT_EQ(set.points.size(), 2u);
  EXPECT_EQ(set.points[0], T({make_rational(1, 6)}));
  EXPECT_EQ(set.points[1], T({make_rational(2, 3)}));
  std::set<Rational> mids;
  for (long k = -50; k <= 50; ++k) mids.insert(frac_of((Rational(0) + make_rational(1, 3) + k) / 2));
  std::set<Rational> got;
  for (const auto& t : set.points) got.insert(t.coords()[0]);
  EXPECT_EQ(mids, got);
}

TEST(Torus, EqualPointsAreDegenerate) {
  const auto p = T({0});
  const auto set = torus_block_set(p, p);
  EXPECT_TRUE(set.degenerate);
  ASSERT_EQ(set.points.size(), 1u);
  EXPECT_EQ(set.points[0], T({make_rational(1, 2)}));
  EXPECT_FALSE(set.quarter_points.empty());
  EXPECT_TRUE(torus_verify(p, p, set.points, 20));
}

TEST(Torus, TwoDimensionalExampleHasFourPoints) {
  const auto p = T({0, 0}), q = T({make_rational(1, 2), make_rational(1, 3)});
  const auto set = torus_block_set(p, q);
  EXPECT_EQ(set.points.size(), 4u);
  std::set<TorusPoint> want;
  for (int e0 = 0; e0 < 2; ++e0)
    for (int e1 = 0; e1 < 2; ++e1)
      want.insert(T({make_rational(1, 4) + make_rational(e0, 2), make_rational(1, 6) + make_rational(e1, 2)}));
  EXPECT_EQ(std::set<TorusPoint>(set.points.begin(), set.points.end()), want);
  EXPECT_TRUE(torus_verify(p, q, set.points, 50));
}

TEST(Torus, VerifyAgreesWithSegmentOracle) {
  Gen gen(1);
  int blocked = 0, open = 0;
  for (int k = 0; k < 150; ++k) {
    const std::size_t n = 1 + k % 3;
    const auto p = gen.point(n, 6), q = gen.point(n, 6);
    std::vector<TorusPoint> B;
    // Mix true midpoint sets, damaged sets and random points.
    if (k % 3 != 2 && !(p == q)) {
      B = torus_block_set(p, q).points;
      if (k % 3 == 1 && !B.empty()) B.erase(B.begin() + static_cast<long>(gen.rng() % B.size()));
    }
    for (int extra = 0; extra < k % 4; ++extra) B.push_back(gen.point(n, 6));
    bool bad = false;
    for (const auto& b : B) bad = bad || b == p || b == q;
    if (bad) continue;
    const int K = n == 3 ? 2 : 3;
    const bool got = torus_verify(p, q, B, K);
    EXPECT_EQ(got, verify_oracle(p, q, B, K)) << "case " << k;
    ++(got ? blocked : open);
  }
  EXPECT_GT(blocked, 20);
  EXPECT_GT(open, 20);
}

TEST(Torus, RandomPairsAreBlockedAtK50) {
  Gen gen(2);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + k % 3;
    const auto p = gen.point(n, 20), q = gen.point(n, 20);
    if (p == q) continue;
    const auto set = torus_block_set(p, q);
    EXPECT_FALSE(set.degenerate);
    EXPECT_EQ(set.points.size(), std::size_t{1} << n);
    EXPECT_TRUE(torus_verify(p, q, set.points, n == 3 ? 12 : 50));
  }
}

TEST(Torus, DroppingAPointBreaksBlockingWithinK2) {
  Gen gen(3);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + k % 3;
    const auto p = gen.point(n, 9), q = gen.point(n, 9);
    if (p == q) continue;
    const auto set = torus_block_set(p, q);
    for (std::size_t drop = 0; drop < set.points.size(); ++drop) {
      auto B = set.points;
      B.erase(B.begin() + static_cast<long>(drop));
      EXPECT_FALSE(torus_verify(p, q, B, 2));
    }
  }
}

TEST(Torus, EmptySetNeverBlocks) {
  EXPECT_FALSE(torus_verify(T({0}), T({make_rational(1, 5)}), {}, 1));
}

TEST(Torus, BlockersMayNotBeEndpoints) {
  const auto p = T({0}), q = T({make_rational(1, 3)});
  auto B = torus_block_set(p, q).points;
  B.push_back(p);
  EXPECT_FALSE(torus_verify(p, q, B, 3));
}

TEST(Torus, LargeDenominatorsUseBigIntegers) {
  // lcm of denominators near 2^40 pushes products past 64 bits.
  const Rational a = make_rational(Integer("1"), Integer("1099511627791"));
  const Rational b = make_rational(Integer("7"), Integer("1099511627776"));
  const auto p = T({a, b}), q = T({b, a});
  const auto set = torus_block_set(p, q);
  EXPECT_TRUE(torus_verify(p, q, set.points, 3));
  auto B = set.points;
  B.pop_back();
  EXPECT_FALSE(torus_verify(p, q, B, 3));
}

TEST(Torus, ProductCombinator) {
  const BlockVerdict yes = torus_verdict();
  BlockVerdict one;
  one.blockable = true;
  one.witness = BlockWitness{RatMatrix::identity(1), {make_rational(1, 2)}};
  BlockVerdict two;
  two.blockable = true;
  two.witness = BlockWitness{RatMatrix::identity(2), {1, 2}};
  BlockVerdict no;
  no.certificate = BlockCertificate{1, {{1, 0}, 1}};
  EXPECT_TRUE(product_blockable(yes, yes).blockable);
  EXPECT_FALSE(product_blockable(yes, no).blockable);
  EXPECT_FALSE(product_blockable(no, yes).blockable);
  EXPECT_FALSE(product_blockable(no, no).blockable);
  const auto p12 = product_blockable(one, two);
  ASSERT_TRUE(p12.witness.has_value());
  EXPECT_EQ(p12.witness->L, RatMatrix::identity(3));
  EXPECT_EQ(p12.witness->ell, (std::vector<Rational>{make_rational(1, 2), 1, 2}));
  // Commutative and associative on the verdict.
  for (const BlockVerdict* a : std::vector<const BlockVerdict*>{&yes, &one, &no})
    for (const BlockVerdict* b : std::vector<const BlockVerdict*>{&yes, &two, &no}) {
      EXPECT_EQ(product_blockable(*a, *b).blockable, product_blockable(*b, *a).blockable);
      for (const BlockVerdict* c : std::vector<const BlockVerdict*>{&one, &no})
        EXPECT_EQ(product_blockable(product_blockable(*a, *b), *c).blockable,
                  product_blockable(*a, product_blockable(*b, *c)).blockable);
    }
  // Certificates are re-indexed into the product.
  const auto shifted = product_blockable(one, no);
  ASSERT_TRUE(shifted.certificate.has_value());
  EXPECT_EQ(shifted.certificate->component, 2u);
}
