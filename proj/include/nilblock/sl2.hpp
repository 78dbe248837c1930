#pragma once

// Square roots in SL(2, R) of rational determinant-one matrices, and the
// spread of square roots of SL(2, Z)-cosets across quadratic fields.
//
// For X in SL(2), Cayley-Hamilton gives X^2 = tr(X) X - I, so X^2 = g forces
// tr(X)^2 = tr(g) + 2 and, when tr(X) != 0, X = (g + I) / tr(X). With
// tau = a + d + 2 > 0 the roots are +-(g + I) / sqrt(tau); in particular
// z^2 = c^2 / tau and x = (a + 1) z / c when c != 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nilblock/errors.hpp"
#include "nilblock/rational.hpp"

namespace nilblock {

// u + v sqrt(D), D square-free and positive; D = 1 whenever v = 0.
class QuadElement {
 public:
  QuadElement() = default;
  QuadElement(const Rational& u) : u_(u) {}  // NOLINT: rationals embed implicitly
  QuadElement(Integer D, Rational u, Rational v) : D_(std::move(D)), u_(std::move(u)), v_(std::move(v)) {
    if (D_ < 1) throw DomainError("radicand must be positive");
    if (D_ == 1) {
      u_ += v_;
      v_ = 0;
    }
    if (v_ == 0) D_ = 1;
  }

  const Integer& D() const { return D_; }
  const Rational& u() const { return u_; }
  const Rational& v() const { return v_; }
  bool is_rational() const { return v_ == 0; }

  friend QuadElement operator+(const QuadElement& a, const QuadElement& b) {
    return {common(a, b), a.u_ + b.u_, a.v_ + b.v_};
  }
  friend QuadElement operator-(const QuadElement& a, const QuadElement& b) {
    return {common(a, b), a.u_ - b.u_, a.v_ - b.v_};
  }
  QuadElement operator-() const { return {D_, -u_, -v_}; }
  friend QuadElement operator*(const QuadElement& a, const QuadElement& b) {
    const Integer D = common(a, b);
    return {D, a.u_ * b.u_ + a.v_ * b.v_ * Rational(D), a.u_ * b.v_ + a.v_ * b.u_};
  }
  friend bool operator==(const QuadElement& a, const QuadElement& b) {
    return a.u_ == b.u_ && a.v_ == b.v_ && (a.v_ == 0 || a.D_ == b.D_);
  }

  double to_double() const { return u_.get_d() + v_.get_d() * std::sqrt(D_.get_d()); }

 private:
  static Integer common(const QuadElement& a, const QuadElement& b) {
    if (a.v_ == 0) return b.D_;
    if (b.v_ == 0) return a.D_;
    if (a.D_ != b.D_) throw DomainError("quadratic elements from different fields");
    return a.D_;
  }

  Integer D_ = 1;
  Rational u_ = 0;
  Rational v_ = 0;
};

// Rational 2x2 matrix [[a, b], [c, d]].
struct Mat2Q {
  Rational a, b, c, d;

  Rational det() const { return a * d - b * c; }
  Rational trace() const { return a + d; }
  static Mat2Q identity() { return {1, 0, 0, 1}; }
  friend bool operator==(const Mat2Q&, const Mat2Q&) = default;
  friend Mat2Q operator*(const Mat2Q& x, const Mat2Q& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
};

class Sl2Matrix {
 public:
  Sl2Matrix(QuadElement a, QuadElement b, QuadElement c, QuadElement d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (!(det() == QuadElement(Rational(1)))) throw DomainError("matrix does not have determinant one");
  }
  explicit Sl2Matrix(const Mat2Q& m) : Sl2Matrix(m.a, m.b, m.c, m.d) {}

  const QuadElement& a() const { return a_; }
  const QuadElement& b() const { return b_; }
  const QuadElement& c() const { return c_; }
  const QuadElement& d() const { return d_; }

  QuadElement det() const { return a_ * d_ - b_ * c_; }
  Integer radicand() const {
    for (const auto* e : {&a_, &b_, &c_, &d_})
      if (!e->is_rational()) return e->D();
    return 1;
  }

  friend Sl2Matrix operator*(const Sl2Matrix& x, const Sl2Matrix& y) {
    return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
            x.c_ * y.b_ + x.d_ * y.d_};
  }
  Sl2Matrix operator-() const { return {-a_, -b_, -c_, -d_}; }
  friend bool operator==(const Sl2Matrix&, const Sl2Matrix&) = default;

  bool equals(const Mat2Q& m) const {
    return a_ == QuadElement(m.a) && b_ == QuadElement(m.b) && c_ == QuadElement(m.c) && d_ == QuadElement(m.d);
  }

 private:
  QuadElement a_, b_, c_, d_;
};

struct SqrtResult {
  std::vector<Sl2Matrix> roots;  // closed under negation
  bool family = false;           // g = -I: every trace-zero element of SL(2, R)
  std::string diagnostic;
};

// sqrt(tau) = k sqrt(D) / den for tau = num / den > 0, num * den = D k^2.
struct RadicalForm {
  Integer D;
  Integer k;
  Integer den;
};

inline RadicalForm radical_form(const Rational& tau) {
  if (tau <= 0) throw DomainError("radical form needs a positive rational");
  const Integer nd = tau.get_num() * tau.get_den();
  const Integer D = squarefree_part(nd);
  const Integer k = sqrt(Integer(nd / D));
  return {D, k, tau.get_den()};
}

inline SqrtResult sl2_sqrt(const Mat2Q& g) {
  if (g.det() != 1) throw DomainError("sl2_sqrt expects a determinant-one matrix");
  SqrtResult out;
  const Mat2Q minus_identity{-1, 0, 0, -1};
  if (g == minus_identity) {
    out.family = true;
    out.diagnostic = "g = -I: every trace-zero determinant-one matrix is a root";
    return out;
  }
  const Rational tau = g.trace() + 2;
  if (tau < 0) {
    out.diagnostic = "tr(g) + 2 < 0: no real root";
    return out;
  }
  if (tau == 0) {
    out.diagnostic = "tr(g) + 2 = 0 with g != -I: a root would square to -I";
    return out;
  }
  const RadicalForm rf = radical_form(tau);
  // 1 / sqrt(tau) = den / (k sqrt(D)) = den sqrt(D) / (k D).
  auto scale = [&](const Rational& e) -> QuadElement {
    if (rf.D == 1) return QuadElement(Rational(e * Rational(rf.den) / Rational(rf.k)));
    return QuadElement(rf.D, Rational(0), Rational(e * Rational(rf.den) / Rational(rf.k * rf.D)));
  };
  const Sl2Matrix x(scale(g.a + 1), scale(g.b), scale(g.c), scale(g.d + 1));
  for (const Sl2Matrix& r : {x, -x}) {
    if (!(r * r).equals(g)) throw Error("internal: square root failed exact verification");
    out.roots.push_back(r);
  }
  return out;
}

// Integer matrix [[p, q], [r, s]].
struct Mat2Z {
  long p, q, r, s;
  friend bool operator==(const Mat2Z&, const Mat2Z&) = default;
  long height() const { return std::max({std::labs(p), std::labs(q), std::labs(r), std::labs(s)}); }
};

// Visits every element of SL(2, Z) with max |entry| <= N once, in
// lexicographic (p, q, r, s) order.
inline void for_each_sl2z(long N, const std::function<void(const Mat2Z&)>& visit) {
  if (N < 1) throw DomainError("SL(2, Z) window must be >= 1");
  for (long p = -N; p <= N; ++p)
    for (long q = -N; q <= N; ++q)
      for (long r = -N; r <= N; ++r) {
        if (p == 0) {
          if (q * r != -1) continue;
          for (long s = -N; s <= N; ++s) visit({p, q, r, s});
        } else {
          const long num = 1 + q * r;
          if (num % p != 0) continue;
          const long s = num / p;
          if (s >= -N && s <= N) visit({p, q, r, s});
        }
      }
}

inline std::vector<Mat2Z> enumerate_sl2z(long N) {
  std::vector<Mat2Z> out;
  for_each_sl2z(N, [&](const Mat2Z& m) { out.push_back(m); });
  return out;
}

struct SpreadReport {
  long window = 0;
  std::vector<Integer> radical_set;  // distinct square-free D > 1, ascending
  std::size_t coset_lower_bound = 0;
};

// For gamma in SL(2, Z) with tau = tr(g gamma) + 2 > 0 and nonzero lower-left
// entry of g gamma, the roots of g gamma live over Q(sqrt(D)), D the
// square-free part of tau. Distinct D > 1 force distinct Gamma-cosets.
// Returns one report per window 1..N.
inline std::vector<SpreadReport> coset_spread_series(const Mat2Q& g, long N) {
  if (g.det() != 1) throw DomainError("coset_spread expects a determinant-one matrix");
  std::map<Integer, long> first_radius;  // D -> least window where it appears
  for_each_sl2z(N, [&](const Mat2Z& m) {
    const Rational lower_left = g.c * m.p + g.d * m.r;
    if (lower_left == 0) return;
    const Rational tau = g.a * m.p + g.b * m.r + g.c * m.q + g.d * m.s + 2;
    if (tau <= 0) return;
    const Integer D = squarefree_part(Integer(tau.get_num() * tau.get_den()));
    if (D == 1) return;
    const long h = m.height();
    auto [it, inserted] = first_radius.emplace(D, h);
    if (!inserted) it->second = std::min(it->second, h);
  });
  std::vector<SpreadReport> series;
  for (long w = 1; w <= N; ++w) {
    SpreadReport rep;
    rep.window = w;
    for (const auto& [D, h] : first_radius)
      if (h <= w) rep.radical_set.push_back(D);
    rep.coset_lower_bound = rep.radical_set.size();
    series.push_back(std::move(rep));
  }
  return series;
}

inline SpreadReport coset_spread(const Mat2Q& g, long N) { return coset_spread_series(g, N).back(); }

}  // namespace nilblock
