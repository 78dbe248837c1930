#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nilblock/errors.hpp"
#include "nilblock/rational.hpp"

namespace nilblock {

// Univariate polynomial over Q, coefficients in ascending degree. The zero
// polynomial has no coefficients.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& lead() const { return c_.back(); }

  Rational operator()(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  RatPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
    return RatPoly(std::move(d));
  }

  RatPoly operator-() const {
    auto c = c_;
    for (auto& x : c) x = -x;
    return RatPoly(std::move(c));
  }

  // Euclidean remainder of *this by divisor.
  RatPoly remainder(const RatPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> r = c_;
    const auto& d = divisor.c_;
    while (r.size() >= d.size() && !r.empty()) {
      const Rational f = r.back() / d.back();
      const std::size_t shift = r.size() - d.size();
      for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= f * d[i];
      r.pop_back();
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return RatPoly(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
  std::vector<RatPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    RatPoly r = -seq[seq.size() - 2].remainder(seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

inline int sign_variations(const std::vector<RatPoly>& seq, const Rational& t) {
  int changes = 0;
  int prev = 0;
  for (const auto& p : seq) {
    const int s = sgn(p(t));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

// Number of distinct real roots in (lo, hi].
inline int count_real_roots(const RatPoly& p, const Rational& lo, const Rational& hi) {
  const auto seq = sturm_sequence(p);
  return sign_variations(seq, lo) - sign_variations(seq, hi);
}

// Closed rational interval with interval arithmetic.
struct RatInterval {
  Rational lo;
  Rational hi;

  bool contains_zero() const { return lo <= 0 && hi >= 0; }

  friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    RatInterval r{p[0], p[0]};
    for (const auto& v : p) {
      if (v < r.lo) r.lo = v;
      if (v > r.hi) r.hi = v;
    }
    return r;
  }
  friend RatInterval operator*(const Rational& s, const RatInterval& a) {
    return s >= 0 ? RatInterval{s * a.lo, s * a.hi} : RatInterval{s * a.hi, s * a.lo};
  }
};

}  // namespace nilblock
