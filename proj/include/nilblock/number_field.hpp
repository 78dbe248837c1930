#pragma once

// Real algebraic number fields Q(alpha) with a designated real embedding.
// alpha is pinned by a rational isolating interval of its minimal
// polynomial; signs of field elements are decided by refining that
// interval, with exact zero detected on coordinates.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nilblock/errors.hpp"
#include "nilblock/matrix.hpp"
#include "nilblock/polynomial.hpp"
#include "nilblock/rational.hpp"

namespace nilblock {

namespace detail {

// g(x) = m^d f(x/m) for the lcm m of the coefficient denominators of a
// monic f: a monic integer polynomial, irreducible iff f is.
inline std::vector<Integer> monic_integer_model(const std::vector<Rational>& f) {
  const std::size_t d = f.size() - 1;
  Integer m = 1;
  for (const auto& c : f) m = lcm_of(m, c.get_den());
  std::vector<Integer> g(d + 1);
  Integer mp = 1;  // m^(d-i), built from the top down
  for (std::size_t k = 0; k <= d; ++k) {
    const std::size_t i = d - k;
    const Rational v = f[i] * Rational(mp);
    g[i] = v.get_num();  // exact: denominators cleared
    mp *= m;
  }
  return g;
}

inline Integer eval_integer_poly(const std::vector<Integer>& g, const Integer& x) {
  Integer acc = 0;
  for (auto it = g.rbegin(); it != g.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline bool has_integer_root(const std::vector<Integer>& g) {
  if (g[0] == 0) return true;
  for (const auto& k : positive_divisors(g[0]))
    if (eval_integer_poly(g, k) == 0 || eval_integer_poly(g, -k) == 0) return true;
  return false;
}

// Monic quartic x^4 + g3 x^3 + g2 x^2 + g1 x + g0 splits as
// (x^2 + a x + b)(x^2 + c x + e) over Z iff some divisor pair b*e = g0
// admits integers a + c = g3, ac = g2 - b - e, ae + bc = g1.
inline bool has_quadratic_factor(const std::vector<Integer>& g) {
  if (g.size() != 5 || g[0] == 0) return false;
  const Integer &g0 = g[0], &g1 = g[1], &g2 = g[2], &g3 = g[3];
  for (const auto& pd : positive_divisors(g0)) {
    for (int s : {1, -1}) {
      const Integer b = pd * s;
      const Integer e = g0 / b;
      const Integer disc = g3 * g3 - 4 * (g2 - b - e);
      if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) continue;
      const Integer root = sqrt(disc);
      for (const Integer& num : {Integer(g3 + root), Integer(g3 - root)}) {
        if (!mpz_even_p(num.get_mpz_t())) continue;
        const Integer a = num / 2;
        const Integer c = g3 - a;
        if (a * e + b * c == g1) return true;
      }
    }
  }
  return false;
}

}  // namespace detail

class NumberField {
 public:
  // minpoly: d+1 coefficients ascending, last one 1. Degree >= 5 needs
  // `trusted` since irreducibility is only checked up to degree 4.
  static std::shared_ptr<const NumberField> make(std::vector<Rational> minpoly, Rational lo, Rational hi,
                                                 bool trusted = false) {
    return std::shared_ptr<const NumberField>(new NumberField(std::move(minpoly), std::move(lo), std::move(hi), trusted));
  }

  // Q itself, as the degree-one field Q(0).
  static std::shared_ptr<const NumberField> rationals() {
    static const auto q = make({Rational(0), Rational(1)}, Rational(-1), Rational(1));
    return q;
  }

  std::size_t degree() const { return degree_; }
  const RatPoly& minpoly() const { return minpoly_; }
  const RatInterval& input_interval() const { return input_interval_; }
  const RatInterval& root_interval() const { return interval_; }
  bool trusted() const { return trusted_; }

  // Same minimal polynomial and same embedded root.
  bool same_as(const NumberField& other) const {
    if (this == &other) return true;
    if (minpoly_.coeffs() != other.minpoly_.coeffs()) return false;
    if (degree_ == 1) return true;
    const Rational lo = std::max<Rational>(interval_.lo, other.interval_.lo);
    const Rational hi = std::min<Rational>(interval_.hi, other.interval_.hi);
    return lo < hi && count_real_roots(minpoly_, lo, hi) == 1;
  }

  // alpha^k in the power basis, for 0 <= k <= 2d-2.
  const std::vector<Rational>& power_coords(std::size_t k) const { return powers_.at(k); }

  // Interval enclosures of alpha^i on the stored isolating interval.
  const std::vector<RatInterval>& power_intervals() const { return power_intervals_; }

  double approx_root() const { return to_double((interval_.lo + interval_.hi) / 2); }

  // Bisects the isolating interval in place (on a caller-owned copy).
  RatInterval bisect(const RatInterval& iv) const {
    const Rational mid = (iv.lo + iv.hi) / 2;
    const int s_mid = sgn(minpoly_(mid));
    if (s_mid == 0) return {mid, mid};
    const int s_lo = sgn(minpoly_(iv.lo));
    return s_lo != 0 && s_lo != s_mid ? RatInterval{iv.lo, mid} : RatInterval{mid, iv.hi};
  }

 private:
  NumberField(std::vector<Rational> minpoly, Rational lo, Rational hi, bool trusted)
      : minpoly_(minpoly), input_interval_{lo, hi}, interval_{lo, hi}, trusted_(trusted) {
    if (minpoly.size() < 2) throw FieldError("minimal polynomial must have degree >= 1");
    if (minpoly.back() != 1) throw FieldError("minimal polynomial must be monic");
    degree_ = minpoly.size() - 1;
    if (!(lo < hi)) throw FieldError("root interval must satisfy lo < hi");
    if (degree_ >= 2) check_irreducible(minpoly);
    if (count_real_roots(minpoly_, lo, hi) != 1)
      throw FieldError("root interval does not isolate exactly one real root");
    // For degree 1 the root may sit on an endpoint; otherwise endpoints are
    // irrational-root-free since there are no rational roots.
    if (degree_ == 1) {
      const Rational r = -minpoly[0];
      interval_ = {r, r};
    } else {
      const Rational target = Rational(1, 1) / Rational(Integer(1) << 60);
      while (interval_.hi - interval_.lo > target) interval_ = bisect(interval_);
    }
    build_powers();
  }

  void check_irreducible(const std::vector<Rational>& f) {
    if (degree_ > 4) {
      if (!trusted_) throw FieldError("degree > 4 requires the trust flag (irreducibility not checked)");
      return;
    }
    const auto g = detail::monic_integer_model(f);
    if (detail::has_integer_root(g)) throw FieldError("minimal polynomial has a rational root");
    if (degree_ == 4 && detail::has_quadratic_factor(g))
      throw FieldError("minimal polynomial has a rational quadratic factor");
  }

  void build_powers() {
    const std::size_t d = degree_;
    const auto& f = minpoly_.coeffs();
    powers_.assign(2 * d - 1, std::vector<Rational>(d));
    for (std::size_t k = 0; k < d && k < powers_.size(); ++k) powers_[k][k] = 1;
    for (std::size_t k = d; k < powers_.size(); ++k) {
      // alpha^k = alpha * alpha^(k-1); shift and fold alpha^d = -sum f_i alpha^i.
      const auto& prev = powers_[k - 1];
      std::vector<Rational> cur(d);
      for (std::size_t i = 0; i + 1 < d; ++i) cur[i + 1] = prev[i];
      const Rational top = prev[d - 1];
      for (std::size_t i = 0; i < d; ++i) cur[i] -= top * f[i];
      powers_[k] = std::move(cur);
    }
    power_intervals_.clear();
    RatInterval p{Rational(1), Rational(1)};
    for (std::size_t i = 0; i < d; ++i) {
      power_intervals_.push_back(p);
      p = p * interval_;
    }
  }

  RatPoly minpoly_;
  RatInterval input_interval_;
  RatInterval interval_;
  bool trusted_ = false;
  std::size_t degree_ = 0;
  std::vector<std::vector<Rational>> powers_;
  std::vector<RatInterval> power_intervals_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// An element sum coords[i] * alpha^i of a NumberField.
class FieldElement {
 public:
  explicit FieldElement(FieldPtr field) : field_(std::move(field)), c_(field_->degree()) {}
  FieldElement(FieldPtr field, const Rational& q) : FieldElement(std::move(field)) { c_[0] = q; }
  FieldElement(FieldPtr field, std::vector<Rational> coords) : field_(std::move(field)), c_(std::move(coords)) {
    if (c_.size() != field_->degree()) throw InputError("coordinate count does not match field degree");
  }

  // The generator alpha.
  static FieldElement generator(const FieldPtr& field) {
    FieldElement e(field);
    if (field->degree() == 1)
      e.c_[0] = field->root_interval().lo;
    else
      e.c_[1] = 1;
    return e;
  }

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  const Rational& rational_part() const { return c_[0]; }

  FieldElement operator-() const {
    FieldElement r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  FieldElement& operator+=(const FieldElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  FieldElement& operator-=(const FieldElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  FieldElement& operator+=(const Rational& q) {
    c_[0] += q;
    return *this;
  }
  FieldElement& operator-=(const Rational& q) {
    c_[0] -= q;
    return *this;
  }
  FieldElement& operator*=(const Rational& q) {
    for (auto& x : c_) x *= q;
    return *this;
  }
  FieldElement& operator*=(const FieldElement& o) {
    *this = *this * o;
    return *this;
  }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator+(FieldElement a, const Rational& q) { return a += q; }
  friend FieldElement operator-(FieldElement a, const Rational& q) { return a -= q; }
  friend FieldElement operator*(FieldElement a, const Rational& q) { return a *= q; }
  friend FieldElement operator*(const Rational& q, FieldElement a) { return a *= q; }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    const std::size_t d = a.c_.size();
    std::vector<Rational> prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.c_[i] * b.c_[j];
    }
    FieldElement r(a.field_);
    for (std::size_t k = 0; k < prod.size(); ++k) {
      if (prod[k] == 0) continue;
      const auto& pk = a.field_->power_coords(k);
      for (std::size_t i = 0; i < d; ++i)
        if (pk[i] != 0) r.c_[i] += prod[k] * pk[i];
    }
    return r;
  }

  FieldElement inverse() const {
    if (is_zero()) throw DomainError("division by zero in number field");
    const std::size_t d = c_.size();
    // Column j of the multiplication-by-this matrix is this * alpha^j.
    RatMatrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      FieldElement e(field_);
      e.c_[j] = 1;
      const FieldElement col = *this * e;
      for (std::size_t i = 0; i < d; ++i) m(i, j) = col.c_[i];
    }
    std::vector<Rational> one(d);
    one[0] = 1;
    auto sol = solve_linear(m, one);
    return FieldElement(field_, std::get<std::vector<Rational>>(std::move(sol)));
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    return a.c_ == b.c_;
  }

  // Sign under the designated real embedding.
  int sign() const {
    if (is_rational()) return sgn(c_[0]);
    const auto& pis = field_->power_intervals();
    RatInterval acc{c_[0], c_[0]};
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) acc = acc + c_[i] * pis[i];
    if (!acc.contains_zero()) return acc.lo > 0 ? 1 : -1;
    // Nonzero, so the enclosure shrinks away from zero under refinement.
    RatInterval iv = field_->root_interval();
    for (;;) {
      iv = field_->bisect(iv);
      RatInterval val{c_.back(), c_.back()};
      for (std::size_t k = c_.size() - 1; k-- > 0;) {
        val = val * iv;
        val.lo += c_[k];
        val.hi += c_[k];
      }
      if (!val.contains_zero()) return val.lo > 0 ? 1 : -1;
    }
  }

  double to_double() const {
    const double a = field_->approx_root();
    double acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * a + c_[k].get_d();
    return acc;
  }

 private:
  void check_same(const FieldElement& o) const {
    if (field_ != o.field_ && !field_->same_as(*o.field_)) throw DomainError("operands live in different number fields");
  }

  FieldPtr field_;
  std::vector<Rational> c_;
};

inline int compare(const FieldElement& a, const FieldElement& b) { return (a - b).sign(); }

inline Integer floor_of(const FieldElement& x) {
  if (x.is_rational()) return floor_of(x.rational_part());
  const auto& pis = x.field()->power_intervals();
  RatInterval acc{x.coords()[0], x.coords()[0]};
  for (std::size_t i = 1; i < x.coords().size(); ++i) acc = acc + x.coords()[i] * pis[i];
  const Integer lo = floor_of(acc.lo);
  const Integer hi = floor_of(acc.hi);
  if (lo == hi) return lo;
  // Irrational, so x never equals an integer: locate it among lo..hi.
  Integer k = hi;
  while ((x - Rational(k)).sign() < 0) --k;
  return k;
}

inline FieldElement frac_of(const FieldElement& x) { return x - Rational(floor_of(x)); }

inline int sign_of(const FieldElement& x) { return x.sign(); }
inline double to_double(const FieldElement& x) { return x.to_double(); }

// Scalar adapters so group code can be written once for Rational and
// FieldElement coordinates.
inline Rational zero_like(const Rational&) { return Rational(0); }
inline FieldElement zero_like(const FieldElement& x) { return FieldElement(x.field()); }
inline Rational rational_like(const Rational&, const Rational& q) { return q; }
inline FieldElement rational_like(const FieldElement& x, const Rational& q) { return FieldElement(x.field(), q); }
inline int compare(const Rational& a, const Rational& b) { return cmp(a, b) < 0 ? -1 : (cmp(a, b) > 0 ? 1 : 0); }

}  // namespace nilblock
