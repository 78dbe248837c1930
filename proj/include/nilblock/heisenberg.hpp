#pragma once

// Heisenberg groups H_n in Malcev coordinates h_n(x, y, z) and their
// lattices Gamma_n(delta) = { h_n(delta p, q, r) : p, q in Z^n, r in Z }.
//
// Product:  h(x, y, z) h(x', y', z') = h(x + x', y + y', z + z' + <x, y'>)
//
// Everything is templated on the coordinate scalar so the same code runs on
// plain rationals and on number-field elements.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nilblock/errors.hpp"
#include "nilblock/number_field.hpp"
#include "nilblock/rational.hpp"

namespace nilblock {

template <class T>
struct HeisPoint {
  std::vector<T> x;  // row vector
  std::vector<T> y;  // column vector
  T z;

  std::size_t n() const { return x.size(); }

  friend bool operator==(const HeisPoint&, const HeisPoint&) = default;
};

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw DomainError("dot product dimension mismatch");
  if (a.empty()) throw DomainError("empty dot product");
  T s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
HeisPoint<T> heis_identity(const T& like, std::size_t n) {
  if (n == 0) throw DomainError("Heisenberg dimension must be >= 1");
  const T zero = zero_like(like);
  return {std::vector<T>(n, zero), std::vector<T>(n, zero), zero};
}

template <class T>
void check_point(const HeisPoint<T>& g) {
  if (g.x.empty() || g.x.size() != g.y.size()) throw DomainError("malformed Heisenberg point");
}

template <class T>
HeisPoint<T> heis_mul(const HeisPoint<T>& g, const HeisPoint<T>& h) {
  check_point(g);
  check_point(h);
  if (g.n() != h.n()) throw DomainError("Heisenberg dimension mismatch");
  HeisPoint<T> r = g;
  for (std::size_t i = 0; i < g.n(); ++i) {
    r.x[i] += h.x[i];
    r.y[i] += h.y[i];
  }
  r.z += h.z;
  r.z += dot(g.x, h.y);
  return r;
}

template <class T>
HeisPoint<T> heis_inv(const HeisPoint<T>& g) {
  check_point(g);
  HeisPoint<T> r = g;
  for (std::size_t i = 0; i < g.n(); ++i) {
    r.x[i] = -g.x[i];
    r.y[i] = -g.y[i];
  }
  r.z = dot(g.x, g.y);
  r.z -= g.z;
  return r;
}

// g^t = h(t x, t y, t z + t(t-1)/2 <x, y>), the one-parameter subgroup
// through g evaluated at t.
template <class T>
HeisPoint<T> heis_pow(const HeisPoint<T>& g, const Rational& t) {
  check_point(g);
  HeisPoint<T> r = g;
  for (std::size_t i = 0; i < g.n(); ++i) {
    r.x[i] *= t;
    r.y[i] *= t;
  }
  const Rational half_tt1 = t * (t - 1) / 2;
  r.z *= t;
  r.z += dot(g.x, g.y) * half_tt1;
  return r;
}

// Exponential coordinates: g = exp(X e_x + Y e_y + Z e_z) in the Lie algebra
// basis with [e_x_i, e_y_i] = e_z.
template <class T>
struct ExpCoords {
  std::vector<T> x;
  std::vector<T> y;
  T z;

  friend bool operator==(const ExpCoords&, const ExpCoords&) = default;
};

template <class T>
ExpCoords<T> heis_log(const HeisPoint<T>& g) {
  check_point(g);
  T z = g.z;
  z -= dot(g.x, g.y) * Rational(1, 2);
  return {g.x, g.y, std::move(z)};
}

template <class T>
HeisPoint<T> heis_exp(const ExpCoords<T>& v) {
  if (v.x.empty() || v.x.size() != v.y.size()) throw DomainError("malformed exponential coordinates");
  T z = v.z;
  z += dot(v.x, v.y) * Rational(1, 2);
  return {v.x, v.y, std::move(z)};
}

// Gamma_n(delta), delta_i >= 1.
struct LatticeSpec {
  std::vector<long> delta;

  static LatticeSpec standard(std::size_t n) { return {std::vector<long>(n, 1)}; }

  std::size_t n() const { return delta.size(); }

  void validate() const {
    if (delta.empty()) throw InputError("lattice dimension must be >= 1");
    for (long d : delta)
      if (d < 1) throw InputError("lattice scales delta_i must be positive integers");
  }

  bool is_standard() const {
    for (long d : delta)
      if (d != 1) return false;
    return true;
  }

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

// h(delta p, q, r).
struct LatticeElement {
  std::vector<Integer> p;
  std::vector<Integer> q;
  Integer r;

  friend bool operator==(const LatticeElement&, const LatticeElement&) = default;
};

template <class T>
HeisPoint<T> embed(const LatticeElement& g, const LatticeSpec& lattice, const T& like) {
  const std::size_t n = lattice.n();
  if (g.p.size() != n || g.q.size() != n) throw DomainError("lattice element dimension mismatch");
  HeisPoint<T> h = heis_identity(like, n);
  for (std::size_t i = 0; i < n; ++i) {
    h.x[i] = rational_like(like, Rational(Integer(g.p[i] * lattice.delta[i])));
    h.y[i] = rational_like(like, Rational(g.q[i]));
  }
  h.z = rational_like(like, Rational(g.r));
  return h;
}

// Point m^(delta)(a, b, c) of H_n / Gamma_n(delta), 0 <= a_i < delta_i,
// 0 <= b_i, c < 1.
template <class T>
struct ReducedPoint {
  std::vector<T> a;
  std::vector<T> b;
  T c;

  std::size_t n() const { return a.size(); }
  HeisPoint<T> lift() const { return {a, b, c}; }

  friend bool operator==(const ReducedPoint&, const ReducedPoint&) = default;
};

template <class T>
struct Reduction {
  ReducedPoint<T> rep;
  LatticeElement gamma;
};

// Unique decomposition g = h(a, b, c) * h(delta p, q, r) with (a, b, c) in
// the half-open fundamental box. Solved right to left: q from y, p from x,
// then r from z - <a, q>.
template <class T>
Reduction<T> reduce(const HeisPoint<T>& g, const LatticeSpec& lattice) {
  check_point(g);
  lattice.validate();
  const std::size_t n = g.n();
  if (lattice.n() != n) throw DomainError("lattice dimension does not match point");
  Reduction<T> out{{g.x, g.y, g.z}, {std::vector<Integer>(n), std::vector<Integer>(n), Integer(0)}};
  auto& rep = out.rep;
  auto& gam = out.gamma;
  for (std::size_t i = 0; i < n; ++i) {
    gam.q[i] = floor_of(rep.b[i]);
    rep.b[i] -= Rational(gam.q[i]);
    const Rational di(lattice.delta[i]);
    T scaled = rep.a[i];
    scaled *= Rational(Rational(1) / di);
    gam.p[i] = floor_of(scaled);
    rep.a[i] -= Rational(Rational(gam.p[i]) * di);
  }
  T corr = rep.c;
  for (std::size_t i = 0; i < n; ++i) corr -= rep.a[i] * Rational(gam.q[i]);
  gam.r = floor_of(corr);
  corr -= Rational(gam.r);
  rep.c = std::move(corr);
  return out;
}

template <class T>
struct Projections {
  std::vector<T> x;  // x mod delta
  std::vector<T> y;  // y mod 1
  T z;               // z mod 1
};

template <class T>
Projections<T> project_xyz(const HeisPoint<T>& g, const LatticeSpec& lattice) {
  check_point(g);
  lattice.validate();
  if (lattice.n() != g.n()) throw DomainError("lattice dimension does not match point");
  Projections<T> out{g.x, g.y, g.z};
  for (std::size_t i = 0; i < g.n(); ++i) {
    const Rational di(lattice.delta[i]);
    T scaled = out.x[i];
    scaled *= Rational(Rational(1) / di);
    out.x[i] -= Rational(Rational(floor_of(scaled)) * di);
    out.y[i] -= Rational(floor_of(out.y[i]));
  }
  out.z -= Rational(floor_of(out.z));
  return out;
}

// Left action of g on a point of the quotient.
template <class T>
ReducedPoint<T> act(const HeisPoint<T>& g, const ReducedPoint<T>& m, const LatticeSpec& lattice) {
  return reduce(heis_mul(g, m.lift()), lattice).rep;
}

// Orders by exact coordinates; a deterministic total order for dedup, not
// the real ordering.
inline bool structural_less(const Rational& a, const Rational& b) { return a < b; }
inline bool structural_less(const FieldElement& a, const FieldElement& b) { return a.coords() < b.coords(); }

template <class T>
bool structural_less(const ReducedPoint<T>& u, const ReducedPoint<T>& v) {
  auto lex = [](const std::vector<T>& s, const std::vector<T>& t) -> int {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (structural_less(s[i], t[i])) return -1;
      if (structural_less(t[i], s[i])) return 1;
    }
    return 0;
  };
  if (int c = lex(u.a, v.a)) return c < 0;
  if (int c = lex(u.b, v.b)) return c < 0;
  return structural_less(u.c, v.c);
}

// Lexicographic order of real values (a, b, c).
template <class T>
bool value_less(const ReducedPoint<T>& u, const ReducedPoint<T>& v) {
  auto lex = [](const std::vector<T>& s, const std::vector<T>& t) -> int {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (int c = compare(s[i], t[i])) return c;
    return 0;
  };
  if (int c = lex(u.a, v.a)) return c < 0;
  if (int c = lex(u.b, v.b)) return c < 0;
  return compare(u.c, v.c) < 0;
}

}  // namespace nilblock
