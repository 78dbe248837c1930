#pragma once

// Flat tori R^n / Z^n. Connecting curves from p to q are the segments
// t -> p + t (q - p + k), k in Z^n; their midpoints (p + q + k) / 2 depend
// only on k mod 2, so at most 2^n points block every pair.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "nilblock/blockability.hpp"
#include "nilblock/errors.hpp"
#include "nilblock/rational.hpp"

namespace nilblock {

class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(std::vector<Rational> coords) : c_(std::move(coords)) {
    for (auto& v : c_) v = frac_of(v);
  }

  std::size_t n() const { return c_.size(); }
  const std::vector<Rational>& coords() const { return c_; }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
  friend bool operator<(const TorusPoint& a, const TorusPoint& b) { return a.c_ < b.c_; }

 private:
  std::vector<Rational> c_;
};

struct TorusBlockSet {
  std::vector<TorusPoint> points;  // sorted, excludes p and q
  bool degenerate = false;         // some midpoint coincided with p or q
  // Points hit at t = 1/4 by the geodesics whose midpoint was dropped.
  std::vector<TorusPoint> quarter_points;
};

inline TorusBlockSet torus_block_set(const TorusPoint& p, const TorusPoint& q) {
  const std::size_t n = p.n();
  if (n == 0 || q.n() != n) throw DomainError("torus points must share a positive dimension");
  if (n > 20) throw LimitError("torus dimension too large for 2^n enumeration");
  TorusBlockSet out;
  const Rational half(1, 2);
  for (std::uint32_t eps = 0; eps < (1u << n); ++eps) {
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = (p.coords()[i] + q.coords()[i]) * half;
      if (eps >> i & 1u) c[i] += half;
    }
    TorusPoint m(std::move(c));
    if (m == p || m == q) {
      out.degenerate = true;
      // Geodesics with k = eps (mod 2) and midpoint p: at t = 1/4 they sit
      // at p + (q - p + k) / 4.
      for (std::uint32_t k = 0; k < (1u << n); ++k) {
        std::vector<Rational> qp(n);
        for (std::size_t i = 0; i < n; ++i) {
          const Rational ki = Rational(2 * static_cast<long>((k >> i) & 1u) + static_cast<long>((eps >> i) & 1u));
          qp[i] = p.coords()[i] + (q.coords()[i] - p.coords()[i] + ki) / 4;
        }
        TorusPoint t(std::move(qp));
        if (!(t == p) && !(t == q)) out.quarter_points.push_back(std::move(t));
      }
      continue;
    }
    out.points.push_back(std::move(m));
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  std::sort(out.quarter_points.begin(), out.quarter_points.end());
  out.quarter_points.erase(std::unique(out.quarter_points.begin(), out.quarter_points.end()), out.quarter_points.end());
  return out;
}

namespace detail {

// Scaled integer model: all coordinates times a common denominator L.
template <class Int>
struct TorusScaled {
  Int L;
  std::vector<Int> p, q;
  std::vector<std::vector<Int>> blockers;
};

template <class Int>
Int to_int(const Integer& z) {
  if constexpr (std::is_same_v<Int, Integer>) {
    return z;
  } else {
    return static_cast<Int>(z.get_si());
  }
}

template <class Int>
Int floor_mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

// Does the segment P + t V, t in (0, 1), pass through B modulo L?
template <class Int>
bool segment_hits(const std::vector<Int>& P, const std::vector<Int>& V, const std::vector<Int>& B, const Int& L) {
  const std::size_t n = P.size();
  std::vector<Int> D(n);
  for (std::size_t i = 0; i < n; ++i) D[i] = floor_mod<Int>(B[i] - P[i], L);
  // Pick the nonzero direction component of least magnitude to enumerate t.
  std::optional<std::size_t> j;
  for (std::size_t i = 0; i < n; ++i) {
    if (V[i] == 0) {
      if (D[i] != 0) return false;
      continue;
    }
    const Int ai = V[i] < 0 ? Int(-V[i]) : V[i];
    if (!j || ai < (V[*j] < 0 ? Int(-V[*j]) : V[*j])) j = i;
  }
  if (!j) return false;
  const Int vj = V[*j];
  const Int avj = vj < 0 ? Int(-vj) : vj;
  // t = u / |vj| with t * vj = D_j (mod L) and 0 < u < |vj|.
  const Int start = vj > 0 ? D[*j] : floor_mod<Int>(Int(-D[*j]), L);
  const Int mod = L * avj;
  for (Int u = start; u < avj; u += L) {
    if (u == 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (i == *j || V[i] == 0) continue;
      // u * V_i / |vj| - D_i must be a multiple of L.
      ok = floor_mod<Int>(Int(u * V[i] - D[i] * avj), mod) == 0;
    }
    if (ok) return true;
  }
  return false;
}

template <class Int>
bool torus_verify_scaled(const TorusScaled<Int>& s, int K) {
  const std::size_t n = s.p.size();
  const Int twoL = s.L * 2;
  std::vector<std::vector<Int>> mids;  // 2B mod 2L
  for (const auto& b : s.blockers) {
    std::vector<Int> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = floor_mod<Int>(b[i] * 2, twoL);
    mids.push_back(std::move(m));
  }
  std::vector<int> k(n, -K);
  std::vector<Int> V(n), M(n);
  for (;;) {
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      V[i] = s.q[i] - s.p[i] + s.L * Int(k[i]);
      if (V[i] != 0) zero = false;
    }
    if (!zero) {
      // Fast path: the midpoint itself is a blocker.
      bool hit = false;
      for (std::size_t i = 0; i < n; ++i) M[i] = floor_mod<Int>(s.p[i] * 2 + V[i], twoL);
      for (const auto& m : mids)
        if (m == M) {
          hit = true;
          break;
        }
      for (std::size_t b = 0; !hit && b < s.blockers.size(); ++b) hit = segment_hits(s.p, V, s.blockers[b], s.L);
      if (!hit) return false;
    }
    std::size_t i = n;
    while (i > 0 && k[i - 1] == K) k[--i] = -K;
    if (i == 0) break;
    ++k[i - 1];
  }
  return true;
}

template <class Int>
TorusScaled<Int> scale(const TorusPoint& p, const TorusPoint& q, const std::vector<TorusPoint>& blockers, const Integer& L) {
  auto conv = [&](const TorusPoint& t) {
    std::vector<Int> v;
    for (const auto& c : t.coords()) v.push_back(to_int<Int>(c.get_num() * (L / c.get_den())));
    return v;
  };
  TorusScaled<Int> s{to_int<Int>(L), conv(p), conv(q), {}};
  for (const auto& b : blockers) s.blockers.push_back(conv(b));
  return s;
}

}  // namespace detail

// Exhaustive check over |k|_inf <= K that every segment from p to q + k
// (excluding the constant curve) meets B at some t in (0, 1). Exact.
inline bool torus_verify(const TorusPoint& p, const TorusPoint& q, const std::vector<TorusPoint>& blockers, int K) {
  const std::size_t n = p.n();
  if (K < 1) throw DomainError("verification radius K must be >= 1");
  if (n == 0 || q.n() != n) throw DomainError("torus points must share a positive dimension");
  for (const auto& b : blockers)
    if (b.n() != n) throw DomainError("blocker dimension mismatch");
  for (const auto& b : blockers)
    if (b == p || b == q) return false;  // blocking sets live off {p, q}
  Integer L = 1;
  auto acc = [&](const TorusPoint& t) {
    for (const auto& c : t.coords()) L = lcm_of(L, c.get_den());
  };
  acc(p);
  acc(q);
  for (const auto& b : blockers) acc(b);
  // Products in segment_hits reach about 4 (K + 2)^2 L^2.
  const Integer worst = Integer(4) * (K + 2) * (K + 2) * L * L;
  if (worst < Integer(1) << 62) return detail::torus_verify_scaled(detail::scale<long long>(p, q, blockers, L), K);
  return detail::torus_verify_scaled(detail::scale<Integer>(p, q, blockers, L), K);
}

// Blockable product of two factors: blockable iff both are; witnesses are
// stacked block-diagonally, certificates re-indexed into the product.
inline BlockVerdict product_blockable(const BlockVerdict& v1, const BlockVerdict& v2) {
  BlockVerdict out;
  out.blockable = v1.blockable && v2.blockable;
  const std::size_t n1 = v1.witness ? v1.witness->ell.size() : 0;
  if (out.blockable) {
    const std::size_t n2 = v2.witness ? v2.witness->ell.size() : 0;
    BlockWitness w{RatMatrix(n1 + n2, n1 + n2), std::vector<Rational>(n1 + n2)};
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n1; ++j) w.L(i, j) = v1.witness->L(i, j);
      w.ell[i] = v1.witness->ell[i];
    }
    for (std::size_t i = 0; i < n2; ++i) {
      for (std::size_t j = 0; j < n2; ++j) w.L(n1 + i, n1 + j) = v2.witness->L(i, j);
      w.ell[n1 + i] = v2.witness->ell[i];
    }
    out.witness = std::move(w);
    return out;
  }
  if (!v1.blockable) {
    out.certificate = v1.certificate;
  } else {
    out.certificate = v2.certificate;
    if (out.certificate) out.certificate->component += n1;
  }
  return out;
}

// Every pair on a flat torus is blockable; the torus factor carries no
// Heisenberg coordinates, hence an empty witness.
inline BlockVerdict torus_verdict() {
  BlockVerdict v;
  v.blockable = true;
  v.witness = BlockWitness{RatMatrix(0, 0), {}};
  return v;
}

}  // namespace nilblock
