#pragma once

// Connection blockability of point pairs in H_n / Gamma_n(delta).
//
// A pair m1 = m(a1, b1, c1), m2 = m(a2, b2, c2) is blockable iff
// b1 - b2 = L (a1 - a2) + l for some rational n x n matrix L and rational
// vector l. Each row is an independent Q-span membership problem.
//
// The midpoint harness enumerates (h gamma)^(1/2) over a box of lattice
// elements and counts distinct classes in the quotient.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "nilblock/errors.hpp"
#include "nilblock/heisenberg.hpp"
#include "nilblock/matrix.hpp"
#include "nilblock/span.hpp"

namespace nilblock {

template <class T>
struct PointPair {
  LatticeSpec lattice;
  ReducedPoint<T> m1;
  ReducedPoint<T> m2;
};

// Builds a pair from arbitrary lifts by reducing both points.
template <class T>
PointPair<T> make_point_pair(const LatticeSpec& lattice, const HeisPoint<T>& g1, const HeisPoint<T>& g2) {
  return {lattice, reduce(g1, lattice).rep, reduce(g2, lattice).rep};
}

struct BlockWitness {
  RatMatrix L;
  std::vector<Rational> ell;
};

// Row `component` of b1 - b2 = L (a1 - a2) + l has no rational solution.
struct BlockCertificate {
  std::size_t component = 0;
  InconsistencyCertificate proof;
};

struct BlockVerdict {
  bool blockable = false;
  std::optional<BlockWitness> witness;
  std::optional<BlockCertificate> certificate;
};

template <class T>
ReducedPoint<T> basepoint(const T& like, const LatticeSpec& lattice) {
  const auto id = heis_identity(like, lattice.n());
  return {id.x, id.y, id.z};
}

template <class T>
bool is_basepoint(const ReducedPoint<T>& m) {
  for (const auto& v : m.a)
    if (sign_of(v) != 0) return false;
  for (const auto& v : m.b)
    if (sign_of(v) != 0) return false;
  return sign_of(m.c) == 0;
}

// Translates the pair by the inverse of m1's lift, so m1 goes to the base
// point; returns the image of m2.
template <class T>
ReducedPoint<T> normalize_to_basepoint(const PointPair<T>& pair) {
  const HeisPoint<T> h = heis_inv(pair.m1.lift());
  return reduce(heis_mul(h, pair.m2.lift()), pair.lattice).rep;
}

template <class T>
std::pair<std::vector<T>, std::vector<T>> pair_differences(const PointPair<T>& pair) {
  if (pair.m1.n() != pair.m2.n() || pair.m1.n() != pair.lattice.n())
    throw DomainError("pair dimension mismatch");
  std::vector<T> da = pair.m1.a, db = pair.m1.b;
  for (std::size_t i = 0; i < da.size(); ++i) {
    da[i] -= pair.m2.a[i];
    db[i] -= pair.m2.b[i];
  }
  return {std::move(da), std::move(db)};
}

template <class T>
BlockVerdict decide_pair(const PointPair<T>& pair) {
  auto [da, db] = pair_differences(pair);
  const std::size_t n = da.size();
  const auto rows = solve_rational_span(db, da);
  BlockVerdict v;
  BlockWitness w{RatMatrix(n, n), std::vector<Rational>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (const auto* cert = std::get_if<InconsistencyCertificate>(&rows[i])) {
      v.blockable = false;
      v.certificate = BlockCertificate{i, *cert};
      return v;
    }
    const auto& sw = std::get<SpanWitness>(rows[i]);
    for (std::size_t j = 0; j < n; ++j) w.L(i, j) = sw.coeffs[j];
    w.ell[i] = sw.constant;
  }
  v.blockable = true;
  v.witness = std::move(w);
  return v;
}

// Every point is blockable away from itself: zero differences, L = 0, l = 0.
template <class T>
BlockVerdict decide_self(const LatticeSpec& lattice, const ReducedPoint<T>& m) {
  return decide_pair(PointPair<T>{lattice, m, m});
}

// Exact re-substitution of a verdict against the pair.
template <class T>
bool verdict_holds(const PointPair<T>& pair, const BlockVerdict& v) {
  auto [da, db] = pair_differences(pair);
  const std::size_t n = da.size();
  if (v.blockable) {
    if (!v.witness || v.witness->L.rows() != n || v.witness->L.cols() != n || v.witness->ell.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i) {
      T acc = rational_like(db[i], v.witness->ell[i]);
      for (std::size_t j = 0; j < n; ++j) acc += da[j] * v.witness->L(i, j);
      if (!(acc == db[i])) return false;
    }
    return true;
  }
  if (!v.certificate || v.certificate->component >= n) return false;
  return certificate_holds(db[v.certificate->component], da, v.certificate->proof);
}

// Enumeration limits. The box has (2N+1)^(2n+1) lattice elements.
struct WindowCaps {
  int max_window_n1 = 16;
  int max_window_n2 = 6;
  std::size_t max_points = 2'000'000;
};

inline void check_window(std::size_t n, int window, const WindowCaps& caps) {
  if (window < 1) throw DomainError("window radius must be >= 1");
  if (n == 1 && window > caps.max_window_n1) throw LimitError("window exceeds the cap for n = 1");
  if (n == 2 && window > caps.max_window_n2) throw LimitError("window exceeds the cap for n = 2");
  double count = 1;
  for (std::size_t i = 0; i < 2 * n + 1; ++i) count *= 2.0 * window + 1;
  if (count > static_cast<double>(caps.max_points)) throw LimitError("window enumeration exceeds the point cap");
}

template <class T>
struct MidpointReport {
  std::vector<int> windows;               // 1..N
  std::vector<std::size_t> class_counts;  // distinct classes within radius windows[k]
  bool saturated = false;
  std::vector<ReducedPoint<T>> classes;   // all classes of the full window, value order
};

namespace detail {

template <class T>
struct StructuralLess {
  bool operator()(const ReducedPoint<T>& u, const ReducedPoint<T>& v) const { return structural_less(u, v); }
};

template <class T>
using ClassRadii = std::map<ReducedPoint<T>, int, StructuralLess<T>>;

// Visits every (p, q, r) with max-norm <= window. The first coordinate is
// split across workers; each worker keeps the minimal radius per class.
template <class T>
ClassRadii<T> collect_classes(std::size_t n, int window, unsigned workers,
                              const std::function<ReducedPoint<T>(const LatticeElement&)>& image) {
  const std::size_t dims = 2 * n + 1;
  const int span = 2 * window + 1;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(span)));
  std::vector<ClassRadii<T>> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned w) {
    try {
      std::vector<int> idx(dims, -window);
      for (int first = -window + static_cast<int>(w); first <= window; first += static_cast<int>(workers)) {
        std::fill(idx.begin(), idx.end(), -window);
        idx[0] = first;
        for (;;) {
          LatticeElement g{std::vector<Integer>(n), std::vector<Integer>(n), Integer(idx[2 * n])};
          int radius = 0;
          for (std::size_t i = 0; i < n; ++i) {
            g.p[i] = idx[i];
            g.q[i] = idx[n + i];
          }
          for (int v : idx) radius = std::max(radius, v < 0 ? -v : v);
          auto cls = image(g);
          auto [it, inserted] = partial[w].emplace(std::move(cls), radius);
          if (!inserted) it->second = std::min(it->second, radius);
          std::size_t k = dims - 1;
          while (k > 0 && idx[k] == window) idx[k--] = -window;
          if (k == 0) break;
          ++idx[k];
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  ClassRadii<T> merged = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w)
    for (auto& [cls, r] : partial[w]) {
      auto [it, inserted] = merged.emplace(cls, r);
      if (!inserted) it->second = std::min(it->second, r);
    }
  return merged;
}

template <class T>
MidpointReport<T> summarize(const ClassRadii<T>& radii, int window) {
  MidpointReport<T> rep;
  std::vector<std::size_t> first_seen(static_cast<std::size_t>(window) + 1, 0);
  for (const auto& [cls, r] : radii) ++first_seen[static_cast<std::size_t>(r)];
  std::size_t running = first_seen[0];
  for (int r = 1; r <= window; ++r) {
    running += first_seen[static_cast<std::size_t>(r)];
    rep.windows.push_back(r);
    rep.class_counts.push_back(running);
  }
  // Last ceil(N / 4) radii agree; at least two, so one radius alone is
  // never read as saturation.
  const int tail = std::max(2, (window + 3) / 4);
  rep.saturated = window >= 2;
  for (int k = std::max(1, window - tail + 1); k < window; ++k)
    if (rep.class_counts[static_cast<std::size_t>(k)] != rep.class_counts[static_cast<std::size_t>(k - 1)])
      rep.saturated = false;
  for (const auto& [cls, r] : radii) rep.classes.push_back(cls);
  std::sort(rep.classes.begin(), rep.classes.end(), value_less<T>);
  return rep;
}

}  // namespace detail

// Midpoint classes reduce((h gamma)^(1/2)) for m = m(a, b, c), h = h(a, b, c)
// and gamma over the window. Requires the pair normalized so m1 = m0.
template <class T>
MidpointReport<T> enumerate_midpoints(const PointPair<T>& pair, int window, const WindowCaps& caps = {},
                                      unsigned workers = 1) {
  if (!is_basepoint(pair.m1)) throw DomainError("enumerate_midpoints expects m1 at the base point; normalize first");
  const std::size_t n = pair.lattice.n();
  check_window(n, window, caps);
  const HeisPoint<T> h = pair.m2.lift();
  const Rational half(1, 2);
  const auto& lattice = pair.lattice;
  std::function<ReducedPoint<T>(const LatticeElement&)> image = [&](const LatticeElement& g) {
    return reduce(heis_pow(heis_mul(h, embed(g, lattice, h.z)), half), lattice).rep;
  };
  return detail::summarize(detail::collect_classes<T>(n, window, workers, image), window);
}

template <class T>
MidpointReport<T> sqrt_lattice_report(const LatticeSpec& lattice, int window, const T& like,
                                      const WindowCaps& caps = {}, unsigned workers = 1) {
  lattice.validate();
  const std::size_t n = lattice.n();
  check_window(n, window, caps);
  const Rational half(1, 2);
  std::function<ReducedPoint<T>(const LatticeElement&)> image = [&](const LatticeElement& g) {
    return reduce(heis_pow(embed(g, lattice, like), half), lattice).rep;
  };
  return detail::summarize(detail::collect_classes<T>(n, window, workers, image), window);
}

// Classes reduce(gamma^(1/2)) for gamma in the window: the square root of
// the lattice, modulo the lattice.
template <class T>
std::vector<ReducedPoint<T>> sqrt_lattice_classes(const LatticeSpec& lattice, int window, const T& like,
                                                  const WindowCaps& caps = {}, unsigned workers = 1) {
  return sqrt_lattice_report(lattice, window, like, caps, workers).classes;
}

// Uniform random draw of pairs with coordinates sum_k u_k alpha^k, u_k
// rational with small height; returns the fraction of non-blockable pairs.
// A sampling counterpart of "almost every pair is non-blockable".
template <class Rng>
double estimate_nonblockable_fraction(const FieldPtr& field, std::size_t n, std::size_t samples, Rng& rng) {
  auto draw = [&]() {
    std::vector<Rational> c(field->degree());
    for (auto& v : c) v = make_rational(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 12) + 1);
    return FieldElement(field, std::move(c));
  };
  const LatticeSpec lattice = LatticeSpec::standard(n);
  std::size_t nonblockable = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    HeisPoint<FieldElement> g1{{}, {}, draw()}, g2{{}, {}, draw()};
    for (std::size_t i = 0; i < n; ++i) {
      g1.x.push_back(draw());
      g1.y.push_back(draw());
      g2.x.push_back(draw());
      g2.y.push_back(draw());
    }
    if (!decide_pair(make_point_pair(lattice, g1, g2)).blockable) ++nonblockable;
  }
  return samples ? static_cast<double>(nonblockable) / static_cast<double>(samples) : 0.0;
}

}  // namespace nilblock
