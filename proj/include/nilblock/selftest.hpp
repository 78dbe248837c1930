#pragma once

// Seeded invariant suites. The report is a pure function of the config:
// no timings, no addresses, no thread-dependent ordering.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nilblock/blockability.hpp"
#include "nilblock/heisenberg.hpp"
#include "nilblock/matrix.hpp"
#include "nilblock/rational.hpp"
#include "nilblock/sl2.hpp"
#include "nilblock/torus.hpp"

namespace nilblock {

struct SelftestConfig {
  std::uint64_t seed = 20240601;
  std::size_t cases = 200;  // per suite
  double tolerance = 1e-9;  // only the floating cross-checks use it
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

struct SelftestReport {
  SelftestConfig config;
  std::vector<SuiteResult> suites;

  bool passed() const {
    for (const auto& s : suites)
      if (!s.passed()) return false;
    return true;
  }

  std::string text() const {
    std::ostringstream os;
    os << "seed=" << config.seed << " cases=" << config.cases << " tolerance=" << config.tolerance << '\n';
    for (const auto& s : suites) {
      os << (s.passed() ? "PASS " : "FAIL ") << s.name << " cases=" << s.cases << " failures=" << s.failures.size()
         << '\n';
      for (const auto& f : s.failures) os << "  " << f << '\n';
    }
    os << (passed() ? "all suites passed" : "some suites failed") << '\n';
    return os.str();
  }
};

namespace detail {

// Small-height rationals from raw 64-bit draws, so the stream depends only
// on the engine, never on library distribution internals.
class RationalSource {
 public:
  explicit RationalSource(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Rational rational(long bound) { return make_rational(integer(-bound, bound), integer(1, bound)); }
  HeisPoint<Rational> point(std::size_t n, long bound) {
    HeisPoint<Rational> g{{}, {}, rational(bound)};
    for (std::size_t i = 0; i < n; ++i) {
      g.x.push_back(rational(bound));
      g.y.push_back(rational(bound));
    }
    return g;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Unipotent (n+2) x (n+2) matrix [[1, x, z], [0, I, y], [0, 0, 1]].
inline RatMatrix heis_matrix(const HeisPoint<Rational>& g) {
  const std::size_t n = g.n();
  RatMatrix m = RatMatrix::identity(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    m(0, 1 + i) = g.x[i];
    m(1 + i, n + 1) = g.y[i];
  }
  m(0, n + 1) = g.z;
  return m;
}

inline std::string describe(const HeisPoint<Rational>& g) {
  std::ostringstream os;
  os << "x=[";
  for (std::size_t i = 0; i < g.n(); ++i) os << (i ? "," : "") << to_string(g.x[i]);
  os << "] y=[";
  for (std::size_t i = 0; i < g.n(); ++i) os << (i ? "," : "") << to_string(g.y[i]);
  os << "] z=" << to_string(g.z);
  return os.str();
}

inline void record(SuiteResult& r, bool ok, const std::function<std::string()>& what) {
  ++r.cases;
  if (!ok && r.failures.size() < 10) r.failures.push_back(what());
}

inline SuiteResult suite_group_law(RationalSource& src, std::size_t cases) {
  SuiteResult r{"group_law_matrix_oracle", 0, {}};
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t n = 1 + k % 2;
    const auto g = src.point(n, 100), h = src.point(n, 100);
    const bool ok = heis_matrix(heis_mul(g, h)) == heis_matrix(g) * heis_matrix(h) &&
                    heis_matrix(heis_inv(g)) * heis_matrix(g) == RatMatrix::identity(n + 2);
    record(r, ok, [&] { return "g: " + describe(g) + " h: " + describe(h); });
  }
  return r;
}

inline SuiteResult suite_power_law(RationalSource& src, std::size_t cases) {
  SuiteResult r{"power_law", 0, {}};
  const Rational half(1, 2);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto g = src.point(1 + k % 2, 100);
    const Rational s = src.rational(20), t = src.rational(20);
    const auto root = heis_pow(g, half);
    const bool ok = heis_pow(g, s + t) == heis_mul(heis_pow(g, s), heis_pow(g, t)) && heis_mul(root, root) == g &&
                    heis_exp(heis_log(g)) == g;
    record(r, ok, [&] { return "g: " + describe(g) + " s=" + to_string(s) + " t=" + to_string(t); });
  }
  return r;
}

inline SuiteResult suite_reduction(RationalSource& src, std::size_t cases) {
  SuiteResult r{"reduction_fundamental_domain", 0, {}};
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t n = 1 + k % 2;
    LatticeSpec lattice{std::vector<long>(n)};
    for (auto& d : lattice.delta) d = src.integer(1, 3);
    const auto g = src.point(n, 100);
    const auto red = reduce(g, lattice);
    bool ok = heis_mul(red.rep.lift(), embed(red.gamma, lattice, g.z)) == g;
    for (std::size_t i = 0; i < n && ok; ++i)
      ok = red.rep.a[i] >= 0 && red.rep.a[i] < lattice.delta[i] && red.rep.b[i] >= 0 && red.rep.b[i] < 1;
    ok = ok && red.rep.c >= 0 && red.rep.c < 1;
    record(r, ok, [&] { return "g: " + describe(g); });
  }
  return r;
}

inline SuiteResult suite_verdict_invariance(RationalSource& src, std::size_t cases) {
  SuiteResult r{"verdict_translation_invariance", 0, {}};
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t n = 1 + k % 2;
    const LatticeSpec lattice = LatticeSpec::standard(n);
    const auto g1 = src.point(n, 30), g2 = src.point(n, 30), t = src.point(n, 30);
    const auto pair = make_point_pair(lattice, g1, g2);
    const auto moved = make_point_pair(lattice, heis_mul(t, g1), heis_mul(t, g2));
    const auto v = decide_pair(pair), w = decide_pair(moved);
    // Rational points are always blockable; the translate must agree.
    const bool ok = v.blockable && w.blockable && verdict_holds(pair, v) && verdict_holds(moved, w);
    record(r, ok, [&] { return "g1: " + describe(g1) + " g2: " + describe(g2); });
  }
  return r;
}

inline SuiteResult suite_torus(RationalSource& src, std::size_t cases) {
  SuiteResult r{"torus_midpoint_blocking", 0, {}};
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t n = 1 + k % 3;
    std::vector<Rational> pc(n), qc(n);
    for (std::size_t i = 0; i < n; ++i) {
      pc[i] = src.rational(12);
      qc[i] = src.rational(12);
    }
    const TorusPoint p(pc), q(qc);
    if (p == q) {
      --k;
      continue;
    }
    const auto set = torus_block_set(p, q);
    const bool ok = !set.degenerate && set.points.size() == (std::size_t{1} << n) && torus_verify(p, q, set.points, 6);
    record(r, ok, [&] {
      std::string s = "p=[";
      for (const auto& c : p.coords()) s += to_string(c) + " ";
      return s + "]";
    });
  }
  return r;
}

inline SuiteResult suite_sl2(RationalSource& src, std::size_t cases, double tolerance) {
  SuiteResult r{"sl2_square_roots", 0, {}};
  while (r.cases < cases) {
    // g = [[a, b], [c, (1 + b c) / a]] with a, c nonzero.
    const Rational a = src.rational(9), b = src.rational(9), c = src.rational(9);
    if (a == 0 || c == 0) continue;
    const Mat2Q g{a, b, c, Rational((1 + b * c) / a)};
    const Rational tau = g.trace() + 2;
    const auto res = sl2_sqrt(g);
    bool ok = true;
    std::string detail;
    if (tau <= 0) {
      ok = res.roots.empty() && !res.family;
    } else {
      ok = res.roots.size() == 2;
      for (const auto& x : res.roots) {
        ok = ok && (x * x).equals(g);
        // Floating cross-check of X^2 = g.
        const double xa = x.a().to_double(), xb = x.b().to_double(), xc = x.c().to_double(), xd = x.d().to_double();
        const double e[4] = {xa * xa + xb * xc - g.a.get_d(), xa * xb + xb * xd - g.b.get_d(),
                             xc * xa + xd * xc - g.c.get_d(), xc * xb + xd * xd - g.d.get_d()};
        const double scale = 1.0 + std::fabs(g.a.get_d()) + std::fabs(g.b.get_d()) + std::fabs(g.c.get_d()) +
                             std::fabs(g.d.get_d());
        for (double v : e)
          if (!(std::fabs(v) <= tolerance * scale)) {
            ok = false;
            std::ostringstream os;
            os << "float residual " << std::fabs(v) << " above tolerance";
            detail = os.str();
          }
      }
    }
    record(r, ok, [&] {
      return "g=[[" + to_string(g.a) + "," + to_string(g.b) + "],[" + to_string(g.c) + "," + to_string(g.d) + "]] " +
             detail;
    });
  }
  return r;
}

}  // namespace detail

inline SelftestReport run_selftest(const SelftestConfig& config) {
  SelftestReport rep{config, {}};
  // Each suite gets its own stream so adding a suite never shifts the others.
  auto stream = [&](std::uint64_t k) { return detail::RationalSource(config.seed * 0x9E3779B97F4A7C15ULL + k); };
  auto s1 = stream(1), s2 = stream(2), s3 = stream(3), s4 = stream(4), s5 = stream(5), s6 = stream(6);
  rep.suites.push_back(detail::suite_group_law(s1, config.cases));
  rep.suites.push_back(detail::suite_power_law(s2, config.cases));
  rep.suites.push_back(detail::suite_reduction(s3, config.cases));
  rep.suites.push_back(detail::suite_verdict_invariance(s4, config.cases));
  rep.suites.push_back(detail::suite_torus(s5, config.cases));
  rep.suites.push_back(detail::suite_sl2(s6, config.cases, config.tolerance));
  return rep;
}

}  // namespace nilblock
