#pragma once

// Exact integers and rationals backed by GMP. mpq_class keeps every value
// canonical (reduced, positive denominator), so equality is structural.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nilblock/errors.hpp"

namespace nilblock {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "n", "-n", "n/d" with optional sign on the numerator only.
inline Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    return (!s.empty() && s[0] == '+') ? s.substr(1) : s;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw InputError("malformed rational literal '" + std::string(text) + "'");
  Integer n(std::string(strip_plus(num)), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw InputError("rational literal with zero denominator '" + std::string(text) + "'");
  return make_rational(n, d);
}

// Always "num/den", including "/1" for integers.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Rational frac_of(const Rational& q) { return q - Rational(floor_of(q)); }

inline int sign_of(const Rational& q) { return sgn(q); }

inline Integer lcm_of(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Trial division bound shared by every factorization in the library.
inline constexpr std::uint32_t kTrialDivisionBound = 1'000'000;

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
};

// Factors |n| (n != 0) by trial division up to kTrialDivisionBound. A
// leftover cofactor is accepted only when it is provably prime, i.e. when
// it is below the square of the bound.
inline std::vector<PrimePower> factor_integer(const Integer& n) {
  if (n == 0) throw DomainError("cannot factor zero");
  Integer m = abs(n);
  std::vector<PrimePower> out;
  auto take = [&](std::uint32_t p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e) out.push_back({Integer(p), e});
  };
  take(2);
  for (std::uint32_t p = 3; p <= kTrialDivisionBound; p += 2) {
    if (m == 1) break;
    if (Integer(p) * p > m) break;
    take(p);
  }
  if (m != 1) {
    const Integer bound = Integer(kTrialDivisionBound) * kTrialDivisionBound;
    if (m >= bound)
      throw LimitError("factorization of " + n.get_str() + " exceeds the trial-division bound");
    out.push_back({m, 1});
  }
  return out;
}

// The unique square-free D > 0 with |n| = D * k^2.
inline Integer squarefree_part(const Integer& n) {
  Integer d = 1;
  for (const auto& pp : factor_integer(n))
    if (pp.exponent % 2) d *= pp.prime;
  return d;
}

// Positive divisors of |n|, ascending.
inline std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> divs{Integer(1)};
  for (const auto& pp : factor_integer(n)) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace nilblock
