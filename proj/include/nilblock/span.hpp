#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "nilblock/errors.hpp"
#include "nilblock/matrix.hpp"
#include "nilblock/number_field.hpp"
#include "nilblock/rational.hpp"

namespace nilblock {

inline std::vector<Rational> coords_of(const Rational& q) { return {q}; }
inline const std::vector<Rational>& coords_of(const FieldElement& x) { return x.coords(); }

// target == sum_j coeffs[j] * gens[j] + constant.
struct SpanWitness {
  std::vector<Rational> coeffs;
  Rational constant;

  friend bool operator==(const SpanWitness&, const SpanWitness&) = default;
};

// Either a witness or a certificate over the coordinate equations: the
// functional annihilates 1 and every generator but not the target.
using SpanResult = std::variant<SpanWitness, InconsistencyCertificate>;

// Coordinate matrix whose columns are gens..., 1.
template <class T>
RatMatrix span_system(std::span<const T> gens, std::size_t degree) {
  RatMatrix a(degree, gens.size() + 1);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const auto& c = coords_of(gens[j]);
    if (c.size() != degree) throw DomainError("generators live in different number fields");
    for (std::size_t i = 0; i < degree; ++i) a(i, j) = c[i];
  }
  a(0, gens.size()) = 1;
  return a;
}

// Decides, for each target, membership in the Q-span of {1} and gens.
// Witnesses are checked by exact re-substitution before they are returned.
template <class T>
std::vector<SpanResult> solve_rational_span(std::span<const T> targets, std::span<const T> gens) {
  std::vector<SpanResult> out;
  if (targets.empty()) return out;
  const std::size_t degree = coords_of(targets[0]).size();
  const RatMatrix a = span_system(gens, degree);
  for (const T& t : targets) {
    const auto& tc = coords_of(t);
    if (tc.size() != degree) throw DomainError("targets live in different number fields");
    std::vector<Rational> rhs(tc.begin(), tc.end());
    auto sol = solve_linear(a, rhs);
    if (auto* x = std::get_if<std::vector<Rational>>(&sol)) {
      SpanWitness w{std::vector<Rational>(x->begin(), x->end() - 1), x->back()};
      if (a.apply(*x) != rhs) throw Error("internal: span witness failed re-substitution");
      out.emplace_back(std::move(w));
    } else {
      out.emplace_back(std::get<InconsistencyCertificate>(std::move(sol)));
    }
  }
  return out;
}

template <class T>
std::vector<SpanResult> solve_rational_span(const std::vector<T>& targets, const std::vector<T>& gens) {
  return solve_rational_span(std::span<const T>(targets), std::span<const T>(gens));
}

// Re-checks a witness in the field itself.
template <class T>
bool witness_holds(const T& target, const std::vector<T>& gens, const SpanWitness& w) {
  if (w.coeffs.size() != gens.size()) return false;
  T acc = rational_like(target, w.constant);
  for (std::size_t j = 0; j < gens.size(); ++j) acc += gens[j] * w.coeffs[j];
  return acc == target;
}

template <class T>
bool certificate_holds(const T& target, const std::vector<T>& gens, const InconsistencyCertificate& cert) {
  const auto& tc = coords_of(target);
  const RatMatrix a = span_system(std::span<const T>(gens), tc.size());
  return certificate_holds(a, std::vector<Rational>(tc.begin(), tc.end()), cert);
}

}  // namespace nilblock
