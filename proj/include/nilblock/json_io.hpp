#pragma once

// JSON and CSV encodings. Rationals are always "num/den" strings.

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nilblock/blockability.hpp"
#include "nilblock/errors.hpp"
#include "nilblock/heisenberg.hpp"
#include "nilblock/number_field.hpp"
#include "nilblock/sl2.hpp"
#include "nilblock/torus.hpp"

namespace nilblock::io {

using json = nlohmann::json;

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw InputError("expected a rational as \"num/den\" string, got " + j.dump());
}

inline json rational_to_json(const Rational& q) { return to_string(q); }

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline const json& require_array(const json& j, const char* key) {
  const json& a = require(j, key);
  if (!a.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  return a;
}

// {"minpoly": [c0, ..., c_{d-1}, "1"], "root_interval": [lo, hi], "trusted": bool?}
inline FieldPtr field_from_json(const json& j) {
  std::vector<Rational> coeffs;
  for (const auto& c : require_array(j, "minpoly")) coeffs.push_back(rational_from_json(c));
  const json& iv = require_array(j, "root_interval");
  if (iv.size() != 2) throw InputError("root_interval must have two entries");
  const bool trusted = j.contains("trusted") && j.at("trusted").is_boolean() && j.at("trusted").get<bool>();
  return NumberField::make(std::move(coeffs), rational_from_json(iv[0]), rational_from_json(iv[1]), trusted);
}

inline json field_to_json(const NumberField& f) {
  json coeffs = json::array();
  for (const auto& c : f.minpoly().coeffs()) coeffs.push_back(rational_to_json(c));
  return {{"minpoly", coeffs},
          {"root_interval", {rational_to_json(f.input_interval().lo), rational_to_json(f.input_interval().hi)}}};
}

// {"coords": [...]} or a bare rational string.
inline FieldElement element_from_json(const json& j, const FieldPtr& field) {
  if (j.is_string() || j.is_number_integer()) return FieldElement(field, rational_from_json(j));
  std::vector<Rational> coords;
  for (const auto& c : require_array(j, "coords")) coords.push_back(rational_from_json(c));
  if (coords.size() != field->degree())
    throw InputError("element has " + std::to_string(coords.size()) + " coordinates, field degree is " +
                     std::to_string(field->degree()));
  return FieldElement(field, std::move(coords));
}

inline json element_to_json(const FieldElement& x) {
  json coords = json::array();
  for (const auto& c : x.coords()) coords.push_back(rational_to_json(c));
  return {{"coords", coords}};
}

inline std::vector<FieldElement> elements_from_json(const json& arr, const FieldPtr& field) {
  if (!arr.is_array()) throw InputError("expected an array of field elements");
  std::vector<FieldElement> out;
  for (const auto& e : arr) out.push_back(element_from_json(e, field));
  return out;
}

// {"n": n, "x": [...], "y": [...], "z": elem}
inline HeisPoint<FieldElement> point_from_json(const json& j, const FieldPtr& field) {
  const json& nj = require(j, "n");
  if (!nj.is_number_integer() || nj.get<long>() < 1) throw InputError("'n' must be a positive integer");
  const auto n = static_cast<std::size_t>(nj.get<long>());
  HeisPoint<FieldElement> g{elements_from_json(require(j, "x"), field), elements_from_json(require(j, "y"), field),
                            element_from_json(require(j, "z"), field)};
  if (g.x.size() != n || g.y.size() != n) throw InputError("point coordinates do not match 'n'");
  return g;
}

template <class Vec>
json elements_to_json(const Vec& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(element_to_json(e));
  return a;
}

inline json point_to_json(const HeisPoint<FieldElement>& g) {
  return {{"n", g.n()}, {"x", elements_to_json(g.x)}, {"y", elements_to_json(g.y)}, {"z", element_to_json(g.z)}};
}

inline json reduced_to_json(const ReducedPoint<FieldElement>& m) {
  return {{"n", m.n()}, {"a", elements_to_json(m.a)}, {"b", elements_to_json(m.b)}, {"c", element_to_json(m.c)}};
}

// {"n": n, "delta": [...]}
inline LatticeSpec lattice_from_json(const json& j) {
  LatticeSpec l;
  for (const auto& d : require_array(j, "delta")) {
    if (!d.is_number_integer()) throw InputError("delta entries must be integers");
    l.delta.push_back(d.get<long>());
  }
  if (j.contains("n") && (!j.at("n").is_number_integer() || j.at("n").get<std::size_t>() != l.delta.size()))
    throw InputError("lattice 'n' does not match delta length");
  l.validate();
  return l;
}

inline json lattice_to_json(const LatticeSpec& l) { return {{"n", l.n()}, {"delta", l.delta}}; }

inline json rational_vector_to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(rational_to_json(q));
  return a;
}

inline json verdict_to_json(const BlockVerdict& v) {
  json out;
  out["blockable"] = v.blockable;
  if (v.witness) {
    json L = json::array();
    for (std::size_t i = 0; i < v.witness->L.rows(); ++i) L.push_back(rational_vector_to_json(v.witness->L.row(i)));
    out["witness"] = {{"L", L}, {"ell", rational_vector_to_json(v.witness->ell)}};
  } else {
    out["witness"] = nullptr;
  }
  if (v.certificate) {
    out["certificate"] = {{"component", v.certificate->component},
                          {"functional", rational_vector_to_json(v.certificate->proof.functional)},
                          {"residual", rational_to_json(v.certificate->proof.residual)}};
  } else {
    out["certificate"] = nullptr;
  }
  return out;
}

inline BlockVerdict verdict_from_json(const json& j) {
  BlockVerdict v;
  const json& b = require(j, "blockable");
  if (!b.is_boolean()) throw InputError("'blockable' must be a boolean");
  v.blockable = b.get<bool>();
  if (j.contains("witness") && !j.at("witness").is_null()) {
    const json& w = j.at("witness");
    const json& L = require_array(w, "L");
    BlockWitness bw{RatMatrix(L.size(), L.size()), {}};
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (!L[i].is_array() || L[i].size() != L.size()) throw InputError("witness L must be square");
      for (std::size_t k = 0; k < L.size(); ++k) bw.L(i, k) = rational_from_json(L[i][k]);
    }
    for (const auto& e : require_array(w, "ell")) bw.ell.push_back(rational_from_json(e));
    v.witness = std::move(bw);
  }
  if (j.contains("certificate") && !j.at("certificate").is_null()) {
    const json& c = j.at("certificate");
    BlockCertificate bc;
    bc.component = require(c, "component").get<std::size_t>();
    for (const auto& e : require_array(c, "functional")) bc.proof.functional.push_back(rational_from_json(e));
    bc.proof.residual = rational_from_json(require(c, "residual"));
    v.certificate = std::move(bc);
  }
  return v;
}

template <class T>
std::string midpoint_csv(const MidpointReport<T>& r) {
  std::ostringstream os;
  os << "window_radius,class_count\n";
  for (std::size_t k = 0; k < r.windows.size(); ++k) os << r.windows[k] << ',' << r.class_counts[k] << '\n';
  return os.str();
}

inline json midpoint_to_json(const MidpointReport<FieldElement>& r, bool with_classes) {
  json out{{"windows", r.windows}, {"class_counts", r.class_counts}, {"saturated", r.saturated}};
  if (with_classes) {
    json cls = json::array();
    for (const auto& m : r.classes) cls.push_back(reduced_to_json(m));
    out["classes"] = cls;
  }
  return out;
}

inline TorusPoint torus_point_from_json(const json& arr, std::size_t n) {
  if (!arr.is_array() || arr.size() != n) throw InputError("torus point must be an array of n rationals");
  std::vector<Rational> c;
  for (const auto& e : arr) c.push_back(rational_from_json(e));
  return TorusPoint(std::move(c));
}

inline json torus_point_to_json(const TorusPoint& t) { return rational_vector_to_json(t.coords()); }

inline json quad_to_json(const QuadElement& e) {
  return {{"u", rational_to_json(e.u())}, {"v", rational_to_json(e.v())}};
}

inline Mat2Q mat2_from_json(const json& j) {
  const json& m = require_array(j, "matrix");
  if (m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 || m[1].size() != 2)
    throw InputError("'matrix' must be [[a, b], [c, d]]");
  return {rational_from_json(m[0][0]), rational_from_json(m[0][1]), rational_from_json(m[1][0]),
          rational_from_json(m[1][1])};
}

inline json sqrt_to_json(const SqrtResult& r) {
  json roots = json::array();
  for (const auto& x : r.roots) {
    roots.push_back({{"D", std::stol(x.radicand().get_str())},
                     {"entries",
                      {{quad_to_json(x.a()), quad_to_json(x.b())}, {quad_to_json(x.c()), quad_to_json(x.d())}}}});
  }
  json out{{"roots", roots}, {"family", r.family}};
  if (!r.diagnostic.empty()) out["diagnostic"] = r.diagnostic;
  return out;
}

inline std::string spread_csv(const std::vector<SpreadReport>& series) {
  std::ostringstream os;
  os << "N,radical_count\n";
  for (const auto& s : series) os << s.window << ',' << s.coset_lower_bound << '\n';
  return os.str();
}

inline json spread_to_json(const std::vector<SpreadReport>& series) {
  json rows = json::array();
  for (const auto& s : series) {
    json rad = json::array();
    for (const auto& d : s.radical_set) rad.push_back(std::stol(d.get_str()));
    rows.push_back({{"N", s.window}, {"radical_count", s.coset_lower_bound}, {"radical_set", rad}});
  }
  return rows;
}

}  // namespace nilblock::io
