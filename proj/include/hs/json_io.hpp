#pragma once

#include <string>

#include <json.hpp>

#include "hs/derivation.hpp"
#include "hs/element.hpp"
#include "hs/ktheory.hpp"
#include "hs/sadic.hpp"

namespace hs {

using Json = nlohmann::json;

// Wire format for scalars: a two-element array [re, im].  Float mode writes
// JSON numbers; exact mode writes "p/q" strings.  Readers accept both forms
// in both modes so goldens stay portable across scalar modes where the
// values are integers.

inline Json scalar_to_json(const Cx& v) { return Json::array({v.real(), v.imag()}); }

inline Json rational_to_json(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (c.get_den() == 1) return Json(c.get_num().get_str());
  return Json(c.get_num().get_str() + "/" + c.get_den().get_str());
}

inline Json scalar_to_json(const GaussianRational& v) {
  return Json::array({rational_to_json(v.re), rational_to_json(v.im)});
}

inline mpq_class rational_from_json(const Json& j) {
  if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<long long>()));
  if (j.is_number()) throw std::invalid_argument("json: non-integer number in exact mode");
  mpq_class q(j.get<std::string>());
  q.canonicalize();
  return q;
}

inline double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  mpq_class q(j.get<std::string>());
  return q.get_d();
}

template <class S>
S scalar_from_json(const Json& j);

template <>
inline Cx scalar_from_json<Cx>(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("json: scalar must be [re, im]");
  return Cx(real_from_json(j[0]), real_from_json(j[1]));
}

template <>
inline GaussianRational scalar_from_json<GaussianRational>(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("json: scalar must be [re, im]");
  return GaussianRational{rational_from_json(j[0]), rational_from_json(j[1])};
}

inline Json to_json(const SAdicInt& x) {
  return Json{{"s", x.s}, {"digits", x.digits}};
}

inline SAdicInt sadic_from_json(const Json& j) {
  SAdicInt x{j.at("s").get<int>(), j.at("digits").get<std::vector<int>>()};
  check_sadic(x);
  return x;
}

template <class S>
Json to_json(const DiagonalSymbol<S>& f) {
  Json core = Json::array();
  for (const auto& row : f.core()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(scalar_to_json(v));
    core.push_back(std::move(r));
  }
  Json tail = Json::array();
  for (const auto& v : f.tail()) tail.push_back(scalar_to_json(v));
  return Json{{"s", f.base()}, {"e", f.xdepth()}, {"d", f.mdepth()},
              {"core", std::move(core)}, {"tail", std::move(tail)}};
}

template <class S>
DiagonalSymbol<S> symbol_from_json(const Json& j) {
  int s = j.at("s").get<int>();
  int e = j.at("e").get<int>();
  int d = j.at("d").get<int>();
  std::vector<std::vector<S>> core;
  for (const auto& row : j.at("core")) {
    std::vector<S> r;
    for (const auto& v : row) r.push_back(scalar_from_json<S>(v));
    core.push_back(std::move(r));
  }
  std::vector<S> tail;
  for (const auto& v : j.at("tail")) tail.push_back(scalar_from_json<S>(v));
  if (static_cast<int>(core.size()) != d)
    throw std::invalid_argument("json: symbol core row count disagrees with d");
  return DiagonalSymbol<S>(s, e, std::move(core), std::move(tail));
}

template <class S>
Json to_json(const Element<S>& a) {
  Json terms = Json::array();
  for (const auto& [n, f] : a.terms())
    terms.push_back(Json{{"n", n}, {"symbol", to_json(f)}});
  return Json{{"s", a.base()}, {"terms", std::move(terms)}};
}

template <class S>
Element<S> element_from_json(const Json& j) {
  Element<S> out(j.at("s").get<int>());
  for (const auto& t : j.at("terms"))
    out.add_term(t.at("n").get<int>(), symbol_from_json<S>(t.at("symbol")));
  return out;
}

template <class S>
Json to_json(const TrigPoly<S>& p) {
  Json modes = Json::array();
  for (const auto& [n, c] : p.coeffs())
    modes.push_back(Json{{"n", n}, {"c", scalar_to_json(c)}});
  return Json{{"modes", std::move(modes)}};
}

template <class S>
TrigPoly<S> trig_from_json(const Json& j) {
  TrigPoly<S> out;
  for (const auto& t : j.at("modes"))
    out.add(t.at("n").get<int>(), scalar_from_json<S>(t.at("c")));
  return out;
}

template <class S>
Json to_json(const LambdaSymbol<S>& lam) {
  Json modes = Json::array();
  for (const auto& [n, f] : lam.modes)
    modes.push_back(Json{{"n", n}, {"symbol", to_json(f)}});
  return Json{{"s", lam.s}, {"modes", std::move(modes)}};
}

template <class S>
LambdaSymbol<S> lambda_from_json(const Json& j) {
  LambdaSymbol<S> out(j.at("s").get<int>());
  for (const auto& t : j.at("modes"))
    out.add(t.at("n").get<int>(), symbol_from_json<S>(t.at("symbol")));
  return out;
}

template <class S>
Json to_json(const GeneratorImages<S>& gi) {
  Json dm = Json::array();
  for (const auto& img : gi.dM) dm.push_back(to_json(img));
  return Json{{"s", gi.s}, {"e", gi.e}, {"dV", to_json(gi.dV)}, {"dVstar", to_json(gi.dVstar)}, {"dM", std::move(dm)}};
}

template <class S>
GeneratorImages<S> images_from_json(const Json& j) {
  GeneratorImages<S> gi;
  gi.s = j.at("s").get<int>();
  gi.e = j.at("e").get<int>();
  gi.dV = element_from_json<S>(j.at("dV"));
  gi.dVstar = element_from_json<S>(j.at("dVstar"));
  for (const auto& img : j.at("dM")) gi.dM.push_back(element_from_json<S>(img));
  return gi;
}

template <class S>
Json to_json(const Derivation<S>& d) {
  Json out{{"s", d.s}, {"phi", to_json(d.phi)}, {"lambda", to_json(d.lambda)}, {"inner", to_json(d.inner)}};
  if (d.images) out["images"] = to_json(*d.images);
  return out;
}

template <class S>
Derivation<S> derivation_from_json(const Json& j) {
  Derivation<S> d = Derivation<S>::zero(j.at("s").get<int>());
  if (j.contains("phi")) d.phi = trig_from_json<S>(j.at("phi"));
  if (j.contains("lambda")) d.lambda = lambda_from_json<S>(j.at("lambda"));
  if (j.contains("inner")) d.inner = element_from_json<S>(j.at("inner"));
  if (j.contains("images")) d.images = images_from_json<S>(j.at("images"));
  return d;
}

template <class S>
Json to_json(const Decomposition<S>& dec) {
  return Json{{"phi", to_json(dec.phi)},
              {"lambda", to_json(dec.lambda)},
              {"inner", to_json(dec.inner_generator)},
              {"residual", dec.residual.upper}};
}

inline Json to_json(const K0Class& c) {
  return Json{{"e", c.e}, {"values", c.values}};
}

inline K0Class k0class_from_json(const Json& j, int s) {
  K0Class c{s, j.at("e").get<int>(), {}};
  for (const auto& v : j.at("values")) c.values.push_back(v.get<long long>());
  return c;
}

// Canonical text form: sorted keys (nlohmann objects are key-ordered maps),
// two-space indent, trailing newline.  Stable across runs for golden tests.
inline std::string dump_stable(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hs
