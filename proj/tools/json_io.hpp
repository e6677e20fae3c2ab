// JSON interchange for the apolar_kit command-line tool.
#pragma once

#include <string>
#include <vector>

#include "apolar/curvegen.hpp"
#include "apolar/pipeline.hpp"
#include "apolar/planemodel.hpp"
#include "apolar/polynomial.hpp"
#include "apolar/scroll.hpp"
#include "apolar/waring.hpp"
#include "json.hpp"

namespace apolar::io {

using Json = nlohmann::ordered_json;

inline constexpr int kDigits = 25;

inline Json complex_json(const Complex& z) { return Json{{"re", z.re.to_string(kDigits)}, {"im", z.im.to_string(kDigits)}}; }

inline Json polynomial_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back(Json{{"exp", m.exps}, {"coef", to_string(c)}});
  return Json{{"nvars", p.nvars()}, {"degree", p.degree()}, {"terms", terms}};
}

namespace detail {

[[noreturn]] inline void bad(const std::string& what) { throw InputError("malformed JSON input: " + what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline long integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<long>();
}

inline Rational rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad("coefficients must be \"p/q\" strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

}  // namespace detail

inline Polynomial polynomial_from_json(const Json& j) {
  const long n = detail::integer(detail::field(j, "nvars"), "nvars");
  const long d = detail::integer(detail::field(j, "degree"), "degree");
  if (n < 1 || d < 0) detail::bad("nvars must be positive and degree non-negative");
  const Json& terms = detail::field(j, "terms");
  if (!terms.is_array()) detail::bad("terms must be an array");
  Polynomial p(static_cast<std::size_t>(n), static_cast<unsigned>(d));
  for (const auto& t : terms) {
    const Json& e = detail::field(t, "exp");
    if (!e.is_array() || e.size() != static_cast<std::size_t>(n)) detail::bad("exponent vector has the wrong length");
    std::vector<unsigned> exps;
    for (const auto& x : e) {
      const long v = detail::integer(x, "exponent");
      if (v < 0) detail::bad("negative exponent");
      exps.push_back(static_cast<unsigned>(v));
    }
    Monomial m(std::move(exps));
    if (m.degree() != static_cast<unsigned>(d)) detail::bad("term degree differs from the declared degree");
    if (p.coefficient(m) != 0) detail::bad("repeated monomial");
    p.add_term(m, detail::rational(detail::field(t, "coef")));
  }
  return p;
}

inline Json piece_json(const GradedIdealPiece& p) {
  Json basis = Json::array();
  for (const auto& b : p.basis()) basis.push_back(polynomial_json(b));
  return Json{{"degree", p.degree()}, {"ambient_dim", p.ambient_dim()}, {"dim", p.dim()}, {"basis", basis}};
}

inline GradedIdealPiece piece_from_json(const Json& j, std::size_t nvars) {
  const long d = detail::integer(detail::field(j, "degree"), "degree");
  if (d < 0) detail::bad("negative piece degree");
  const Json& basis = detail::field(j, "basis");
  if (!basis.is_array()) detail::bad("basis must be an array");
  std::vector<Polynomial> gens;
  for (const auto& b : basis) gens.push_back(polynomial_from_json(b));
  for (const auto& g : gens)
    if (g.nvars() != nvars || g.degree() != static_cast<unsigned>(d))
      detail::bad("basis element does not match the piece degree or variable count");
  return GradedIdealPiece::from_basis(nvars, static_cast<unsigned>(d), std::move(gens));
}

inline Json profile_json(const ApolarAlgebraProfile& p) {
  return Json{{"hilbert", p.hilbert}, {"socle", p.socle}, {"socle_dim", p.socle_dim}};
}

inline Json decomposition_json(const Decomposition& d) {
  Json forms = Json::array(), weights = Json::array();
  if (d.exact()) {
    for (const auto& l : *d.exact_forms) forms.push_back(polynomial_json(Polynomial::linear(l)));
    for (const auto& w : *d.exact_weights) weights.push_back(to_string(w));
  } else {
    for (const auto& l : d.forms) {
      Json coefs = Json::array();
      for (const auto& c : l) coefs.push_back(complex_json(c));
      forms.push_back(Json{{"nvars", l.size()}, {"degree", 1}, {"coefs", coefs}});
    }
    for (const auto& w : d.weights) weights.push_back(complex_json(w));
  }
  return Json{{"rank", d.rank()},
              {"exact", d.exact()},
              {"forms", forms},
              {"weights", weights},
              {"residual", d.residual.to_string(3)}};
}

inline Json scroll_json(const Scroll& s) {
  return Json{{"type", s.type()}, {"N", s.N()}, {"degree", s.degree()}, {"smooth", s.smooth()}};
}

inline Scroll scroll_from_json(const Json& j) {
  const Json& t = detail::field(j, "type");
  if (!t.is_array()) detail::bad("scroll type must be an array");
  std::vector<int> type;
  for (const auto& x : t) type.push_back(static_cast<int>(detail::integer(x, "scroll type entry")));
  return Scroll(std::move(type));
}

inline Json class_json(const DivisorClass& c) { return Json{{"h", c.h}, {"f", c.f}}; }

inline DivisorClass class_from_json(const Json& j) {
  return {detail::integer(detail::field(j, "h"), "h"), detail::integer(detail::field(j, "f"), "f")};
}

inline Json bihomogeneous_json(const BihomogeneousForm& e) {
  Json terms = Json::array();
  for (const auto& [m, b] : e.terms) {
    Json base = Json::array();
    for (const auto& c : b.coeffs) base.push_back(to_string(c));
    terms.push_back(Json{{"fiber", m.exps}, {"base", base}});
  }
  return Json{{"class", class_json(e.cls)}, {"terms", terms}};
}

inline Json curve_json(const CurveSpec& c) {
  Json classes = Json::array(), eqs = Json::array();
  for (const auto& cl : c.classes) classes.push_back(class_json(cl));
  for (const auto& e : c.equations) eqs.push_back(bihomogeneous_json(e));
  Json j{{"genus", c.genus}, {"gonality", c.gonality}, {"scroll", scroll_json(c.scroll)}, {"classes", classes}};
  if (!c.split.empty()) j["split"] = c.split;
  j["equations"] = eqs;
  j["seed"] = c.seed;
  return j;
}

/// Reads a curve and checks that every equation matches the section templates of its class.
inline CurveSpec curve_from_json(const Json& j) {
  CurveSpec c;
  c.genus = static_cast<int>(detail::integer(detail::field(j, "genus"), "genus"));
  c.gonality = static_cast<int>(detail::integer(detail::field(j, "gonality"), "gonality"));
  if (c.gonality != 3 && c.gonality != 4) detail::bad("gonality must be 3 or 4");
  c.scroll = scroll_from_json(detail::field(j, "scroll"));
  if (c.scroll.k() != c.gonality - 1) detail::bad("scroll dimension does not match the gonality");
  if (c.scroll.N() != c.genus - 1) detail::bad("scroll does not live in P^(g-1)");
  if (j.contains("split")) c.split = j.at("split").get<std::vector<int>>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  const Json& eqs = detail::field(j, "equations");
  if (!eqs.is_array() || eqs.size() != static_cast<std::size_t>(c.gonality - 2))
    detail::bad("wrong number of equations for the gonality");
  for (const auto& e : eqs) {
    BihomogeneousForm f;
    f.cls = class_from_json(detail::field(e, "class"));
    const auto templates = section_templates(c.scroll, f.cls);
    const Json& terms = detail::field(e, "terms");
    if (!terms.is_array() || terms.size() != templates.size()) detail::bad("equation terms do not match its class");
    for (std::size_t i = 0; i < templates.size(); ++i) {
      const auto exps = detail::field(terms[i], "fiber").get<std::vector<unsigned>>();
      if (!(Monomial(exps) == templates[i].fiber)) detail::bad("fiber monomials out of order");
      const Json& base = detail::field(terms[i], "base");
      if (!base.is_array() || base.size() != static_cast<std::size_t>(templates[i].base_degree + 1))
        detail::bad("base form has the wrong degree");
      BinaryForm b = BinaryForm::zero(static_cast<unsigned>(templates[i].base_degree));
      for (std::size_t k = 0; k < base.size(); ++k) b.coeffs[k] = detail::rational(base[k]);
      f.terms.emplace_back(templates[i].fiber, std::move(b));
    }
    c.classes.push_back(f.cls);
    c.equations.push_back(std::move(f));
  }
  return c;
}

inline Json rational_vector_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

inline Json blowup_json(const BlowupClass& c) { return Json{{"a", c.a}, {"b", c.b}}; }

}  // namespace apolar::io
