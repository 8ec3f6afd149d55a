#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "pso/weyl.hpp"

namespace pso {

using Json = nlohmann::json;

namespace detail {

// Strict reader for the "a/b" wire form: optional sign, digits, '/', digits.
inline Rational fraction_from_string(const std::string& s) {
  auto bad = [&]() -> Rational {
    throw std::invalid_argument("fraction: expected \"a/b\", got \"" + s + "\"");
  };
  size_t slash = s.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == s.size()) return bad();
  auto digits = [&](size_t from, size_t to, bool sign_ok) {
    if (from >= to) return false;
    if (sign_ok && s[from] == '-') ++from;
    if (from >= to) return false;
    for (size_t j = from; j < to; ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    return true;
  };
  if (!digits(0, slash, true) || !digits(slash + 1, s.size(), false)) return bad();
  BigInt num(s.substr(0, slash));
  BigInt den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("fraction: zero denominator in \"" + s + "\"");
  return make_rational(num, den);
}

}  // namespace detail

// Wire form of an operator: {"variable": "x"|"t", "terms": [...]} with one
// object {"varpow", "dpow", "re", "im"} per monomial, terms sorted by
// (dpow, varpow) and both scalar parts always printed as "a/b".
inline Json weyl_to_json(const WeylElement<GaussianRational>& L) {
  std::vector<std::tuple<int, int, GaussianRational>> ts;
  ts.reserve(L.terms().size());
  for (const auto& [key, c] : L.terms()) ts.emplace_back(key.first, key.second, c);
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    return std::pair{std::get<1>(a), std::get<0>(a)} < std::pair{std::get<1>(b), std::get<0>(b)};
  });
  Json terms = Json::array();
  for (const auto& [n, k, c] : ts) {
    terms.push_back(Json{{"varpow", n},
                         {"dpow", k},
                         {"re", to_fraction_string(c.re)},
                         {"im", to_fraction_string(c.im)}});
  }
  return Json{{"variable", var_name(L.var())}, {"terms", std::move(terms)}};
}

inline Json weyl_to_json(const WeylElement<Rational>& L) { return weyl_to_json(to_gaussian(L)); }

inline WeylElement<GaussianRational> weyl_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("variable") || !j.contains("terms"))
    throw std::invalid_argument("operator json: need {\"variable\", \"terms\"}");
  const Json& v = j.at("variable");
  if (!v.is_string() || (v != "x" && v != "t"))
    throw std::invalid_argument("operator json: variable must be \"x\" or \"t\"");
  Var var = (v == "x") ? Var::x : Var::t;
  const Json& terms = j.at("terms");
  if (!terms.is_array()) throw std::invalid_argument("operator json: terms must be an array");
  WeylElement<GaussianRational> out(var);
  for (const Json& t : terms) {
    if (!t.is_object() || !t.contains("varpow") || !t.contains("dpow") || !t.contains("re") ||
        !t.contains("im"))
      throw std::invalid_argument("operator json: term needs varpow, dpow, re, im");
    const Json& n = t.at("varpow");
    const Json& k = t.at("dpow");
    if (!n.is_number_integer() || !k.is_number_integer() || n.get<long>() < 0 || k.get<long>() < 0)
      throw std::invalid_argument("operator json: powers must be nonnegative integers");
    if (!t.at("re").is_string() || !t.at("im").is_string())
      throw std::invalid_argument("operator json: re and im must be \"a/b\" strings");
    GaussianRational c(detail::fraction_from_string(t.at("re").get<std::string>()),
                       detail::fraction_from_string(t.at("im").get<std::string>()));
    out.add_term(n.get<int>(), k.get<int>(), c);
  }
  return out;
}

}  // namespace pso
