#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pso/classify.hpp"
#include "pso/expr.hpp"
#include "pso/fourier.hpp"
#include "pso/ore.hpp"
#include "pso/pso.hpp"
#include "pso/serialize.hpp"
#include "pso/verify.hpp"

namespace pso {
namespace detail {

inline std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

// Number literals on the command line: "3", "-1/2", "0.25".
inline Rational rational_literal(const std::string& s) {
  auto bad = [&]() -> Rational {
    throw std::invalid_argument("expected a rational number, got \"" + s + "\"");
  };
  if (s.empty()) return bad();
  size_t p = 0;
  bool neg = false;
  if (s[p] == '-') {
    neg = true;
    ++p;
  }
  auto digits = [&](size_t from, size_t to) {
    if (from >= to) return false;
    for (size_t j = from; j < to; ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    return true;
  };
  Rational out;
  size_t slash = s.find('/', p);
  size_t dot = s.find('.', p);
  if (slash != std::string::npos) {
    if (dot != std::string::npos || !digits(p, slash) || !digits(slash + 1, s.size())) return bad();
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
    out = make_rational(BigInt(s.substr(p, slash - p)), den);
  } else if (dot != std::string::npos) {
    if (!digits(p, dot) || !digits(dot + 1, s.size())) return bad();
    std::string frac = s.substr(dot + 1);
    BigInt scale = 1;
    for (size_t j = 0; j < frac.size(); ++j) scale *= 10;
    out = make_rational(BigInt(s.substr(p, dot - p)) * scale + BigInt(frac), scale);
  } else {
    if (!digits(p, s.size())) return bad();
    out = Rational(BigInt(s.substr(p)));
  }
  return neg ? Rational(-out) : out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t from = 0;
  for (;;) {
    size_t to = s.find(sep, from);
    if (to == std::string::npos) {
      out.push_back(s.substr(from));
      return out;
    }
    out.push_back(s.substr(from, to - from));
    from = to + 1;
  }
}

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

// "gaussian(mu=0,sigma2=1)" | "mixture(0.5:1,0.5:2)" | "semicircle(r=1)";
// bare names take the defaults shown.
inline DistributionSpec parse_distribution(const std::string& raw) {
  std::string s = strip_spaces(raw);
  std::string name = s, body;
  size_t open = s.find('(');
  if (open != std::string::npos) {
    if (s.back() != ')')
      throw std::invalid_argument("dist: missing ')' in \"" + raw + "\"");
    name = s.substr(0, open);
    body = s.substr(open + 1, s.size() - open - 2);
  }
  auto key_value_pairs = [&]() {
    std::vector<std::pair<std::string, Rational>> out;
    if (body.empty()) return out;
    for (const std::string& item : split(body, ',')) {
      size_t eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("dist: expected key=value, got \"" + item + "\"");
      out.emplace_back(item.substr(0, eq), rational_literal(item.substr(eq + 1)));
    }
    return out;
  };
  if (name == "gaussian") {
    Rational mu = 0, sigma2 = 1;
    for (const auto& [key, value] : key_value_pairs()) {
      if (key == "mu")
        mu = value;
      else if (key == "sigma2")
        sigma2 = value;
      else
        throw std::invalid_argument("dist: gaussian takes mu and sigma2, not \"" + key + "\"");
    }
    return GaussianLaw{mu, sigma2};
  }
  if (name == "mixture") {
    std::vector<Rational> weights, variances;
    if (body.empty()) throw std::invalid_argument("dist: mixture needs weight:variance pairs");
    for (const std::string& item : split(body, ',')) {
      size_t colon = item.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("dist: expected weight:variance, got \"" + item + "\"");
      weights.push_back(rational_literal(item.substr(0, colon)));
      variances.push_back(rational_literal(item.substr(colon + 1)));
    }
    return MixtureSpec(std::move(variances), std::move(weights));
  }
  if (name == "semicircle") {
    Rational r = 1;
    for (const auto& [key, value] : key_value_pairs()) {
      if (key != "r") throw std::invalid_argument("dist: semicircle takes r, not \"" + key + "\"");
      r = value;
    }
    return SemicircleLaw{r};
  }
  throw std::invalid_argument("dist: unknown distribution \"" + name + "\"");
}

// Quadrature node default: PSO_PRECISION when set, else 64.
inline int default_nodes() {
  const char* env = std::getenv("PSO_PRECISION");
  if (env == nullptr || *env == '\0') return 64;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 8 || v > 512)
    throw std::invalid_argument("PSO_PRECISION must be an integer in [8, 512], got \"" +
                                std::string(env) + "\"");
  return static_cast<int>(v);
}

inline std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(6) << v;
  return os.str();
}

inline std::string format_exponent(const Branch& b) {
  std::string re = b.exact_re ? to_string(*b.exact_re) : sci(b.exponent_re);
  bool have_im = b.exact_im ? (*b.exact_im != 0) : (b.exponent_im != 0.0);
  if (!have_im) return re;
  std::string im;
  bool neg;
  if (b.exact_im) {
    neg = *b.exact_im < 0;
    Rational mag = neg ? Rational(-*b.exact_im) : *b.exact_im;
    im = (mag == 1) ? "i" : to_string(mag) + "*i";
  } else {
    neg = b.exponent_im < 0;
    im = sci(neg ? -b.exponent_im : b.exponent_im) + "*i";
  }
  return re + (neg ? " - " : " + ") + im;
}

inline Json verification_json(const DiscrepancyReport& r, int nodes) {
  return Json{{"suite", "v1"},
              {"nodes", nodes},
              {"max_abs", r.max_abs},
              {"max_error_proxy", r.max_error_proxy},
              {"argmax", r.argmax}};
}

inline void print_verification(std::ostream& out, const std::string& label,
                               const DiscrepancyReport& r, int nodes) {
  out << label << ": " << sci(r.max_abs) << " (suite v1, " << nodes << " nodes)\n";
}

inline void emit(std::ostream& out, bool json, const Json& doc, const std::string& text) {
  if (json)
    out << doc.dump(2) << "\n";
  else
    out << text;
}

inline Json classification_json(const std::vector<ClassificationReport>& reports) {
  Json rows = Json::array();
  for (const ClassificationReport& rep : reports) {
    Json branches = Json::array();
    for (const Branch& b : rep.branches) {
      Json jb{{"index", b.index},
              {"kind", to_string(b.kind)},
              {"re", b.exponent_re},
              {"im", b.exponent_im}};
      if (b.exact_re) jb["exact_re"] = to_fraction_string(*b.exact_re);
      if (b.exact_im) jb["exact_im"] = to_fraction_string(*b.exact_im);
      branches.push_back(std::move(jb));
    }
    rows.push_back(Json{{"m", rep.m},
                        {"characterising", rep.characterising},
                        {"branches", std::move(branches)}});
  }
  return Json{{"reports", std::move(rows)}};
}

inline std::string classification_text(const std::vector<ClassificationReport>& reports) {
  std::ostringstream os;
  for (const ClassificationReport& rep : reports) {
    os << "m = " << rep.m << ": characterising = " << (rep.characterising ? "true" : "false")
       << "\n";
    for (const Branch& b : rep.branches)
      os << "  branch " << b.index << ": exponent = " << format_exponent(b) << ", "
         << to_string(b.kind) << "\n";
  }
  return os.str();
}

}  // namespace detail

// Command dispatch behind the `pso` binary; returns the process exit code
// (0 success, 1 usage or parse error, 2 mathematical failure) and writes a
// one-line reason to `err` on failure.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact calculator for Gaussian Stein operators in the Weyl algebra"};
  app.name("pso");
  app.require_subcommand(0, 1);

  bool json = false;
  std::uint64_t seed = 0;

  std::string expr, expr2, mode = "x", dist_text, cf_text = "sigma2=1,mu=0";
  std::string family_name, with_target;
  std::vector<std::string> params_text;
  std::string sigma2_text, weights_text;
  int hermite_n = 0, nodes = 0, classify_m = 0, classify_upto = 0;
  bool inverse = false;

  CLI::App* check = app.add_subcommand("check", "Decide whether an operator has zero Gaussian expectation");
  check->add_option("expr", expr, "operator in x and D")->required();

  CLI::App* basis = app.add_subcommand("basis", "Coordinates in the Hermite operator basis");
  basis->add_option("expr", expr, "operator in x and D")->required();

  CLI::App* factor = app.add_subcommand("factor", "Divide by D - x from the left");
  factor->add_option("expr", expr, "operator in x and D")->required();

  CLI::App* herm = app.add_subcommand("hermite", "Print a probabilists' Hermite polynomial");
  herm->add_option("n", hermite_n, "degree")->required()->check(CLI::NonNegativeNumber);

  CLI::App* mul = app.add_subcommand("mul", "Noncommutative product of two operators");
  mul->add_option("left", expr, "left factor")->required();
  mul->add_option("right", expr2, "right factor")->required();
  mul->add_option("--mode", mode, "variable mode")->check(CLI::IsMember({"x", "t"}));

  CLI::App* fourier = app.add_subcommand("fourier", "Map through the Fourier anti-isomorphism");
  fourier->add_option("expr", expr, "operator (x side; t side with --inverse)")->required();
  fourier->add_flag("--inverse", inverse, "map from the t side back to the x side");

  CLI::App* annihilates = app.add_subcommand("annihilates", "Apply a t-side operator to a Gaussian characteristic function");
  annihilates->add_option("expr", expr, "operator in t and D")->required();
  annihilates->add_option("--cf", cf_text, "characteristic function, e.g. sigma2=1,mu=0");

  CLI::App* family = app.add_subcommand("family", "Construct a named operator family member");
  family->add_option("name", family_name, "G | S | L | skt | xnd | R | firstorder | random")->required();
  family->add_option("--params", params_text, "family parameters (rationals)");

  CLI::App* lclm_cmd = app.add_subcommand("lclm", "Least common left multiple of two t-side operators");
  lclm_cmd->add_option("left", expr, "operator in t and D")->required();
  lclm_cmd->add_option("right", expr2, "operator in t and D")->required();

  CLI::App* mixture = app.add_subcommand("mixture", "Stein operator for a scale mixture of centered Gaussians");
  mixture->add_option("--sigma2", sigma2_text, "component variances, e.g. 1,2")->required();
  mixture->add_option("--weights", weights_text, "mixture weights (verification only)");
  mixture->add_option("--nodes", nodes, "quadrature nodes for the verification report")->check(CLI::Range(8, 512));

  CLI::App* intersect = app.add_subcommand("intersect", "Joint Stein operator for the Gaussian and a second law");
  intersect->add_option("--with", with_target, "second law (semicircle)")->required();
  intersect->add_option("--nodes", nodes, "quadrature nodes for the verification reports")->check(CLI::Range(8, 512));

  CLI::App* classify_cmd = app.add_subcommand("classify", "Asymptotics of the kernel branches at each order");
  CLI::Option* opt_m = classify_cmd->add_option("--m", classify_m, "single order");
  CLI::Option* opt_upto = classify_cmd->add_option("--upto", classify_upto, "all orders 1..m");
  opt_m->excludes(opt_upto);

  CLI::App* verify = app.add_subcommand("verify", "Numeric expectation table over the smooth test suite");
  verify->add_option("expr", expr, "operator in x and D")->required();
  verify->add_option("--dist", dist_text, "distribution, e.g. gaussian(mu=0,sigma2=1)")->required();
  verify->add_option("--nodes", nodes, "quadrature nodes")->check(CLI::Range(8, 512));

  for (CLI::App* sub : {check, basis, factor, herm, mul, fourier, annihilates, family, lclm_cmd,
                        mixture, intersect, classify_cmd, verify}) {
    sub->add_flag("--json", json, "machine-readable output");
    sub->add_option("--seed", seed, "seed for randomized constructions");
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << detail::one_line(e.what()) << "\n";
    return 1;
  }

  try {
    if (app.get_subcommands().empty())
      throw std::invalid_argument("a subcommand is required; see pso --help");

    if (*check) {
      auto S = parse_x(expr);
      auto mr = is_member(S);
      auto f = divide_by_G(S);
      Json doc{{"member", mr.member},
               {"residual", weyl_to_json(WeylElement<Rational>::from_poly(mr.residual))},
               {"cofactor", weyl_to_json(f.cofactor)},
               {"remainder", weyl_to_json(WeylElement<Rational>::from_poly(f.remainder))}};
      std::ostringstream text;
      text << "member: " << (mr.member ? "true" : "false") << "\n"
           << "residual: " << to_string(mr.residual) << "\n"
           << "cofactor: " << to_string(f.cofactor) << "\n"
           << "remainder: " << to_string(f.remainder) << "\n";
      detail::emit(out, json, doc, text.str());
    } else if (*basis) {
      auto cs = basis_decompose(parse_x(expr));
      Json coords = Json::array();
      std::ostringstream text;
      for (const auto& [kt, c] : cs) {
        coords.push_back(Json{{"k", kt.first}, {"t", kt.second}, {"coeff", to_fraction_string(c)}});
        text << "(k=" << kt.first << ", t=" << kt.second << "): " << to_string(c) << "\n";
      }
      detail::emit(out, json, Json{{"variable", "x"}, {"coordinates", std::move(coords)}},
                   text.str());
    } else if (*factor) {
      auto f = divide_by_G(parse_x(expr));
      Json doc{{"cofactor", weyl_to_json(f.cofactor)},
               {"remainder", weyl_to_json(WeylElement<Rational>::from_poly(f.remainder))}};
      std::ostringstream text;
      text << "cofactor: " << to_string(f.cofactor) << "\n"
           << "remainder: " << to_string(f.remainder) << "\n";
      detail::emit(out, json, doc, text.str());
    } else if (*herm) {
      auto h = hermite(hermite_n);
      detail::emit(out, json, weyl_to_json(WeylElement<Rational>::from_poly(h)),
                   to_string(h) + "\n");
    } else if (*mul) {
      WeylElement<GaussianRational> p =
          (mode == "x") ? to_gaussian(weyl_mul(parse_x(expr), parse_x(expr2)))
                        : weyl_mul(parse_t(expr), parse_t(expr2));
      detail::emit(out, json, weyl_to_json(p), to_string(p) + "\n");
    } else if (*fourier) {
      auto image = inverse ? display_normalized(psi_inverse(parse_t(expr)))
                           : display_normalized(psi(parse_x(expr)));
      detail::emit(out, json, weyl_to_json(image), to_string(image) + "\n");
    } else if (*annihilates) {
      Rational s2 = 1, mu = 0;
      for (const std::string& item : detail::split(detail::strip_spaces(cf_text), ',')) {
        size_t eq = item.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("cf: expected key=value, got \"" + item + "\"");
        std::string key = item.substr(0, eq);
        Rational value = detail::rational_literal(item.substr(eq + 1));
        if (key == "sigma2")
          s2 = value;
        else if (key == "mu")
          mu = value;
        else
          throw std::invalid_argument("cf: takes sigma2 and mu, not \"" + key + "\"");
      }
      auto residual = act_on_cf(parse_t(expr), CFFamily(s2, mu));
      Json doc{{"annihilates", residual.is_zero()},
               {"residual", weyl_to_json(WeylElement<GaussianRational>::from_poly(residual))}};
      std::ostringstream text;
      text << "annihilates: " << (residual.is_zero() ? "true" : "false") << "\n"
           << "residual: " << to_string(residual) << "\n";
      detail::emit(out, json, doc, text.str());
    } else if (*family) {
      std::vector<Rational> params;
      for (const std::string& p : params_text) params.push_back(detail::rational_literal(p));
      if (family_name == "random" && params.empty())
        params.push_back(Rational(static_cast<long>(seed)));
      auto S = make_operator(family_name, params);
      detail::emit(out, json, weyl_to_json(S), to_string(S) + "\n");
    } else if (*lclm_cmd) {
      auto L = lclm(OrePoly::from_weyl(parse_t(expr)), OrePoly::from_weyl(parse_t(expr2)));
      auto W = content_normalize(clear_denominators(L));
      detail::emit(out, json, weyl_to_json(W), to_string(W) + "\n");
    } else if (*mixture) {
      std::vector<Rational> variances, weights;
      for (const std::string& v : detail::split(detail::strip_spaces(sigma2_text), ','))
        variances.push_back(detail::rational_literal(v));
      if (!weights_text.empty())
        for (const std::string& w : detail::split(detail::strip_spaces(weights_text), ','))
          weights.push_back(detail::rational_literal(w));
      MixtureSpec spec(std::move(variances), std::move(weights));
      auto annihilator = mixture_annihilator(spec);
      auto S = mixture_stein_operator(spec);
      int n = (nodes > 0) ? nodes : detail::default_nodes();
      auto report = discrepancy_probe(S, spec, n);
      Json doc{{"operator", weyl_to_json(S)},
               {"annihilator", weyl_to_json(annihilator)},
               {"verification", detail::verification_json(report, n)}};
      std::ostringstream text;
      text << "operator: " << to_string(S) << "\n"
           << "annihilator: " << to_string(annihilator) << "\n";
      detail::print_verification(text, "max discrepancy", report, n);
      detail::emit(out, json, doc, text.str());
    } else if (*intersect) {
      if (with_target != "semicircle")
        throw std::invalid_argument("intersect: only --with semicircle is available, got \"" +
                                    with_target + "\"");
      auto S = intersection_operator(semicircle_annihilator());
      int n = (nodes > 0) ? nodes : detail::default_nodes();
      auto g = discrepancy_probe(S, GaussianLaw{Rational(0), Rational(1)}, n);
      auto s = discrepancy_probe(S, SemicircleLaw{Rational(1)}, n);
      Json doc{{"operator", weyl_to_json(S)},
               {"gaussian", detail::verification_json(g, n)},
               {"semicircle", detail::verification_json(s, n)}};
      std::ostringstream text;
      text << "operator: " << to_string(S) << "\n";
      detail::print_verification(text, "gaussian max discrepancy", g, n);
      detail::print_verification(text, "semicircle max discrepancy", s, n);
      detail::emit(out, json, doc, text.str());
    } else if (*classify_cmd) {
      std::vector<ClassificationReport> reports;
      if (opt_m->count() > 0)
        reports.push_back(classify(classify_m));
      else if (opt_upto->count() > 0)
        reports = classification_table(classify_upto);
      else
        throw std::invalid_argument("classify: need --m or --upto");
      detail::emit(out, json, detail::classification_json(reports),
                   detail::classification_text(reports));
    } else if (*verify) {
      auto S = parse_x(expr);
      auto dist = detail::parse_distribution(dist_text);
      int n = (nodes > 0) ? nodes : detail::default_nodes();
      auto fs = test_suite("v1");
      Json values = Json::array(), proxies = Json::array();
      double max_abs = 0.0;
      std::ostringstream text;
      text << "suite: v1\nnodes: " << n << "\n";
      for (size_t i = 0; i < fs.size(); ++i) {
        NumericExpectation e = numeric_expectation(S, fs[i], dist, n);
        values.push_back(e.value);
        proxies.push_back(e.error_proxy);
        max_abs = std::max(max_abs, std::abs(e.value));
        text << "f[" << i << "]: " << detail::sci(e.value) << " (proxy " << detail::sci(e.error_proxy)
             << ")\n";
      }
      text << "max |E|: " << detail::sci(max_abs) << "\n";
      Json doc{{"suite", "v1"},
               {"nodes", n},
               {"values", std::move(values)},
               {"error_proxies", std::move(proxies)},
               {"max_abs", max_abs}};
      detail::emit(out, json, doc, text.str());
    }
    return 0;
  } catch (const ParseError& e) {
    err << "error: " << detail::one_line(e.what()) << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << detail::one_line(e.what()) << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << detail::one_line(e.what()) << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << detail::one_line(e.what()) << "\n";
    return 2;
  }
}

}  // namespace pso
