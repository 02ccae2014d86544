#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcaforms/suites.hpp"

namespace lcaforms::cli {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

/// "2,3" -> {2, 3}. The empty string is the trivial group.
inline std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  if (s.empty()) return out;
  for (const auto& p : split(s, ',')) out.push_back(parse_int(p));
  return out;
}

inline GroupElement parse_coords(const FiniteAbelianGroup& g, const std::string& s) {
  GroupElement x{parse_int_list(s)};
  if (x.coords.size() != g.rank()) {
    throw std::invalid_argument("element '" + s + "' has " + std::to_string(x.coords.size()) +
                                " coordinates, group has " + std::to_string(g.rank()));
  }
  return g.reduce(x);
}

/// haar:K=<gens> (generators split by ';', coordinates by ','), point:x=<coords>,
/// twopoint:a=<coords>, uniform, random:seed=<u64>.
inline Dist parse_dist(const FiniteAbelianGroup& g, const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::string key;
  std::string value;
  if (colon != std::string::npos) {
    const auto rest = spec.substr(colon + 1);
    const auto eq = rest.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value in '" + spec + "'");
    key = rest.substr(0, eq);
    value = rest.substr(eq + 1);
  }
  const auto need = [&](const char* k) {
    if (key != k) throw std::invalid_argument("'" + kind + "' takes " + k + "=, got '" + spec + "'");
  };
  if (kind == "uniform" && colon == std::string::npos) return Dist::uniform(g);
  if (kind == "haar") {
    need("K");
    std::vector<GroupElement> gens;
    if (!value.empty()) {
      for (const auto& part : split(value, ';')) gens.push_back(parse_coords(g, part));
    }
    return haar_on(Subgroup::generated(g, gens));
  }
  if (kind == "point") {
    need("x");
    return Dist::point(g, parse_coords(g, value));
  }
  if (kind == "twopoint") {
    need("a");
    const auto a = parse_coords(g, value);
    return half_mix(Dist::point(g, a), Dist::point(g, g.neg(a)));
  }
  if (kind == "random") {
    need("seed");
    Rng rng(static_cast<std::uint64_t>(std::stoull(value)));
    return random_dist(g, rng);
  }
  throw std::invalid_argument("unknown distribution '" + spec + "'");
}

/// "1:1/8,1/3:1/16" -> {1: 1/8, 1/3: 1/16}.
inline std::map<HaChar, Rational> parse_coefficients(const std::string& s) {
  std::map<HaChar, Rational> c;
  for (const auto& part : split(s, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("expected z:c in '" + part + "'");
    const auto z = HaChar::parse(part.substr(0, colon));
    try {
      c[z] = Rational(part.substr(colon + 1));
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("bad coefficient '" + part.substr(colon + 1) + "'");
    }
  }
  return c;
}

inline EquationMode parse_mode(const std::string& s) {
  if (s == "A") return EquationMode::A;
  if (s == "B") return EquationMode::B;
  throw std::invalid_argument("mode must be A or B");
}

inline LawKind parse_law(const std::string& s) {
  if (s == "sech") return LawKind::Sech;
  if (s == "twopoint") return LawKind::TwoPoint;
  if (s == "gaussian") return LawKind::Gaussian;
  throw std::invalid_argument("law must be sech, twopoint or gaussian");
}

/// Exit status: 0 every case as expected, 1 a verification failed, 2 usage
/// or configuration error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification suites for doubling-form characterizations on abelian groups",
               "lcaforms"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file mirroring the flags; flags win");

  std::string out_path;
  std::uint64_t seed = 1;
  app.add_option("--out", out_path, "write the JSON report here instead of stdout");
  app.add_option("--seed", seed, "unsigned 64-bit seed");

  std::string group;
  std::string mode = "A";
  auto* solve = app.add_subcommand("solve", "enumerate and classify solutions on a finite dual");
  solve->add_option("--group", group, "cyclic factors, e.g. 2,3")->required();
  solve->add_option("--mode", mode, "A or B");

  auto* family = app.add_subcommand("family", "list m_K and m_K*E_x over Corwin subgroups");
  family->add_option("--group", group, "cyclic factors")->required();

  std::string dist;
  auto* forms = app.add_subcommand("forms", "exact laws of the linear forms for one distribution");
  forms->add_option("--group", group, "cyclic factors")->required();
  forms->add_option("--dist", dist, "haar:K=.. | point:x=.. | twopoint:a=.. | uniform | random:seed=..")
      ->required();

  std::string a_list;
  double sigma = 1.0;
  std::int64_t max_numerator = 64;
  auto* solenoid = app.add_subcommand("solenoid", "sech characteristic function on H_a");
  solenoid->add_option("--a", a_list, "truncated sequence a_0,...,a_{d-1}")->required();
  solenoid->add_option("--sigma", sigma, "sech scale");
  solenoid->add_option("--max-numerator", max_numerator, "window numerator bound");

  std::string coefficients;
  auto* counter = app.add_subcommand("counterexample", "orbit-recursion function on H_a");
  counter->add_option("--a", a_list, "truncated sequence, all odd")->required();
  counter->add_option("--c", coefficients, "z:c pairs, e.g. 1:1/8,1/3:1/16");
  counter->add_option("--max-numerator", max_numerator, "window numerator bound");

  std::string law = "sech";
  double a_value = 1.0;
  std::size_t n = 200000;
  auto* mc = app.add_subcommand("mc", "Monte Carlo identity tests on the real line");
  mc->add_option("--law", law, "sech, twopoint or gaussian");
  mc->add_option("--sigma", sigma, "sech scale or Gaussian standard deviation");
  mc->add_option("--a", a_value, "two-point location");
  mc->add_option("--n", n, "sample size per side");

  bool all = false;
  auto* suite = app.add_subcommand("suite", "acceptance run");
  suite->add_flag("--all", all, "run every acceptance case")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  Report report;
  try {
    if (solve->parsed()) {
      report = suite_solve(FiniteAbelianGroup(parse_int_list(group)), parse_mode(mode));
    } else if (family->parsed()) {
      report = suite_family(FiniteAbelianGroup(parse_int_list(group)));
    } else if (forms->parsed()) {
      const FiniteAbelianGroup g(parse_int_list(group));
      report = suite_forms(parse_dist(g, dist), dist);
    } else if (solenoid->parsed()) {
      report = suite_solenoid(SolenoidBase(parse_int_list(a_list)), sigma, max_numerator, seed);
    } else if (counter->parsed()) {
      std::optional<std::map<HaChar, Rational>> c;
      if (!coefficients.empty()) c = parse_coefficients(coefficients);
      report = suite_counterexample(SolenoidBase(parse_int_list(a_list)), c, max_numerator, seed);
    } else if (mc->parsed()) {
      const auto kind = parse_law(law);
      report = suite_mc(kind, kind == LawKind::TwoPoint ? a_value : sigma, n, seed);
    } else {
      report = suite_all(seed);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: value out of range: " << e.what() << "\n";
    return 2;
  }

  const auto text = serialize(report);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << out_path << "\n";
      return 2;
    }
    file << text;
  }
  return report.overall() ? 0 : 1;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"lcaforms"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lcaforms::cli
