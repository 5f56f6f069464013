#pragma once

/// Command-line driver. Exit codes: 0 pass, 1 check failure, 2 usage, parse
/// or invariant error.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twreal/catalog.hpp"
#include "twreal/conformal.hpp"
#include "twreal/distance.hpp"
#include "twreal/document.hpp"
#include "twreal/error.hpp"
#include "twreal/forms.hpp"
#include "twreal/triple.hpp"

namespace twreal::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_error = 2;

/// "re,im" with '.' as decimal separator.
inline Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw InvalidInput("complex literal must be 're,im', got '" + text + "'");
  }
  auto number = [&](std::size_t from, std::size_t to) {
    double v = 0.0;
    const char* first = text.data() + from;
    const char* last = text.data() + to;
    if (first != last && *first == '+') {
      ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
      throw InvalidInput("complex literal must be 're,im', got '" + text + "'");
    }
    return v;
  };
  return {number(0, comma), number(comma + 1, text.size())};
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fmt(Complex z) { return fmt(z.real()) + "," + fmt(z.imag()); }

namespace detail {

struct Options {
  double tol = ToleranceConfig{}.abs_tol;
  bool json = false;

  std::string file;
  std::string output;

  std::string family;
  int eps_prime = 1;
  std::string d1 = "1,0";
  std::string d2;
  std::string twist = "none";
  double rho = 0.5;
  double zeta = 1.0;
  std::string side = "algebra";

  std::string phi = "0,0";
  bool chiral = false;

  int trials = 100;
  std::uint64_t seed = 42;

  int eps = 1;
  std::optional<int> eps_dprime;
};

inline ToleranceConfig tolerance(const Options& o) {
  ToleranceConfig t;
  t.abs_tol = o.tol;
  return t;
}

inline void emit(const SpectralTriple& t, const Options& o, std::ostream& out) {
  const std::string text = document::save(t);
  if (o.output.empty()) {
    out << text;
  } else {
    document::save_file(t, o.output);
  }
}

inline FactorSide parse_side(const std::string& s) {
  if (s == "algebra") {
    return FactorSide::algebra;
  }
  if (s == "commutant") {
    return FactorSide::commutant_image;
  }
  throw InvalidInput("--side must be 'algebra' or 'commutant'");
}

inline int cmd_check(const Options& o, std::ostream& out) {
  const SpectralTriple t = document::load_file(o.file);
  const ToleranceConfig tol = tolerance(o);
  const CheckReport report = check_all(t, tol);
  std::optional<int> ko;
  if (t.real) {
    try {
      ko = ko_dimension(t.real->signs);
    } catch (const InvalidInput&) {
    }
  }
  const bool irreducible = is_irreducible(t, tol);

  if (o.json) {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const auto& e : report.entries) {
      j["checks"].push_back({{"condition", e.condition}, {"residual", e.residual}, {"tol", e.tol_used},
                             {"pass", e.pass}});
    }
    j["passed"] = report.passed();
    j["ko_dimension"] = ko ? nlohmann::json(*ko) : nlohmann::json(nullptr);
    j["irreducible"] = irreducible;
    out << j.dump(2) << "\n";
  } else {
    char line[160];
    std::snprintf(line, sizeof line, "%-32s %-24s %s\n", "condition", "residual", "pass");
    out << line;
    for (const auto& e : report.entries) {
      std::snprintf(line, sizeof line, "%-32s %-24.6e %s\n", e.condition.c_str(), e.residual,
                    e.pass ? "PASS" : "FAIL");
      out << line;
    }
    out << "ko_dimension: " << (ko ? std::to_string(*ko) : std::string("n/a")) << "\n";
    out << "irreducible: " << (irreducible ? "yes" : "no") << "\n";
    out << (report.passed() ? "all checks passed" : "some checks failed") << "\n";
  }
  return report.passed() ? exit_ok : exit_check_failed;
}

inline int cmd_catalog(const Options& o, std::ostream& out) {
  const ToleranceConfig tol = tolerance(o);
  const Sign ep = sign_from_int(o.eps_prime);
  const Complex d1 = parse_complex(o.d1);
  const std::optional<Complex> d2 = o.d2.empty() ? std::nullopt : std::optional<Complex>(parse_complex(o.d2));
  const bool conformal = o.twist == "conformal";
  if (!conformal && o.twist != "none" && o.twist != "perm" && o.twist != "perm_bad") {
    throw InvalidInput("--twist must be none, perm, perm_bad or conformal");
  }

  SpectralTriple t = [&] {
    if (o.family == "c3") {
      if (o.twist == "perm_bad") {
        throw InvalidInput("perm_bad is only defined on c4");
      }
      return catalog::build_c3(ep, d1, d2, o.twist == "perm" ? catalog::C3Twist::perm : catalog::C3Twist::none,
                               tol);
    }
    if (o.family == "c4") {
      const auto kind = o.twist == "perm"       ? catalog::C4Twist::perm
                        : o.twist == "perm_bad" ? catalog::C4Twist::perm_bad
                                                : catalog::C4Twist::none;
      return catalog::build_c4(ep, d1, d2.value_or(0.0), kind, tol);
    }
    throw InvalidInput("family must be c3 or c4, got '" + o.family + "'");
  }();
  if (conformal) {
    t = rescale(t, ConformalFactor{o.zeta, o.rho, parse_side(o.side)}, tol);
  }
  emit(t, o, out);
  return exit_ok;
}

/// (d1, d2) read from the Dirac operator when t has a catalog shape.
inline std::optional<std::pair<Complex, Complex>> catalog_params(const SpectralTriple& t) {
  if (!t.real) {
    return std::nullopt;
  }
  const CMatrix& u = t.real->j.unitary_part;
  if (t.rep == catalog::c3_rep() && u == catalog::c3_j().unitary_part) {
    return std::make_pair(t.dirac(0, 2), t.dirac(0, 1));
  }
  if (t.rep == catalog::c4_rep() && u == catalog::c4_j().unitary_part) {
    return std::make_pair(t.dirac(0, 2), t.dirac(1, 3));
  }
  return std::nullopt;
}

inline int cmd_fluctuate(const Options& o, std::ostream& out, std::ostream& err) {
  const ToleranceConfig tol = tolerance(o);
  const SpectralTriple t = document::load_file(o.file);
  const Complex phi = parse_complex(o.phi);
  const SpectralTriple f = o.chiral ? fluctuate_chiral(t, phi, tol) : fluctuate(t, phi, tol);
  emit(f, o, out);
  const auto before = catalog_params(t);
  const auto after = catalog_params(f);
  if (before && after) {
    // Parameters go to stderr when the document itself is written to stdout.
    std::ostream& info = o.output.empty() ? err : out;
    info << "d1: " << fmt(before->first) << " -> " << fmt(after->first) << "\n";
    info << "d2: " << fmt(before->second) << " -> " << fmt(after->second) << "\n";
  }
  return exit_ok;
}

inline int cmd_rescale(const Options& o, std::ostream& out) {
  const ToleranceConfig tol = tolerance(o);
  const SpectralTriple t = document::load_file(o.file);
  emit(rescale(t, ConformalFactor{o.zeta, o.rho, parse_side(o.side)}, tol), o, out);
  return exit_ok;
}

inline int cmd_distance(const Options& o, std::ostream& out) {
  const ToleranceConfig tol = tolerance(o);
  const DistanceResult r = spectral_distance(document::load_file(o.file), tol);
  if (o.json) {
    nlohmann::json j;
    j["distance"] = r.value ? nlohmann::json(*r.value) : nlohmann::json("unbounded");
    j["norm_de"] = r.norm_de;
    out << j.dump(2) << "\n";
  } else {
    out << "distance: " << (r.value ? fmt(*r.value) : std::string("unbounded")) << "\n";
    out << "norm_de: " << fmt(r.norm_de) << "\n";
  }
  return exit_ok;
}

inline int cmd_scan_c2(const Options& o, std::ostream& out) {
  const catalog::ScanReport r = catalog::scan_c2_nonexistence(o.trials, o.seed, tolerance(o));
  if (o.json) {
    nlohmann::json j;
    j["trials"] = r.trials;
    j["combinations_tested"] = r.combinations_tested;
    j["failures_of_order_one"] = r.failures_of_order_one;
    j["rejected_samples"] = r.rejected_samples;
    j["j_shapes_tested"] = r.j_shapes_tested;
    j["conclusion"] = r.conclusion;
    out << j.dump(2) << "\n";
  } else {
    out << "trials: " << r.trials << "\n";
    out << "combinations tested: " << r.combinations_tested << "\n";
    out << "order-one failures: " << r.failures_of_order_one << "\n";
    out << "rejected samples: " << r.rejected_samples << "\n";
    out << "J shapes:";
    for (const auto& s : r.j_shapes_tested) {
      out << " " << s;
    }
    out << "\nconclusion: " << (r.conclusion ? "no real structure satisfies order one" : "counterexample found")
        << "\n";
  }
  return r.conclusion ? exit_ok : exit_check_failed;
}

inline int cmd_kodim(const Options& o, std::ostream& out) {
  SignTriple s{sign_from_int(o.eps), sign_from_int(o.eps_prime), std::nullopt};
  if (o.eps_dprime) {
    s.eps_dprime = sign_from_int(*o.eps_dprime);
  }
  out << ko_dimension(s) << "\n";
  return exit_ok;
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Checks for finite real spectral triples with twisted reality over two points", "twreal"};
  app.require_subcommand(1);
  app.add_option("--tol", o.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--json", o.json, "Machine-readable output");

  auto* check = app.add_subcommand("check", "Run every axiom check on a triple document");
  check->add_option("file", o.file)->required();

  auto* cat = app.add_subcommand("catalog", "Write a catalog triple");
  cat->add_option("family", o.family, "c3 or c4")->required();
  cat->add_option("--eps-prime", o.eps_prime);
  cat->add_option("--d1", o.d1, "re,im");
  cat->add_option("--d2", o.d2, "re,im");
  cat->add_option("--twist", o.twist, "none, perm, perm_bad or conformal");
  cat->add_option("--rho", o.rho);
  cat->add_option("--zeta", o.zeta);
  cat->add_option("--side", o.side, "algebra or commutant");
  cat->add_option("-o,--output", o.output);

  auto* fl = app.add_subcommand("fluctuate", "Gauge (or chiral) fluctuation of a triple");
  fl->add_option("file", o.file)->required();
  fl->add_option("--phi", o.phi, "re,im");
  fl->add_flag("--chiral", o.chiral);
  fl->add_option("-o,--output", o.output);

  auto* rs = app.add_subcommand("rescale", "Conformal rescaling of an untwisted triple");
  rs->add_option("file", o.file)->required();
  rs->add_option("--rho", o.rho);
  rs->add_option("--zeta", o.zeta);
  rs->add_option("--side", o.side, "algebra or commutant");
  rs->add_option("-o,--output", o.output);

  auto* dist = app.add_subcommand("distance", "Spectral distance between the two points");
  dist->add_option("file", o.file)->required();

  auto* scan = app.add_subcommand("scan-c2", "Sampled search for a real structure on C^2");
  scan->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
  scan->add_option("--seed", o.seed);

  auto* ko = app.add_subcommand("kodim", "KO-dimension from the sign table");
  ko->add_option("--eps", o.eps)->required();
  ko->add_option("--eps-prime", o.eps_prime)->required();
  ko->add_option("--eps-dprime", o.eps_dprime);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_error;
  }

  try {
    if (check->parsed()) return detail::cmd_check(o, out);
    if (cat->parsed()) return detail::cmd_catalog(o, out);
    if (fl->parsed()) return detail::cmd_fluctuate(o, out, err);
    if (rs->parsed()) return detail::cmd_rescale(o, out);
    if (dist->parsed()) return detail::cmd_distance(o, out);
    if (scan->parsed()) return detail::cmd_scan_c2(o, out);
    if (ko->parsed()) return detail::cmd_kodim(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}

} // namespace twreal::cli
