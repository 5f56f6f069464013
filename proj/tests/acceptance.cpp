// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "twreal/cli.hpp"
#include "twreal/twreal.hpp"

using namespace twreal;

namespace {

constexpr double kAxiomTol = 1e-12;
constexpr double kDerivationTol = 1e-12;
constexpr double kDistanceRelTol = 1e-9;
constexpr double kBruteForceRelTol = 1e-6;
constexpr double kOrbitTol = 1e-12;
constexpr double kConformalTol = 1e-12;
constexpr double kSquareTol = 1e-9;

constexpr int kDistanceDraws = 100;
constexpr int kOrbitDraws = 1000;
constexpr int kClosureDraws = 100;
constexpr int kChiralDraws = 250;
constexpr int kOmegaDraws = 100;
constexpr int kConformalDraws = 100;
constexpr int kScanTrials = 1000;
constexpr int kPipelineDraws = 20;

constexpr std::uint64_t kSeed = 20240611;

const double kGridRho[] = {0.1, 0.25, 0.5, 0.7, 0.9};
const double kGridZeta[] = {0.5, 1.0, 2.0};

const FamilyId kFamilies[] = {FamilyId::c3_untwisted, FamilyId::c3_perm,      FamilyId::c4_untwisted,
                              FamilyId::c4_perm,      FamilyId::c3_conformal, FamilyId::c4_conformal};

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
public:
  explicit Tally(std::string name) : name_(std::move(name)) {}
  void add(bool ok) {
    ++total_;
    ok_ += ok ? 1 : 0;
  }
  bool pass() const { return total_ > 0 && ok_ == total_; }
  std::string text() const { return name_ + " " + std::to_string(ok_) + "/" + std::to_string(total_); }

private:
  std::string name_;
  int ok_ = 0;
  int total_ = 0;
};

Outcome combine(std::initializer_list<const Tally*> parts, std::string extra = {}) {
  Outcome o;
  for (const Tally* t : parts) {
    o.pass = o.pass && t->pass();
    o.detail += (o.detail.empty() ? "" : ", ") + t->text();
  }
  if (!extra.empty()) o.detail += "; " + extra;
  return o;
}

class Draw {
public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Complex complex(double scale = 2.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }
  Complex modulus_in(double lo, double hi) { return std::polar(uniform(lo, hi), uniform(0.0, 2.0 * M_PI)); }
  Sign sign() { return uniform(0.0, 1.0) < 0.5 ? Sign::plus : Sign::minus; }
  /// phi away from the degenerate points 1 - phi = 0 and 1 - phi - phi* = 0.
  Complex phi() {
    for (;;) {
      const Complex p = complex();
      if (std::abs(1.0 - p) > 1e-3 && std::abs(1.0 - 2.0 * p.real()) > 1e-3) return p;
    }
  }

  FamilyParams params(FamilyId id, Sign ep) {
    FamilyParams p;
    p.id = id;
    p.eps_prime = ep;
    const Complex unit = ep == Sign::plus ? Complex(1.0) : Complex(0.0, 1.0);
    if (id == FamilyId::c3_perm) {
      p.d1 = uniform(0.2, 3.0) * unit;
      p.d2 = uniform(-3.0, 3.0) * unit;
    } else {
      p.d1 = modulus_in(0.2, 3.0);
      p.d2 = modulus_in(0.2, 3.0);
    }
    p.rho = uniform(0.05, 0.95);
    p.zeta = uniform(0.3, 2.0);
    return p;
  }

private:
  std::mt19937_64 rng_;
};

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

ToleranceConfig axiom_tol() {
  ToleranceConfig t;
  t.abs_tol = kAxiomTol;
  return t;
}

std::vector<FamilyParams> fixed_catalog() {
  std::vector<FamilyParams> out;
  for (Sign ep : {Sign::plus, Sign::minus}) {
    const Complex unit = ep == Sign::plus ? Complex(1.0) : Complex(0.0, 1.0);
    out.push_back({FamilyId::c3_untwisted, ep, Complex(1.3, -0.4), 0.0});
    out.push_back({FamilyId::c3_perm, ep, 1.3 * unit, -0.8 * unit});
    out.push_back({FamilyId::c4_untwisted, ep, Complex(1.3, -0.4), Complex(0.7, 2.1)});
    out.push_back({FamilyId::c4_perm, ep, Complex(1.3, -0.4), Complex(0.7, 2.1)});
  }
  return out;
}

std::vector<FamilyParams> conformal_grid() {
  std::vector<FamilyParams> out;
  for (FamilyId id : {FamilyId::c3_conformal, FamilyId::c4_conformal}) {
    for (Sign ep : {Sign::plus, Sign::minus}) {
      for (double rho : kGridRho) {
        for (double zeta : kGridZeta) {
          out.push_back({id, ep, Complex(1.3, -0.4), Complex(0.7, 2.1), zeta, rho});
        }
      }
    }
  }
  return out;
}

Outcome criterion_axioms() {
  Tally plain("fixed catalog"), conf("conformal grid");
  double worst = 0.0;
  for (const auto& p : fixed_catalog()) {
    const auto r = check_all(catalog::build_family(p), axiom_tol());
    plain.add(r.passed());
    worst = std::max(worst, r.max_residual());
  }
  for (const auto& p : conformal_grid()) {
    const auto r = check_all(catalog::build_family(p), axiom_tol());
    conf.add(r.passed());
    worst = std::max(worst, r.max_residual());
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max residual %.2e", worst);
  return combine({&plain, &conf}, buf);
}

Outcome criterion_negative() {
  Draw d(kSeed + 2);
  Tally bad("block-swap twist fails only regularity"), comp("composite fails regularity for rho != 1/2");
  for (int k = 0; k < 20; ++k) {
    const auto t = catalog::build_c4(Sign::plus, d.modulus_in(0.2, 3.0), d.complex(), catalog::C4Twist::perm_bad);
    bad.add(check_all(t).failing() == std::vector<std::string>{check_names::regularity});
  }
  for (Sign ep : {Sign::plus, Sign::minus}) {
    const auto t = catalog::build_c4(ep, Complex(1.3, -0.4), Complex(0.7, 2.1), catalog::C4Twist::perm);
    for (double rho : kGridRho) {
      if (rho == 0.5) continue;
      for (double zeta : kGridZeta) {
        const auto r = composite_twist(t, ConformalFactor{zeta, rho});
        comp.add(!check_twisted_regularity(r).pass);
      }
    }
  }
  return combine({&bad, &comp});
}

Outcome criterion_derivation() {
  struct Expect {
    FamilyId id;
    std::size_t stated_dimension;
  };
  const Expect expect[] = {{FamilyId::c3_untwisted, 4},
                           {FamilyId::c3_perm, 2},
                           {FamilyId::c4_untwisted, 4},
                           {FamilyId::c4_perm, 4}};
  Tally rel("relations"), dim("dimensions");
  std::string found;
  for (const auto& e : expect) {
    for (Sign ep : {Sign::plus, Sign::minus}) {
      const auto fam = catalog::derive_family(e.id, ep);
      bool ok = true;
      for (const auto& b : fam.basis) ok = ok && fam.relation_residual(b) < kDerivationTol;
      rel.add(ok);
      dim.add(fam.real_dimension() == e.stated_dimension);
      if (ep == Sign::plus) {
        found += (found.empty() ? "" : " ") + to_string(e.id) + "=" + std::to_string(fam.real_dimension()) +
                 "(stated " + std::to_string(e.stated_dimension) + ")";
      }
    }
  }
  return combine({&rel, &dim}, found);
}

Outcome criterion_distance() {
  Draw d(kSeed + 4);
  Tally c3("1/|d1|"), c4("1/max(|d1|,|d2|)"), conf("1/(rho^2 zeta^2 |d1|)"), fl("fluctuated 1/|1-phi| d_D"),
      perm("fluctuated 1/max(|1-phi-phi*||d1|,|d2|)"), c4c("fluctuated conformal C4"), brute("brute force");
  auto brute_check = [&](const SpectralTriple& t, double exact, int k) {
    brute.add(rel_close(distance_bruteforce(t, 64, kSeed + k), exact, kBruteForceRelTol));
  };
  for (int k = 0; k < kDistanceDraws; ++k) {
    {
      const auto p = d.params(FamilyId::c3_untwisted, d.sign());
      const auto t = catalog::build_family(p);
      const double v = *spectral_distance(t).value;
      c3.add(rel_close(v, 1.0 / std::abs(p.d1), kDistanceRelTol));
      brute_check(t, v, k);
    }
    {
      const auto p = d.params(FamilyId::c4_untwisted, d.sign());
      const auto t = catalog::build_family(p);
      const double v = *spectral_distance(t).value;
      c4.add(rel_close(v, 1.0 / std::max(std::abs(p.d1), std::abs(p.d2)), kDistanceRelTol));
      brute_check(t, v, k);
    }
    {
      const auto p = d.params(FamilyId::c3_conformal, d.sign());
      const auto t = catalog::build_family(p);
      const double v = *spectral_distance(t).value;
      conf.add(rel_close(v, 1.0 / (p.rho * p.rho * p.zeta * p.zeta * std::abs(p.d1)), kDistanceRelTol));
      brute_check(t, v, k);
    }
    for (FamilyId id : {FamilyId::c3_untwisted, FamilyId::c4_untwisted}) {
      const auto p = d.params(id, d.sign());
      const Complex phi = d.phi();
      const auto t = catalog::build_family(p);
      const auto f = fluctuate(t, phi);
      const double v = *spectral_distance(f).value;
      fl.add(rel_close(v, *spectral_distance(t).value / std::abs(1.0 - phi), kDistanceRelTol));
      brute_check(f, v, k);
    }
    {
      const auto p = d.params(FamilyId::c3_perm, d.sign());
      const Complex phi = d.phi();
      const auto f = fluctuate(catalog::build_family(p), phi);
      const double v = *spectral_distance(f).value;
      const double stated =
          1.0 / std::max(std::abs(1.0 - phi - std::conj(phi)) * std::abs(p.d1), std::abs(p.d2));
      perm.add(rel_close(v, stated, kDistanceRelTol));
      brute_check(f, v, k);
    }
    {
      const auto p = d.params(FamilyId::c4_conformal, d.sign());
      const Complex phi = d.phi();
      const auto f = fluctuate(catalog::build_family(p), phi);
      const double v = *spectral_distance(f).value;
      const double expected =
          1.0 / (p.zeta * p.zeta * std::abs(1.0 - phi) *
                 std::max(p.rho * p.rho * std::abs(p.d1), (1 - p.rho) * (1 - p.rho) * std::abs(p.d2)));
      c4c.add(rel_close(v, expected, kDistanceRelTol));
      brute_check(f, v, k);
    }
  }
  return combine({&c3, &c4, &conf, &fl, &perm, &c4c, &brute});
}

Outcome criterion_orbits() {
  Draw d(kSeed + 5);
  Tally orbit("parameter maps"), closure("semigroup closure");
  for (FamilyId id : kFamilies) {
    for (int k = 0; k < kOrbitDraws; ++k) {
      const auto p = d.params(id, d.sign());
      const Complex phi = d.complex();
      const auto t = catalog::build_family(p);
      const auto f = fluctuate(t, phi);
      const bool c3 = is_c3(id);
      const auto [n1, n2] =
          catalog::fluctuation_orbit_params(id, t.dirac(0, 2), c3 ? t.dirac(0, 1) : t.dirac(1, 3), phi);
      orbit.add(std::abs(f.dirac(0, 2) - n1) < kOrbitTol &&
                std::abs((c3 ? f.dirac(0, 1) : f.dirac(1, 3)) - n2) < kOrbitTol);
    }
    for (int k = 0; k < kClosureDraws; ++k) {
      const auto t = catalog::build_family(d.params(id, d.sign()));
      const auto twice = fluctuate(fluctuate(t, d.complex()), d.complex());
      closure.add(is_fluctuation_of(t, twice).has_value());
    }
  }
  return combine({&orbit, &closure});
}

Outcome criterion_chiral() {
  Draw d(kSeed + 6);
  Tally untw("C3 untwisted"), perm("C3 permutation twist");
  for (int k = 0; k < kChiralDraws; ++k) {
    for (FamilyId id : {FamilyId::c3_untwisted, FamilyId::c3_perm}) {
      const auto t = catalog::build_family(d.params(id, d.sign()));
      const auto c = fluctuate_chiral(t, d.complex());
      (id == FamilyId::c3_perm ? perm : untw).add(is_fluctuation_of(t, c).has_value());
    }
  }
  return combine({&untw, &perm});
}

Outcome criterion_omega1() {
  Draw d(kSeed + 7);
  Tally fl("fluctuation"), resc3("rescaling C3"), resc4("rescaling C4");
  std::vector<FamilyParams> triples = fixed_catalog();
  for (const auto& p : conformal_grid()) triples.push_back(p);
  for (const auto& p : triples) {
    const auto t = catalog::build_family(p);
    for (int k = 0; k < kOmegaDraws; ++k) {
      fl.add(omega1_equal(t, fluctuate(t, d.phi())));
    }
  }
  for (const auto& p : fixed_catalog()) {
    if (p.id != FamilyId::c3_untwisted && p.id != FamilyId::c4_untwisted) continue;
    const auto t = catalog::build_family(p);
    for (double rho : kGridRho) {
      for (double zeta : kGridZeta) {
        (p.id == FamilyId::c3_untwisted ? resc3 : resc4).add(omega1_equal(t, rescale(t, ConformalFactor{zeta, rho})));
      }
    }
  }
  return combine({&fl, &resc3, &resc4});
}

Outcome criterion_conformal() {
  Draw d(kSeed + 8);
  Tally equiv("algebra vs commutant factor"), gauge("A = kBk"), square_diag("(D_kJ)^2 diagonal entries"),
      square_off("(D_kJ)^2 off-diagonal zeros"), signs("signs and grading kept");
  int multiplier_ok = 0;
  for (int k = 0; k < kConformalDraws; ++k) {
    const Sign ep = d.sign();
    const Complex d1 = d.modulus_in(0.2, 3.0);
    const double rho = d.uniform(0.05, 0.95), zeta = d.uniform(0.3, 2.0);
    const ConformalFactor kf{zeta, rho, FactorSide::algebra};
    const auto t = catalog::build_c3(ep, d1, std::nullopt, catalog::C3Twist::none);

    const auto ra = rescale(t, kf), rh = rescale(t, equivalent_commutant_factor(kf));
    equiv.add(operator_norm(ra.dirac - rh.dirac) < kConformalTol &&
              operator_norm(ra.twist_matrix() - rh.twist_matrix()) < kConformalTol);

    const Complex b_phi = d.complex();
    const auto t4 = catalog::build_c4(ep, d1, d.modulus_in(0.2, 3.0), catalog::C4Twist::none);
    for (const auto* base : {&t, &t4}) {
      gauge.add(gauge_conformal_residual(*base, kf, b_phi, GaugeSandwich::algebra_element) < kConformalTol);
      multiplier_ok +=
          gauge_conformal_residual(*base, kf, b_phi, GaugeSandwich::rescaling_multiplier) < kConformalTol;
    }

    const CMatrix sq = ra.dirac * ra.dirac;
    const double s = std::pow(zeta, 4) * std::norm(d1);
    const CMatrix stated = CMatrix::diagonal(
        {s * rho * rho * ((1 - rho) * (1 - rho) + rho * rho), s * rho * rho * (1 - rho) * (1 - rho), s * std::pow(rho, 4)});
    double diag_err = 0.0, off_err = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        (i == j ? diag_err : off_err) = std::max(i == j ? diag_err : off_err, std::abs(sq(i, j) - stated(i, j)));
      }
    }
    square_diag.add(diag_err < kSquareTol * (1.0 + s));
    square_off.add(off_err < kSquareTol * (1.0 + s));

    for (const auto* base : {&t, &t4}) {
      const auto r = rescale(*base, kf);
      signs.add(r.real->signs == base->real->signs && r.grading && *r.grading == *base->grading &&
                check_all(r).passed());
    }
  }
  return combine({&equiv, &gauge, &square_diag, &square_off, &signs},
                 "A = k_J B k_J holds " + std::to_string(multiplier_ok) + "/" + std::to_string(2 * kConformalDraws));
}

Outcome criterion_c2() {
  const auto r = catalog::scan_c2_nonexistence(kScanTrials, kSeed);
  Tally scan("scan order-one failures"), irr("C2 irreducible");
  scan.add(r.conclusion && r.trials == kScanTrials);
  Draw d(kSeed + 9);
  for (int k = 0; k < 100; ++k) {
    irr.add(is_irreducible(catalog::build_c2(d.modulus_in(0.1, 3.0))));
  }
  return combine({&scan, &irr}, std::to_string(r.failures_of_order_one) + "/" +
                                    std::to_string(r.combinations_tested) + " J candidates fail order one");
}

struct CliResult {
  int code;
  std::string out;
};

CliResult cli_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion_cli() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("twreal_acceptance_" + std::to_string(kSeed));
  fs::create_directories(dir);
  Draw d(kSeed + 10);
  Tally exits("exit codes"), bytes("save/load/save bytes"), numbers("distances bit-exact");

  struct Shape {
    FamilyId id;
    std::string family, twist;
  };
  const Shape shapes[] = {{FamilyId::c3_untwisted, "c3", "none"}, {FamilyId::c3_perm, "c3", "perm"},
                          {FamilyId::c4_untwisted, "c4", "none"}, {FamilyId::c4_perm, "c4", "perm"},
                          {FamilyId::c3_conformal, "c3", "conformal"}, {FamilyId::c4_conformal, "c4", "conformal"}};
  int n = 0;
  for (const auto& s : shapes) {
    for (int k = 0; k < kPipelineDraws; ++k, ++n) {
      const auto p = d.params(s.id, d.sign());
      const Complex phi = d.phi();
      const auto base = dir / ("base" + std::to_string(n) + ".json");
      const auto fl = dir / ("fl" + std::to_string(n) + ".json");
      std::vector<std::string> args = {"catalog", s.family, "--eps-prime", p.eps_prime == Sign::plus ? "1" : "-1",
                                       "--d1",    cli::fmt(p.d1), "--twist", s.twist,
                                       "--rho",   cli::fmt(p.rho), "--zeta", cli::fmt(p.zeta),
                                       "-o",      base.string()};
      if (s.id != FamilyId::c3_untwisted && s.id != FamilyId::c3_conformal) {
        args.insert(args.end(), {"--d2", cli::fmt(p.d2)});
      }
      exits.add(cli_run(args).code == 0);
      exits.add(cli_run({"check", base.string()}).code == 0);
      exits.add(cli_run({"fluctuate", base.string(), "--phi", cli::fmt(phi), "-o", fl.string()}).code == 0);
      const auto dist = cli_run({"distance", fl.string()});
      exits.add(dist.code == 0);

      for (const auto& f : {base, fl}) {
        const std::string text = read_file(f);
        bytes.add(document::save(document::load(text)) == text);
      }

      const auto expected = spectral_distance(fluctuate(catalog::build_family(p), phi));
      const std::string prefix = "distance: ";
      const auto pos = dist.out.find(prefix);
      bool ok = pos != std::string::npos && expected.value;
      if (ok) {
        const double printed = std::strtod(dist.out.c_str() + pos + prefix.size(), nullptr);
        ok = printed == *expected.value;
      }
      numbers.add(ok);
    }
  }
  fs::remove_all(dir);
  return combine({&exits, &bytes, &numbers});
}

} // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"axiom suite on catalog triples", criterion_axioms},
      {"negative fixtures", criterion_negative},
      {"constraint derivation", criterion_derivation},
      {"distance formulas", criterion_distance},
      {"fluctuation orbits", criterion_orbits},
      {"chiral equivalence on C3", criterion_chiral},
      {"one-form invariance", criterion_omega1},
      {"conformal identities", criterion_conformal},
      {"C2 nonexistence and irreducibility", criterion_c2},
      {"CLI round trip", criterion_cli},
  };
  int failed = 0;
  int index = 1;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2d %s  %s: %s\n", index++, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
