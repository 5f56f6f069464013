#pragma once

/// Builders for the concrete triples over the two-point algebra on C^2, C^3
/// and C^4, derivation of their Dirac families from the axioms, closed-form
/// fluctuation orbits, and the C^2 nonexistence scan.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "twreal/algebra.hpp"
#include "twreal/conformal.hpp"
#include "twreal/error.hpp"
#include "twreal/family.hpp"
#include "twreal/linalg.hpp"
#include "twreal/triple.hpp"

namespace twreal::catalog {

enum class C3Twist { none, perm };
enum class C4Twist { none, perm, perm_bad };

inline Representation c3_rep() { return Representation({0, 0, 1}, 2); }
inline Representation c4_rep() { return Representation({0, 0, 1, 1}, 2); }

inline CMatrix c3_grading() { return CMatrix::diagonal({1.0, -1.0, -1.0}); }
inline CMatrix c4_grading() { return CMatrix::diagonal({1.0, -1.0, -1.0, 1.0}); }

/// J = U o conj with U exchanging basis vectors 1 and 2.
inline Antiunitary c3_j() { return Antiunitary{CMatrix::permutation({0, 2, 1})}; }
inline Antiunitary c4_j() { return Antiunitary{CMatrix::permutation({0, 2, 1, 3})}; }

/// Exchange of basis vectors 1 and 2; an involution that does not map the
/// represented algebra into itself.
inline CMatrix c3_perm_twist() { return CMatrix::permutation({0, 2, 1}); }
/// Antidiagonal twist exchanging the two points.
inline CMatrix c4_perm_twist() { return CMatrix::permutation({3, 2, 1, 0}); }
/// Block-swap twist; also exchanges the points but breaks twisted regularity.
inline CMatrix c4_bad_perm_twist() { return CMatrix::permutation({2, 3, 0, 1}); }

namespace detail {

inline void require_close(Complex actual, Complex expected, const std::string& relation,
                          const ToleranceConfig& tol) {
  if (std::abs(actual - expected) >= tol.abs_tol) {
    throw InvalidInput("parameters violate " + relation);
  }
}

inline RealStructure even_real_structure(Antiunitary j, Sign eps_prime) {
  return RealStructure{std::move(j), SignTriple{Sign::plus, eps_prime, Sign::plus}};
}

} // namespace detail

/// C^3 triple. Untwisted: D(0,1) = d3 = eps' d1*; d2, when given, must
/// equal it. Permutation twist: d1, d2 real (eps' = +1) or imaginary
/// (eps' = -1).
inline SpectralTriple build_c3(Sign eps_prime, Complex d1, std::optional<Complex> d2, C3Twist twist,
                               const ToleranceConfig& tol = {}) {
  const double ep = value(eps_prime);
  Complex top = 0.0;
  std::optional<Twist> nu;
  if (twist == C3Twist::none) {
    top = ep * std::conj(d1);
    if (d2) {
      detail::require_close(*d2, top, "d3 = eps' d1*", tol);
    }
  } else {
    top = d2.value_or(0.0);
    detail::require_close(std::conj(d1), ep * d1, "d1* = eps' d1", tol);
    detail::require_close(std::conj(top), ep * top, "d2* = eps' d2", tol);
    nu = Twist{c3_perm_twist(), false};
  }
  CMatrix d{{0.0, top, d1}, {std::conj(top), 0.0, 0.0}, {std::conj(d1), 0.0, 0.0}};
  return SpectralTriple{c3_rep(), d, c3_grading(), detail::even_real_structure(c3_j(), eps_prime), nu};
}

/// C^4 triple with D(0,2) = d1, D(1,3) = d2. Untwisted: d3 = eps' d1*,
/// d4 = eps' d2*. Permutation twist: d3 = eps' d2, d4 = eps' d1.
/// perm_bad: the block-swap twist, whose epsilon'-family only exists for
/// eps' = +1 and forces D(1,3) = d1*, D(2,3) = D(0,1)*; the d2 argument
/// supplies D(0,1).
inline SpectralTriple build_c4(Sign eps_prime, Complex d1, Complex d2, C4Twist twist,
                               const ToleranceConfig& tol = {}) {
  (void)tol;
  const double ep = value(eps_prime);
  Complex d3, d4, d13;
  std::optional<Twist> nu;
  switch (twist) {
    case C4Twist::none:
      d13 = d2;
      d3 = ep * std::conj(d1);
      d4 = ep * std::conj(d2);
      break;
    case C4Twist::perm:
      d13 = d2;
      d3 = ep * d2;
      d4 = ep * d1;
      nu = Twist{c4_perm_twist(), true};
      break;
    case C4Twist::perm_bad:
      if (eps_prime != Sign::plus) {
        throw InvalidInput("perm_bad: the block-swap twist admits no nonzero Dirac operator for eps' = -1");
      }
      d13 = std::conj(d1);
      d3 = d2;
      d4 = std::conj(d2);
      nu = Twist{c4_bad_perm_twist(), true};
      break;
  }
  CMatrix d{{0.0, d3, d1, 0.0},
            {std::conj(d3), 0.0, 0.0, d13},
            {std::conj(d1), 0.0, 0.0, d4},
            {0.0, std::conj(d13), std::conj(d4), 0.0}};
  return SpectralTriple{c4_rep(), d, c4_grading(), detail::even_real_structure(c4_j(), eps_prime), nu};
}

/// C^2 triple with off-diagonal Dirac entry d, optionally with a real
/// structure U o conj.
inline SpectralTriple build_c2(Complex d, std::optional<RealStructure> real = std::nullopt) {
  CMatrix dirac{{0.0, d}, {std::conj(d), 0.0}};
  return SpectralTriple{Representation({0, 1}, 2), dirac, std::nullopt, std::move(real), std::nullopt};
}

inline SpectralTriple build_family(const FamilyParams& p, const ToleranceConfig& tol = {}) {
  switch (p.id) {
    case FamilyId::c3_untwisted: return build_c3(p.eps_prime, p.d1, std::nullopt, C3Twist::none, tol);
    case FamilyId::c3_perm: return build_c3(p.eps_prime, p.d1, p.d2, C3Twist::perm, tol);
    case FamilyId::c4_untwisted: return build_c4(p.eps_prime, p.d1, p.d2, C4Twist::none, tol);
    case FamilyId::c4_perm: return build_c4(p.eps_prime, p.d1, p.d2, C4Twist::perm, tol);
    case FamilyId::c3_conformal:
      return rescale(build_c3(p.eps_prime, p.d1, std::nullopt, C3Twist::none, tol),
                     ConformalFactor{p.zeta, p.rho, FactorSide::algebra}, tol);
    case FamilyId::c4_conformal:
      return rescale(build_c4(p.eps_prime, p.d1, p.d2, C4Twist::none, tol),
                     ConformalFactor{p.zeta, p.rho, FactorSide::algebra}, tol);
  }
  throw InvalidInput("build_family: unknown family");
}

struct DiracFamily {
  FamilyId family_id;
  Sign eps_prime;
  std::vector<std::string> free_params;
  std::vector<std::string> constraints;
  std::vector<CMatrix> basis;
  std::size_t closed_form_dimension = 0;
  /// Violation of the family's closed-form entry relations (0 on members).
  std::function<double(const CMatrix&)> relation_residual;

  std::size_t real_dimension() const noexcept { return basis.size(); }

  bool matches_closed_form(double tol) const {
    if (basis.size() != closed_form_dimension) {
      return false;
    }
    for (const auto& b : basis) {
      if (!(relation_residual(b) < tol)) {
        return false;
      }
    }
    return true;
  }
};

namespace detail {

/// Largest entry outside the gamma-odd pattern.
inline double off_pattern(const CMatrix& d, const CMatrix& grading) {
  double worst = 0.0;
  for (std::size_t i = 0; i < d.dim(); ++i) {
    for (std::size_t j = 0; j < d.dim(); ++j) {
      if (grading(i, i) == grading(j, j)) {
        worst = std::max(worst, std::abs(d(i, j)));
      }
    }
  }
  return worst;
}

} // namespace detail

/// Solve {gamma D + D gamma = 0} and {D U conj(nu) = eps' nu U conj(D)} for
/// the family's grading, J and twist, then attach the closed-form relations
/// as an independent oracle. rho is used only by the conformal families.
inline DiracFamily derive_family(FamilyId id, Sign eps_prime, double rho = 0.25,
                                 const ToleranceConfig& tol = {}) {
  const bool c3 = is_c3(id);
  const std::size_t n = c3 ? 3 : 4;
  const CMatrix gamma = c3 ? c3_grading() : c4_grading();
  const Antiunitary j = c3 ? c3_j() : c4_j();
  const double ep = value(eps_prime);

  CMatrix nu = CMatrix::identity(n);
  switch (id) {
    case FamilyId::c3_perm: nu = c3_perm_twist(); break;
    case FamilyId::c4_perm: nu = c4_perm_twist(); break;
    case FamilyId::c3_conformal:
    case FamilyId::c4_conformal: {
      const SpectralTriple base = c3 ? build_c3(eps_prime, 1.0, std::nullopt, C3Twist::none, tol)
                                     : build_c4(eps_prime, 1.0, 1.0, C4Twist::none, tol);
      const ConformalFactor k{1.0, rho, FactorSide::algebra};
      validate(k, tol);
      nu = conformal_twist(base, k);
      break;
    }
    default: break;
  }

  const CMatrix u = j.unitary_part;
  const CMatrix nu_bar = nu.conj();
  const std::vector<LinearConstraint> cons = {
      [gamma](const CMatrix& d) { return anticommutator(gamma, d); },
      [u, nu, nu_bar, ep](const CMatrix& d) { return d * u * nu_bar - ep * (nu * u * d.conj()); },
  };

  DiracFamily fam{id, eps_prime, {}, {"gamma D = -D gamma", "D J nu = eps' nu J D"},
                  solve_linear_family(cons, n, tol), 0, {}};

  const double r = rho;
  switch (id) {
    case FamilyId::c3_untwisted:
      fam.free_params = {"d1"};
      fam.constraints.push_back("d3 = eps' d1*");
      fam.closed_form_dimension = 2;
      fam.relation_residual = [gamma, ep](const CMatrix& d) {
        return std::max(detail::off_pattern(d, gamma), std::abs(d(0, 1) - ep * std::conj(d(0, 2))));
      };
      break;
    case FamilyId::c3_perm:
      fam.free_params = {"d1", "d2"};
      fam.constraints.push_back("d1* = eps' d1");
      fam.constraints.push_back("d2* = eps' d2");
      fam.closed_form_dimension = 2;
      fam.relation_residual = [gamma, ep](const CMatrix& d) {
        return std::max({detail::off_pattern(d, gamma), std::abs(std::conj(d(0, 2)) - ep * d(0, 2)),
                         std::abs(std::conj(d(0, 1)) - ep * d(0, 1))});
      };
      break;
    case FamilyId::c4_untwisted:
      fam.free_params = {"d1", "d2"};
      fam.constraints.push_back("d3 = eps' d1*");
      fam.constraints.push_back("d4 = eps' d2*");
      fam.closed_form_dimension = 4;
      fam.relation_residual = [gamma, ep](const CMatrix& d) {
        return std::max({detail::off_pattern(d, gamma), std::abs(d(0, 1) - ep * std::conj(d(0, 2))),
                         std::abs(d(2, 3) - ep * std::conj(d(1, 3)))});
      };
      break;
    case FamilyId::c4_perm:
      fam.free_params = {"d1", "d2"};
      fam.constraints.push_back("d3 = eps' d2");
      fam.constraints.push_back("d4 = eps' d1");
      fam.closed_form_dimension = 4;
      fam.relation_residual = [gamma, ep](const CMatrix& d) {
        return std::max({detail::off_pattern(d, gamma), std::abs(d(0, 1) - ep * d(1, 3)),
                         std::abs(d(2, 3) - ep * d(0, 2))});
      };
      break;
    case FamilyId::c3_conformal:
      fam.free_params = {"d1"};
      fam.constraints.push_back("D01 = eps' (1-rho)/rho D02*");
      fam.closed_form_dimension = 2;
      fam.relation_residual = [gamma, ep, r](const CMatrix& d) {
        return std::max(detail::off_pattern(d, gamma),
                        std::abs(d(0, 1) - ep * (1.0 - r) / r * std::conj(d(0, 2))));
      };
      break;
    case FamilyId::c4_conformal:
      fam.free_params = {"d1", "d2"};
      fam.constraints.push_back("D01 = eps' (1-rho)/rho D02*");
      fam.constraints.push_back("D23 = eps' rho/(1-rho) D13*");
      fam.closed_form_dimension = 4;
      fam.relation_residual = [gamma, ep, r](const CMatrix& d) {
        return std::max({detail::off_pattern(d, gamma),
                         std::abs(d(0, 1) - ep * (1.0 - r) / r * std::conj(d(0, 2))),
                         std::abs(d(2, 3) - ep * r / (1.0 - r) * std::conj(d(1, 3)))});
      };
      break;
  }
  return fam;
}

/// Closed-form parameters after fluctuating by the selfadjoint form with
/// coefficient phi. For C3_untwisted/C3_conformal d2 is the (0,1) slot.
inline std::pair<Complex, Complex> fluctuation_orbit_params(FamilyId id, Complex d1, Complex d2, Complex phi) {
  const Complex s = 1.0 - phi;
  switch (id) {
    case FamilyId::c3_untwisted:
    case FamilyId::c3_conformal: return {s * d1, std::conj(s) * d2};
    case FamilyId::c3_perm: return {(1.0 - phi - std::conj(phi)) * d1, d2};
    case FamilyId::c4_untwisted:
    case FamilyId::c4_perm:
    case FamilyId::c4_conformal: return {s * d1, s * d2};
  }
  throw InvalidInput("fluctuation_orbit_params: unknown family");
}

struct ScanReport {
  int trials = 0;
  int failures_of_order_one = 0;
  int combinations_tested = 0;
  int rejected_samples = 0;
  std::vector<std::string> j_shapes_tested;
  bool conclusion = false;
};

/// For random Hermitian D on C^2 with ||[D,e]|| > 0.1 and a family of
/// antiunitaries J = U o conj with J^2 = +-1, record whether the (twisted,
/// nu^2 = 1) order-one condition fails for every twist candidate.
inline ScanReport scan_c2_nonexistence(int trials, std::uint64_t seed, const ToleranceConfig& tol = {}) {
  if (trials < 1) {
    throw InvalidInput("scan_c2_nonexistence: trials must be >= 1");
  }
  const Complex i(0.0, 1.0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  const Representation rep({0, 1}, 2);
  const CMatrix e = projection_e(rep);
  const std::vector<CMatrix> twists = {CMatrix::identity(2), CMatrix::permutation({1, 0}),
                                       CMatrix::diagonal({1.0, -1.0})};

  ScanReport report;
  report.trials = trials;
  report.j_shapes_tested = {"identity", "swap", "diag_phase", "antidiag_plus", "antidiag_minus"};

  for (int trial = 0; trial < trials; ++trial) {
    CMatrix d(2);
    for (;;) {
      const Complex off(normal(rng), normal(rng));
      d = CMatrix{{normal(rng), off}, {std::conj(off), normal(rng)}};
      if (operator_norm(commutator(d, e)) > 0.1) {
        break;
      }
      ++report.rejected_samples;
    }
    const double t1 = angle(rng), t2 = angle(rng), t3 = angle(rng);
    const Complex p1 = std::exp(i * t1), p2 = std::exp(i * t2), p3 = std::exp(i * t3);
    const std::vector<std::pair<CMatrix, Sign>> candidates = {
        {CMatrix::identity(2), Sign::plus},
        {CMatrix::permutation({1, 0}), Sign::plus},
        {CMatrix::diagonal({p1, p2}), Sign::plus},
        {CMatrix{{0.0, p3}, {p3, 0.0}}, Sign::plus},
        {CMatrix{{0.0, p3}, {-p3, 0.0}}, Sign::minus},
    };
    for (const auto& [u, eps] : candidates) {
      ++report.combinations_tested;
      bool fails_all = true;
      for (const auto& nu : twists) {
        const SpectralTriple t{rep, d, std::nullopt,
                               RealStructure{Antiunitary{u}, SignTriple{eps, Sign::plus, std::nullopt}},
                               Twist{nu, false}};
        if (check_twisted_order_one(t, tol).pass) {
          fails_all = false;
          break;
        }
      }
      if (fails_all) {
        ++report.failures_of_order_one;
      }
    }
  }
  report.conclusion = report.failures_of_order_one == report.combinations_tested;
  return report;
}

} // namespace twreal::catalog
