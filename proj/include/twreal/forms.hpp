#pragma once

/// One-forms over the two-point algebra, gauge fluctuations and chiral gauge
/// perturbations.
///
/// Every one-form is (phi1 e + phi2 (1-e)) [D,e]; storing (phi1, phi2) turns
/// membership and equality questions into small linear solves.

#include <optional>
#include <utility>

#include "twreal/algebra.hpp"
#include "twreal/error.hpp"
#include "twreal/linalg.hpp"
#include "twreal/triple.hpp"

namespace twreal {

struct OneForm {
  CMatrix value;
  Complex phi1;
  Complex phi2;
  CMatrix base_dirac;
};

inline OneForm one_form(const SpectralTriple& t, Complex phi1, Complex phi2) {
  require_two_points(t.rep, "one_form");
  const CMatrix de = commutator(t.dirac, projection_e(t.rep));
  return OneForm{embed(t.rep, PointAlgebraElement{{phi1, phi2}}) * de, phi1, phi2, t.dirac};
}

/// phi e - phi* (1-e): the selfadjoint forms.
inline OneForm selfadjoint_form(const SpectralTriple& t, Complex phi) {
  return one_form(t, phi, -std::conj(phi));
}

/// psi e + psi* (1-e): the antihermitian forms.
inline OneForm antihermitian_form(const SpectralTriple& t, Complex psi) {
  return one_form(t, psi, std::conj(psi));
}

inline bool is_selfadjoint_form(const OneForm& a, const ToleranceConfig& tol = {}) {
  return operator_norm(a.value - a.value.adjoint()) < tol.abs_tol;
}

inline bool is_antihermitian_form(const OneForm& a, const ToleranceConfig& tol = {}) {
  return operator_norm(a.value + a.value.adjoint()) < tol.abs_tol;
}

/// x + eps' nu J x J^{-1} nu
inline CMatrix real_symmetrization(const SpectralTriple& t, const CMatrix& x) {
  const auto& real = detail::require_real(t, "real_symmetrization");
  const CMatrix nu = t.twist_matrix();
  return x + value(real.signs.eps_prime) * (nu * conj_by_antiunitary(real.j, x) * nu);
}

/// D + alpha + eps' nu J alpha J^{-1} nu for a selfadjoint one-form alpha.
inline SpectralTriple fluctuate(const SpectralTriple& t, const OneForm& alpha,
                                const ToleranceConfig& tol = {}) {
  detail::require_real(t, "fluctuate");
  require_same_dim(t.dirac, alpha.value, "fluctuate");
  if (!is_selfadjoint_form(alpha, tol)) {
    throw PreconditionViolation("fluctuate: one-form is not selfadjoint");
  }
  SpectralTriple out = t;
  out.dirac = t.dirac + real_symmetrization(t, alpha.value);
  return out;
}

inline SpectralTriple fluctuate(const SpectralTriple& t, Complex phi, const ToleranceConfig& tol = {}) {
  return fluctuate(t, selfadjoint_form(t, phi), tol);
}

/// D + gamma A + eps' nu J gamma A J^{-1} nu for an antihermitian one-form A.
/// For an untwisted triple this is D + gamma A + eps' J gamma A J^{-1}.
inline SpectralTriple fluctuate_chiral(const SpectralTriple& t, const OneForm& a,
                                       const ToleranceConfig& tol = {}) {
  detail::require_real(t, "fluctuate_chiral");
  if (!t.grading) {
    throw PreconditionViolation("fluctuate_chiral: triple has no grading");
  }
  require_same_dim(t.dirac, a.value, "fluctuate_chiral");
  if (!is_antihermitian_form(a, tol)) {
    throw PreconditionViolation("fluctuate_chiral: one-form is not antihermitian");
  }
  SpectralTriple out = t;
  out.dirac = t.dirac + real_symmetrization(t, *t.grading * a.value);
  return out;
}

inline SpectralTriple fluctuate_chiral(const SpectralTriple& t, Complex psi,
                                       const ToleranceConfig& tol = {}) {
  return fluctuate_chiral(t, antihermitian_form(t, psi), tol);
}

/// Generators {e[D,e], (1-e)[D,e]} of the one-form bimodule.
inline std::vector<CMatrix> omega1_generators(const SpectralTriple& t) {
  require_two_points(t.rep, "omega1_generators");
  const CMatrix e = projection_e(t.rep);
  const CMatrix de = commutator(t.dirac, e);
  return {e * de, (CMatrix::identity(t.dim()) - e) * de};
}

/// Whether both Dirac operators give the same bimodule of one-forms.
inline bool omega1_equal(const SpectralTriple& t1, const SpectralTriple& t2,
                         const ToleranceConfig& tol = {}) {
  if (!(t1.rep == t2.rep)) {
    throw InvalidInput("omega1_equal: triples use different representations");
  }
  const auto g1 = omega1_generators(t1);
  const auto g2 = omega1_generators(t2);
  std::vector<CMatrix> both = g1;
  both.insert(both.end(), g2.begin(), g2.end());
  const std::size_t r1 = complex_span_dimension(g1, tol.rank_tol);
  const std::size_t r2 = complex_span_dimension(g2, tol.rank_tol);
  const std::size_t r12 = complex_span_dimension(both, tol.rank_tol);
  return r1 == r2 && r1 == r12;
}

/// Coefficients (phi, -phi*) of a selfadjoint form with
/// fluctuate(base, form) == candidate, if one exists. Solved as real least
/// squares in (re phi, im phi); accepted when the residual is below
/// abs_tol * (1 + ||candidate||).
inline std::optional<std::pair<Complex, Complex>> is_fluctuation_of(const SpectralTriple& base,
                                                                    const SpectralTriple& candidate,
                                                                    const ToleranceConfig& tol = {}) {
  require_consistent_shape(base);
  require_consistent_shape(candidate);
  if (!(base.rep == candidate.rep)) {
    throw InvalidInput("is_fluctuation_of: triples use different representations");
  }
  const auto& real = detail::require_real(base, "is_fluctuation_of");
  const auto& cand_real = detail::require_real(candidate, "is_fluctuation_of");
  const double same_data = std::max(
      operator_norm(real.j.unitary_part - cand_real.j.unitary_part),
      operator_norm(base.twist_matrix() - candidate.twist_matrix()));
  if (same_data >= tol.abs_tol || real.signs.eps_prime != cand_real.signs.eps_prime) {
    throw InvalidInput("is_fluctuation_of: triples differ in J, signs or twist");
  }

  const CMatrix step_re = real_symmetrization(base, selfadjoint_form(base, Complex(1.0, 0.0)).value);
  const CMatrix step_im = real_symmetrization(base, selfadjoint_form(base, Complex(0.0, 1.0)).value);
  const CMatrix delta = candidate.dirac - base.dirac;

  const auto col_re = detail::realify(step_re);
  const auto col_im = detail::realify(step_im);
  const auto rhs = detail::realify(delta);
  detail::RealMatrix system(rhs.size(), 2);
  for (std::size_t r = 0; r < rhs.size(); ++r) {
    system(r, 0) = col_re[r];
    system(r, 1) = col_im[r];
  }
  const auto x = detail::least_squares(system, rhs, tol.rank_tol);
  const Complex phi(x[0], x[1]);
  const CMatrix fitted = x[0] * step_re + x[1] * step_im;
  const double residual = operator_norm(fitted - delta);
  if (residual >= tol.abs_tol * (1.0 + operator_norm(candidate.dirac))) {
    return std::nullopt;
  }
  return std::make_pair(phi, -std::conj(phi));
}

/// Parameter of the single fluctuation equal to fluctuating by phi1 and then
/// by phi2, for orbits that scale the Dirac parameters by (1 - phi).
inline Complex compose_fluctuation_params(Complex phi1, Complex phi2) {
  return 1.0 - (1.0 - phi1) * (1.0 - phi2);
}

} // namespace twreal
