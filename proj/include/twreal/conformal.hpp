#pragma once

/// Conformal rescalings D -> M D M of a real two-point triple and the twists
/// they induce.
///
/// A factor with side = algebra is k = zeta (rho e + (1-rho)(1-e)) and the
/// rescaling multiplier is k_J = J k J^{-1}. A factor with side =
/// commutant_image is h = xi ((1-rho) e + rho (1-e)) and the multiplier is h
/// itself. In both cases the induced twist is nu = (J M J^{-1})^{-1} M, which
/// is k^{-1} k_J for the algebra side.

#include <cmath>
#include <string>

#include "twreal/algebra.hpp"
#include "twreal/error.hpp"
#include "twreal/forms.hpp"
#include "twreal/linalg.hpp"
#include "twreal/triple.hpp"

namespace twreal {

enum class FactorSide { algebra, commutant_image };

struct ConformalFactor {
  double zeta = 1.0;  // overall scale (zeta, or xi for the commutant-image side)
  double rho = 0.5;
  FactorSide side = FactorSide::algebra;
};

inline void validate(const ConformalFactor& k, const ToleranceConfig& tol = {}) {
  if (!(k.zeta > 0.0) || !std::isfinite(k.zeta)) {
    throw InvalidInput("conformal factor: zeta must be positive");
  }
  if (!(k.rho > tol.rank_tol && k.rho < 1.0 - tol.rank_tol)) {
    throw InvalidInput("conformal factor: rho must lie strictly inside (0, 1), got " +
                       std::to_string(k.rho));
  }
}

/// The algebra element (two point values) defining the factor.
inline PointAlgebraElement factor_element(const ConformalFactor& k) {
  if (k.side == FactorSide::algebra) {
    return PointAlgebraElement{{k.zeta * k.rho, k.zeta * (1.0 - k.rho)}};
  }
  return PointAlgebraElement{{k.zeta * (1.0 - k.rho), k.zeta * k.rho}};
}

/// The operator M with D_k = M D M.
inline CMatrix rescaling_multiplier(const SpectralTriple& t, const ConformalFactor& k) {
  require_two_points(t.rep, "rescaling_multiplier");
  const CMatrix el = embed(t.rep, factor_element(k));
  if (k.side == FactorSide::algebra) {
    return conj_by_antiunitary(detail::require_real(t, "rescaling_multiplier").j, el);
  }
  return el;
}

/// (J M J^{-1})^{-1} M
inline CMatrix conformal_twist(const SpectralTriple& t, const ConformalFactor& k) {
  const CMatrix m = rescaling_multiplier(t, k);
  const auto& real = detail::require_real(t, "conformal_twist");
  return inverse(conj_by_antiunitary(real.j, m)) * m;
}

/// Rescaled untwisted triple (A, H, M D M, J, nu). At rho = 1/2 the factor is
/// central, nu is the identity and the result stays untwisted.
inline SpectralTriple rescale(const SpectralTriple& t, const ConformalFactor& k,
                              const ToleranceConfig& tol = {}) {
  validate(k, tol);
  detail::require_real(t, "rescale");
  if (t.twist && operator_norm(t.twist->nu - CMatrix::identity(t.dim())) >= tol.abs_tol) {
    throw PreconditionViolation("rescale: triple is already twisted; use compose_twist");
  }
  const CMatrix m = rescaling_multiplier(t, k);
  const CMatrix nu = conformal_twist(t, k);
  SpectralTriple out = t;
  out.dirac = m * t.dirac * m;
  if (operator_norm(nu - CMatrix::identity(t.dim())) < tol.abs_tol) {
    out.twist.reset();
  } else {
    out.twist = Twist{nu, true};
  }
  return out;
}

/// The commutant-image factor h with the same rescaled Dirac operator and
/// twist as k: xi^2 (1 - rho) = zeta^2 rho.
inline ConformalFactor equivalent_commutant_factor(const ConformalFactor& k) {
  if (k.side != FactorSide::algebra) {
    throw InvalidInput("equivalent_commutant_factor: factor must be on the algebra side");
  }
  validate(k);
  return ConformalFactor{k.zeta * std::sqrt(k.rho / (1.0 - k.rho)), k.rho, FactorSide::commutant_image};
}

/// ||nu (k k_J) nu^{-1} - k k_J||
inline double twist_invariance_defect(const SpectralTriple& t, const ConformalFactor& k) {
  const CMatrix kk = embed(t.rep, factor_element(k));
  const CMatrix kj = conj_by_antiunitary(detail::require_real(t, "twist_invariance_defect").j, kk);
  const CMatrix nu = t.twist_matrix();
  return operator_norm(nu * (kk * kj) * inverse(nu) - kk * kj);
}

/// Rescaling of a nu-twisted triple: D -> k_J D k_J with twist
/// mu = k_J nu k^{-1}. Requires k k_J to be invariant under nu.
inline SpectralTriple compose_twist(const SpectralTriple& t, const ConformalFactor& k,
                                    const ToleranceConfig& tol = {}) {
  validate(k, tol);
  if (k.side != FactorSide::algebra) {
    throw InvalidInput("compose_twist: factor must be on the algebra side");
  }
  const double defect = twist_invariance_defect(t, k);
  if (defect >= tol.abs_tol) {
    throw PreconditionViolation("compose_twist: kk_J not twist-invariant (defect " +
                                std::to_string(defect) + ")");
  }
  const CMatrix kk = embed(t.rep, factor_element(k));
  const CMatrix kj = rescaling_multiplier(t, k);
  SpectralTriple out = t;
  out.dirac = kj * t.dirac * kj;
  const bool flag = t.twist ? t.twist->implements_algebra_automorphism : true;
  out.twist = Twist{kj * t.twist_matrix() * inverse(kk), flag};
  return out;
}

/// Rescaling of a nu-twisted triple whose twist is the operator product of
/// the conformal twist and nu (composition of the two automorphisms). No
/// invariance precondition; the result need not be a twisted real triple.
inline SpectralTriple composite_twist(const SpectralTriple& t, const ConformalFactor& k,
                                      const ToleranceConfig& tol = {}) {
  validate(k, tol);
  if (k.side != FactorSide::algebra) {
    throw InvalidInput("composite_twist: factor must be on the algebra side");
  }
  const CMatrix kk = embed(t.rep, factor_element(k));
  const CMatrix kj = rescaling_multiplier(t, k);
  SpectralTriple out = t;
  out.dirac = kj * t.dirac * kj;
  const bool flag = t.twist ? t.twist->implements_algebra_automorphism : true;
  out.twist = Twist{inverse(kk) * kj * t.twist_matrix(), flag};
  return out;
}

/// Which operator sandwiches B to give the rescaled gauge field A.
enum class GaugeSandwich {
  rescaling_multiplier,  // A = M B M, M the operator with D_k = M D M
  algebra_element,       // A = k B k, k the factor's algebra element
};

/// ||(D_k + A + eps' nu J A J^{-1} nu) - (D + B + eps' J B J^{-1})_k|| for
/// the selfadjoint form B with coefficient b_phi and A the sandwiched B.
inline double gauge_conformal_residual(const SpectralTriple& t, const ConformalFactor& k, Complex b_phi,
                                       GaugeSandwich sandwich = GaugeSandwich::rescaling_multiplier,
                                       const ToleranceConfig& tol = {}) {
  const SpectralTriple rescaled = rescale(t, k, tol);
  const CMatrix m = rescaling_multiplier(t, k);
  const CMatrix s = sandwich == GaugeSandwich::rescaling_multiplier ? m : embed(t.rep, factor_element(k));
  const CMatrix b = selfadjoint_form(t, b_phi).value;
  const CMatrix a = s * b * s;
  const CMatrix lhs = rescaled.dirac + real_symmetrization(rescaled, a);
  const CMatrix rhs = m * (t.dirac + real_symmetrization(t, b)) * m;
  return operator_norm(lhs - rhs);
}

/// Conformal rescaling of a gauge-fluctuated triple equals a gauge
/// fluctuation of the rescaled triple, with A = M B M.
inline bool check_gauge_conformal_compat(const SpectralTriple& t, const ConformalFactor& k, Complex b_phi,
                                         const ToleranceConfig& tol = {}) {
  if (t.twist && operator_norm(t.twist->nu - CMatrix::identity(t.dim())) >= tol.abs_tol) {
    throw PreconditionViolation("check_gauge_conformal_compat: triple must be untwisted");
  }
  return gauge_conformal_residual(t, k, b_phi, GaugeSandwich::rescaling_multiplier, tol) < tol.abs_tol;
}

} // namespace twreal
