#pragma once

/// Spectral distance between the two points: d = sup{|c+ - c-| : ||[D,a]|| <= 1}
/// = 1/||[D,e]||, with sampling oracles for the supremum.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

#include "twreal/algebra.hpp"
#include "twreal/error.hpp"
#include "twreal/family.hpp"
#include "twreal/forms.hpp"
#include "twreal/linalg.hpp"
#include "twreal/triple.hpp"

namespace twreal {

/// value is empty when the distance is unbounded (zero calculus).
struct DistanceResult {
  std::optional<double> value;
  double norm_de = 0.0;

  bool unbounded() const noexcept { return !value.has_value(); }
};

inline DistanceResult spectral_distance(const SpectralTriple& t, const ToleranceConfig& tol = {}) {
  require_two_points(t.rep, "spectral_distance");
  const double norm = operator_norm(commutator(t.dirac, projection_e(t.rep)));
  if (norm < tol.rank_tol) {
    return {std::nullopt, norm};
  }
  return {1.0 / norm, norm};
}

/// Sampled supremum over elements a with ||[D,a]|| <= 1. For each random
/// complex difference c+ - c- (and random c-), a is rescaled onto the
/// constraint boundary using the actual commutator norm; the best |c+ - c-|
/// is returned.
inline double distance_bruteforce(const SpectralTriple& t, int samples, std::uint64_t seed) {
  require_two_points(t.rep, "distance_bruteforce");
  if (samples < 1) {
    throw InvalidInput("distance_bruteforce: samples must be positive");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Complex cm(normal(rng), normal(rng));
    const Complex diff(normal(rng), normal(rng));
    const CMatrix a = embed(t.rep, PointAlgebraElement{{cm + diff, cm}});
    const double norm = operator_norm(commutator(t.dirac, a));
    if (norm <= 1e-300 || std::abs(diff) <= 1e-300) {
      continue;
    }
    best = std::max(best, std::abs(diff) / norm);
  }
  if (best == 0.0) {
    throw PreconditionViolation("distance_bruteforce: degenerate calculus ([D,e] = 0)");
  }
  return best;
}

/// Rejection sampler over (c+, c-) pairs in a box of half-width `box`; a
/// lower bound on the supremum that converges slowly. Only a sanity layer.
inline double distance_generic_sampler(const SpectralTriple& t, int samples, std::uint64_t seed,
                                       double box) {
  require_two_points(t.rep, "distance_generic_sampler");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-box, box);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Complex cp(uni(rng), uni(rng));
    const Complex cm(uni(rng), uni(rng));
    const CMatrix a = embed(t.rep, PointAlgebraElement{{cp, cm}});
    if (operator_norm(commutator(t.dirac, a)) <= 1.0) {
      best = std::max(best, std::abs(cp - cm));
    }
  }
  return best;
}

/// ||[D', e]|| for the member of the family fluctuated by phi, in closed form.
inline double closed_form_fluctuated_norm(const FamilyParams& p, Complex phi) {
  const double s = std::abs(1.0 - phi);
  const double a1 = std::abs(p.d1);
  const double a2 = std::abs(p.d2);
  const double z2 = p.zeta * p.zeta;
  switch (p.id) {
    case FamilyId::c3_untwisted: return s * a1;
    case FamilyId::c3_perm: return std::abs(1.0 - phi - std::conj(phi)) * a1;
    case FamilyId::c4_untwisted:
    case FamilyId::c4_perm: return s * std::max(a1, a2);
    case FamilyId::c3_conformal: return z2 * p.rho * p.rho * s * a1;
    case FamilyId::c4_conformal:
      return z2 * s * std::max(p.rho * p.rho * a1, (1.0 - p.rho) * (1.0 - p.rho) * a2);
  }
  throw InvalidInput("closed_form_fluctuated_norm: unknown family");
}

/// Closed-form distance of the fluctuated family member; empty if unbounded.
inline std::optional<double> closed_form_fluctuated_distance(const FamilyParams& p, Complex phi) {
  const double n = closed_form_fluctuated_norm(p, phi);
  if (n == 0.0) {
    return std::nullopt;
  }
  return 1.0 / n;
}

/// spectral_distance(fluctuate(t, phi)) against the family's closed form,
/// relative tolerance tol.abs_tol.
inline bool fluctuated_distance_check(const SpectralTriple& t, const FamilyParams& p, Complex phi,
                                      const ToleranceConfig& tol = {}) {
  const auto computed = spectral_distance(fluctuate(t, phi, tol), tol);
  const auto expected = closed_form_fluctuated_distance(p, phi);
  if (computed.unbounded() || !expected) {
    return computed.unbounded() && (!expected || *expected > 1.0 / tol.rank_tol);
  }
  return std::abs(*computed.value - *expected) <= tol.abs_tol * *expected;
}

} // namespace twreal
