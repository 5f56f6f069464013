#pragma once

/// Spectral triple data and the (twisted) reality axioms: order zero,
/// twisted order one, twisted epsilon'-condition, twisted regularity,
/// grading conditions, KO-dimension lookup and irreducibility.
///
/// Every check returns residual norms rather than a bare boolean so that
/// near-failures stay visible. Residuals are operator norms, maximized over
/// the point-indicator basis of the algebra ({e, 1-e} for two points), which
/// is enough by linearity.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "twreal/algebra.hpp"
#include "twreal/error.hpp"
#include "twreal/linalg.hpp"

namespace twreal {

enum class Sign : int { plus = 1, minus = -1 };

inline double value(Sign s) { return static_cast<double>(static_cast<int>(s)); }

inline Sign sign_from_int(int v) {
  if (v == 1) {
    return Sign::plus;
  }
  if (v == -1) {
    return Sign::minus;
  }
  throw InvalidInput("sign must be +1 or -1, got " + std::to_string(v));
}

/// (epsilon, epsilon', epsilon''); epsilon'' present iff the triple is graded.
struct SignTriple {
  Sign eps = Sign::plus;
  Sign eps_prime = Sign::plus;
  std::optional<Sign> eps_dprime;

  friend bool operator==(const SignTriple&, const SignTriple&) = default;
};

/// Selfadjoint invertible twist nu. When the flag is false, nu is not asked
/// to implement an algebra automorphism but must then be an involution.
struct Twist {
  CMatrix nu;
  bool implements_algebra_automorphism = true;
};

struct RealStructure {
  Antiunitary j;
  SignTriple signs;
};

struct SpectralTriple {
  Representation rep;
  CMatrix dirac;
  std::optional<CMatrix> grading;
  std::optional<RealStructure> real;
  std::optional<Twist> twist;

  std::size_t dim() const noexcept { return rep.dim(); }

  /// nu, or the identity for an untwisted triple.
  CMatrix twist_matrix() const { return twist ? twist->nu : CMatrix::identity(dim()); }

  Sign eps_prime() const {
    if (!real) {
      throw PreconditionViolation("triple has no real structure");
    }
    return real->signs.eps_prime;
  }
};

/// Throws DimensionMismatch unless every operator lives on the same space.
inline void require_consistent_shape(const SpectralTriple& t) {
  const std::size_t n = t.rep.dim();
  auto check = [n](const CMatrix& m, const char* what) {
    if (m.dim() != n) {
      throw DimensionMismatch(std::string(what) + " has dimension " + std::to_string(m.dim()) +
                              ", representation has " + std::to_string(n));
    }
  };
  check(t.dirac, "dirac");
  if (t.grading) {
    check(*t.grading, "grading");
  }
  if (t.real) {
    check(t.real->j.unitary_part, "real structure");
  }
  if (t.twist) {
    check(t.twist->nu, "twist");
  }
}

struct CheckEntry {
  std::string condition;
  double residual = 0.0;
  double tol_used = 0.0;
  bool pass = false;
};

inline CheckEntry make_entry(std::string condition, double residual, double tol) {
  return CheckEntry{std::move(condition), residual, tol, residual < tol};
}

struct CheckReport {
  std::vector<CheckEntry> entries;

  bool passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
  }

  const CheckEntry* find(const std::string& condition) const {
    auto it = std::find_if(entries.begin(), entries.end(),
                           [&](const CheckEntry& e) { return e.condition == condition; });
    return it == entries.end() ? nullptr : &*it;
  }

  std::vector<std::string> failing() const {
    std::vector<std::string> out;
    for (const auto& e : entries) {
      if (!e.pass) {
        out.push_back(e.condition);
      }
    }
    return out;
  }

  double max_residual() const {
    double m = 0.0;
    for (const auto& e : entries) {
      m = std::max(m, e.residual);
    }
    return m;
  }
};

namespace check_names {
inline constexpr const char* dirac_selfadjoint = "dirac.selfadjoint";
inline constexpr const char* real_isometry = "real.isometry";
inline constexpr const char* real_epsilon = "real.epsilon";
inline constexpr const char* order_zero = "order_zero";
inline constexpr const char* order_one = "twisted_order_one";
inline constexpr const char* epsilon_prime = "twisted_epsilon_prime";
inline constexpr const char* regularity = "twisted_regularity";
inline constexpr const char* twist_selfadjoint = "twist.selfadjoint";
inline constexpr const char* twist_invertible = "twist.invertible";
inline constexpr const char* twist_automorphism = "twist.automorphism";
inline constexpr const char* twist_involution = "twist.involution";
inline constexpr const char* grading_selfadjoint = "grading.selfadjoint";
inline constexpr const char* grading_involution = "grading.involution";
inline constexpr const char* grading_commutes_algebra = "grading.commutes_algebra";
inline constexpr const char* grading_anticommutes_dirac = "grading.anticommutes_dirac";
inline constexpr const char* grading_twist_square = "grading.commutes_twist_square";
inline constexpr const char* grading_epsilon_dprime = "grading.epsilon_dprime";
} // namespace check_names

namespace detail {

inline const RealStructure& require_real(const SpectralTriple& t, const char* where) {
  if (!t.real) {
    throw PreconditionViolation(std::string(where) + ": triple has no real structure");
  }
  return *t.real;
}

} // namespace detail

/// max over basis pairs of ||[a, J b J^{-1}]||
inline CheckEntry check_order_zero(const SpectralTriple& t, const ToleranceConfig& tol = {}) {
  const auto& real = detail::require_real(t, "check_order_zero");
  const auto basis = point_projectors(t.rep);
  double worst = 0.0;
  for (const auto& a : basis) {
    for (const auto& b : basis) {
      worst = std::max(worst, operator_norm(commutator(a, conj_by_antiunitary(real.j, b))));
    }
  }
  return make_entry(check_names::order_zero, worst, tol.abs_tol);
}

/// max over basis pairs of ||[D,a] J nu^-2 b nu^2 J^{-1} - J b J^{-1} [D,a]||
inline CheckEntry check_twisted_order_one(const SpectralTriple& t, const ToleranceConfig& tol = {}) {
  const auto& real = detail::require_real(t, "check_twisted_order_one");
  const CMatrix nu = t.twist_matrix();
  const CMatrix nu2 = nu * nu;
  CMatrix nu2_inv = nu2;
  try {
    nu2_inv = inverse(nu2);
  } catch (const InvalidInput&) {
    return make_entry(check_names::order_one, std::numeric_limits<double>::infinity(), tol.abs_tol);
  }
  const auto basis = point_projectors(t.rep);
  double worst = 0.0;
  for (const auto& a : basis) {
    const CMatrix da = commutator(t.dirac, a);
    for (const auto& b : basis) {
      const CMatrix twisted_b = conj_by_antiunitary(real.j, nu2_inv * b * nu2);
      const CMatrix plain_b = conj_by_antiunitary(real.j, b);
      worst = std::max(worst, operator_norm(da * twisted_b - plain_b * da));
    }
  }
  return make_entry(check_names::order_one, worst, tol.abs_tol);
}

/// ||D U conj(nu) - eps' nu U conj(D)||, the matrix form of D J nu = eps' nu J D.
inline CheckEntry check_epsilon_prime(const SpectralTriple& t, const ToleranceConfig& tol = {}) {
  const auto& real = detail::require_real(t, "check_epsilon_prime");
  const CMatrix& u = real.j.unitary_part;
  const CMatrix nu = t.twist_matrix();
  const double ep = value(real.signs.eps_prime);
  const double r = operator_norm(t.dirac * u * nu.conj() - ep * (nu * u * t.dirac.conj()));
  return make_entry(check_names::epsilon_prime, r, tol.abs_tol);
}

/// ||nu U conj(nu) - U||, the matrix form of nu J nu = J. Vacuous without a
/// twist or a real structure.
inline CheckEntry check_twisted_regularity(const SpectralTriple& t, const ToleranceConfig& tol = {}) {
  if (!t.real || !t.twist) {
    return make_entry(check_names::regularity, 0.0, tol.abs_tol);
  }
  const CMatrix& u = t.real->j.unitary_part;
  const CMatrix& nu = t.twist->nu;
  return make_entry(check_names::regularity, operator_norm(nu * u * nu.conj() - u), tol.abs_tol);
}

inline std::vector<CheckEntry> check_grading(const SpectralTriple& t, const ToleranceConfig& tol = {}) {
  if (!t.grading) {
    throw PreconditionViolation("check_grading: triple has no grading");
  }
  const CMatrix& g = *t.grading;
  const std::size_t n = t.dim();
  std::vector<CheckEntry> out;
  out.push_back(make_entry(check_names::grading_selfadjoint, operator_norm(g - g.adjoint()), tol.abs_tol));
  out.push_back(make_entry(check_names::grading_involution,
                           operator_norm(g * g - CMatrix::identity(n)), tol.abs_tol));
  double comm = 0.0;
  for (const auto& a : point_projectors(t.rep)) {
    comm = std::max(comm, operator_norm(commutator(g, a)));
  }
  out.push_back(make_entry(check_names::grading_commutes_algebra, comm, tol.abs_tol));
  out.push_back(make_entry(check_names::grading_anticommutes_dirac,
                           operator_norm(anticommutator(g, t.dirac)), tol.abs_tol));
  const CMatrix nu = t.twist_matrix();
  out.push_back(make_entry(check_names::grading_twist_square,
                           operator_norm(commutator(nu * nu, g)), tol.abs_tol));
  if (t.real) {
    // gamma J = eps'' J gamma  <=>  gamma U = eps'' U conj(gamma)
    const CMatrix& u = t.real->j.unitary_part;
    const auto edp = t.real->signs.eps_dprime;
    const double r = edp ? operator_norm(g * u - value(*edp) * (u * g.conj()))
                         : std::numeric_limits<double>::infinity();
    out.push_back(make_entry(check_names::grading_epsilon_dprime, r, tol.abs_tol));
  }
  return out;
}

/// All applicable axioms plus the antiunitary and twist invariants.
inline CheckReport check_all(const SpectralTriple& t, const ToleranceConfig& tol = {}) {
  require_consistent_shape(t);
  CheckReport report;
  auto& e = report.entries;
  const std::size_t n = t.dim();
  e.push_back(make_entry(check_names::dirac_selfadjoint, operator_norm(t.dirac - t.dirac.adjoint()),
                         tol.abs_tol));

  if (t.twist) {
    const CMatrix& nu = t.twist->nu;
    e.push_back(make_entry(check_names::twist_selfadjoint, operator_norm(nu - nu.adjoint()), tol.abs_tol));
    const auto sv = singular_values(nu);
    const bool invertible = sv.back() > detail::rank_threshold(sv, tol.rank_tol);
    // Binary entry: residual 0 when invertible, 1 otherwise.
    e.push_back(make_entry(check_names::twist_invertible, invertible ? 0.0 : 1.0, 0.5));
    if (t.twist->implements_algebra_automorphism) {
      double worst = std::numeric_limits<double>::infinity();
      if (invertible) {
        const CMatrix nu_inv = inverse(nu);
        worst = 0.0;
        for (const auto& a : point_projectors(t.rep)) {
          worst = std::max(worst, algebra_membership_residual(t.rep, nu_inv * a * nu));
        }
      }
      e.push_back(make_entry(check_names::twist_automorphism, worst, tol.abs_tol));
    } else {
      e.push_back(make_entry(check_names::twist_involution,
                             operator_norm(nu * nu - CMatrix::identity(n)), tol.abs_tol));
    }
  }

  if (t.real) {
    const auto& j = t.real->j;
    e.push_back(make_entry(check_names::real_isometry, j.isometry_defect(), tol.abs_tol));
    e.push_back(make_entry(check_names::real_epsilon,
                           operator_norm(j.square() - value(t.real->signs.eps) * CMatrix::identity(n)),
                           tol.abs_tol));
    e.push_back(check_order_zero(t, tol));
    e.push_back(check_twisted_order_one(t, tol));
    e.push_back(check_epsilon_prime(t, tol));
    if (t.twist) {
      e.push_back(check_twisted_regularity(t, tol));
    }
  }

  if (t.grading) {
    for (auto& g : check_grading(t, tol)) {
      e.push_back(std::move(g));
    }
  }
  return report;
}

/// KO-dimension mod 8 from the sign table; graded sign triples map to even
/// n, ungraded to odd n. Throws for combinations absent from the table.
inline int ko_dimension(const SignTriple& s) {
  struct Row {
    int n;
    Sign eps;
    Sign eps_prime;
    std::optional<Sign> eps_dprime;
  };
  static const Row table[] = {
      {0, Sign::plus, Sign::plus, Sign::plus},   {1, Sign::plus, Sign::minus, std::nullopt},
      {2, Sign::minus, Sign::plus, Sign::minus}, {3, Sign::minus, Sign::plus, std::nullopt},
      {4, Sign::minus, Sign::plus, Sign::plus},  {5, Sign::minus, Sign::minus, std::nullopt},
      {6, Sign::plus, Sign::plus, Sign::minus},  {7, Sign::plus, Sign::plus, std::nullopt},
  };
  for (const auto& row : table) {
    if (row.eps == s.eps && row.eps_prime == s.eps_prime && row.eps_dprime == s.eps_dprime) {
      return row.n;
    }
  }
  auto str = [](Sign v) { return v == Sign::plus ? std::string("+1") : std::string("-1"); };
  throw InvalidInput("no KO-dimension for signs (" + str(s.eps) + ", " + str(s.eps_prime) +
                     (s.eps_dprime ? ", " + str(*s.eps_dprime) : std::string()) + ")");
}

/// Generators of the algebra spanned by gamma, a and [D, b].
inline std::vector<CMatrix> irreducibility_generators(const SpectralTriple& t) {
  std::vector<CMatrix> gens;
  if (t.grading) {
    gens.push_back(*t.grading);
  }
  for (const auto& a : point_projectors(t.rep)) {
    gens.push_back(a);
    gens.push_back(commutator(t.dirac, a));
  }
  return gens;
}

inline bool is_irreducible(const SpectralTriple& t, const ToleranceConfig& tol = {}) {
  return commutant_dimension(irreducibility_generators(t), tol) == 1;
}

} // namespace twreal
