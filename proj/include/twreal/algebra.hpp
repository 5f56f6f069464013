#pragma once

/// The algebra of functions on finitely many points, its diagonal
/// representations, point permutations and the two-point calculus.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "twreal/error.hpp"
#include "twreal/linalg.hpp"

namespace twreal {

/// A function on k points, one value per point. For two points this is
/// (c_plus, c_minus).
struct PointAlgebraElement {
  std::vector<Complex> values;

  std::size_t points() const noexcept { return values.size(); }

  PointAlgebraElement star() const {
    PointAlgebraElement r = *this;
    for (auto& v : r.values) {
      v = std::conj(v);
    }
    return r;
  }

  friend PointAlgebraElement operator*(const PointAlgebraElement& a, const PointAlgebraElement& b) {
    if (a.points() != b.points()) {
      throw DimensionMismatch("PointAlgebraElement: point count mismatch");
    }
    PointAlgebraElement r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      r.values[i] *= b.values[i];
    }
    return r;
  }
};

/// Faithful diagonal representation: basis vector i carries point point_of[i].
class Representation {
public:
  Representation(std::vector<std::size_t> point_of, std::size_t points)
      : point_of_(std::move(point_of)), points_(points) {
    if (point_of_.empty()) {
      throw InvalidInput("Representation: Hilbert space dimension must be positive");
    }
    if (points_ == 0) {
      throw InvalidInput("Representation: at least one point is required");
    }
    std::vector<bool> seen(points_, false);
    for (std::size_t p : point_of_) {
      if (p >= points_) {
        throw InvalidInput("Representation: point index " + std::to_string(p) + " out of range");
      }
      seen[p] = true;
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
      throw InvalidInput("Representation: not faithful (some point has no basis vector)");
    }
  }

  std::size_t dim() const noexcept { return point_of_.size(); }
  std::size_t points() const noexcept { return points_; }
  const std::vector<std::size_t>& point_of() const noexcept { return point_of_; }

  friend bool operator==(const Representation&, const Representation&) = default;

private:
  std::vector<std::size_t> point_of_;
  std::size_t points_;
};

class PointPermutation {
public:
  explicit PointPermutation(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
    std::vector<bool> seen(perm_.size(), false);
    for (std::size_t p : perm_) {
      if (p >= perm_.size() || seen[p]) {
        throw InvalidInput("PointPermutation: not a bijection");
      }
      seen[p] = true;
    }
  }

  static PointPermutation identity(std::size_t k) {
    std::vector<std::size_t> p(k);
    for (std::size_t i = 0; i < k; ++i) {
      p[i] = i;
    }
    return PointPermutation(std::move(p));
  }

  /// The exchange of the two points.
  static PointPermutation swap() { return PointPermutation({1, 0}); }

  std::size_t size() const noexcept { return perm_.size(); }
  std::size_t operator[](std::size_t i) const { return perm_[i]; }

private:
  std::vector<std::size_t> perm_;
};

inline CMatrix embed(const Representation& rep, const PointAlgebraElement& a) {
  if (a.points() != rep.points()) {
    throw DimensionMismatch("embed: element has " + std::to_string(a.points()) +
                            " values, representation has " + std::to_string(rep.points()) +
                            " points");
  }
  CMatrix m(rep.dim());
  for (std::size_t i = 0; i < rep.dim(); ++i) {
    m(i, i) = a.values[rep.point_of()[i]];
  }
  return m;
}

/// Indicator function of point p.
inline PointAlgebraElement point_indicator(std::size_t points, std::size_t p) {
  PointAlgebraElement a{std::vector<Complex>(points, 0.0)};
  a.values.at(p) = 1.0;
  return a;
}

/// Images of the point indicators; a linear basis of the represented algebra.
/// For two points this is {e, 1 - e}.
inline std::vector<CMatrix> point_projectors(const Representation& rep) {
  std::vector<CMatrix> out;
  for (std::size_t p = 0; p < rep.points(); ++p) {
    out.push_back(embed(rep, point_indicator(rep.points(), p)));
  }
  return out;
}

inline void require_two_points(const Representation& rep, const char* where) {
  if (rep.points() != 2) {
    throw InvalidInput(std::string(where) + ": requires the two-point algebra, got " +
                       std::to_string(rep.points()) + " points");
  }
}

/// e = (1, 0)
inline CMatrix projection_e(const Representation& rep) {
  require_two_points(rep, "projection_e");
  return embed(rep, PointAlgebraElement{{1.0, 0.0}});
}

/// e[D,e] = [D,e](1-e), tested on a = e (sufficient by linearity).
inline bool check_bimodule_relation(const Representation& rep, const CMatrix& d,
                                    const ToleranceConfig& tol = {}) {
  const CMatrix e = projection_e(rep);
  const CMatrix one = CMatrix::identity(rep.dim());
  const CMatrix de = commutator(d, e);
  return operator_norm(e * de - de * (one - e)) < tol.abs_tol;
}

/// result[i] = a[p[i]]
inline PointAlgebraElement permute(const Representation& rep, const PointPermutation& p,
                                   const PointAlgebraElement& a) {
  if (p.size() != rep.points() || a.points() != rep.points()) {
    throw DimensionMismatch("permute: size mismatch");
  }
  PointAlgebraElement r{std::vector<Complex>(a.points())};
  for (std::size_t i = 0; i < a.points(); ++i) {
    r.values[i] = a.values[p[i]];
  }
  return r;
}

/// Operator-norm distance from x to the nearest-by-averaging element of the
/// represented algebra; zero iff x lies in the algebra.
inline double algebra_membership_residual(const Representation& rep, const CMatrix& x) {
  require_same_dim(x, CMatrix(rep.dim()), "algebra_membership_residual");
  std::vector<Complex> sums(rep.points(), 0.0);
  std::vector<double> counts(rep.points(), 0.0);
  for (std::size_t i = 0; i < rep.dim(); ++i) {
    sums[rep.point_of()[i]] += x(i, i);
    counts[rep.point_of()[i]] += 1.0;
  }
  PointAlgebraElement nearest{std::vector<Complex>(rep.points())};
  for (std::size_t p = 0; p < rep.points(); ++p) {
    nearest.values[p] = sums[p] / counts[p];
  }
  return operator_norm(x - embed(rep, nearest));
}

} // namespace twreal
