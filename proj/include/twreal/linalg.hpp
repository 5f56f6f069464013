#pragma once

/// Dense complex linear algebra for the small (dim <= 8) operators that
/// carry every object of a finite spectral triple: products, adjoints,
/// commutators, operator norm, antiunitary conjugation, commutants and
/// real-linear constraint solving over Hermitian matrices.
///
/// Everything here is a value type or a pure function.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twreal/error.hpp"

namespace twreal {

using Complex = std::complex<double>;

struct ToleranceConfig {
  double abs_tol = 1e-9;
  double rank_tol = 1e-9;
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Square complex matrix, row-major.
class CMatrix {
public:
  explicit CMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) {
      throw InvalidInput("CMatrix: dimension must be positive");
    }
  }

  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
      : CMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != dim_) {
        throw DimensionMismatch("CMatrix: ragged row list");
      }
      std::size_t j = 0;
      for (const auto& z : row) {
        (*this)(i, j++) = z;
      }
      ++i;
    }
  }

  static CMatrix zero(std::size_t dim) { return CMatrix(dim); }

  static CMatrix identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      m(i, i) = 1.0;
    }
    return m;
  }

  static CMatrix diagonal(std::span<const Complex> values) {
    CMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      m(i, i) = values[i];
    }
    return m;
  }

  static CMatrix diagonal(std::initializer_list<Complex> values) {
    return diagonal(std::span<const Complex>(values.begin(), values.size()));
  }

  /// Permutation matrix sending basis vector j to basis vector image[j].
  static CMatrix permutation(std::span<const std::size_t> image) {
    CMatrix m(image.size());
    for (std::size_t j = 0; j < image.size(); ++j) {
      if (image[j] >= image.size()) {
        throw InvalidInput("CMatrix::permutation: index out of range");
      }
      m(image[j], j) = 1.0;
    }
    return m;
  }

  static CMatrix permutation(std::initializer_list<std::size_t> image) {
    return permutation(std::span<const std::size_t>(image.begin(), image.size()));
  }

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  CMatrix adjoint() const {
    CMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        r(j, i) = std::conj((*this)(i, j));
      }
    }
    return r;
  }

  /// Entrywise complex conjugate.
  CMatrix conj() const {
    CMatrix r(dim_);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      r.entries_[k] = std::conj(entries_[k]);
    }
    return r;
  }

  CMatrix transpose() const {
    CMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        r(j, i) = (*this)(i, j);
      }
    }
    return r;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      t += (*this)(i, i);
    }
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : entries_) {
      s += std::norm(z);
    }
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : entries_) {
      m = std::max(m, std::abs(z));
    }
    return m;
  }

  bool all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](Complex z) { return is_finite(z); });
  }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_dim(o, "operator+=");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      entries_[k] += o.entries_[k];
    }
    return *this;
  }

  CMatrix& operator-=(const CMatrix& o) {
    require_same_dim(o, "operator-=");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      entries_[k] -= o.entries_[k];
    }
    return *this;
  }

  CMatrix& operator*=(Complex s) {
    for (auto& z : entries_) {
      z *= s;
    }
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator-(CMatrix a) { return a *= -1.0; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(double s, CMatrix a) { return a *= Complex(s); }
  friend CMatrix operator*(CMatrix a, double s) { return a *= Complex(s); }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    a.require_same_dim(b, "operator*");
    const std::size_t n = a.dim_;
    CMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0)) {
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          r(i, j) += aik * b(k, j);
        }
      }
    }
    return r;
  }

  friend bool operator==(const CMatrix& a, const CMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

private:
  void require_same_dim(const CMatrix& o, const char* where) const {
    if (o.dim_ != dim_) {
      throw DimensionMismatch(std::string("CMatrix::") + where + ": " +
                              std::to_string(dim_) + " vs " + std::to_string(o.dim_));
    }
  }

  std::size_t dim_;
  std::vector<Complex> entries_;
};

inline void require_same_dim(const CMatrix& a, const CMatrix& b, const char* where) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(where) + ": dimension mismatch (" +
                            std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

/// ab - ba
inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

/// ab + ba
inline CMatrix anticommutator(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

/// Gauss-Jordan inverse with partial pivoting. Throws on a (numerically)
/// singular matrix.
inline CMatrix inverse(const CMatrix& m) {
  const std::size_t n = m.dim();
  CMatrix a = m;
  CMatrix inv = CMatrix::identity(n);
  const double scale = std::max(m.max_abs(), std::numeric_limits<double>::min());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) {
        piv = r;
      }
    }
    if (std::abs(a(piv, col)) <= 1e-14 * scale) {
      throw InvalidInput("inverse: matrix is singular");
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const Complex p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) {
        continue;
      }
      const Complex f = a(r, col);
      if (f == Complex(0.0)) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Eigenvalues (ascending) of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Only the Hermitian part (m + m*)/2 is used.
inline std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  const std::size_t n = m.dim();
  CMatrix a = 0.5 * (m + m.adjoint());
  const double total = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        off += std::norm(a(i, j));
      }
    }
    if (std::sqrt(off) <= 1e-17 * total) {
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double b = std::abs(a(p, q));
        if (b <= 1e-300) {
          continue;
        }
        // Phase-rotate q so the (p,q) entry is real, then apply a real
        // symmetric Schur rotation. G = diag(1, e^{-i theta}) * [[c, s], [-s, c]].
        const Complex phase = a(p, q) / b;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) {
    ev[i] = a(i, i).real();
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Largest singular value, sqrt of the top eigenvalue of m*m.
inline double operator_norm(const CMatrix& m) {
  const auto ev = hermitian_eigenvalues(m.adjoint() * m);
  return std::sqrt(std::max(0.0, ev.back()));
}

/// Singular values (descending).
inline std::vector<double> singular_values(const CMatrix& m) {
  auto ev = hermitian_eigenvalues(m.adjoint() * m);
  std::vector<double> sv(ev.size());
  std::transform(ev.rbegin(), ev.rend(), sv.begin(),
                 [](double x) { return std::sqrt(std::max(0.0, x)); });
  return sv;
}

/// Antilinear operator psi -> U conj(psi).
struct Antiunitary {
  CMatrix unitary_part;

  std::size_t dim() const noexcept { return unitary_part.dim(); }

  std::vector<Complex> apply(std::span<const Complex> psi) const {
    const std::size_t n = dim();
    if (psi.size() != n) {
      throw DimensionMismatch("Antiunitary::apply: vector size");
    }
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out[i] += unitary_part(i, j) * std::conj(psi[j]);
      }
    }
    return out;
  }

  /// ||U*U - 1||, zero iff J*J = id.
  double isometry_defect() const {
    return operator_norm(unitary_part.adjoint() * unitary_part - CMatrix::identity(dim()));
  }

  /// J^2 as the linear operator U conj(U).
  CMatrix square() const { return unitary_part * unitary_part.conj(); }
};

/// J m J^{-1} = U conj(m) U^{-1} (U unitary, so U^{-1} = U*).
inline CMatrix conj_by_antiunitary(const Antiunitary& j, const CMatrix& m) {
  require_same_dim(j.unitary_part, m, "conj_by_antiunitary");
  return j.unitary_part * m.conj() * j.unitary_part.adjoint();
}

namespace detail {

/// Column-major real matrix used for the realified constraint systems.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[j * rows + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data[j * rows + i]; }
  std::span<double> column(std::size_t j) { return {data.data() + j * rows, rows}; }
  std::span<const double> column(std::size_t j) const { return {data.data() + j * rows, rows}; }
};

struct RealSvd {
  std::vector<double> sigma;  // per column of V, unsorted
  RealMatrix v;               // cols x cols, right singular vectors as columns
};

/// One-sided (Hestenes) Jacobi SVD. Accurate to roundoff relative to the
/// largest singular value, including exact zeros.
inline RealSvd one_sided_jacobi_svd(RealMatrix a) {
  const std::size_t n = a.cols;
  RealMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    v(i, i) = 1.0;
  }
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        auto ci = a.column(i);
        auto cj = a.column(j);
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < a.rows; ++k) {
          alpha += ci[k] * ci[k];
          beta += cj[k] * cj[k];
          gamma += ci[k] * cj[k];
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) {
          continue;
        }
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < a.rows; ++k) {
          const double x = ci[k];
          const double y = cj[k];
          ci[k] = c * x - s * y;
          cj[k] = s * x + c * y;
        }
        auto vi = v.column(i);
        auto vj = v.column(j);
        for (std::size_t k = 0; k < n; ++k) {
          const double x = vi[k];
          const double y = vj[k];
          vi[k] = c * x - s * y;
          vj[k] = s * x + c * y;
        }
      }
    }
    if (!rotated) {
      break;
    }
  }
  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (double x : a.column(j)) {
      s += x * x;
    }
    sigma[j] = std::sqrt(s);
  }
  return {std::move(sigma), std::move(v)};
}

/// Relative rank threshold: rank_tol * sigma_max, or rank_tol if every
/// singular value is tiny.
inline double rank_threshold(std::span<const double> sigma, double rank_tol) {
  const double smax = sigma.empty() ? 0.0 : *std::max_element(sigma.begin(), sigma.end());
  return rank_tol * (smax > rank_tol ? smax : 1.0);
}

inline std::size_t numerical_rank(const RealMatrix& a, double rank_tol) {
  if (a.cols == 0 || a.rows == 0) {
    return 0;
  }
  const auto svd = one_sided_jacobi_svd(a);
  const double thr = rank_threshold(svd.sigma, rank_tol);
  return static_cast<std::size_t>(
      std::count_if(svd.sigma.begin(), svd.sigma.end(), [&](double s) { return s > thr; }));
}

/// Orthonormal basis (rows) of the nullspace of a.
inline std::vector<std::vector<double>> nullspace(const RealMatrix& a, double rank_tol) {
  std::vector<std::vector<double>> basis;
  if (a.rows == 0) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      std::vector<double> e(a.cols, 0.0);
      e[j] = 1.0;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  const auto svd = one_sided_jacobi_svd(a);
  const double thr = rank_threshold(svd.sigma, rank_tol);
  for (std::size_t j = 0; j < a.cols; ++j) {
    if (svd.sigma[j] <= thr) {
      auto col = svd.v.column(j);
      basis.emplace_back(col.begin(), col.end());
    }
  }
  return basis;
}

/// Minimum-norm least-squares solution of a x = b (pseudo-inverse via SVD).
inline std::vector<double> least_squares(const RealMatrix& a, std::span<const double> b,
                                         double rank_tol) {
  if (b.size() != a.rows) {
    throw DimensionMismatch("least_squares: rhs size");
  }
  const auto svd = one_sided_jacobi_svd(a);
  const double thr = rank_threshold(svd.sigma, rank_tol);
  // After rotation, A V = U Sigma with the columns of A V = U_j sigma_j.
  RealMatrix av(a.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) {
        s += a(i, k) * svd.v(k, j);
      }
      av(i, j) = s;
    }
  }
  std::vector<double> x(a.cols, 0.0);
  for (std::size_t j = 0; j < a.cols; ++j) {
    if (svd.sigma[j] <= thr) {
      continue;
    }
    double ub = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) {
      ub += av(i, j) * b[i];
    }
    const double coef = ub / (svd.sigma[j] * svd.sigma[j]);
    for (std::size_t k = 0; k < a.cols; ++k) {
      x[k] += coef * svd.v(k, j);
    }
  }
  return x;
}

/// Reduced row echelon form of the row set, rows with no pivot dropped.
/// The result depends only on the row space, which makes bases canonical.
inline std::vector<std::vector<double>> rref(std::vector<std::vector<double>> rows,
                                             double pivot_tol = 1e-10) {
  if (rows.empty()) {
    return rows;
  }
  const std::size_t ncols = rows.front().size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < ncols && lead < rows.size(); ++col) {
    std::size_t piv = lead;
    for (std::size_t r = lead + 1; r < rows.size(); ++r) {
      if (std::abs(rows[r][col]) > std::abs(rows[piv][col])) {
        piv = r;
      }
    }
    if (std::abs(rows[piv][col]) <= pivot_tol) {
      continue;
    }
    std::swap(rows[piv], rows[lead]);
    const double p = rows[lead][col];
    for (double& x : rows[lead]) {
      x /= p;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead) {
        continue;
      }
      const double f = rows[r][col];
      if (f == 0.0) {
        continue;
      }
      for (std::size_t k = 0; k < ncols; ++k) {
        rows[r][k] -= f * rows[lead][k];
      }
    }
    ++lead;
  }
  rows.resize(lead);
  for (auto& row : rows) {
    for (double& x : row) {
      if (std::abs(x) <= pivot_tol) {
        x = 0.0;
      }
    }
  }
  return rows;
}

inline void gram_schmidt(std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < i; ++k) {
        const double d = std::inner_product(rows[i].begin(), rows[i].end(), rows[k].begin(), 0.0);
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
          rows[i][c] -= d * rows[k][c];
        }
      }
    }
    const double nrm = std::sqrt(std::inner_product(rows[i].begin(), rows[i].end(), rows[i].begin(), 0.0));
    for (double& x : rows[i]) {
      x /= nrm;
    }
  }
}

/// [Re entries..., Im entries...]
inline std::vector<double> realify(const CMatrix& m) {
  const auto e = m.entries();
  std::vector<double> out(2 * e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    out[k] = e[k].real();
    out[e.size() + k] = e[k].imag();
  }
  return out;
}

} // namespace detail

/// Real coordinates on the n^2-dimensional real space of Hermitian n x n
/// matrices: diagonal entries, then (re, im) of each strictly-upper entry in
/// row-major order.
inline std::size_t hermitian_coordinate_count(std::size_t n) { return n * n; }

inline CMatrix from_hermitian_coordinates(std::span<const double> x, std::size_t n) {
  if (x.size() != n * n) {
    throw DimensionMismatch("from_hermitian_coordinates: coordinate count");
  }
  CMatrix m(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = x[k++];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z(x[k], x[k + 1]);
      k += 2;
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

inline std::vector<double> hermitian_coordinates(const CMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<double> x;
  x.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    x.push_back(m(i, i).real());
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      x.push_back(m(i, j).real());
      x.push_back(m(i, j).imag());
    }
  }
  return x;
}

/// Complex dimension of {X : XG = GX for all generators G}.
inline std::size_t commutant_dimension(std::span<const CMatrix> generators,
                                       const ToleranceConfig& tol = {}) {
  if (generators.empty()) {
    throw InvalidInput("commutant_dimension: at least one generator is required");
  }
  const std::size_t n = generators.front().dim();
  for (const auto& g : generators) {
    if (g.dim() != n) {
      throw DimensionMismatch("commutant_dimension: generators of different dimension");
    }
  }
  const std::size_t unknowns = 2 * n * n;
  const std::size_t block = 2 * n * n;
  detail::RealMatrix system(block * generators.size(), unknowns);
  for (std::size_t u = 0; u < unknowns; ++u) {
    CMatrix x(n);
    const std::size_t k = u % (n * n);
    x.entries()[k] = u < n * n ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
    for (std::size_t g = 0; g < generators.size(); ++g) {
      const auto img = detail::realify(commutator(x, generators[g]));
      for (std::size_t r = 0; r < block; ++r) {
        system(g * block + r, u) = img[r];
      }
    }
  }
  const std::size_t real_nullity = unknowns - detail::numerical_rank(system, tol.rank_tol);
  return real_nullity / 2;
}

inline std::size_t commutant_dimension(std::initializer_list<CMatrix> generators,
                                       const ToleranceConfig& tol = {}) {
  return commutant_dimension(std::span<const CMatrix>(generators.begin(), generators.size()), tol);
}

/// A real-linear map from Hermitian matrices to matrices; a Dirac operator D
/// satisfies the constraint when the image is zero.
using LinearConstraint = std::function<CMatrix(const CMatrix&)>;

/// Real basis of all Hermitian dim x dim matrices annihilated by every
/// constraint. The basis is canonical (reduced row echelon form in Hermitian
/// coordinates, so ordered by pivot coordinate) and then orthonormalized in
/// those coordinates.
inline std::vector<CMatrix> solve_linear_family(std::span<const LinearConstraint> constraints,
                                                std::size_t dim,
                                                const ToleranceConfig& tol = {}) {
  const std::size_t unknowns = hermitian_coordinate_count(dim);
  std::vector<CMatrix> herm_basis;
  herm_basis.reserve(unknowns);
  for (std::size_t u = 0; u < unknowns; ++u) {
    std::vector<double> x(unknowns, 0.0);
    x[u] = 1.0;
    herm_basis.push_back(from_hermitian_coordinates(x, dim));
  }

  std::size_t rows = 0;
  std::vector<std::vector<std::vector<double>>> blocks;
  for (const auto& c : constraints) {
    std::vector<std::vector<double>> cols;
    for (const auto& h : herm_basis) {
      cols.push_back(detail::realify(c(h)));
    }
    rows += cols.front().size();
    blocks.push_back(std::move(cols));
  }
  detail::RealMatrix system(rows, unknowns);
  std::size_t offset = 0;
  for (const auto& cols : blocks) {
    for (std::size_t u = 0; u < unknowns; ++u) {
      for (std::size_t r = 0; r < cols[u].size(); ++r) {
        system(offset + r, u) = cols[u][r];
      }
    }
    offset += cols.front().size();
  }

  auto basis = detail::rref(detail::nullspace(system, tol.rank_tol));
  detail::gram_schmidt(basis);
  std::vector<CMatrix> out;
  out.reserve(basis.size());
  for (const auto& x : basis) {
    out.push_back(from_hermitian_coordinates(x, dim));
  }
  return out;
}

inline std::vector<CMatrix> solve_linear_family(std::initializer_list<LinearConstraint> constraints,
                                                std::size_t dim,
                                                const ToleranceConfig& tol = {}) {
  return solve_linear_family(std::span<const LinearConstraint>(constraints.begin(), constraints.size()),
                             dim, tol);
}

/// Complex dimension of span{vectors} (each matrix read as a vector in C^{n^2}).
inline std::size_t complex_span_dimension(std::span<const CMatrix> vectors, double rank_tol) {
  if (vectors.empty()) {
    return 0;
  }
  const std::size_t len = 2 * vectors.front().dim() * vectors.front().dim();
  detail::RealMatrix a(len, 2 * vectors.size());
  for (std::size_t v = 0; v < vectors.size(); ++v) {
    const auto x = detail::realify(vectors[v]);
    const auto ix = detail::realify(Complex(0.0, 1.0) * vectors[v]);
    for (std::size_t r = 0; r < len; ++r) {
      a(r, 2 * v) = x[r];
      a(r, 2 * v + 1) = ix[r];
    }
  }
  return detail::numerical_rank(a, rank_tol) / 2;
}

} // namespace twreal
