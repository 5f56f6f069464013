#pragma once

// Shared generators and independent oracles for the test suites.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "twreal/linalg.hpp"

namespace twreal::testing {

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo = -2.0, double hi = 2.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Complex complex(double scale = 2.0) { return {real(-scale, scale), real(-scale, scale)}; }

  /// Complex number with modulus in [lo, hi].
  Complex complex_in_annulus(double lo, double hi) {
    const double r = real(lo, hi);
    const double t = real(0.0, 2.0 * M_PI);
    return std::polar(r, t);
  }

  CMatrix matrix(std::size_t n) {
    CMatrix m(n);
    for (auto& z : m.entries()) {
      z = complex();
    }
    return m;
  }

  CMatrix hermitian(std::size_t n) {
    const CMatrix m = matrix(n);
    return 0.5 * (m + m.adjoint());
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

/// ||m|| by power iteration on m*m from a fixed start vector.
inline double power_iteration_norm(const CMatrix& m, int iterations = 2000) {
  const std::size_t n = m.dim();
  const CMatrix h = m.adjoint() * m;
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = Complex(1.0 + 0.37 * i, 0.11 * i);
  }
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<Complex> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        w[i] += h(i, j) * v[j];
      }
    }
    double norm = 0.0;
    for (auto z : w) {
      norm += std::norm(z);
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      return 0.0;
    }
    for (auto& z : w) {
      z /= norm;
    }
    v = w;
    lambda = norm;
  }
  return std::sqrt(lambda);
}

/// Nullity of a complex rows x cols system by Gaussian elimination with
/// partial pivoting.
inline std::size_t complex_nullity(std::vector<std::vector<Complex>> a, std::size_t cols, double tol = 1e-9) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    for (std::size_t r = rank; r < a.size(); ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) {
        piv = r;
      }
    }
    if (std::abs(a[piv][c]) < tol) {
      continue;
    }
    std::swap(a[piv], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank) {
        continue;
      }
      const Complex f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) {
        a[r][k] -= f * a[rank][k];
      }
    }
    ++rank;
  }
  return cols - rank;
}

/// Commutant dimension via complex elimination on X -> XG - GX.
inline std::size_t commutant_dimension_oracle(const std::vector<CMatrix>& gens) {
  const std::size_t n = gens.front().dim();
  std::vector<std::vector<Complex>> rows;
  for (const auto& g : gens) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        // (XG - GX)_{ij} = sum_k X_{ik} G_{kj} - G_{ik} X_{kj}
        std::vector<Complex> row(n * n);
        for (std::size_t k = 0; k < n; ++k) {
          row[i * n + k] += g(k, j);
          row[k * n + j] -= g(i, k);
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return complex_nullity(std::move(rows), n * n);
}

inline double max_entry_diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

} // namespace twreal::testing
