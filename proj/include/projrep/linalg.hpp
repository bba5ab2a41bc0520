#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "projrep/prng.hpp"

namespace projrep {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Default tolerances; the CLI config can override the ones it exposes.
namespace tol {
inline constexpr double kNorm = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kScalar = 1e-9;
inline constexpr double kPhase = 1e-9;
inline constexpr double kBound = 1e-9;
}  // namespace tol

/// max_ij |A_ij|
inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// max_ij |(U^dagger U - I)_ij|
inline double unitarity_defect(const CMatrix& u) {
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
}

inline bool is_unitary(const CMatrix& u, double eps = tol::kUnitary) {
  return u.rows() == u.cols() && unitarity_defect(u) <= eps;
}

/// Complex Ginibre vector normalized to unit length.
inline CVector random_unit_vector(std::size_t dim, CounterRng& rng) {
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

/// Haar-distributed unitary: QR of a Ginibre matrix with R's diagonal phases
/// pushed into Q.
inline CMatrix random_unitary(std::size_t dim, CounterRng& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

}  // namespace projrep
