#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "projrep/error.hpp"
#include "projrep/linalg.hpp"
#include "projrep/phase.hpp"

namespace projrep {

/// Unit vector of a finite-dimensional complex Hilbert space. Normalized at
/// construction; the zero vector is rejected.
class StateVector {
 public:
  explicit StateVector(CVector v) : v_(std::move(v)) {
    const double n = v_.norm();
    if (v_.size() == 0 || !(n > 0.0) || !std::isfinite(n)) {
      throw Error(ErrorKind::ZeroVector, "state vector must be nonzero and finite");
    }
    v_ /= n;
  }

  static StateVector basis(std::size_t dim, std::size_t k) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(k)) = 1.0;
    return StateVector(std::move(v));
  }

  static StateVector random(std::size_t dim, CounterRng& rng) {
    return StateVector(random_unit_vector(dim, rng));
  }

  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
  const CVector& vec() const { return v_; }

 private:
  CVector v_;
};

/// Equivalence class of unit vectors under unimodular phases, held by one
/// representative.
class Ray {
 public:
  explicit Ray(StateVector rep) : rep_(std::move(rep)) {}
  explicit Ray(CVector v) : rep_(std::move(v)) {}

  std::size_t dim() const { return rep_.dim(); }
  const StateVector& representative() const { return rep_; }
  const CVector& vec() const { return rep_.vec(); }

  bool same_as(const Ray& o, double eps = 1e-10) const;

 private:
  StateVector rep_;
};

/// Square complex matrix, optionally checked unitary.
class Operator {
 public:
  explicit Operator(CMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
      throw Error(ErrorKind::DimMismatch, "operator must be square",
                  {{"rows", m_.rows()}, {"cols", m_.cols()}});
    }
  }

  static Operator unitary(CMatrix m, double eps = tol::kUnitary) {
    Operator op(std::move(m));
    const double d = unitarity_defect(op.m_);
    if (d > eps) throw Error(ErrorKind::NotUnitary, "matrix is not unitary", {{"defect", d}});
    return op;
  }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& mat() const { return m_; }
  CVector apply(const CVector& v) const { return m_ * v; }

 private:
  CMatrix m_;
};

namespace detail {
inline void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::DimMismatch, "dimension mismatch", {{"left", a}, {"right", b}});
}
}  // namespace detail

/// Ray product |<phi, psi>|, independent of representative phases.
inline double ray_inner(const Ray& a, const Ray& b) {
  detail::require_same_dim(a.dim(), b.dim());
  return std::min(std::abs(a.vec().dot(b.vec())), 1.0 + 1e-12);
}

/// d(A, B) = [2 (1 - A.B)]^{1/2}, the minimum of ||psi - psi''|| over
/// representatives. Evaluated as ||psi - tau psi''|| with tau the phase of
/// <psi'', psi>, which equals the closed form but does not lose half the
/// digits to cancellation when A.B is close to 1.
inline double ray_distance(const Ray& a, const Ray& b) {
  detail::require_same_dim(a.dim(), b.dim());
  const Complex ov = b.vec().dot(a.vec());
  const double m = std::abs(ov);
  const Complex tau = m > 0.0 ? ov / m : Complex(1.0, 0.0);
  return (a.vec() - tau * b.vec()).norm();
}

inline bool Ray::same_as(const Ray& o, double eps) const { return ray_inner(*this, o) >= 1.0 - eps; }

/// Brute-force ray distance: min over tau = exp(2 pi i k / grid) of
/// ||psi - tau psi''||. With `refine`, a second uniform grid of the same size
/// spans the two cells around the best coarse point, which brings the error
/// from O(1/grid) down to O(1/grid^2) for nearly parallel vectors. The
/// closed-form overlap formula is never used.
inline double min_phase_distance_oracle(const StateVector& psi, const StateVector& psi2, int grid,
                                        bool refine = true) {
  detail::require_same_dim(psi.dim(), psi2.dim());
  if (grid < 8) throw Error(ErrorKind::ValidationError, "grid must be at least 8", {{"grid", grid}});
  auto dist_at = [&](double theta) {
    return (psi.vec() - std::polar(1.0, theta) * psi2.vec()).norm();
  };
  const double step = kTwoPi / grid;
  double best = std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (int k = 0; k < grid; ++k) {
    const double d = dist_at(step * k);
    if (d < best) {
      best = d;
      best_k = k;
    }
  }
  if (refine) {
    const double lo = step * (best_k - 1);
    const double fine = 2.0 * step / grid;
    for (int k = 0; k <= grid; ++k) best = std::min(best, dist_at(lo + fine * k));
  }
  return best;
}

struct ContinuityGap {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = |Psi1.Phi1 - Psi2.Phi2|, rhs = d(Phi1, Phi2) + d(Psi1, Psi2).
inline ContinuityGap inner_continuity_gap(const Ray& psi1, const Ray& phi1, const Ray& psi2,
                                          const Ray& phi2) {
  ContinuityGap g;
  g.lhs = std::abs(ray_inner(psi1, phi1) - ray_inner(psi2, phi2));
  g.rhs = ray_distance(phi1, phi2) + ray_distance(psi1, psi2);
  return g;
}

}  // namespace projrep
