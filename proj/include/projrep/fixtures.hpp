#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "projrep/group.hpp"
#include "projrep/linalg.hpp"
#include "projrep/phase.hpp"
#include "projrep/prng.hpp"
#include "projrep/ray_rep.hpp"
#include "projrep/su2.hpp"

// Standard representations used by tests, the bundled corpus and the CLI.
namespace projrep::fixtures {

inline Complex root_of_unity(std::int64_t k, std::int64_t n) {
  return Phase::from_turns(k, n).unit();
}

/// n x n shift |k> -> |k+1 mod n>.
inline CMatrix shift_matrix(std::size_t n) {
  CMatrix x = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) x(static_cast<Eigen::Index>((k + 1) % n), static_cast<Eigen::Index>(k)) = 1.0;
  return x;
}

/// diag(omega^k), omega = e^{2 pi i / n}.
inline CMatrix clock_matrix(std::size_t n) {
  CMatrix z = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k)
    z(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
        root_of_unity(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n));
  return z;
}

/// Z_n x Z_n with U_(a,b) = X^a Z^b at id a n + b; omega((a,b),(c,d)) = e^{2 pi i bc/n}.
inline RayRepresentation clock_shift(std::size_t n) {
  const FiniteGroup g = make_product(make_cyclic(n), make_cyclic(n));
  const CMatrix x = shift_matrix(n), z = clock_matrix(n);
  std::vector<CMatrix> mats;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      CMatrix m = CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < a; ++i) m = x * m;
      for (std::size_t i = 0; i < b; ++i) m = m * z;
      mats.push_back(m);
    }
  }
  return RayRepresentation(g, std::move(mats));
}

/// Pauli representation of Z2 x Z2 (clock/shift with n = 2).
inline RayRepresentation pauli_z2z2() { return clock_shift(2); }

/// Z2 in dimension 2 with U_1 = i I, so omega(1, 1) = -1.
inline RayRepresentation twisted_z2() {
  return RayRepresentation(make_cyclic(2), {CMatrix::Identity(2, 2), Complex(0, 1) * CMatrix::Identity(2, 2)});
}

/// Multiplies U_r by e^{2 pi i p_r / den}, p_r seeded, p_e = 0.
inline RayRepresentation twist_by_coboundary(const RayRepresentation& rep, std::int64_t den, std::uint64_t seed) {
  CounterRng rng(seed);
  return apply_phase_gauge(rep, PhaseGauge::random_exact(rep.order(), den, rng));
}

/// Genuine Z_n representation V_k = diag(w^k, w^-k) (det 1).
inline RayRepresentation cyclic_genuine(std::size_t n) {
  std::vector<CMatrix> mats;
  for (std::size_t k = 0; k < n; ++k) {
    CMatrix v = CMatrix::Zero(2, 2);
    v(0, 0) = root_of_unity(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n));
    v(1, 1) = std::conj(v(0, 0));
    mats.push_back(v);
  }
  return RayRepresentation(make_cyclic(n), std::move(mats));
}

/// cyclic_genuine(n) with random exact phases p / (2n) turns.
inline RayRepresentation twisted_cyclic(std::size_t n, std::uint64_t seed) {
  return twist_by_coboundary(cyclic_genuine(n), 2 * static_cast<std::int64_t>(n), seed);
}

/// Permutation matrices of S3: U_p e_i = e_{p[i]}.
inline RayRepresentation s3_permutation() {
  const auto perms = permutations(3);
  std::vector<CMatrix> mats;
  for (const auto& p : perms) {
    CMatrix m = CMatrix::Zero(3, 3);
    for (std::size_t i = 0; i < 3; ++i) m(static_cast<Eigen::Index>(p[i]), static_cast<Eigen::Index>(i)) = 1.0;
    mats.push_back(m);
  }
  return RayRepresentation(make_symmetric(3), std::move(mats));
}

/// Two-dimensional irreducible representation of S3 (permutation rep on the
/// complement of (1,1,1)). det U_p = sign(p).
inline RayRepresentation s3_standard() {
  CMatrix basis(3, 2);
  basis << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0), -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0), 0.0,
      -2.0 / std::sqrt(6.0);
  const RayRepresentation perm = s3_permutation();
  std::vector<CMatrix> mats;
  for (const CMatrix& m : perm.matrices()) mats.push_back(basis.adjoint() * m * basis);
  return RayRepresentation(perm.group(), std::move(mats));
}

/// Q8 inside SU(2) via unit quaternions.
inline RayRepresentation q8_su2() {
  const FiniteGroup g = make_quaternion();
  std::vector<CMatrix> mats;
  for (int id = 0; id < 8; ++id) {
    Quaternion q{0, 0, 0, 0};
    const double s = (id % 2) ? -1.0 : 1.0;
    switch (id / 2) {
      case 0: q.w = s; break;
      case 1: q.x = s; break;
      case 2: q.y = s; break;
      default: q.z = s; break;
    }
    mats.push_back(su2_matrix(q));
  }
  return RayRepresentation(g, std::move(mats));
}

}  // namespace projrep::fixtures
