#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "projrep/error.hpp"
#include "projrep/linalg.hpp"
#include "projrep/prng.hpp"

namespace projrep {

/// Unit quaternion w + x i + y j + z k, an element of SU(2).
struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  static Quaternion identity() { return {}; }

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

  Quaternion normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  Quaternion conjugate() const { return {w, -x, -y, -z}; }

  /// Geodesic distance to the identity on SU(2); for |w| it is the SO(3)
  /// rotation angle.
  double angle() const { return 2.0 * std::acos(std::clamp(w, -1.0, 1.0)); }
  double rotation_angle() const { return 2.0 * std::acos(std::clamp(std::abs(w), 0.0, 1.0)); }

  /// Hamilton product, renormalized.
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return Quaternion{a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                      a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                      a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                      a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w}
        .normalized();
  }

  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Spin-1/2 matrix w I - i (x sx + y sy + z sz); a homomorphism SU(2) -> U(2).
inline CMatrix su2_matrix(const Quaternion& q) {
  CMatrix m(2, 2);
  m(0, 0) = Complex(q.w, -q.z);
  m(0, 1) = Complex(-q.y, -q.x);
  m(1, 0) = Complex(q.y, -q.x);
  m(1, 1) = Complex(q.w, q.z);
  return m;
}

/// Sign-fixed representative of the SO(3) rotation q: w > 0, or on the w = 0
/// equator the first nonzero of (x, y, z) positive. A discontinuous section of
/// SU(2) -> SO(3), so su2_matrix of it is a projective representation of SO(3).
inline Quaternion so3_canonical(const Quaternion& q) {
  const std::array<double, 4> c{q.w, q.x, q.y, q.z};
  for (double v : c) {
    if (v > 0) return q;
    if (v < 0) return {-q.w, -q.x, -q.y, -q.z};
  }
  return q;
}

/// 3x3 rotation matrix of q (genuine representation of SO(3)).
inline CMatrix so3_matrix(const Quaternion& q) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  CMatrix r(3, 3);
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
      2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
      2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y);
  return r;
}

enum class CompactGroupKind { SU2 };

/// Sampled compact Lie group with a geodesic-ball chart around the identity.
struct SampledCompactGroup {
  CompactGroupKind kind = CompactGroupKind::SU2;
  double chart_radius = std::numbers::pi;

  Quaternion compose(const Quaternion& a, const Quaternion& b) const { return a * b; }
  Quaternion inverse(const Quaternion& a) const { return a.conjugate(); }
  Quaternion identity() const { return Quaternion::identity(); }
};

/// Deterministic sample of `count` elements with rotation angle <= radius.
/// Element 0 is the identity. Each further element draws an axis from three
/// normals and an angle radius * u with u uniform in [0, 1).
inline std::vector<Quaternion> sample_near_identity(const SampledCompactGroup& /*g*/, double radius,
                                                    std::size_t count, std::uint64_t seed) {
  if (!(radius >= 0.0) || radius > std::numbers::pi) {
    throw Error(ErrorKind::BadRadius, "radius must lie in [0, pi]", {{"radius", radius}});
  }
  std::vector<Quaternion> out;
  out.reserve(count);
  if (count == 0) return out;
  out.push_back(Quaternion::identity());
  CounterRng rng(seed);
  while (out.size() < count) {
    double ax = rng.normal(), ay = rng.normal(), az = rng.normal();
    const double theta = radius * rng.uniform();
    const double n = std::sqrt(ax * ax + ay * ay + az * az);
    if (n < 1e-12 || radius == 0.0) {
      out.push_back(Quaternion::identity());
      continue;
    }
    ax /= n; ay /= n; az /= n;
    const double s = std::sin(theta / 2);
    out.push_back(Quaternion{std::cos(theta / 2), s * ax, s * ay, s * az}.normalized());
  }
  return out;
}

}  // namespace projrep
