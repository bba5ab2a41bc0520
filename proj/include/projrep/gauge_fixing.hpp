#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "projrep/error.hpp"
#include "projrep/group.hpp"
#include "projrep/linalg.hpp"
#include "projrep/ray_rep.hpp"
#include "projrep/ray_space.hpp"
#include "projrep/su2.hpp"

namespace projrep {

/// A choice of representative U_a for every element a of some group: the
/// object the gauge and continuity machinery works on. Finite groups and the
/// sampled SU(2) family both model it.
template <class S>
concept RaySection = requires(const S& s, const typename S::element_type& a) {
  { s.dim() } -> std::convertible_to<std::size_t>;
  { s.matrix(a) } -> std::convertible_to<CMatrix>;
  { s.compose(a, a) } -> std::same_as<typename S::element_type>;
  { s.inverse(a) } -> std::same_as<typename S::element_type>;
  { s.identity() } -> std::same_as<typename S::element_type>;
};

inline nlohmann::json element_json(ElementId r) { return r; }
inline nlohmann::json element_json(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

/// Section over a finite ray representation.
class FiniteSection {
 public:
  using element_type = ElementId;
  explicit FiniteSection(RayRepresentation rep) : rep_(std::move(rep)) {}

  std::size_t dim() const { return rep_.dim(); }
  const CMatrix& matrix(ElementId r) const { return rep_.matrix(r); }
  ElementId compose(ElementId a, ElementId b) const { return rep_.group().mul(a, b); }
  ElementId inverse(ElementId a) const { return rep_.group().inv(a); }
  ElementId identity() const { return rep_.group().identity(); }
  const RayRepresentation& rep() const { return rep_; }

 private:
  RayRepresentation rep_;
};

/// Representatives of sampled SU(2) elements.
///  - SpinHalf: su2_matrix(q), a genuine representation of SU(2).
///  - SpinHalfSo3: su2_matrix(so3_canonical(q)), projective for SO(3).
///  - Vector: 3x3 rotation matrices, genuine for SO(3).
/// With `twist`, every representative carries an arbitrary phase derived from
/// the bit pattern of its quaternion, i.e. an unfixed ray representative.
class Su2Section {
 public:
  using element_type = Quaternion;
  enum class Mode { SpinHalf, SpinHalfSo3, Vector };

  explicit Su2Section(Mode mode = Mode::SpinHalf, bool twist = false, std::uint64_t twist_seed = 0)
      : mode_(mode), twist_(twist), seed_(twist_seed) {}

  std::size_t dim() const { return mode_ == Mode::Vector ? 3 : 2; }

  CMatrix matrix(const Quaternion& q) const {
    const Quaternion c = mode_ == Mode::SpinHalf ? q : so3_canonical(q);
    CMatrix m = mode_ == Mode::Vector ? so3_matrix(c) : su2_matrix(c);
    if (twist_) m *= twist_phase(c);
    return m;
  }

  Quaternion compose(const Quaternion& a, const Quaternion& b) const { return a * b; }
  Quaternion inverse(const Quaternion& a) const { return a.conjugate(); }
  Quaternion identity() const { return Quaternion::identity(); }
  Mode mode() const { return mode_; }

 private:
  Complex twist_phase(const Quaternion& q) const {
    if (q == Quaternion::identity()) return {1.0, 0.0};
    std::uint64_t h = seed_;
    for (double v : {q.w, q.x, q.y, q.z}) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof bits);
      h = CounterRng::mix64(h ^ bits);
    }
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    return std::polar(1.0, kTwoPi * u);
  }

  Mode mode_;
  bool twist_;
  std::uint64_t seed_;
};

/// Wigner-gauged view of a section: U'_a = (conj(g_a)/|g_a|) U_a with
/// g_a = <psi, U_a psi>, so <psi, U'_a psi> is real and nonnegative.
template <RaySection S>
class GaugedSection {
 public:
  using element_type = typename S::element_type;
  GaugedSection(S base, StateVector psi) : base_(std::move(base)), psi_(std::move(psi)) {}

  std::size_t dim() const { return base_.dim(); }
  CMatrix matrix(const element_type& a) const {
    CMatrix m = base_.matrix(a);
    const Complex g = psi_.vec().dot(m * psi_.vec());
    const double ag = std::abs(g);
    if (ag > 0.0) m *= std::conj(g) / ag;
    return m;
  }
  element_type compose(const element_type& a, const element_type& b) const { return base_.compose(a, b); }
  element_type inverse(const element_type& a) const { return base_.inverse(a); }
  element_type identity() const { return base_.identity(); }
  const S& base() const { return base_; }

 private:
  S base_;
  StateVector psi_;
};

/// g_a = <psi, U_a psi> (no modulus).
template <RaySection S>
Complex g_function(const S& sec, const typename S::element_type& a, const StateVector& psi) {
  return psi.vec().dot(sec.matrix(a) * psi.vec());
}

/// Local factor of a section, omega(a, b) with U_a U_b = omega U_{ab}.
template <RaySection S>
Complex section_factor(const S& sec, const typename S::element_type& a,
                       const typename S::element_type& b, double eps = tol::kScalar) {
  const CMatrix m = sec.matrix(a) * sec.matrix(b) * sec.matrix(sec.compose(a, b)).adjoint();
  const Complex lambda = m.diagonal().mean();
  const double off = max_abs(m - lambda * CMatrix::Identity(m.rows(), m.cols()));
  if (off > eps) {
    throw Error(ErrorKind::NotScalar, "section product is not a scalar multiple",
                {{"r", element_json(a)}, {"s", element_json(b)}, {"residual", off}});
  }
  return lambda / std::abs(lambda);
}

/// Reference state, neighborhood bound alpha, and the admissible elements
/// (|g_r| > alpha) found when the gauge was fixed.
template <class E>
struct GaugeContext {
  StateVector psi;
  double alpha = 0.5;
  std::vector<E> admissible;
  std::vector<E> excluded;
  std::vector<double> g_values;  ///< <psi, U'_r psi> for each admissible r (real, positive)

  /// |<psi, U_a psi>| > alpha on the given section.
  template <RaySection S>
  bool admits(const S& sec, const E& a) const {
    return std::abs(g_function(sec, a, psi)) > alpha;
  }
};

namespace detail {
inline void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::BadAlpha, "alpha must lie in (0, 1)", {{"alpha", alpha}});
}
}  // namespace detail

/// Wigner gauge on an arbitrary section over the listed elements.
template <RaySection S>
std::pair<GaugedSection<S>, GaugeContext<typename S::element_type>> wigner_gauge(
    const S& sec, std::span<const typename S::element_type> elements, const StateVector& psi,
    double alpha = 0.5) {
  using E = typename S::element_type;
  detail::require_alpha(alpha);
  detail::require_same_dim(psi.dim(), sec.dim());
  GaugedSection<S> gauged(sec, psi);
  GaugeContext<E> ctx{psi, alpha, {}, {}, {}};
  for (const E& a : elements) {
    const Complex g = g_function(gauged, a, psi);
    if (std::abs(g) > alpha) {
      ctx.admissible.push_back(a);
      ctx.g_values.push_back(g.real());
    } else {
      ctx.excluded.push_back(a);
    }
  }
  const E e = sec.identity();
  const bool only_identity = std::all_of(ctx.admissible.begin(), ctx.admissible.end(),
                                         [&](const E& a) { return a == e; });
  if (only_identity) {
    throw Error(ErrorKind::EmptyNeighborhood, "no element besides the identity passes |g_r| > alpha",
                {{"alpha", alpha}, {"excluded", ctx.excluded.size()}});
  }
  return {std::move(gauged), std::move(ctx)};
}

/// Wigner gauge on a finite ray representation: every r with
/// |<psi, U_r psi>| > alpha is rephased so <psi, U'_r psi> is real positive;
/// the others keep their representative and are listed as excluded.
inline std::pair<RayRepresentation, GaugeContext<ElementId>> wigner_gauge(const RayRepresentation& rep,
                                                                           const StateVector& psi,
                                                                           double alpha = 0.5) {
  detail::require_alpha(alpha);
  detail::require_same_dim(psi.dim(), rep.dim());
  std::vector<CMatrix> mats(rep.matrices());
  GaugeContext<ElementId> ctx{psi, alpha, {}, {}, {}};
  for (ElementId r = 0; r < rep.order(); ++r) {
    const Complex g = psi.vec().dot(mats[r] * psi.vec());
    const double ag = std::abs(g);
    if (ag > alpha) {
      mats[r] *= std::conj(g) / ag;
      ctx.admissible.push_back(r);
      ctx.g_values.push_back(ag);
    } else {
      ctx.excluded.push_back(r);
    }
  }
  if (ctx.admissible.size() <= 1) {
    throw Error(ErrorKind::EmptyNeighborhood, "no element besides the identity passes |g_r| > alpha",
                {{"alpha", alpha}, {"excluded", ctx.excluded}});
  }
  return {RayRepresentation(rep.group(), std::move(mats)), std::move(ctx)};
}

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds(double slack = tol::kBound) const { return lhs <= rhs + slack; }
};

/// Quantities of one scanned pair (r, s) at the reference state.
struct ContinuityRecord {
  nlohmann::json r, s;
  double d_rs = 0.0;            ///< d(U_r Psi, U_s Psi)
  Complex sigma_rs;             ///< <U_r psi, U_s psi>
  double z_norm = 0.0;          ///< ||U_s psi - sigma U_r psi||
  double orthogonality = 0.0;   ///< |<U_r psi, Z_rs>|
  double z_identity = 0.0;      ///< | ||Z||^2 - (1 - |sigma|^2) |
  BoundCheck z_bound;              ///< ||Z||^2 <= d^2
  BoundCheck diff_sigma_bound;     ///< ||U_s psi - U_r psi||^2 <= 2 |1 - sigma|
  BoundCheck diff_distance_bound;  ///< ||U_s psi - U_r psi||^2 <= (4/alpha) d
  BoundCheck modulus_bound;        ///< |1 - |sigma|| <= (2/alpha) d
  /// sigma_rs = [omega(r^-1, s) / omega(r^-1, r)] g_{r^-1 s} when r^-1 s is
  /// admissible; equal to g_m itself whenever those factors are 1.
  std::optional<double> sigma_g_residual;
  std::optional<double> sigma_g_literal_residual;  ///< |sigma_rs - g_m|

  bool ok(double slack = tol::kBound) const {
    return z_bound.holds(slack) && diff_sigma_bound.holds(slack) && diff_distance_bound.holds(slack) &&
           modulus_bound.holds(slack) && orthogonality <= 1e-10 && z_identity <= tol::kBound;
  }
};

template <RaySection S>
ContinuityRecord continuity_record(const S& sec, const GaugeContext<typename S::element_type>& ctx,
                                   const typename S::element_type& r,
                                   const typename S::element_type& s) {
  for (const auto* a : {&r, &s}) {
    if (!ctx.admits(sec, *a)) {
      throw Error(ErrorKind::NotAdmissible, "element outside the admissible neighborhood",
                  {{"element", element_json(*a)}, {"alpha", ctx.alpha}});
    }
  }
  const CVector& psi = ctx.psi.vec();
  const CMatrix ur = sec.matrix(r);
  const CMatrix us = sec.matrix(s);
  const CVector a = ur * psi;
  const CVector b = us * psi;
  ContinuityRecord rec;
  rec.r = element_json(r);
  rec.s = element_json(s);
  rec.d_rs = ray_distance(Ray(a), Ray(b));
  rec.sigma_rs = a.dot(b);
  const CVector z = b - rec.sigma_rs * a;
  rec.z_norm = z.norm();
  rec.orthogonality = std::abs(a.dot(z));
  const double sig = std::abs(rec.sigma_rs);
  rec.z_identity = std::abs(rec.z_norm * rec.z_norm - (1.0 - sig * sig));
  const double diff2 = (b - a).squaredNorm();
  rec.z_bound = {rec.z_norm * rec.z_norm, rec.d_rs * rec.d_rs};
  rec.diff_sigma_bound = {diff2, 2.0 * std::abs(Complex(1.0, 0.0) - rec.sigma_rs)};
  rec.diff_distance_bound = {diff2, 4.0 / ctx.alpha * rec.d_rs};
  rec.modulus_bound = {std::abs(1.0 - sig), 2.0 / ctx.alpha * rec.d_rs};

  const auto rinv = sec.inverse(r);
  const auto m = sec.compose(rinv, s);
  if (ctx.admits(sec, m)) {
    const Complex gm = g_function(sec, m, ctx.psi);
    const Complex w = section_factor(sec, rinv, s) / section_factor(sec, rinv, r);
    rec.sigma_g_residual = std::abs(rec.sigma_rs - w * gm);
    rec.sigma_g_literal_residual = std::abs(rec.sigma_rs - gm);
  }
  return rec;
}

/// Scan of the continuity inequalities over the given pairs.
template <RaySection S>
std::vector<ContinuityRecord> continuity_scan(
    const S& sec, const GaugeContext<typename S::element_type>& ctx,
    std::span<const std::pair<typename S::element_type, typename S::element_type>> pairs) {
  std::vector<ContinuityRecord> out;
  out.reserve(pairs.size());
  for (const auto& [r, s] : pairs) out.push_back(continuity_record(sec, ctx, r, s));
  return out;
}

inline std::vector<ContinuityRecord> continuity_scan(
    const RayRepresentation& rep, const GaugeContext<ElementId>& ctx,
    std::span<const std::pair<ElementId, ElementId>> pairs) {
  return continuity_scan(FiniteSection(rep), ctx, pairs);
}

struct ChiReport {
  double constant = 0.0;
  std::size_t pairs = 0;
  std::size_t violations = 0;           ///< at `constant`
  std::size_t violations_two_thirds = 0;  ///< at 2^{2/3}
  std::size_t violations_three_halves = 0;  ///< at 2^{3/2}
  double max_ratio = 0.0;               ///< max lhs / rhs over pairs with rhs > 0
  double identity_residual = 0.0;       ///< max residual of the chi identity
  nlohmann::json first_violation;       ///< pair at `constant`, null if none

  bool passed(double eps = tol::kBound) const { return violations == 0 && identity_residual <= eps; }
};

inline const double kChiConstantTwoThirds = std::pow(2.0, 2.0 / 3.0);
inline const double kChiConstantThreeHalves = std::pow(2.0, 1.5);

/// With chi = (phi + varphi)/sqrt2 checks
///   ||U_s chi - U_r chi||^2 <= C (d_rs(chi) + ||U_s phi - U_r phi||)
/// and the identity
///   <U_r phi, Z_rs(chi)> + <U_s phi - U_r phi, U_s chi> = (1 - sigma_rs(chi))/sqrt2.
template <RaySection S>
ChiReport chi_continuity_check(const S& sec, const GaugeContext<typename S::element_type>& ctx,
                               const StateVector& phi, const StateVector& varphi,
                               std::span<const std::pair<typename S::element_type, typename S::element_type>> pairs,
                               double constant = kChiConstantThreeHalves, double slack = tol::kBound) {
  const double ov = std::abs(phi.vec().dot(varphi.vec()));
  if (ov > 1e-9) throw Error(ErrorKind::NotOrthogonal, "phi and varphi must be orthogonal", {{"overlap", ov}});
  const CVector chi = (phi.vec() + varphi.vec()) / std::sqrt(2.0);
  ChiReport rep;
  rep.constant = constant;
  for (const auto& [r, s] : pairs) {
    for (const auto* a : {&r, &s}) {
      if (!ctx.admits(sec, *a)) {
        throw Error(ErrorKind::NotAdmissible, "element outside the admissible neighborhood",
                    {{"element", element_json(*a)}});
      }
    }
    const CMatrix ur = sec.matrix(r), us = sec.matrix(s);
    const CVector rc = ur * chi, sc = us * chi;
    const CVector rp = ur * phi.vec(), sp = us * phi.vec();
    const Complex sigma = rc.dot(sc);
    const CVector z = sc - sigma * rc;
    const double d = ray_distance(Ray(rc), Ray(sc));
    const double lhs = (sc - rc).squaredNorm();
    const double rhs_terms = d + (sp - rp).norm();
    const Complex identity_lhs = rp.dot(z) + (sp - rp).dot(sc);
    const Complex identity_rhs = (Complex(1.0, 0.0) - sigma) / std::sqrt(2.0);
    rep.identity_residual = std::max(rep.identity_residual, std::abs(identity_lhs - identity_rhs));
    if (lhs > constant * rhs_terms + slack) {
      if (rep.violations == 0) rep.first_violation = {element_json(r), element_json(s)};
      ++rep.violations;
    }
    if (lhs > kChiConstantTwoThirds * rhs_terms + slack) ++rep.violations_two_thirds;
    if (lhs > kChiConstantThreeHalves * rhs_terms + slack) ++rep.violations_three_halves;
    if (rhs_terms > 0) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs_terms);
    ++rep.pairs;
  }
  return rep;
}

template <class E>
struct FactorQuad {
  E r, s, r2, s2;
};

struct FactorContinuityReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;       ///< products rs or r's' outside the neighborhood
  std::size_t violations = 0;
  double max_lhs = 0.0;
  double max_excess = -1.0;      ///< max (lhs - rhs); negative when every bound is slack
  std::vector<std::string> notices;
  nlohmann::json first_violation;

  bool passed() const { return violations == 0; }
};

/// |omega(r',s') - omega(r,s)| <= ||(U_rs - U_r's') psi|| + ||(U_s - U_s') psi||
///                                + ||(U_r' - U_r) psi'||,  psi' = U_s' psi.
template <RaySection S>
FactorContinuityReport local_factor_continuity(const S& sec,
                                               const GaugeContext<typename S::element_type>& ctx,
                                               std::span<const FactorQuad<typename S::element_type>> quads,
                                               const StateVector& psi, double slack = tol::kBound) {
  detail::require_same_dim(psi.dim(), sec.dim());
  FactorContinuityReport rep;
  for (const auto& q : quads) {
    for (const auto* a : {&q.r, &q.s, &q.r2, &q.s2}) {
      if (!ctx.admits(sec, *a)) {
        throw Error(ErrorKind::NotAdmissible, "element outside the admissible neighborhood",
                    {{"element", element_json(*a)}});
      }
    }
    const auto rs = sec.compose(q.r, q.s);
    const auto rs2 = sec.compose(q.r2, q.s2);
    if (!ctx.admits(sec, rs) || !ctx.admits(sec, rs2)) {
      ++rep.skipped;
      if (rep.notices.size() < 16) {
        rep.notices.push_back("product outside neighborhood, skipped: " +
                              nlohmann::json{element_json(q.r), element_json(q.s), element_json(q.r2),
                                             element_json(q.s2)}
                                  .dump());
      }
      continue;
    }
    const Complex w = section_factor(sec, q.r, q.s);
    const Complex w2 = section_factor(sec, q.r2, q.s2);
    const CVector& v = psi.vec();
    const CVector v2 = sec.matrix(q.s2) * v;
    const double lhs = std::abs(w2 - w);
    const double rhs = ((sec.matrix(rs) - sec.matrix(rs2)) * v).norm() +
                       ((sec.matrix(q.s) - sec.matrix(q.s2)) * v).norm() +
                       ((sec.matrix(q.r2) - sec.matrix(q.r)) * v2).norm();
    rep.max_lhs = std::max(rep.max_lhs, lhs);
    rep.max_excess = std::max(rep.max_excess, lhs - rhs);
    if (lhs > rhs + slack) {
      if (rep.violations == 0) {
        rep.first_violation = {element_json(q.r), element_json(q.s), element_json(q.r2), element_json(q.s2)};
      }
      ++rep.violations;
    }
    ++rep.checked;
  }
  return rep;
}

}  // namespace projrep
