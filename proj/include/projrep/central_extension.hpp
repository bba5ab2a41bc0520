#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "projrep/cohomology.hpp"
#include "projrep/error.hpp"
#include "projrep/group.hpp"
#include "projrep/phase.hpp"

namespace projrep {

/// Arithmetic on the central coordinate sigma. `Rational` stores sigma in
/// units of pi (exact); `double` stores radians.
template <class T>
struct SigmaOps;

template <>
struct SigmaOps<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational from_phase(const Phase& p) {
    if (!p.is_exact()) throw Error(ErrorKind::InexactPhases, "exact local group needs exact phases");
    return p.turns() * 2;
  }
  static Rational scale(Rational v, Rational z) { return v * z; }
  static double radians(Rational v) { return std::numbers::pi * to_double(v); }
  /// k with v = 2 pi k, if integral.
  static std::optional<std::int64_t> two_pi_multiple(Rational v) {
    const Rational h = v / 2;
    if (h.denominator() != 1) return std::nullopt;
    return h.numerator();
  }
  static bool same(Rational a, Rational b) { return a == b; }
  static std::string str(Rational v) {
    return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator()) + "·π";
  }
};

template <>
struct SigmaOps<double> {
  static constexpr double kTol = 1e-9;
  static double zero() { return 0.0; }
  static double from_phase(const Phase& p) { return p.lifted(); }
  static double scale(double v, Rational z) { return v * to_double(z); }
  static double radians(double v) { return v; }
  static std::optional<std::int64_t> two_pi_multiple(double v) {
    const double k = std::round(v / kTwoPi);
    if (std::abs(v - k * kTwoPi) > kTol * std::max(1.0, std::abs(v))) return std::nullopt;
    return static_cast<std::int64_t>(k);
  }
  static bool same(double a, double b) { return std::abs(a - b) <= kTol * std::max(1.0, std::abs(a)); }
  static std::string str(double v) { return std::to_string(v); }
};

/// [sigma, r] with sigma on the real line, never reduced mod 2pi.
template <class Sigma>
struct ExtensionElement {
  Sigma sigma{};
  ElementId r = 0;

  friend bool operator==(const ExtensionElement& a, const ExtensionElement& b) {
    return a.r == b.r && SigmaOps<Sigma>::same(a.sigma, b.sigma);
  }

  /// "[num/den·π, r]" for exact sigma.
  std::string to_string() const { return "[" + SigmaOps<Sigma>::str(sigma) + ", " + std::to_string(r) + "]"; }
};

/// Local group L = R x H with [s1, r] * [s2, s] = [s1 + s2 + lift(r, s), rs].
/// lift(r, s) is delta(r, s) in [0, 2pi), fixed at construction.
template <class Sigma>
class LocalGroup {
 public:
  using Element = ExtensionElement<Sigma>;
  using Ops = SigmaOps<Sigma>;

  explicit LocalGroup(ExponentTable delta) : delta_(std::move(delta)) {
    const ExponentInvariantReport inv = verify_exponent(delta_);
    if (!inv.ok()) {
      throw Error(ErrorKind::ValidationError, "exponent table violates its invariants",
                  {{"identity_row", inv.identity_row},
                   {"inverse_pair", inv.inverse_pair},
                   {"cocycle_failures", inv.cocycle.failures}});
    }
    const std::size_t n = delta_.order();
    lift_.resize(n * n);
    for (ElementId r = 0; r < n; ++r)
      for (ElementId s = 0; s < n; ++s) lift_[r * n + s] = Ops::from_phase(delta_.at(r, s));
  }

  const FiniteGroup& group() const { return delta_.group(); }
  const ExponentTable& exponent() const { return delta_; }
  std::size_t order() const { return delta_.order(); }
  const Sigma& lift(ElementId r, ElementId s) const { return lift_[r * order() + s]; }
  Element identity() const { return {Ops::zero(), 0}; }

  /// L' with delta' = z delta and lifts z * lift (kept unreduced so that the
  /// scaling map is an exact homomorphism).
  LocalGroup scaled(Rational z) const {
    LocalGroup out = *this;
    for (ElementId r = 0; r < order(); ++r)
      for (ElementId s = 0; s < order(); ++s) out.delta_.at(r, s) = delta_.at(r, s).scaled(z);
    for (Sigma& v : out.lift_) v = Ops::scale(v, z);
    return out;
  }

 private:
  ExponentTable delta_;
  std::vector<Sigma> lift_;
};

template <class Sigma>
ExtensionElement<Sigma> ext_product(const LocalGroup<Sigma>& L, const ExtensionElement<Sigma>& a,
                                    const ExtensionElement<Sigma>& b) {
  return {a.sigma + b.sigma + L.lift(a.r, b.r), L.group().mul(a.r, b.r)};
}

template <class Sigma>
ExtensionElement<Sigma> ext_inverse(const LocalGroup<Sigma>& L, const ExtensionElement<Sigma>& a) {
  const ElementId ri = L.group().inv(a.r);
  return {-(a.sigma + L.lift(a.r, ri)), ri};
}

/// Exhaustive over the group: r_c commutes with every s and lift(r_c, s) =
/// lift(s, r_c). sigma never matters.
template <class Sigma>
bool is_central(const LocalGroup<Sigma>& L, const ExtensionElement<Sigma>& c) {
  for (ElementId s = 0; s < L.order(); ++s) {
    if (!L.group().commute(c.r, s)) return false;
    if (!SigmaOps<Sigma>::same(L.lift(c.r, s), L.lift(s, c.r))) return false;
  }
  return true;
}

template <class Sigma>
ElementId quotient_map(const LocalGroup<Sigma>&, const ExtensionElement<Sigma>& a) {
  return a.r;
}

/// lhs.sigma - rhs.sigma = 2 pi k for two elements over the same r.
struct LiftDiscrepancy {
  bool same_element = true;            ///< r parts agree
  std::optional<std::int64_t> k;       ///< set iff the sigma gap is an integer multiple of 2pi
  bool exact() const { return same_element && k && *k == 0; }
};

template <class Sigma>
LiftDiscrepancy lift_discrepancy(const ExtensionElement<Sigma>& lhs, const ExtensionElement<Sigma>& rhs) {
  LiftDiscrepancy d;
  d.same_element = lhs.r == rhs.r;
  d.k = SigmaOps<Sigma>::two_pi_multiple(lhs.sigma - rhs.sigma);
  return d;
}

/// phi: L -> L~, [sigma, r] -> [sigma - x(r), r], x(r) taken in [0, 2pi).
template <class Sigma>
class EquivalenceMap {
 public:
  using Element = ExtensionElement<Sigma>;

  EquivalenceMap(const LocalGroup<Sigma>& from, const LocalGroup<Sigma>& to, const PhaseGauge& x)
      : from_(&from), to_(&to) {
    for (ElementId r = 0; r < x.order(); ++r) shift_.push_back(SigmaOps<Sigma>::from_phase(x.x(r)));
  }

  Element operator()(const Element& a) const { return {a.sigma - shift_[a.r], a.r}; }
  Element inverse(const Element& a) const { return {a.sigma + shift_[a.r], a.r}; }

  /// phi(a * b) against phi(a) *~ phi(b).
  LiftDiscrepancy homomorphism_discrepancy(const Element& a, const Element& b) const {
    return lift_discrepancy((*this)(ext_product(*from_, a, b)),
                            ext_product(*to_, (*this)(a), (*this)(b)));
  }

 private:
  const LocalGroup<Sigma>* from_;
  const LocalGroup<Sigma>* to_;
  std::vector<Sigma> shift_;
};

/// Requires exponent(to) = exponent(from) + Delta[x] mod 2pi, pair-exhaustive.
template <class Sigma>
EquivalenceMap<Sigma> equivalence_isomorphism(const LocalGroup<Sigma>& from, const LocalGroup<Sigma>& to,
                                              const PhaseGauge& x) {
  if (!(from.group() == to.group()) || x.order() != from.order()) {
    throw Error(ErrorKind::GroupMismatch, "local groups or gauge over different groups");
  }
  const ExponentTable expected = add_coboundary(from.exponent(), x);
  for (ElementId r = 0; r < from.order(); ++r)
    for (ElementId s = 0; s < from.order(); ++s)
      if (!expected.at(r, s).equals(to.exponent().at(r, s))) {
        throw Error(ErrorKind::NotEquivalentExponents, "target exponent is not source plus coboundary",
                    {{"r", r}, {"s", s}});
      }
  return EquivalenceMap<Sigma>(from, to, x);
}

/// f: L -> L', [sigma, r] -> [z sigma, r].
template <class Sigma>
class ScalingMap {
 public:
  using Element = ExtensionElement<Sigma>;
  explicit ScalingMap(Rational z) : z_(z) {}
  Element operator()(const Element& a) const { return {SigmaOps<Sigma>::scale(a.sigma, z_), a.r}; }
  Element inverse(const Element& a) const { return {SigmaOps<Sigma>::scale(a.sigma, 1 / z_), a.r}; }
  Rational z() const { return z_; }

 private:
  Rational z_;
};

template <class Sigma>
struct ScalingResult {
  LocalGroup<Sigma> target;
  ScalingMap<Sigma> map;
};

template <class Sigma>
ScalingResult<Sigma> scaling_isomorphism(const LocalGroup<Sigma>& L, Rational z) {
  if (z == Rational(0)) throw Error(ErrorKind::ZeroScale, "scale factor must be nonzero");
  return {L.scaled(z), ScalingMap<Sigma>(z)};
}

}  // namespace projrep
