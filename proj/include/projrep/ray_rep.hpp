#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "projrep/error.hpp"
#include "projrep/group.hpp"
#include "projrep/linalg.hpp"
#include "projrep/phase.hpp"
#include "projrep/ray_space.hpp"

namespace projrep {

/// Per-element unitary representatives U_r of a ray representation. U_e is
/// forced to the identity matrix; `warnings()` records when the input U_e was
/// not already a multiple of the identity.
class RayRepresentation {
 public:
  RayRepresentation(FiniteGroup group, std::vector<CMatrix> matrices,
                    double unitary_eps = tol::kUnitary);

  /// Constructs and runs the full order^2 scalar test.
  static RayRepresentation checked(FiniteGroup group, std::vector<CMatrix> matrices,
                                   double unitary_eps = tol::kUnitary);

  const FiniteGroup& group() const { return group_; }
  std::size_t dim() const { return dim_; }
  std::size_t order() const { return group_.order(); }
  const CMatrix& matrix(ElementId r) const { return mats_[r]; }
  const std::vector<CMatrix>& matrices() const { return mats_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  FiniteGroup group_;
  std::size_t dim_ = 0;
  std::vector<CMatrix> mats_;
  std::vector<std::string> warnings_;
};

/// Local factor omega(r, s) from U_r U_s = omega(r, s) U_{rs}, relative to the
/// stored representatives.
inline Complex extract_local_factor(const RayRepresentation& rep, ElementId r, ElementId s,
                                    double eps = tol::kScalar) {
  const ElementId rs = rep.group().mul(r, s);
  const CMatrix m = rep.matrix(r) * rep.matrix(s) * rep.matrix(rs).adjoint();
  const auto n = m.rows();
  double off = 0.0, spread = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) off = std::max(off, std::abs(m(i, j)));
  for (Eigen::Index i = 1; i < n; ++i) spread = std::max(spread, std::abs(m(i, i) - m(0, 0)));
  if (off > eps || spread > eps) {
    throw Error(ErrorKind::NotScalar, "U_r U_s U_rs^dagger is not a multiple of the identity",
                {{"r", r}, {"s", s}, {"residual", std::max(off, spread)}});
  }
  const Complex lambda = m.diagonal().mean();
  const double mod = std::abs(lambda);
  if (std::abs(mod - 1.0) > eps) {
    throw Error(ErrorKind::NotUnimodular, "local factor is not unimodular",
                {{"r", r}, {"s", s}, {"modulus", mod}});
  }
  return lambda / mod;
}

inline RayRepresentation::RayRepresentation(FiniteGroup group, std::vector<CMatrix> matrices,
                                            double unitary_eps)
    : group_(std::move(group)), mats_(std::move(matrices)) {
  if (mats_.size() != group_.order()) {
    throw Error(ErrorKind::ValidationError, "one matrix per group element required",
                {{"order", group_.order()}, {"matrices", mats_.size()}});
  }
  dim_ = static_cast<std::size_t>(mats_[0].rows());
  for (std::size_t r = 0; r < mats_.size(); ++r) {
    const CMatrix& m = mats_[r];
    if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != dim_ || dim_ == 0) {
      throw Error(ErrorKind::DimMismatch, "matrix has wrong shape",
                  {{"element", r}, {"rows", m.rows()}, {"cols", m.cols()}, {"dim", dim_}});
    }
    const double d = unitarity_defect(m);
    if (d > unitary_eps) {
      throw Error(ErrorKind::NotUnitary, "representative is not unitary",
                  {{"element", r}, {"defect", d}});
    }
  }
  const CMatrix id = CMatrix::Identity(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  CMatrix& ue = mats_[group_.identity()];
  const Complex c = ue(0, 0);
  if (max_abs(ue - c * id) > tol::kScalar) {
    warnings_.push_back("U_e differed from the identity by more than a phase; replaced");
  }
  ue = id;
}

inline RayRepresentation RayRepresentation::checked(FiniteGroup group, std::vector<CMatrix> matrices,
                                                    double unitary_eps) {
  RayRepresentation rep(std::move(group), std::move(matrices), unitary_eps);
  for (ElementId r = 0; r < rep.order(); ++r)
    for (ElementId s = 0; s < rep.order(); ++s) (void)extract_local_factor(rep, r, s);
  return rep;
}

/// order x order table of phases indexed by element ids.
class PhaseMatrix {
 public:
  PhaseMatrix() = default;
  explicit PhaseMatrix(FiniteGroup group)
      : group_(std::move(group)), entries_(group_.order() * group_.order()) {}

  const FiniteGroup& group() const { return group_; }
  std::size_t order() const { return group_.order(); }
  const Phase& at(ElementId r, ElementId s) const { return entries_[r * order() + s]; }
  Phase& at(ElementId r, ElementId s) { return entries_[r * order() + s]; }

  bool exact() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Phase& p) { return p.is_exact(); });
  }

  /// Lowest common denominator of the exact entries (1 for an all-zero table).
  std::int64_t common_denominator() const {
    std::int64_t d = 1;
    for (const Phase& p : entries_)
      if (p.is_exact()) d = std::lcm(d, p.turns().denominator());
    return d;
  }

 private:
  FiniteGroup group_;
  std::vector<Phase> entries_;
};

/// omega(r, s) as unimodular phases; exact where the factor snapped to a
/// rational number of turns.
class PhaseTable : public PhaseMatrix {
 public:
  using PhaseMatrix::PhaseMatrix;
  Complex factor(ElementId r, ElementId s) const { return at(r, s).unit(); }
};

/// Per-element gauge x(r) with x(e) = 0 exactly; phi(r) = e^{i x(r)}.
class PhaseGauge {
 public:
  explicit PhaseGauge(std::size_t order) : x_(order) {}
  explicit PhaseGauge(std::vector<Phase> x) : x_(std::move(x)) {
    if (x_.empty() || !x_[0].is_zero(0.0)) {
      throw Error(ErrorKind::ValidationError, "gauge must vanish on the identity");
    }
    x_[0] = Phase::zero();
  }

  static PhaseGauge zero(std::size_t order) { return PhaseGauge(order); }

  /// Seeded gauge with exact entries p/den turns, p uniform in [0, den).
  static PhaseGauge random_exact(std::size_t order, std::int64_t den, CounterRng& rng) {
    std::vector<Phase> x(order);
    for (std::size_t r = 1; r < order; ++r)
      x[r] = Phase::from_turns(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den))), den);
    return PhaseGauge(std::move(x));
  }

  std::size_t order() const { return x_.size(); }
  const Phase& x(ElementId r) const { return x_[r]; }
  Complex phi(ElementId r) const { return x_[r].unit(); }
  bool exact() const {
    return std::all_of(x_.begin(), x_.end(), [](const Phase& p) { return p.is_exact(); });
  }
  const std::vector<Phase>& values() const { return x_; }

  PhaseGauge operator-() const {
    std::vector<Phase> y(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) y[i] = -x_[i];
    return PhaseGauge(std::move(y));
  }
  friend PhaseGauge operator+(const PhaseGauge& a, const PhaseGauge& b) {
    std::vector<Phase> y(a.x_.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = a.x_[i] + b.x_[i];
    return PhaseGauge(std::move(y));
  }

 private:
  std::vector<Phase> x_;
};

/// All order^2 local factors, snapped to exact turns p/q when within `eps`
/// radians with q <= 2 * order^2.
inline PhaseTable build_phase_table(const RayRepresentation& rep, double eps = tol::kPhase) {
  PhaseTable t(rep.group());
  const auto n = static_cast<std::int64_t>(rep.order());
  const std::int64_t max_den = 2 * n * n;
  for (ElementId r = 0; r < rep.order(); ++r) {
    for (ElementId s = 0; s < rep.order(); ++s) {
      const Complex w = extract_local_factor(rep, r, s);
      t.at(r, s) = (r == 0 || s == 0) ? Phase::zero() : snap_phase(w, max_den, eps);
    }
  }
  return t;
}

struct CocycleReport {
  bool passed = true;
  bool exact = true;        ///< all triples compared in exact arithmetic
  double worst = 0.0;       ///< largest |lhs - rhs| over triples (0 on exact pass)
  std::optional<std::array<ElementId, 3>> witness;  ///< first failing triple (r, s, m)
  std::size_t failures = 0;
};

/// omega(r,s) omega(rs,m) = omega(s,m) omega(r,sm) over all order^3 triples.
/// Multiplicatively for PhaseTable, additively mod 2pi for exponents; both are
/// the same check on the stored phases.
inline CocycleReport verify_cocycle(const PhaseMatrix& t, double eps = tol::kPhase) {
  CocycleReport rep;
  const FiniteGroup& g = t.group();
  const std::size_t n = g.order();
  for (ElementId r = 0; r < n; ++r) {
    for (ElementId s = 0; s < n; ++s) {
      for (ElementId m = 0; m < n; ++m) {
        const Phase& a = t.at(r, s);
        const Phase& b = t.at(g.mul(r, s), m);
        const Phase& c = t.at(s, m);
        const Phase& d = t.at(r, g.mul(s, m));
        bool ok;
        double res;
        if (a.is_exact() && b.is_exact() && c.is_exact() && d.is_exact()) {
          const Phase diff = (a + b) - (c + d);
          ok = diff.turns() == Rational(0);
          res = ok ? 0.0 : std::abs(diff.unit() - Complex(1.0, 0.0));
        } else {
          rep.exact = false;
          res = std::abs(a.unit() * b.unit() - c.unit() * d.unit());
          ok = res <= eps;
        }
        rep.worst = std::max(rep.worst, res);
        if (!ok) {
          if (!rep.witness) rep.witness = std::array<ElementId, 3>{r, s, m};
          ++rep.failures;
          rep.passed = false;
        }
      }
    }
  }
  return rep;
}

/// U'_r = phi(r) U_r.
inline RayRepresentation apply_phase_gauge(const RayRepresentation& rep, const PhaseGauge& g) {
  if (g.order() != rep.order()) {
    throw Error(ErrorKind::GroupMismatch, "gauge and representation differ in order",
                {{"gauge", g.order()}, {"rep", rep.order()}});
  }
  std::vector<CMatrix> mats(rep.matrices());
  for (ElementId r = 0; r < rep.order(); ++r) mats[r] *= g.phi(r);
  return RayRepresentation(rep.group(), std::move(mats));
}

/// max over pairs of |omega'(r,s) - omega(r,s) phi(r) phi(s) / phi(rs)|.
inline double gauge_covariance_residual(const RayRepresentation& rep, const PhaseGauge& g) {
  const RayRepresentation gauged = apply_phase_gauge(rep, g);
  double worst = 0.0;
  for (ElementId r = 0; r < rep.order(); ++r) {
    for (ElementId s = 0; s < rep.order(); ++s) {
      const Complex expect = extract_local_factor(rep, r, s) * g.phi(r) * g.phi(s) /
                             g.phi(rep.group().mul(r, s));
      worst = std::max(worst, std::abs(extract_local_factor(gauged, r, s) - expect));
    }
  }
  return worst;
}

struct StateIndependenceReport {
  std::array<Complex, 3> lambda{};
  double spread = 0.0;  ///< max pairwise |lambda_i - lambda_j|
  bool passed = true;
};

/// Per-state phases lambda_i = <U_rs psi_i, U_r U_s psi_i> / |.| for psi1,
/// psi2 and psi3 = normalize(psi1 + psi2).
inline StateIndependenceReport state_independence_check(const RayRepresentation& rep, ElementId r,
                                                        ElementId s, const StateVector& psi1,
                                                        const StateVector& psi2,
                                                        double eps = tol::kPhase) {
  detail::require_same_dim(psi1.dim(), rep.dim());
  detail::require_same_dim(psi2.dim(), rep.dim());
  const double overlap = std::abs(psi1.vec().dot(psi2.vec()));
  if (overlap > 1.0 - 1e-8) {
    throw Error(ErrorKind::DependentStates, "states are linearly dependent", {{"overlap", overlap}});
  }
  const StateVector psi3(psi1.vec() + psi2.vec());
  const CMatrix& ur = rep.matrix(r);
  const CMatrix& us = rep.matrix(s);
  const CMatrix& urs = rep.matrix(rep.group().mul(r, s));
  StateIndependenceReport out;
  const std::array<const StateVector*, 3> states{&psi1, &psi2, &psi3};
  for (std::size_t i = 0; i < 3; ++i) {
    const CVector& v = states[i]->vec();
    const Complex z = (urs * v).dot(ur * (us * v));
    out.lambda[i] = z / std::abs(z);
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      out.spread = std::max(out.spread, std::abs(out.lambda[i] - out.lambda[j]));
  out.passed = out.spread <= eps;
  return out;
}

/// Every factor equals 1 (exactly for exact entries, within eps otherwise).
inline bool is_genuine(const PhaseMatrix& t, double eps = tol::kPhase) {
  for (ElementId r = 0; r < t.order(); ++r)
    for (ElementId s = 0; s < t.order(); ++s)
      if (!t.at(r, s).is_zero(eps)) return false;
  return true;
}

}  // namespace projrep
