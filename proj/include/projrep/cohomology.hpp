#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "projrep/error.hpp"
#include "projrep/group.hpp"
#include "projrep/phase.hpp"
#include "projrep/ray_rep.hpp"
#include "projrep/smith.hpp"

namespace projrep {

/// Local exponents delta(r, s) with omega = e^{i delta}. Shares storage
/// layout with PhaseTable; exactness is tracked per table.
class ExponentTable : public PhaseMatrix {
 public:
  using PhaseMatrix::PhaseMatrix;

  static ExponentTable zero(const FiniteGroup& g) { return ExponentTable(g); }

  Complex factor(ElementId r, ElementId s) const { return at(r, s).unit(); }
};

struct ExponentInvariantReport {
  bool identity_row = true;    ///< delta(r, e) = delta(e, s) = 0
  bool inverse_pair = true;    ///< delta(r, r^-1) = delta(r^-1, r)
  CocycleReport cocycle;
  std::optional<std::array<ElementId, 2>> witness;
  bool ok() const { return identity_row && inverse_pair && cocycle.passed; }
};

inline ExponentInvariantReport verify_exponent(const ExponentTable& d, double eps = tol::kPhase) {
  ExponentInvariantReport rep;
  const FiniteGroup& g = d.group();
  for (ElementId r = 0; r < g.order(); ++r) {
    if (!d.at(r, 0).is_zero(eps) || !d.at(0, r).is_zero(eps)) {
      rep.identity_row = false;
      if (!rep.witness) rep.witness = std::array<ElementId, 2>{r, 0};
    }
    if (!d.at(r, g.inv(r)).equals(d.at(g.inv(r), r), eps)) {
      rep.inverse_pair = false;
      if (!rep.witness) rep.witness = std::array<ElementId, 2>{r, g.inv(r)};
    }
  }
  rep.cocycle = verify_cocycle(d, eps);
  return rep;
}

/// delta(r, s) = arg omega(r, s); exact entries stay exact. An inexact input
/// only yields an inexact table.
inline ExponentTable exponent_from_factor(const PhaseTable& t) {
  ExponentTable d(t.group());
  for (ElementId r = 0; r < t.order(); ++r)
    for (ElementId s = 0; s < t.order(); ++s) d.at(r, s) = t.at(r, s);
  return d;
}

inline PhaseTable factor_from_exponent(const ExponentTable& d) {
  PhaseTable t(d.group());
  for (ElementId r = 0; r < d.order(); ++r)
    for (ElementId s = 0; s < d.order(); ++s) t.at(r, s) = d.at(r, s);
  return t;
}

/// Delta_{r,s}[x] = x(r) + x(s) - x(rs) mod 2pi.
inline Phase coboundary(const FiniteGroup& g, const PhaseGauge& x, ElementId r, ElementId s) {
  return x.x(r) + x.x(s) - x.x(g.mul(r, s));
}

/// delta + Delta[x].
inline ExponentTable add_coboundary(const ExponentTable& d, const PhaseGauge& x) {
  if (x.order() != d.order()) {
    throw Error(ErrorKind::GroupMismatch, "gauge and table differ in order",
                {{"gauge", x.order()}, {"table", d.order()}});
  }
  ExponentTable out(d.group());
  for (ElementId r = 0; r < d.order(); ++r)
    for (ElementId s = 0; s < d.order(); ++s)
      out.at(r, s) = d.at(r, s) + coboundary(d.group(), x, r, s);
  return out;
}

/// beta(a, b) = delta(a, b) - delta(b, a) as a phase, for commuting a, b.
inline Phase commutator_exponent(const PhaseMatrix& t, ElementId a, ElementId b) {
  if (!t.group().commute(a, b)) {
    throw Error(ErrorKind::NotCommuting, "elements do not commute", {{"a", a}, {"b", b}});
  }
  return t.at(a, b) - t.at(b, a);
}

/// beta(a, b) = omega(a, b) / omega(b, a), for commuting a, b.
inline Complex commutator_phase(const PhaseTable& t, ElementId a, ElementId b) {
  return commutator_exponent(t, a, b).unit();
}

/// kappa1 delta1 + kappa2 delta2 entrywise on the [0, 2pi) lifts.
inline ExponentTable linear_combination(const ExponentTable& d1, const ExponentTable& d2,
                                        Rational k1, Rational k2) {
  if (!(d1.group() == d2.group())) throw Error(ErrorKind::GroupMismatch, "tables over different groups");
  ExponentTable out(d1.group());
  for (ElementId r = 0; r < d1.order(); ++r)
    for (ElementId s = 0; s < d1.order(); ++s)
      out.at(r, s) = d1.at(r, s).scaled(k1) + d2.at(r, s).scaled(k2);
  return out;
}

enum class SolutionStatus { Trivialized, EquivalentVia, Obstructed };

inline std::string_view to_string(SolutionStatus s) {
  switch (s) {
    case SolutionStatus::Trivialized: return "Trivialized";
    case SolutionStatus::EquivalentVia: return "EquivalentVia";
    case SolutionStatus::Obstructed: return "Obstructed";
  }
  return "Unknown";
}

/// Evidence that delta2 - delta1 is not a coboundary.
struct ObstructionCertificate {
  /// First commuting pair (lexicographic) whose commutator phases differ.
  std::optional<std::array<ElementId, 2>> pair;
  Phase beta_first, beta_second;
  /// Integer functional on the (r, s) equations, r, s != e, modulo `modulus`:
  /// it kills every coboundary and pairs to `value` != 0 with the target.
  std::int64_t modulus = 0;
  std::vector<std::pair<std::array<ElementId, 2>, std::int64_t>> functional;
  std::int64_t value = 0;
};

struct CoboundarySolution {
  SolutionStatus status = SolutionStatus::Obstructed;
  std::optional<PhaseGauge> x;
  std::optional<ObstructionCertificate> certificate;

  bool equivalent() const { return status != SolutionStatus::Obstructed; }
};

namespace detail {

/// Non-identity elements as unknowns; equations for every pair r, s != e.
struct CoboundarySystem {
  std::vector<std::array<ElementId, 2>> pairs;
  std::vector<std::vector<std::int64_t>> b;
};

inline CoboundarySystem coboundary_system(const FiniteGroup& g) {
  CoboundarySystem sys;
  const std::size_t n = g.order();
  for (ElementId r = 1; r < n; ++r) {
    for (ElementId s = 1; s < n; ++s) {
      std::vector<std::int64_t> row(n - 1, 0);
      row[r - 1] += 1;
      row[s - 1] += 1;
      const ElementId rs = g.mul(r, s);
      if (rs != 0) row[rs - 1] -= 1;
      sys.pairs.push_back({r, s});
      sys.b.push_back(std::move(row));
    }
  }
  return sys;
}

/// Lexicographically smallest element of y + span(gens) mod n.
inline std::vector<std::int64_t> canonical_solution(std::vector<std::int64_t> y,
                                                    const std::vector<std::vector<std::int64_t>>& gens,
                                                    std::int64_t n) {
  std::set<std::vector<std::int64_t>> seen{y};
  std::deque<std::vector<std::int64_t>> queue{y};
  while (!queue.empty()) {
    const auto cur = queue.front();
    queue.pop_front();
    for (const auto& gvec : gens) {
      auto next = cur;
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = mod_floor(next[i] + gvec[i], n);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return *seen.begin();
}

inline std::optional<std::array<ElementId, 2>> first_commutator_mismatch(const PhaseMatrix& d1,
                                                                         const PhaseMatrix& d2,
                                                                         double eps) {
  const FiniteGroup& g = d1.group();
  for (ElementId a = 0; a < g.order(); ++a)
    for (ElementId b = a + 1; b < g.order(); ++b)
      if (g.commute(a, b) && !commutator_exponent(d1, a, b).equals(commutator_exponent(d2, a, b), eps))
        return std::array<ElementId, 2>{a, b};
  return std::nullopt;
}

inline void require_same_group(const PhaseMatrix& a, const PhaseMatrix& b) {
  if (!(a.group() == b.group())) {
    throw Error(ErrorKind::GroupMismatch, "tables over different groups",
                {{"left", a.order()}, {"right", b.order()}});
  }
}

}  // namespace detail

/// Decides whether delta2 - delta1 = Delta[x] mod 2pi for some gauge x, in
/// exact integer arithmetic over Z_{D E}. The returned witness is the
/// lexicographically smallest one in units of 1/(D E) turns.
inline CoboundarySolution are_equivalent(const ExponentTable& d1, const ExponentTable& d2) {
  detail::require_same_group(d1, d2);
  if (!d1.exact() || !d2.exact()) {
    throw Error(ErrorKind::InexactPhases, "exact solver needs exact tables; use numeric_equivalence");
  }
  const FiniteGroup& g = d1.group();
  const std::size_t n = g.order();
  std::int64_t den = 1;
  for (ElementId r = 0; r < n; ++r)
    for (ElementId s = 0; s < n; ++s) den = std::lcm(den, (d2.at(r, s) - d1.at(r, s)).turns().denominator());
  const std::int64_t modulus = den * static_cast<std::int64_t>(g.exponent());

  CoboundarySolution out;
  if (n == 1) {
    out.status = SolutionStatus::EquivalentVia;
    out.x = PhaseGauge::zero(1);
    return out;
  }
  const detail::CoboundarySystem sys = detail::coboundary_system(g);
  std::vector<std::int64_t> c(sys.pairs.size());
  for (std::size_t i = 0; i < sys.pairs.size(); ++i) {
    const Rational t = (d2.at(sys.pairs[i][0], sys.pairs[i][1]) - d1.at(sys.pairs[i][0], sys.pairs[i][1])).turns();
    c[i] = t.numerator() * (modulus / t.denominator());
  }
  const SmithForm snf(sys.b);
  const auto mismatch = detail::first_commutator_mismatch(d1, d2, 0.0);

  if (auto y = snf.solve(c, modulus)) {
    if (mismatch) {
      throw Error(ErrorKind::ValidationError, "solver self-check failed: witness despite invariant violation",
                  {{"a", (*mismatch)[0]}, {"b", (*mismatch)[1]}});
    }
    const std::vector<std::int64_t> best = detail::canonical_solution(*y, snf.kernel_generators(modulus), modulus);
    std::vector<Phase> x(n);
    for (ElementId r = 1; r < n; ++r) x[r] = Phase::from_turns(best[r - 1], modulus);
    PhaseGauge gauge(std::move(x));
    const ExponentTable check = add_coboundary(d1, gauge);
    for (ElementId r = 0; r < n; ++r)
      for (ElementId s = 0; s < n; ++s)
        if (!check.at(r, s).equals(d2.at(r, s), 0.0)) {
          throw Error(ErrorKind::ValidationError, "solver self-check failed: witness does not substitute",
                      {{"r", r}, {"s", s}});
        }
    out.status = SolutionStatus::EquivalentVia;
    out.x = std::move(gauge);
    return out;
  }

  ObstructionCertificate cert;
  cert.modulus = modulus;
  if (mismatch) {
    cert.pair = mismatch;
    cert.beta_first = commutator_exponent(d1, (*mismatch)[0], (*mismatch)[1]);
    cert.beta_second = commutator_exponent(d2, (*mismatch)[0], (*mismatch)[1]);
  }
  const std::size_t row = *snf.first_violated_row(c, modulus);
  const std::vector<std::int64_t> lam = snf.functional(row, modulus);
  BigInt value = 0;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (lam[i] == 0) continue;
    cert.functional.push_back({sys.pairs[i], lam[i]});
    value += BigInt(lam[i]) * c[i];
  }
  cert.value = mod_floor(value, modulus);
  // lambda B = 0 mod N and lambda c != 0 mod N
  for (std::size_t j = 0; j + 1 < n; ++j) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < lam.size(); ++i) acc += BigInt(lam[i]) * sys.b[i][j];
    if (mod_floor(acc, modulus) != 0 || cert.value == 0) {
      throw Error(ErrorKind::ValidationError, "solver self-check failed: certificate functional invalid",
                  {{"column", j}});
    }
  }
  out.status = SolutionStatus::Obstructed;
  out.certificate = std::move(cert);
  return out;
}

/// Special case delta2 = 0. A witness is reported as Trivialized.
inline CoboundarySolution trivialize(const ExponentTable& d) {
  CoboundarySolution s = are_equivalent(d, ExponentTable::zero(d.group()));
  if (s.status == SolutionStatus::EquivalentVia) s.status = SolutionStatus::Trivialized;
  return s;
}

/// Float fallback. Checks commutator phases first, then enumerates the
/// branches m x(g) = sum_k t(g, g^k) + 2 pi j on a generating set,
/// propagates along the Cayley graph, and polishes with least squares.
inline CoboundarySolution numeric_equivalence(const ExponentTable& d1, const ExponentTable& d2,
                                              std::uint64_t branch_budget, double eps = 1e-6) {
  detail::require_same_group(d1, d2);
  const FiniteGroup& g = d1.group();
  const std::size_t n = g.order();
  if (n > 65) {
    throw Error(ErrorKind::ValidationError, "numeric solver limited to 64 unknowns", {{"order", n}});
  }
  CoboundarySolution out;
  if (auto mm = detail::first_commutator_mismatch(d1, d2, eps)) {
    const Phase b1 = commutator_exponent(d1, (*mm)[0], (*mm)[1]);
    const Phase b2 = commutator_exponent(d2, (*mm)[0], (*mm)[1]);
    if (std::abs(b1.unit() - b2.unit()) > eps) {
      ObstructionCertificate cert;
      cert.pair = mm;
      cert.beta_first = b1;
      cert.beta_second = b2;
      out.certificate = std::move(cert);
      return out;
    }
  }
  auto t = [&](ElementId r, ElementId s) { return d2.at(r, s).principal() - d1.at(r, s).principal(); };

  // generating set, greedily in id order
  std::vector<ElementId> gens;
  std::vector<bool> in_span(n, false);
  in_span[0] = true;
  for (ElementId r = 1; r < n; ++r) {
    if (in_span[r]) continue;
    gens.push_back(r);
    std::vector<ElementId> frontier;
    for (ElementId a = 0; a < n; ++a)
      if (in_span[a]) frontier.push_back(a);
    while (!frontier.empty()) {
      const ElementId a = frontier.back();
      frontier.pop_back();
      for (ElementId h : gens) {
        const ElementId ah = g.mul(a, h);
        if (!in_span[ah]) {
          in_span[ah] = true;
          frontier.push_back(ah);
        }
      }
    }
  }

  std::vector<std::size_t> orders;
  std::vector<double> base;
  for (ElementId h : gens) {
    const std::size_t m = g.element_order(h);
    double sum = 0.0;
    ElementId p = 0;
    for (std::size_t k = 0; k < m; ++k, p = g.mul(p, h)) sum += t(h, p);
    orders.push_back(m);
    base.push_back(lifted_angle(sum));
  }

  auto residual_of = [&](const std::vector<double>& x) {
    double worst = 0.0;
    for (ElementId r = 0; r < n; ++r)
      for (ElementId s = 0; s < n; ++s)
        worst = std::max(worst, std::abs(principal_angle(x[r] + x[s] - x[g.mul(r, s)] - t(r, s))));
    return worst;
  };

  std::vector<std::size_t> branch(gens.size(), 0);
  for (std::uint64_t tried = 0;; ++tried) {
    if (tried >= branch_budget) {
      throw Error(ErrorKind::BudgetExceeded, "branch budget exhausted before a decision",
                  {{"budget", branch_budget}});
    }
    std::vector<double> x(n, 0.0);
    std::vector<bool> set(n, false);
    set[0] = true;
    std::deque<ElementId> queue{0};
    while (!queue.empty()) {
      const ElementId a = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const ElementId ag = g.mul(a, gens[i]);
        if (set[ag]) continue;
        const double xg = (base[i] + kTwoPi * static_cast<double>(branch[i])) / static_cast<double>(orders[i]);
        x[ag] = x[a] + xg - t(a, gens[i]);
        set[ag] = true;
        queue.push_back(ag);
      }
    }
    if (residual_of(x) < 1e-3) {
      // least squares on the lifted equations x(r) + x(s) - x(rs) = t + 2 pi m
      const auto rows = static_cast<Eigen::Index>(n * n), cols = static_cast<Eigen::Index>(n - 1);
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
      Eigen::VectorXd rhs(rows);
      Eigen::Index row = 0;
      for (ElementId r = 0; r < n; ++r) {
        for (ElementId s = 0; s < n; ++s, ++row) {
          const ElementId rs = g.mul(r, s);
          if (r) a(row, static_cast<Eigen::Index>(r - 1)) += 1;
          if (s) a(row, static_cast<Eigen::Index>(s - 1)) += 1;
          if (rs) a(row, static_cast<Eigen::Index>(rs - 1)) -= 1;
          const double lhs = x[r] + x[s] - x[rs];
          const double m = std::round((lhs - t(r, s)) / kTwoPi);
          rhs(row) = t(r, s) + kTwoPi * m;
        }
      }
      if (cols > 0) {
        const Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
        for (ElementId r = 1; r < n; ++r) x[r] = sol(static_cast<Eigen::Index>(r - 1));
      }
      if (residual_of(x) < eps) {
        std::vector<Phase> xs(n);
        for (ElementId r = 1; r < n; ++r) xs[r] = Phase::from_radians(x[r]);
        out.status = SolutionStatus::EquivalentVia;
        out.x = PhaseGauge(std::move(xs));
        return out;
      }
    }
    // odometer over branches
    std::size_t i = 0;
    for (; i < branch.size(); ++i) {
      if (++branch[i] < orders[i]) break;
      branch[i] = 0;
    }
    if (i == branch.size()) break;
  }
  out.certificate = ObstructionCertificate{};
  return out;
}

/// Outcome of the determinant trivialization.
struct WeylResult {
  PhaseGauge x;                 ///< final gauge, a branch of -arg(det U_r)/n
  ExponentTable residual;       ///< delta + Delta[x], exact multiples of 1/n turns
  ExponentTable principal_residual;  ///< same for the principal branch of arg det
  std::vector<std::int64_t> branch;  ///< j(r): x(r) = -(Sigma(r) - 2 pi j(r))/n
  bool lattice = true;          ///< every principal residual entry in (2pi/n)Z
  double lattice_deviation = 0.0;
  bool clean = false;           ///< residual == 0 exactly
};

/// x(r) = -Sigma(r)/n with Sigma = principal arg det U_r, then a search over
/// the n-th root branches of that choice for one making the residual vanish.
inline WeylResult weyl_trivialization(const RayRepresentation& rep) {
  const FiniteGroup& g = rep.group();
  const std::size_t n = g.order();
  const auto dim = static_cast<std::int64_t>(rep.dim());
  const ExponentTable delta = exponent_from_factor(build_phase_table(rep));

  std::vector<double> sigma(n);
  for (ElementId r = 0; r < n; ++r) sigma[r] = std::arg(rep.matrix(r).determinant());
  sigma[0] = 0.0;

  WeylResult out{PhaseGauge::zero(n), ExponentTable(g), ExponentTable(g), std::vector<std::int64_t>(n, 0)};
  // residual in units of 1/dim turns
  std::vector<std::int64_t> k(n * n, 0);
  for (ElementId r = 0; r < n; ++r) {
    for (ElementId s = 0; s < n; ++s) {
      const double res = delta.at(r, s).principal() - (sigma[r] + sigma[s] - sigma[g.mul(r, s)]) / dim;
      const double units = res * dim / kTwoPi;
      const double nearest = std::round(units);
      const double dev = std::abs(units - nearest) * kTwoPi / dim;
      out.lattice_deviation = std::max(out.lattice_deviation, dev);
      if (dev > 1e-9) out.lattice = false;
      k[r * n + s] = mod_floor(static_cast<std::int64_t>(nearest), dim);
      out.principal_residual.at(r, s) = Phase::from_turns(k[r * n + s], dim);
    }
  }

  // find j with Delta[j/dim] = -residual (mod 1 turn)
  std::vector<std::int64_t> j(n, 0);
  if (n > 1 && out.lattice) {
    const detail::CoboundarySystem sys = detail::coboundary_system(g);
    std::vector<std::int64_t> c(sys.pairs.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      c[i] = mod_floor(-k[sys.pairs[i][0] * n + sys.pairs[i][1]], dim);
    const SmithForm snf(sys.b);
    if (auto y = snf.solve(c, dim)) {
      const auto best = detail::canonical_solution(*y, snf.kernel_generators(dim), dim);
      for (ElementId r = 1; r < n; ++r) j[r] = best[r - 1];
    }
  }
  std::vector<Phase> xs(n);
  for (ElementId r = 1; r < n; ++r) xs[r] = Phase::from_radians(-(sigma[r] - kTwoPi * static_cast<double>(j[r])) / dim);
  out.x = PhaseGauge(std::move(xs));
  out.branch = j;
  out.clean = out.lattice;
  for (ElementId r = 0; r < n; ++r) {
    for (ElementId s = 0; s < n; ++s) {
      const std::int64_t units = mod_floor(k[r * n + s] + j[r] + j[s] - j[g.mul(r, s)], dim);
      out.residual.at(r, s) = Phase::from_turns(units, dim);
      if (units != 0) out.clean = false;
    }
  }
  return out;
}

}  // namespace projrep
