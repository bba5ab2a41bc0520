#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "projrep/error.hpp"
#include "projrep/linalg.hpp"
#include "projrep/prng.hpp"
#include "projrep/ray_space.hpp"

namespace projrep {

/// Black-box ray map. The evaluator may attach any unimodular phase to its
/// output, possibly a different one on every call.
class RaySymmetry {
 public:
  using Evaluator = std::function<CVector(const CVector&)>;

  RaySymmetry(std::size_t dim, Evaluator f) : dim_(dim), f_(std::move(f)) {}

  std::size_t dim() const { return dim_; }

  StateVector operator()(const StateVector& psi) const {
    detail::require_same_dim(psi.dim(), dim_);
    CVector out = f_(psi.vec());
    detail::require_same_dim(static_cast<std::size_t>(out.size()), dim_);
    return StateVector(std::move(out));
  }

 private:
  std::size_t dim_;
  Evaluator f_;
};

/// psi -> M psi (linear) or psi -> M conj(psi) (antilinear).
struct SymmetryOperator {
  CMatrix matrix;
  bool antilinear = false;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
  CVector apply(const CVector& v) const { return antilinear ? CVector(matrix * v.conjugate()) : CVector(matrix * v); }
};

enum class Branch { Linear, Antilinear };

inline std::string_view to_string(Branch b) { return b == Branch::Linear ? "Linear" : "Antilinear"; }

/// A ^ B. Matrix M_A M_B, or M_A conj(M_B) when A is antilinear.
inline SymmetryOperator compose(const SymmetryOperator& a, const SymmetryOperator& b) {
  detail::require_same_dim(a.dim(), b.dim());
  SymmetryOperator out;
  out.matrix = a.antilinear ? CMatrix(a.matrix * b.matrix.conjugate()) : CMatrix(a.matrix * b.matrix);
  out.antilinear = a.antilinear != b.antilinear;
  return out;
}

/// Wraps an operator as a ray map that multiplies every output by a fresh
/// seeded random phase.
inline RaySymmetry phase_randomized(const SymmetryOperator& op, std::uint64_t seed) {
  auto rng = std::make_shared<CounterRng>(seed);
  return RaySymmetry(op.dim(), [op, rng](const CVector& v) {
    return CVector(std::polar(1.0, rng->uniform(0.0, kTwoPi)) * op.apply(v));
  });
}

struct SymmetryReport {
  std::size_t vectors = 0;
  std::size_t pairs = 0;
  double max_deviation = 0.0;        ///< max | |<Tphi,Tpsi>| - |<phi,psi>| |
  double basis_orthonormality = 0.0; ///< max |<Te_i,Te_j> | - delta_ij|
};

/// Standard basis plus `probes` seeded random vectors, all pairs compared.
inline SymmetryReport verify_symmetry(const RaySymmetry& t, std::size_t probes, std::uint64_t seed,
                                      double eps = 1e-9) {
  const std::size_t d = t.dim();
  if (probes < d * d) {
    throw Error(ErrorKind::ValidationError, "need at least dim^2 probes", {{"probes", probes}, {"dim", d}});
  }
  CounterRng rng(seed);
  std::vector<StateVector> in;
  for (std::size_t k = 0; k < d; ++k) in.push_back(StateVector::basis(d, k));
  for (std::size_t k = 0; k < probes; ++k) in.push_back(StateVector::random(d, rng));
  std::vector<StateVector> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    try {
      out.push_back(t(in[i]));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroVector) throw;
      throw Error(ErrorKind::NotASymmetry, "map sends a unit vector to zero", {{"vector", i}});
    }
  }

  SymmetryReport rep;
  rep.vectors = in.size();
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
  for (std::size_t i = 0; i < in.size(); ++i) {
    for (std::size_t j = i + 1; j < in.size(); ++j) {
      ++rep.pairs;
      const double dev = std::abs(std::abs(out[i].vec().dot(out[j].vec())) - std::abs(in[i].vec().dot(in[j].vec())));
      if (dev > rep.max_deviation) {
        rep.max_deviation = dev;
        worst_pair = {i, j};
      }
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double v = std::abs(std::abs(out[i].vec().dot(out[j].vec())) - (i == j ? 1.0 : 0.0));
      rep.basis_orthonormality = std::max(rep.basis_orthonormality, v);
    }
  if (rep.max_deviation > eps || rep.basis_orthonormality > eps) {
    nlohmann::json w = {{"deviation", rep.max_deviation}, {"orthonormality", rep.basis_orthonormality}};
    if (worst_pair) w["pair"] = {worst_pair->first, worst_pair->second};
    throw Error(ErrorKind::NotASymmetry, "map does not preserve transition probabilities", w);
  }
  return rep;
}

/// Phase-fixed image basis: b'_k = T(e_k) rephased so that T((e_kbar + e_k)/sqrt2)
/// is proportional to (b'_kbar + b'_k)/sqrt2.
struct ImageBasis {
  std::size_t k_bar = 0;
  std::vector<CVector> b;
};

namespace detail {
inline StateVector mix(std::size_t d, std::size_t i, std::size_t j, Complex cj) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  v(static_cast<Eigen::Index>(j)) = cj;
  return StateVector(std::move(v));
}
}  // namespace detail

inline ImageBasis fix_image_basis(const RaySymmetry& t, double floor = 1e-8) {
  const std::size_t d = t.dim();
  std::vector<CVector> b;
  for (std::size_t k = 0; k < d; ++k) b.push_back(t(StateVector::basis(d, k)).vec());
  double worst = 0.0;
  for (std::size_t kb = 0; kb < d; ++kb) {
    ImageBasis out{kb, b};
    bool ok = true;
    for (std::size_t k = 0; k < d && ok; ++k) {
      if (k == kb) continue;
      const CVector img = t(detail::mix(d, kb, k, 1.0)).vec();
      const Complex a_bar = b[kb].dot(img);
      const Complex a_k = b[k].dot(img);
      worst = std::min(std::abs(a_bar), std::abs(a_k));
      if (std::abs(a_bar) <= floor || std::abs(a_k) <= floor) {
        ok = false;
        break;
      }
      const Complex ratio = a_k / a_bar;
      out.b[k] = b[k] * (ratio / std::abs(ratio));
    }
    if (ok) return out;
  }
  throw Error(ErrorKind::DegenerateOverlap, "no reference index has all overlaps above the floor",
              {{"overlap", worst}});
}

/// Expands T((e_kbar + i e_k)/sqrt2) in the fixed image basis; coefficient
/// ratio +i means Linear, -i Antilinear.
inline Branch classify_branch(const RaySymmetry& t, const ImageBasis& basis, std::size_t k) {
  const std::size_t kb = basis.k_bar;
  if (k == kb) throw Error(ErrorKind::ValidationError, "k must differ from the reference index", {{"k", k}});
  const CVector img = t(detail::mix(t.dim(), kb, k, Complex(0.0, 1.0))).vec();
  const Complex ratio = basis.b[k].dot(img) / basis.b[kb].dot(img);
  if (std::abs(ratio.imag()) <= 0.5) {
    throw Error(ErrorKind::AmbiguousBranch, "coefficient ratio is neither i nor -i",
                {{"k", k}, {"ratio", {ratio.real(), ratio.imag()}}});
  }
  return ratio.imag() > 0 ? Branch::Linear : Branch::Antilinear;
}

/// Builds M from the phase-fixed image basis. The first entry of M with
/// modulus above 1e-8 (column-major) is made real positive.
inline SymmetryOperator reconstruct(const RaySymmetry& t) {
  const std::size_t d = t.dim();
  const ImageBasis basis = fix_image_basis(t);
  std::optional<Branch> branch;
  for (std::size_t k = 0; k < d; ++k) {
    if (k == basis.k_bar) continue;
    const Branch b = classify_branch(t, basis, k);
    if (branch && *branch != b) {
      throw Error(ErrorKind::BranchInconsistent, "basis directions disagree on linearity",
                  {{"k", k}, {"k_bar", basis.k_bar}});
    }
    branch = b;
  }
  SymmetryOperator op;
  op.antilinear = branch.value_or(Branch::Linear) == Branch::Antilinear;
  op.matrix.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k) op.matrix.col(static_cast<Eigen::Index>(k)) = basis.b[k];
  for (Eigen::Index i = 0; i < op.matrix.size(); ++i) {
    const Complex z = op.matrix.data()[i];
    if (std::abs(z) > 1e-8) {
      op.matrix *= std::conj(z) / std::abs(z);
      break;
    }
  }
  return op;
}

/// max over seeded random psi of d(T psi, op psi).
inline double roundtrip_residual(const RaySymmetry& t, const SymmetryOperator& op, std::size_t probes,
                                 std::uint64_t seed) {
  CounterRng rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < probes; ++i) {
    const StateVector psi = StateVector::random(t.dim(), rng);
    worst = std::max(worst, ray_distance(Ray(t(psi)), Ray(op.apply(psi.vec()))));
  }
  return worst;
}

}  // namespace projrep
