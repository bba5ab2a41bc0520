#include <gtest/gtest.h>

#include "projrep/wigner.hpp"

using namespace projrep;

namespace {

SymmetryOperator linear(CMatrix m) { return {std::move(m), false}; }
SymmetryOperator antilinear(CMatrix m) { return {std::move(m), true}; }

/// min over theta of ||M - e^{i theta} V||_max: coarse grid, then the trace phase.
double phase_aligned_gap(const CMatrix& m, const CMatrix& v, int grid = 10000) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) best = std::min(best, max_abs(m - std::polar(1.0, kTwoPi * k / grid) * v));
  const double theta = std::arg((v.adjoint() * m).trace());
  return std::min(best, max_abs(m - std::polar(1.0, theta) * v));
}

}  // namespace

TEST(VerifySymmetry, Identity) {
  const RaySymmetry t(3, [](const CVector& v) { return v; });
  const SymmetryReport r = verify_symmetry(t, 20, 1);
  EXPECT_LE(r.max_deviation, 1e-15);
  EXPECT_LE(r.basis_orthonormality, 1e-15);
}

TEST(VerifySymmetry, PhaseRandomizedUnitary) {
  CounterRng rng(2);
  const RaySymmetry t = phase_randomized(linear(random_unitary(4, rng)), 3);
  EXPECT_LE(verify_symmetry(t, 32, 4).max_deviation, 1e-12);
}

TEST(VerifySymmetry, ProjectionIsRejected) {
  const RaySymmetry t(2, [](const CVector& v) {
    CVector out = CVector::Zero(2);
    out(0) = v(0);
    out(1) = 1e-3 * v(1);
    return out;
  });
  try {
    verify_symmetry(t, 8, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotASymmetry);
  }
  // Exact projection annihilates e2, which is also reported as a non-symmetry.
  const RaySymmetry p(2, [](const CVector& v) {
    CVector out = CVector::Zero(2);
    out(0) = v(0);
    return out;
  });
  try {
    verify_symmetry(p, 8, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotASymmetry);
  }
}

TEST(VerifySymmetry, TooFewProbes) {
  const RaySymmetry t(3, [](const CVector& v) { return v; });
  EXPECT_THROW(verify_symmetry(t, 8, 1), Error);
}

TEST(Reconstruct, IdentityWithRandomPhases) {
  const SymmetryOperator op = reconstruct(phase_randomized(linear(CMatrix::Identity(4, 4)), 9));
  EXPECT_FALSE(op.antilinear);
  EXPECT_LE(max_abs(op.matrix - CMatrix::Identity(4, 4)), 1e-12);
}

TEST(Reconstruct, ConjugationDim3) {
  const RaySymmetry k(3, [](const CVector& v) { return CVector(v.conjugate()); });
  const SymmetryOperator op = reconstruct(k);
  EXPECT_TRUE(op.antilinear);
  EXPECT_LE(max_abs(op.matrix - CMatrix::Identity(3, 3)), 1e-12);
  const ImageBasis b = fix_image_basis(k);
  for (std::size_t i = 0; i < 3; ++i)
    if (i != b.k_bar) EXPECT_EQ(classify_branch(k, b, i), Branch::Antilinear);
}

TEST(Reconstruct, Random8x8AgainstPhaseGridOracle) {
  CounterRng rng(7);
  const CMatrix v = random_unitary(8, rng);
  const SymmetryOperator op = reconstruct(phase_randomized(linear(v), 70));
  EXPECT_FALSE(op.antilinear);
  EXPECT_LE(phase_aligned_gap(op.matrix, v), 1e-8);
  EXPECT_LE(unitarity_defect(op.matrix), 1e-9);
}

TEST(Reconstruct, GlobalPhaseConvention) {
  CounterRng rng(8);
  const SymmetryOperator op = reconstruct(phase_randomized(linear(random_unitary(5, rng)), 1));
  for (Eigen::Index i = 0; i < op.matrix.size(); ++i) {
    const Complex z = op.matrix.data()[i];
    if (std::abs(z) > 1e-8) {
      EXPECT_GT(z.real(), 0.0);
      EXPECT_NEAR(z.imag(), 0.0, 1e-12);
      break;
    }
  }
}

TEST(Reconstruct, RoundTripProperty) {
  CounterRng rng(100);
  for (std::size_t dim = 2; dim <= 6; ++dim)
    for (bool anti : {false, true}) {
      const SymmetryOperator s{random_unitary(dim, rng), anti};
      const RaySymmetry t = phase_randomized(s, dim * 10 + anti);
      const SymmetryOperator r = reconstruct(t);
      EXPECT_EQ(r.antilinear, anti);
      EXPECT_LE(roundtrip_residual(t, r, 100, 3), 1e-8) << dim << " " << anti;
      EXPECT_LE(unitarity_defect(r.matrix), 1e-9);
      const ImageBasis b = fix_image_basis(t);
      for (std::size_t k = 0; k < dim; ++k)
        if (k != b.k_bar) EXPECT_EQ(classify_branch(t, b, k), anti ? Branch::Antilinear : Branch::Linear);
    }
}

TEST(ClassifyBranch, VTimesConjugationIsAntilinear) {
  CounterRng rng(12);
  const RaySymmetry t = phase_randomized(antilinear(random_unitary(3, rng)), 2);
  const ImageBasis b = fix_image_basis(t);
  EXPECT_EQ(classify_branch(t, b, (b.k_bar + 1) % 3), Branch::Antilinear);
  const RaySymmetry id(3, [](const CVector& v) { return v; });
  EXPECT_EQ(classify_branch(id, fix_image_basis(id), 1), Branch::Linear);
}

TEST(ClassifyBranch, NonSymmetryIsAmbiguous) {
  // Maps (e0 + i e1)/sqrt2 to a real combination: the ratio has no imaginary part.
  const RaySymmetry t(2, [](const CVector& v) { return CVector(v.cwiseAbs().cast<Complex>()); });
  const ImageBasis b = fix_image_basis(t);
  try {
    classify_branch(t, b, 1 - b.k_bar);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AmbiguousBranch);
  }
}

TEST(FixImageBasis, Degenerate) {
  // Basis vectors are fixed but every superposition lands on e2, so no
  // reference index overlaps the probe images.
  const RaySymmetry t(3, [](const CVector& v) {
    if ((v.array().abs() > 1e-12).count() == 1) return CVector(v);
    return CVector(CVector::Unit(3, 2));
  });
  try {
    fix_image_basis(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateOverlap);
  }
}

TEST(Compose, Rules) {
  CounterRng rng(13);
  const CMatrix a = random_unitary(3, rng), b = random_unitary(3, rng);
  const SymmetryOperator ab = compose(linear(a), linear(b));
  EXPECT_FALSE(ab.antilinear);
  EXPECT_LE(max_abs(ab.matrix - a * b), 1e-12);

  const SymmetryOperator kk = compose(antilinear(CMatrix::Identity(3, 3)), antilinear(CMatrix::Identity(3, 3)));
  EXPECT_FALSE(kk.antilinear);
  EXPECT_LE(max_abs(kk.matrix - CMatrix::Identity(3, 3)), 1e-15);

  const SymmetryOperator vk = antilinear(a);
  const SymmetryOperator sq = compose(vk, vk);
  EXPECT_FALSE(sq.antilinear);
  EXPECT_LE(max_abs(sq.matrix - a * a.conjugate()), 1e-12);
  EXPECT_LE(unitarity_defect(sq.matrix), 1e-12);

  // Action agrees with applying the factors in turn.
  const CVector v = random_unit_vector(3, rng);
  EXPECT_LE((compose(vk, linear(b)).apply(v) - vk.apply(b * v)).norm(), 1e-12);
  EXPECT_THROW(compose(linear(a), linear(CMatrix::Identity(2, 2))), Error);
}
