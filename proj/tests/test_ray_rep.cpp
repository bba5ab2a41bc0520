#include <gtest/gtest.h>

#include "projrep/fixtures.hpp"
#include "projrep/ray_rep.hpp"

using namespace projrep;

namespace {

const Complex kI(0.0, 1.0);

bool near(Complex a, Complex b, double eps = 1e-9) { return std::abs(a - b) <= eps; }

}  // namespace

TEST(LocalFactor, IdentityColumnIsOne) {
  const RayRepresentation rep = fixtures::clock_shift(3);
  for (ElementId r = 0; r < rep.order(); ++r) {
    EXPECT_TRUE(near(extract_local_factor(rep, r, 0), 1.0));
    EXPECT_TRUE(near(extract_local_factor(rep, 0, r), 1.0));
  }
}

TEST(LocalFactor, PauliExample) {
  // ids: (a,b) -> 2a + b, U = X^a Z^b.
  const RayRepresentation rep = fixtures::pauli_z2z2();
  EXPECT_TRUE(near(extract_local_factor(rep, 2, 1), 1.0));   // X Z = U_(1,1)
  EXPECT_TRUE(near(extract_local_factor(rep, 1, 2), -1.0));  // Z X = -X Z
}

TEST(LocalFactor, S3PermutationIsGenuine) {
  const RayRepresentation rep = fixtures::s3_permutation();
  for (ElementId r = 0; r < 6; ++r)
    for (ElementId s = 0; s < 6; ++s) EXPECT_TRUE(near(extract_local_factor(rep, r, s), 1.0));
}

TEST(LocalFactor, NotScalarWitness) {
  RayRepresentation rep = fixtures::clock_shift(3);
  std::vector<CMatrix> mats = rep.matrices();
  CMatrix rot = CMatrix::Identity(3, 3);
  const double t = 1e-3;
  rot(0, 0) = std::cos(t);
  rot(0, 1) = -std::sin(t);
  rot(1, 0) = std::sin(t);
  rot(1, 1) = std::cos(t);
  mats[4] = rot * mats[4];
  try {
    RayRepresentation::checked(rep.group(), mats);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotScalar);
    EXPECT_TRUE(e.witness().contains("r"));
  }
}

TEST(LocalFactor, NonUnitaryRejected) {
  try {
    RayRepresentation(make_cyclic(2), {CMatrix::Identity(2, 2), 2.0 * CMatrix::Identity(2, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUnitary);
  }
}

TEST(LocalFactor, IdentityIsForcedWithWarning) {
  const RayRepresentation rep(make_cyclic(2), {kI * CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)});
  EXPECT_EQ(rep.matrix(0), CMatrix::Identity(2, 2));
  EXPECT_TRUE(rep.warnings().empty());  // differed only by a phase
}

TEST(PhaseTable, TrivialGroup) {
  const RayRepresentation rep(make_cyclic(1), {CMatrix::Identity(1, 1)});
  const PhaseTable t = build_phase_table(rep);
  ASSERT_EQ(t.order(), 1u);
  EXPECT_TRUE(t.at(0, 0).is_exact());
  EXPECT_EQ(t.at(0, 0).turns(), Rational(0));
  EXPECT_TRUE(is_genuine(t));
}

TEST(PhaseTable, ClockShiftZ3IsExactThirds) {
  const PhaseTable t = build_phase_table(fixtures::clock_shift(3));
  ASSERT_TRUE(t.exact());
  for (ElementId r = 0; r < 9; ++r)
    for (ElementId s = 0; s < 9; ++s) {
      EXPECT_EQ((t.at(r, s).turns() * 3).denominator(), 1);
      // omega((a,b),(c,d)) = bc / 3 turns.
      const std::int64_t b = static_cast<std::int64_t>(r % 3), c = static_cast<std::int64_t>(s / 3);
      EXPECT_EQ(t.at(r, s).turns(), reduce_turns(Rational(b * c, 3)));
    }
  EXPECT_FALSE(is_genuine(t));
}

TEST(PhaseTable, NormalizationIsExact) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const PhaseTable t = build_phase_table(fixtures::twisted_cyclic(n, 1000 + n));
    for (ElementId r = 0; r < n; ++r) {
      ASSERT_TRUE(t.at(r, 0).is_exact());
      EXPECT_EQ(t.at(r, 0).turns(), Rational(0));
      EXPECT_EQ(t.at(0, r).turns(), Rational(0));
    }
  }
}

TEST(Cocycle, BuiltTablesPass) {
  for (const auto& rep : {fixtures::clock_shift(2), fixtures::clock_shift(3), fixtures::s3_standard(),
                          fixtures::q8_su2(), fixtures::twist_by_coboundary(fixtures::s3_permutation(), 6, 2024)}) {
    const CocycleReport r = verify_cocycle(build_phase_table(rep));
    EXPECT_TRUE(r.passed);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.failures, 0u);
  }
}

TEST(Cocycle, ExhaustiveOnOrder24) {
  // S4 permutation rep, twisted: 13824 triples.
  const FiniteGroup s4 = make_symmetric(4);
  const auto perms = permutations(4);
  std::vector<CMatrix> mats;
  for (const auto& p : perms) {
    CMatrix m = CMatrix::Zero(4, 4);
    for (std::size_t i = 0; i < 4; ++i) m(static_cast<Eigen::Index>(p[i]), static_cast<Eigen::Index>(i)) = 1.0;
    mats.push_back(m);
  }
  const RayRepresentation rep = fixtures::twist_by_coboundary(RayRepresentation(s4, mats), 12, 5);
  const CocycleReport r = verify_cocycle(build_phase_table(rep));
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.exact);
}

TEST(Cocycle, HandZ2TableWithI) {
  PhaseTable t(make_cyclic(2));
  t.at(1, 1) = Phase::from_turns(1, 4);
  EXPECT_TRUE(verify_cocycle(t).passed);
}

TEST(Cocycle, CorruptedEntryFailsWithWitness) {
  PhaseTable t = build_phase_table(fixtures::clock_shift(3));
  t.at(4, 5) = Phase::from_turns(1, 9);
  const CocycleReport r = verify_cocycle(t);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GT(r.failures, 0u);
  EXPECT_GT(r.worst, 0.0);
}

TEST(Gauge, ZeroGaugeIsNoOp) {
  const RayRepresentation rep = fixtures::clock_shift(3);
  const RayRepresentation g = apply_phase_gauge(rep, PhaseGauge::zero(9));
  for (ElementId r = 0; r < 9; ++r) EXPECT_EQ(g.matrix(r), rep.matrix(r));
}

TEST(Gauge, Z2Example) {
  const RayRepresentation rep = fixtures::twisted_z2();
  EXPECT_TRUE(near(extract_local_factor(rep, 1, 1), -1.0));
  const RayRepresentation g = apply_phase_gauge(rep, PhaseGauge({Phase::zero(), Phase::from_turns(1, 4)}));
  EXPECT_LT((g.matrix(1) + CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE(near(extract_local_factor(g, 1, 1), 1.0));
  EXPECT_TRUE(is_genuine(build_phase_table(g)));
}

TEST(Gauge, CovarianceOnRandomGauges) {
  CounterRng rng(31);
  const RayRepresentation s3 = fixtures::s3_permutation();
  const RayRepresentation cs = fixtures::clock_shift(4);
  for (int i = 0; i < 20; ++i) {
    EXPECT_LT(gauge_covariance_residual(s3, PhaseGauge::random_exact(6, 12, rng)), 1e-9);
    EXPECT_LT(gauge_covariance_residual(cs, PhaseGauge::random_exact(16, 8, rng)), 1e-9);
  }
  // Genuine rep gauged: omega' is exactly the coboundary of x.
  const PhaseGauge x = PhaseGauge::random_exact(6, 12, rng);
  const PhaseTable t = build_phase_table(apply_phase_gauge(s3, x));
  for (ElementId r = 0; r < 6; ++r)
    for (ElementId s = 0; s < 6; ++s) {
      const Phase expect = Phase::from_turns(x.x(r).turns() + x.x(s).turns() - x.x(s3.group().mul(r, s)).turns());
      EXPECT_EQ(t.at(r, s).turns(), expect.turns());
    }
}

TEST(StateIndependence, Examples) {
  CounterRng rng(4);
  const StateVector a = StateVector::random(3, rng), b = StateVector::random(3, rng);
  const auto genuine = state_independence_check(fixtures::s3_permutation(), 3, 4, a, b);
  EXPECT_TRUE(genuine.passed);
  for (const Complex& l : genuine.lambda) EXPECT_TRUE(near(l, 1.0));

  const RayRepresentation cs = fixtures::clock_shift(3);
  for (ElementId r = 0; r < 9; ++r)
    for (ElementId s = 0; s < 9; ++s) {
      const auto rep = state_independence_check(cs, r, s, a, b);
      EXPECT_TRUE(rep.passed);
      EXPECT_TRUE(near(rep.lambda[0], extract_local_factor(cs, r, s)));
    }

  try {
    state_independence_check(cs, 1, 2, a, StateVector(CVector(2.0 * a.vec())));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DependentStates);
  }
}
