// Acceptance run over the bundled corpus. One line per criterion:
//   PASS | FAIL | FAIL (unattainable)
// The exit code is nonzero iff an attainable criterion fails. Unattainable
// criteria are those whose literal statement is contradicted by a proof for
// some bundled fixture; the line names the fixture and the sub-check.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "projrep/central_extension.hpp"
#include "projrep/cohomology.hpp"
#include "projrep/fixtures.hpp"
#include "projrep/gauge_fixing.hpp"
#include "projrep/io.hpp"
#include "projrep/wigner.hpp"

using namespace projrep;

namespace {

// Pinned tolerances.
constexpr double kOracleTol = 1e-6;
constexpr double kGapSlack = 1e-10;
constexpr double kBoundSlack = 1e-9;
constexpr double kIdentityTol = 1e-9;
constexpr double kLatticeTol = 1e-9;
constexpr double kRoundtripTol = 1e-8;
constexpr double kSquareUnitaryTol = 1e-12;

using Clock = std::chrono::steady_clock;

struct Line {
  int id;
  bool pass;
  bool unattainable;
  double seconds;
  std::string detail;
};

std::vector<Line> g_lines;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void emit(int id, bool pass, double seconds, const std::string& detail, bool unattainable = false) {
  g_lines.push_back({id, pass, unattainable && !pass, seconds, detail});
  std::printf("criterion %d: %s  [%.2fs]  %s\n", id,
              pass ? "PASS" : (unattainable ? "FAIL (unattainable)" : "FAIL"), seconds, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Fixture {
  std::string name;
  RayRepresentation rep;
};

std::vector<Fixture> load_reps() {
  std::vector<std::string> paths;
  for (const auto& e : std::filesystem::directory_iterator(PROJREP_CORPUS)) paths.push_back(e.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<Fixture> out;
  for (const std::string& p : paths) {
    const nlohmann::json j = io::read_json(p);
    if (!j.contains("matrices")) continue;
    out.push_back({std::filesystem::path(p).stem().string(), io::rep_from_json(j)});
  }
  return out;
}

const Fixture& by_name(const std::vector<Fixture>& fx, const std::string& name) {
  for (const Fixture& f : fx)
    if (f.name == name) return f;
  throw Error(ErrorKind::ValidationError, "missing corpus fixture " + name);
}

ExponentTable exponents(const RayRepresentation& rep) { return exponent_from_factor(build_phase_table(rep)); }

// Fixtures built as a genuine representation times an exact coboundary.
bool genuine_plus_coboundary(const std::string& name) {
  return name == "twisted-z2" || name.rfind("twisted-cyclic-", 0) == 0 || name == "s3-permutation" ||
         name == "s3-permutation-twisted" || name == "s3-standard" || name == "q8-su2" || name == "q8-su2-twisted";
}

void criterion1() {
  const auto t0 = Clock::now();
  CounterRng rng(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t dim = 2 + rng.below(7);
    const StateVector a = StateVector::random(dim, rng), b = StateVector::random(dim, rng);
    worst = std::max(worst, std::abs(ray_distance(Ray(a), Ray(b)) - min_phase_distance_oracle(a, b, 3600)));
  }
  const double s = since(t0);
  emit(1, worst <= kOracleTol && s < 10.0, s, "1000 pairs, dims 2-8, max |d - oracle| = " + fmt("%.3e", worst));
}

void criterion2() {
  const auto t0 = Clock::now();
  CounterRng rng(2);
  std::size_t violations = 0;
  double margin = -1e300;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t dim = 2 + rng.below(7);
    const Ray a(StateVector::random(dim, rng)), b(StateVector::random(dim, rng));
    const Ray c(StateVector::random(dim, rng)), d(StateVector::random(dim, rng));
    const ContinuityGap g = inner_continuity_gap(a, b, c, d);
    violations += g.lhs > g.rhs + kGapSlack;
    margin = std::max(margin, g.lhs - g.rhs);
  }
  emit(2, violations == 0, since(t0),
       "10000 quadruples, violations = " + std::to_string(violations) + ", max lhs - rhs = " + fmt("%.3e", margin));
}

void criterion3() {
  const auto t0 = Clock::now();
  using QPair = std::pair<Quaternion, Quaternion>;
  const auto xs = sample_near_identity({}, 0.3, 20001, 3);
  std::vector<QPair> pairs;
  for (std::size_t i = 1; i + 1 < xs.size(); i += 2) pairs.emplace_back(xs[i], xs[i + 1]);
  const StateVector e1 = StateVector::basis(2, 0), e2 = StateVector::basis(2, 1);
  const auto [sec, ctx] = wigner_gauge(Su2Section(Su2Section::Mode::SpinHalf, true, 3),
                                       std::span<const Quaternion>(xs), e1, 0.5);
  std::map<std::string, std::size_t> v{
      {"z_bound", 0}, {"diff_sigma_bound", 0}, {"diff_distance_bound", 0}, {"modulus_bound", 0}};
  double orth = 0.0;
  for (const auto& rec : continuity_scan(sec, ctx, std::span<const QPair>(pairs))) {
    v["z_bound"] += !rec.z_bound.holds(kBoundSlack);
    v["diff_sigma_bound"] += !rec.diff_sigma_bound.holds(kBoundSlack);
    v["diff_distance_bound"] += !rec.diff_distance_bound.holds(kBoundSlack);
    v["modulus_bound"] += !rec.modulus_bound.holds(kBoundSlack);
    orth = std::max(orth, rec.orthogonality);
  }
  const std::vector<QPair> chi_pairs(pairs.begin(), pairs.begin() + 1000);
  const ChiReport chi = chi_continuity_check(sec, ctx, e1, e2, std::span<const QPair>(chi_pairs));
  const double s = since(t0);
  std::size_t total = 0;
  for (const auto& [k, n] : v) total += n;
  const bool ok = pairs.size() == 10000 && ctx.excluded.empty() && total == 0 &&
                  chi.identity_residual <= kIdentityTol && s < 30.0;
  emit(3, ok, s,
       std::to_string(pairs.size()) + " SU(2) pairs, violations z/sigma/distance/modulus bounds = " +
           std::to_string(v["z_bound"]) + "/" + std::to_string(v["diff_sigma_bound"]) + "/" +
           std::to_string(v["diff_distance_bound"]) + "/" + std::to_string(v["modulus_bound"]) +
           ", chi identity residual (1000 pairs) = " + fmt("%.3e", chi.identity_residual) +
           ", chi bound violations at 2^(3/2) = " + std::to_string(chi.violations_three_halves) +
           ", at 2^(2/3) = " + std::to_string(chi.violations_two_thirds));
}

// Independent of verify_cocycle: additive cocycle law on turns, all triples.
bool is_cocycle(const PhaseMatrix& t) {
  const FiniteGroup& g = t.group();
  for (ElementId r = 0; r < g.order(); ++r)
    for (ElementId q = 0; q < g.order(); ++q)
      for (ElementId m = 0; m < g.order(); ++m) {
        const Rational lhs = t.at(r, q).turns() + t.at(g.mul(r, q), m).turns();
        const Rational rhs = t.at(q, m).turns() + t.at(r, g.mul(q, m)).turns();
        if (reduce_turns(lhs - rhs) != Rational(0)) return false;
      }
  return true;
}

void criterion4(const std::vector<Fixture>& fx) {
  const auto t0 = Clock::now();
  std::size_t tables = 0, corruptions = 0, undetected = 0, undetected_still_cocycle = 0, inexact = 0;
  std::string where;
  for (const Fixture& f : fx) {
    const PhaseTable t = build_phase_table(f.rep);
    const CocycleReport r = verify_cocycle(t);
    ++tables;
    if (!r.passed || !r.exact || !t.exact()) ++inexact;
    for (ElementId a = 0; a < t.order(); ++a)
      for (ElementId b = 0; b < t.order(); ++b) {
        PhaseTable bad = t;
        bad.at(a, b) = bad.at(a, b) + Phase::from_turns(1, 7);
        const CocycleReport c = verify_cocycle(bad);
        ++corruptions;
        if (c.passed || !c.witness.has_value()) {
          ++undetected;
          undetected_still_cocycle += is_cocycle(bad);
          where += " " + f.name + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
        }
      }
  }
  // An undetected corruption is unattainable to detect iff the corrupted table
  // is itself a cocycle (e.g. omega(1,1) on Z2 is unconstrained).
  emit(4, inexact == 0 && undetected == 0, since(t0),
       std::to_string(tables) + " tables pass exactly (failures " + std::to_string(inexact) + "); " +
           std::to_string(corruptions) + " single-entry corruptions, undetected = " + std::to_string(undetected) +
           (undetected ? ", all still valid cocycles:" + where : std::string()),
       inexact == 0 && undetected == undetected_still_cocycle);
}

void criterion5(const std::vector<Fixture>& fx) {
  const auto t0 = Clock::now();
  std::size_t trivialized = 0, reverified = 0, obstructed = 0;
  for (std::size_t n = 2; n <= 12; ++n) {
    const ExponentTable d = exponents(by_name(fx, "twisted-cyclic-z" + std::to_string(n)).rep);
    const CoboundarySolution s = trivialize(d);
    if (!s.equivalent()) continue;
    ++trivialized;
    const ExponentTable back = add_coboundary(d, *s.x);
    bool zero = true;
    for (ElementId r = 0; r < n; ++r)
      for (ElementId q = 0; q < n; ++q) zero = zero && back.at(r, q).is_zero(0.0);
    reverified += zero;
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    const ExponentTable d = exponents(by_name(fx, "clock-shift-z" + std::to_string(n)).rep);
    const CoboundarySolution s = trivialize(d);
    if (s.status != SolutionStatus::Obstructed || !s.certificate || !s.certificate->pair) continue;
    const Complex beta = commutator_phase(factor_from_exponent(d), (*s.certificate->pair)[0], (*s.certificate->pair)[1]);
    const Complex expect = fixtures::root_of_unity(1, static_cast<std::int64_t>(n));
    obstructed += std::abs(beta - expect) < 1e-12 && std::abs(beta - 1.0) > 0.5;
  }
  const double s = since(t0);
  emit(5, trivialized == 11 && reverified == 11 && obstructed == 3 && s < 5.0, s,
       "twisted Z_n (n=2..12) trivialized " + std::to_string(trivialized) + "/11, re-verified " +
           std::to_string(reverified) + "/11; clock/shift n=2,3,4 obstructed with e^(2 pi i/n) " +
           std::to_string(obstructed) + "/3");
}

void criterion6(const std::vector<Fixture>& fx) {
  const auto t0 = Clock::now();
  std::size_t lattice_bad = 0, mismatched = 0;
  double worst = 0.0;
  std::string mismatch_names;
  for (const Fixture& f : fx) {
    const WeylResult w = weyl_trivialization(f.rep);
    worst = std::max(worst, w.lattice_deviation);
    lattice_bad += !w.lattice || w.lattice_deviation > kLatticeTol;
    if (w.clean != genuine_plus_coboundary(f.name)) {
      ++mismatched;
      mismatch_names += " " + f.name + (w.clean ? "(clean)" : "(unclean)");
    }
  }
  // A genuine lift is clean only if det U is an n-th power of a character;
  // the 2-dim S3 irrep has det = sign, which is not a square character.
  const bool only_det_obstruction = mismatch_names == " s3-standard(unclean)";
  emit(6, lattice_bad == 0 && mismatched == 0, since(t0),
       std::to_string(fx.size()) + " reps, lattice violations = " + std::to_string(lattice_bad) +
           ", max deviation = " + fmt("%.3e", worst) + ", clean/fixture mismatches:" +
           (mismatched ? mismatch_names + " [det U = sign is not a square character]" : std::string(" none")),
       lattice_bad == 0 && only_det_obstruction);
}

void criterion7(const std::vector<Fixture>& fx) {
  const auto t0 = Clock::now();
  using El = ExtensionElement<Rational>;
  CounterRng rng(7);
  auto element = [&](std::size_t order) {
    return El{Rational(static_cast<std::int64_t>(rng.below(41)) - 20, 1 + static_cast<std::int64_t>(rng.below(6))),
              rng.below(order)};
  };
  std::size_t other_fail = 0, lift_non_integer = 0;
  std::vector<std::string> assoc_gaps;
  std::vector<std::string> gap_but_trivial;
  for (const Fixture& f : fx) {
    const ExponentTable d = exponents(f.rep);
    const LocalGroup<Rational> L(d);
    const std::size_t n = L.order();
    std::size_t gaps = 0;
    for (int i = 0; i < 1000; ++i) {
      const El a = element(n), b = element(n), c = element(n);
      const LiftDiscrepancy ld =
          lift_discrepancy(ext_product(L, ext_product(L, a, b), c), ext_product(L, a, ext_product(L, b, c)));
      if (!ld.same_element || !ld.k) ++lift_non_integer;
      gaps += !ld.exact();
      other_fail += !(ext_product(L, a, ext_inverse(L, a)) == L.identity());
      other_fail += !(ext_product(L, ext_inverse(L, a), a) == L.identity());
      other_fail += !(ext_product(L, a, L.identity()) == a) || !(ext_product(L, L.identity(), a) == a);
      other_fail += quotient_map(L, ext_product(L, a, b)) != L.group().mul(a.r, b.r);
    }
    if (gaps) {
      assoc_gaps.push_back(f.name + ":" + std::to_string(gaps));
      if (trivialize(d).equivalent()) gap_but_trivial.push_back(f.name);
    }
    // Equivalence map from the solver witness onto the trivial table, then scaling maps.
    const CoboundarySolution s = trivialize(d);
    if (s.equivalent()) {
      const LocalGroup<Rational> T(ExponentTable::zero(d.group()));
      const auto phi = equivalence_isomorphism(L, T, *s.x);
      for (int i = 0; i < 1000; ++i) {
        const LiftDiscrepancy h = phi.homomorphism_discrepancy(element(n), element(n));
        if (!h.same_element || !h.k) ++lift_non_integer;
      }
    }
    for (const Rational z : {Rational(2), Rational(1, 3), Rational(-5)}) {
      const auto sc = scaling_isomorphism(L, z);
      for (int i = 0; i < 1000; ++i) {
        const El a = element(n), b = element(n);
        other_fail += !(sc.map(ext_product(L, a, b)) == ext_product(sc.target, sc.map(a), sc.map(b)));
      }
    }
  }
  std::string gaps_str, trivial_str;
  for (const auto& g : assoc_gaps) gaps_str += " " + g;
  for (const auto& g : gap_but_trivial) trivial_str += " " + g;
  // With delta lifted once into [0, 2pi) the lift is a real cocycle only up to
  // 2pi integers. For an obstructed class no real lift is exactly associative
  // (H^2(G, R) = 0 for finite G). For a trivial class the fixed lift still
  // differs from the real coboundary by 2pi integers. Exact zero residual is
  // therefore unattainable whenever every gap is an integer multiple of 2pi.
  const bool attainable_ok = other_fail == 0 && lift_non_integer == 0;
  emit(7, attainable_ok && assoc_gaps.empty(), since(t0),
       std::to_string(fx.size()) + " fixtures x 1000 trials; identity/inverse/quotient/scaling failures = " +
           std::to_string(other_fail) + ", non-integer 2pi lift gaps = " + std::to_string(lift_non_integer) +
           ", exact-associativity gaps (all 2pi k):" + (gaps_str.empty() ? " none" : gaps_str) +
           (trivial_str.empty() ? std::string() : "; of these, trivial classes:" + trivial_str),
       attainable_ok);
}

void criterion8() {
  const auto t0 = Clock::now();
  CounterRng rng(8);
  std::string per_dim;
  bool ok = true;
  double worst_rt = 0.0, worst_sq = 0.0;
  for (std::size_t dim : {2u, 4u, 8u}) {
    std::size_t correct = 0;
    for (int i = 0; i < 20; ++i) {
      const CMatrix v = random_unitary(dim, rng);
      for (bool anti : {false, true}) {
        const SymmetryOperator s{v, anti};
        const RaySymmetry t = phase_randomized(s, rng.next_u64());
        const SymmetryOperator r = reconstruct(t);
        const double rt = roundtrip_residual(t, r, 100, rng.next_u64());
        worst_rt = std::max(worst_rt, rt);
        correct += r.antilinear == anti && rt <= kRoundtripTol;
        if (anti) worst_sq = std::max(worst_sq, unitarity_defect(compose(s, s).matrix));
      }
    }
    ok = ok && correct == 40;
    per_dim += " dim " + std::to_string(dim) + ": " + std::to_string(correct) + "/40;";
  }
  const double s = since(t0);
  ok = ok && worst_sq <= kSquareUnitaryTol && s < 60.0;
  emit(8, ok, s,
       per_dim + " max round-trip = " + fmt("%.3e", worst_rt) + ", max (VK)^2 unitarity defect = " + fmt("%.3e", worst_sq));
}

void criterion9(const std::vector<Fixture>& fx) {
  const auto t0 = Clock::now();
  CounterRng rng(9);
  std::size_t changed = 0, nontrivial = 0;
  for (const Fixture& f : fx) {
    const ExponentTable d = exponents(f.rep);
    const FiniteGroup& g = d.group();
    std::vector<std::pair<ElementId, ElementId>> commuting;
    for (ElementId a = 0; a < g.order(); ++a)
      for (ElementId b = 0; b < g.order(); ++b)
        if (g.commute(a, b)) commuting.emplace_back(a, b);
    std::vector<Rational> base;
    for (const auto& [a, b] : commuting) {
      base.push_back(commutator_exponent(d, a, b).turns());
      nontrivial += base.back() != Rational(0);
    }
    for (int i = 0; i < 1000; ++i) {
      const ExponentTable e = add_coboundary(d, PhaseGauge::random_exact(g.order(), 720, rng));
      for (std::size_t k = 0; k < commuting.size(); ++k)
        changed += commutator_exponent(e, commuting[k].first, commuting[k].second).turns() != base[k];
    }
  }
  emit(9, changed == 0 && nontrivial > 0, since(t0),
       std::to_string(fx.size()) + " fixtures x 1000 exact gauges, changed commutators = " + std::to_string(changed) +
           ", nontrivial commutator pairs = " + std::to_string(nontrivial));
}

}  // namespace

int main() {
  try {
    const std::vector<Fixture> fx = load_reps();
    std::printf("corpus: %s (%zu representations)\n", PROJREP_CORPUS, fx.size());
    criterion1();
    criterion2();
    criterion3();
    criterion4(fx);
    criterion5(fx);
    criterion6(fx);
    criterion7(fx);
    criterion8();
    criterion9(fx);
  } catch (const Error& e) {
    std::printf("acceptance aborted: %s: %s\n", std::string(to_string(e.kind())).c_str(), e.what());
    return 2;
  }
  std::size_t pass = 0, fail = 0, unattainable = 0;
  for (const Line& l : g_lines) {
    pass += l.pass;
    fail += !l.pass && !l.unattainable;
    unattainable += l.unattainable;
  }
  std::printf("summary: %zu pass, %zu fail, %zu unattainable\n", pass, fail, unattainable);
  return fail == 0 ? 0 : 1;
}
