#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "projrep/central_extension.hpp"
#include "projrep/cohomology.hpp"
#include "projrep/error.hpp"
#include "projrep/gauge_fixing.hpp"
#include "projrep/io.hpp"
#include "projrep/report.hpp"
#include "projrep/su2.hpp"
#include "projrep/wigner.hpp"

namespace projrep::cli {

using ojson = nlohmann::ordered_json;

/// Run-wide settings; every randomized step derives from `seed`.
struct WorkbenchConfig {
  std::uint64_t seed = 0;
  double alpha = 0.5;
  double radius = 0.3;
  std::size_t samples = 1000;
  double pre_constant = kChiConstantThreeHalves;
  std::uint64_t branch_budget = 4096;
  /// bound (inequality slack), roundtrip (Wigner ray residual), symmetry
  /// (probability preservation), phase (exact snapping)
  std::map<std::string, double> tolerances{{"bound", 1e-9}, {"roundtrip", 1e-8}, {"symmetry", 1e-9}, {"phase", 1e-9}};

  double tol(const std::string& name) const { return tolerances.at(name); }

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::BadAlpha, "alpha must lie in (0, 1)", {{"alpha", alpha}});
    if (!(radius > 0.0 && radius <= std::numbers::pi)) {
      throw Error(ErrorKind::BadRadius, "radius must lie in (0, pi]", {{"radius", radius}});
    }
    for (const auto& [k, v] : tolerances)
      if (!(v > 0.0)) throw Error(ErrorKind::ValidationError, "tolerances must be positive", {{"name", k}, {"value", v}});
    if (!(pre_constant > 0.0)) throw Error(ErrorKind::ValidationError, "pre_constant must be positive");
  }

  ojson to_json() const {
    ojson tj = ojson::object();
    for (const auto& [k, v] : tolerances) tj[k] = v;
    return {{"seed", seed}, {"alpha", alpha}, {"radius", radius}, {"samples", samples},
            {"pre_constant", pre_constant}, {"branch_budget", branch_budget}, {"tolerances", tj}};
  }
};

/// Applies keys present in a config JSON object over `cfg`.
inline void apply_config_json(WorkbenchConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object", {{"line", 0}});
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "alpha") cfg.alpha = v.get<double>();
      else if (key == "radius") cfg.radius = v.get<double>();
      else if (key == "samples") cfg.samples = v.get<std::size_t>();
      else if (key == "pre_constant") cfg.pre_constant = v.get<double>();
      else if (key == "branch_budget") cfg.branch_budget = v.get<std::uint64_t>();
      else if (key == "tolerances") {
        for (const auto& [name, t] : v.items()) {
          if (!cfg.tolerances.count(name)) {
            throw Error(ErrorKind::ValidationError, "unknown tolerance name", {{"name", name}});
          }
          cfg.tolerances[name] = t.get<double>();
        }
      } else {
        throw Error(ErrorKind::ValidationError, "unknown config key", {{"key", key}});
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, "config field '" + key + "': " + e.what(), {{"line", 0}, {"key", key}});
    }
  }
}

struct RunArgs {
  std::vector<std::string> inputs;
  std::optional<std::string> matrix;
  bool antilinear = false;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> k{"validate", "cocycle", "gauge-fix", "trivialize", "equivalent",
                                          "obstruct", "weyl", "extension", "wigner", "continuity-scan"};
  return k;
}

namespace detail {

inline std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path, {{"line", 0}, {"path", path}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string digest(const std::string& command, const RunArgs& args, const WorkbenchConfig& cfg) {
  std::uint64_t h = fnv1a64(command);
  for (const auto& p : args.inputs) h = fnv1a64(file_bytes(p), h);
  if (args.matrix) h = fnv1a64(file_bytes(*args.matrix), h);
  h = fnv1a64(args.antilinear ? "A" : "L", h);
  h = fnv1a64(cfg.to_json().dump(), h);
  return hex64(h);
}

inline ojson error_witness(const Error& e) {
  ojson w = ojson::parse(e.witness().dump());
  if (!w.is_object()) w = ojson{{"data", w}};
  w["kind"] = std::string(to_string(e.kind()));
  w["message"] = e.what();
  return w;
}

inline ojson phase_json(const Phase& p) { return ojson::parse(io::phase_to_json(p).dump()); }

inline ojson gauge_json(const PhaseGauge& x) {
  ojson a = ojson::array();
  for (const Phase& p : x.values()) a.push_back(phase_json(p));
  return a;
}

inline ojson exponent_rows(const PhaseMatrix& d) {
  ojson rows = ojson::array();
  for (ElementId r = 0; r < d.order(); ++r) {
    ojson row = ojson::array();
    for (ElementId s = 0; s < d.order(); ++s) row.push_back(phase_json(d.at(r, s)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ojson complex_json(Complex z) { return ojson::array({z.real(), z.imag()}); }

enum class InputKind { Group, Rep, Exponent, Su2Preset };

inline InputKind classify(const nlohmann::json& j) {
  if (j.is_object() && j.contains("matrices")) return InputKind::Rep;
  if (j.is_object() && j.contains("exponents")) return InputKind::Exponent;
  if (j.is_object() && j.contains("kind") && j["kind"] == "su2") return InputKind::Su2Preset;
  if (j.is_object() && j.contains("table")) return InputKind::Group;
  throw Error(ErrorKind::ParseError, "unrecognized input file", {{"line", 0}});
}

/// Exponent table of a rep or exponent file.
inline ExponentTable load_exponent_any(const std::string& path) {
  const nlohmann::json j = io::read_json(path);
  if (classify(j) == InputKind::Rep) return exponent_from_factor(build_phase_table(io::rep_from_json(j)));
  if (classify(j) == InputKind::Exponent) return io::exponent_from_json(j);
  throw Error(ErrorKind::ValidationError, "expected a representation or exponent file", {{"path", path}});
}

inline void require_inputs(const RunArgs& a, std::size_t n, const std::string& cmd) {
  if (a.inputs.size() != n) {
    throw Error(ErrorKind::ValidationError, cmd + " expects " + std::to_string(n) + " input file(s)",
                {{"given", a.inputs.size()}});
  }
}

inline void solution_json(Report& rep, const CoboundarySolution& s) {
  ojson& r = rep.result();
  r["status"] = std::string(to_string(s.status));
  if (s.x) r["x"] = gauge_json(*s.x);
  if (s.certificate) {
    ojson c = ojson::object();
    if (s.certificate->pair) {
      const Phase beta = s.certificate->beta_first - s.certificate->beta_second;
      c["pair"] = {(*s.certificate->pair)[0], (*s.certificate->pair)[1]};
      c["beta_first"] = phase_json(s.certificate->beta_first);
      c["beta_second"] = phase_json(s.certificate->beta_second);
      c["commutator_phase"] = complex_json(s.certificate->beta_first.unit());
      c["commutator_ratio"] = phase_json(beta);
    }
    if (s.certificate->modulus) {
      c["modulus"] = s.certificate->modulus;
      c["functional_value"] = s.certificate->value;
      ojson f = ojson::array();
      for (const auto& [pair, coef] : s.certificate->functional) f.push_back({pair[0], pair[1], coef});
      c["functional"] = f;
    }
    r["certificate"] = c;
  }
}

/// Substitutes a witness back: d1 + Delta[x] == d2 over all pairs.
inline void witness_check(Report& rep, const ExponentTable& d1, const ExponentTable& d2, const CoboundarySolution& s,
                          double eps) {
  if (!s.x) return;
  const ExponentTable got = add_coboundary(d1, *s.x);
  double worst = 0.0;
  ojson w = ojson::object();
  for (ElementId r = 0; r < d1.order(); ++r)
    for (ElementId q = 0; q < d1.order(); ++q) {
      const double dist = got.at(r, q).distance(d2.at(r, q));
      if (dist > worst) {
        worst = dist;
        w = {{"r", r}, {"s", q}};
      }
    }
  rep.check("witness_substitution", worst <= eps, worst, worst > eps ? w : ojson::object());
}

// ---- commands ----

inline void cmd_validate(Report& rep, const RunArgs& a) {
  require_inputs(a, 1, "validate");
  const nlohmann::json j = io::read_json(a.inputs[0]);
  switch (classify(j)) {
    case InputKind::Group: {
      const FiniteGroup g = io::group_from_json(j);
      rep.check("group_axioms", true);
      rep.result() = {{"kind", "group"}, {"order", g.order()}, {"exponent", g.exponent()}};
      break;
    }
    case InputKind::Rep: {
      const RayRepresentation r = io::rep_from_json(j);
      rep.check("unitarity_and_scalar_test", true);
      const PhaseTable t = build_phase_table(r);
      const CocycleReport c = verify_cocycle(t);
      ojson w = ojson::object();
      if (c.witness) w["triple"] = *c.witness;
      rep.check("cocycle", c.passed, c.worst, w);
      rep.result() = {{"kind", "rep"}, {"order", r.order()}, {"dim", r.dim()}, {"exact", t.exact()},
                      {"genuine", is_genuine(t)}, {"warnings", r.warnings()}};
      break;
    }
    case InputKind::Exponent: {
      const ExponentTable d = io::exponent_from_json(j);
      rep.check("exponent_invariants", true);
      rep.result() = {{"kind", "exponent"}, {"order", d.order()}, {"exact", d.exact()}};
      break;
    }
    case InputKind::Su2Preset:
      rep.check("su2_preset", true);
      rep.result() = {{"kind", "su2"}};
      break;
  }
}

inline void cmd_cocycle(Report& rep, const RunArgs& a) {
  require_inputs(a, 1, "cocycle");
  const ExponentTable d = load_exponent_any(a.inputs[0]);
  const ExponentInvariantReport inv = verify_exponent(d);
  ojson w = ojson::object();
  if (inv.cocycle.witness) w["triple"] = *inv.cocycle.witness;
  rep.check("cocycle_law", inv.cocycle.passed, inv.cocycle.worst, w);
  ojson w2 = ojson::object();
  if (inv.witness) w2["pair"] = *inv.witness;
  rep.check("identity_and_inverse_relations", inv.identity_row && inv.inverse_pair, 0.0, w2);
  rep.result() = {{"exact", d.exact()}, {"comparisons_exact", inv.cocycle.exact},
                  {"genuine", is_genuine(d)}, {"exponents", exponent_rows(d)}};
}

inline void cmd_gauge_fix(Report& rep, const RunArgs& a, const WorkbenchConfig& cfg) {
  require_inputs(a, 1, "gauge-fix");
  const RayRepresentation r = io::load_rep(a.inputs[0]);
  const StateVector psi = StateVector::basis(r.dim(), 0);
  auto [gauged, ctx] = wigner_gauge(r, psi, cfg.alpha);
  double worst = 0.0;
  for (ElementId e : ctx.admissible) {
    const Complex g = psi.vec().dot(gauged.matrix(e) * psi.vec());
    worst = std::max(worst, std::abs(g.imag()) + std::max(0.0, -g.real()));
  }
  rep.check("g_real_nonnegative", worst <= cfg.tol("bound"), worst);
  ojson mats = ojson::array();
  for (const CMatrix& m : gauged.matrices()) mats.push_back(ojson::parse(io::matrix_to_json(m).dump()));
  rep.result() = {{"alpha", cfg.alpha}, {"admissible", ctx.admissible}, {"excluded", ctx.excluded},
                  {"g_values", ctx.g_values}, {"matrices", mats}};
}

inline void cmd_trivialize(Report& rep, const RunArgs& a, const WorkbenchConfig& cfg) {
  require_inputs(a, 1, "trivialize");
  const ExponentTable d = load_exponent_any(a.inputs[0]);
  const ExponentTable zero = ExponentTable::zero(d.group());
  CoboundarySolution s;
  if (d.exact()) {
    s = trivialize(d);
    rep.result()["method"] = "exact";
    witness_check(rep, d, zero, s, 0.0);
  } else {
    rep.result()["method"] = "numeric";
    try {
      s = numeric_equivalence(d, zero, cfg.branch_budget);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      rep.add("decision", CheckStatus::Inconclusive, 0.0, error_witness(e));
      return;
    }
    witness_check(rep, d, zero, s, 1e-6);
  }
  rep.check("solver_self_check", true);
  solution_json(rep, s);
}

inline void cmd_equivalent(Report& rep, const RunArgs& a, const WorkbenchConfig& cfg) {
  require_inputs(a, 2, "equivalent");
  const ExponentTable d1 = load_exponent_any(a.inputs[0]);
  const ExponentTable d2 = load_exponent_any(a.inputs[1]);
  CoboundarySolution s;
  if (d1.exact() && d2.exact()) {
    s = are_equivalent(d1, d2);
    rep.result()["method"] = "exact";
    witness_check(rep, d1, d2, s, 0.0);
  } else {
    rep.result()["method"] = "numeric";
    try {
      s = numeric_equivalence(d1, d2, cfg.branch_budget);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      rep.add("decision", CheckStatus::Inconclusive, 0.0, error_witness(e));
      return;
    }
    witness_check(rep, d1, d2, s, 1e-6);
  }
  rep.check("solver_self_check", true);
  solution_json(rep, s);
}

inline void cmd_obstruct(Report& rep, const RunArgs& a, const WorkbenchConfig& cfg) {
  require_inputs(a, 1, "obstruct");
  const ExponentTable d = load_exponent_any(a.inputs[0]);
  const FiniteGroup& g = d.group();
  ojson pairs = ojson::array();
  std::optional<std::array<ElementId, 2>> first;
  for (ElementId x = 0; x < g.order(); ++x)
    for (ElementId y = x + 1; y < g.order(); ++y)
      if (g.commute(x, y)) {
        const Phase b = commutator_exponent(d, x, y);
        if (!b.is_zero(cfg.tol("phase"))) {
          if (!first) first = std::array<ElementId, 2>{x, y};
          pairs.push_back({{"pair", {x, y}}, {"beta", phase_json(b)}, {"value", complex_json(b.unit())}});
        }
      }
  // invariance of every commutator phase under seeded exact gauges
  CounterRng rng(cfg.seed);
  std::size_t changed = 0;
  ojson witness = ojson::object();
  const std::size_t gauges = std::max<std::size_t>(1, cfg.samples);
  const auto den = static_cast<std::int64_t>(2 * g.order() * g.order());
  for (std::size_t i = 0; i < gauges; ++i) {
    const PhaseGauge x = PhaseGauge::random_exact(g.order(), den, rng);
    const ExponentTable dx = add_coboundary(d, x);
    for (ElementId p = 0; p < g.order(); ++p)
      for (ElementId q = p + 1; q < g.order(); ++q)
        if (g.commute(p, q) && !commutator_exponent(dx, p, q).equals(commutator_exponent(d, p, q), cfg.tol("phase"))) {
          if (changed++ == 0) witness = {{"gauge_index", i}, {"pair", {p, q}}};
        }
  }
  rep.check("gauge_invariance", changed == 0, static_cast<double>(changed), witness);
  rep.result() = {{"obstructed", first.has_value()}, {"nontrivial_commutators", pairs}, {"gauges_tested", gauges}};
}

inline void cmd_weyl(Report& rep, const RunArgs& a) {
  require_inputs(a, 1, "weyl");
  const RayRepresentation r = io::load_rep(a.inputs[0]);
  const WeylResult w = weyl_trivialization(r);
  rep.check("residual_in_lattice", w.lattice, w.lattice_deviation);
  rep.result() = {{"dim", r.dim()}, {"clean", w.clean}, {"x", gauge_json(w.x)}, {"branch", w.branch},
                  {"residual", exponent_rows(w.residual)}, {"principal_residual", exponent_rows(w.principal_residual)}};
}

inline void cmd_extension(Report& rep, const RunArgs& a, const WorkbenchConfig& cfg) {
  require_inputs(a, 1, "extension");
  const ExponentTable d = load_exponent_any(a.inputs[0]);
  if (!d.exact()) throw Error(ErrorKind::InexactPhases, "extension checks need an exact exponent table");
  const LocalGroup<Rational> L(d);
  const std::size_t n = L.order();
  CounterRng rng(cfg.seed);
  auto draw = [&] {
    const auto num = static_cast<std::int64_t>(rng.below(41)) - 20;
    const auto den = static_cast<std::int64_t>(rng.below(6)) + 1;
    return ExtensionElement<Rational>{Rational(num, den), static_cast<ElementId>(rng.below(n))};
  };
  std::size_t id_fail = 0, inv_fail = 0, quot_fail = 0, assoc_gap = 0, assoc_bad = 0;
  ojson assoc_witness = ojson::object();
  const std::size_t trials = std::max<std::size_t>(1, cfg.samples);
  for (std::size_t i = 0; i < trials; ++i) {
    const auto x = draw(), y = draw(), z = draw();
    if (!(ext_product(L, x, L.identity()) == x) || !(ext_product(L, L.identity(), x) == x)) ++id_fail;
    const auto xi = ext_inverse(L, x);
    if (!(ext_product(L, x, xi) == L.identity()) || !(ext_product(L, xi, x) == L.identity())) ++inv_fail;
    if (quotient_map(L, ext_product(L, x, y)) != L.group().mul(x.r, y.r)) ++quot_fail;
    const LiftDiscrepancy dis = lift_discrepancy(ext_product(L, ext_product(L, x, y), z),
                                                 ext_product(L, x, ext_product(L, y, z)));
    if (!dis.same_element || !dis.k) {
      ++assoc_bad;
    } else if (*dis.k != 0) {
      if (assoc_gap++ == 0) assoc_witness = {{"a", x.to_string()}, {"b", y.to_string()}, {"c", z.to_string()}, {"k", *dis.k}};
    }
  }
  rep.check("identity", id_fail == 0, static_cast<double>(id_fail));
  rep.check("two_sided_inverse", inv_fail == 0, static_cast<double>(inv_fail));
  rep.check("quotient_homomorphism", quot_fail == 0, static_cast<double>(quot_fail));
  rep.check("associativity_mod_2pi", assoc_bad == 0, static_cast<double>(assoc_bad));
  rep.add("associativity_exact", assoc_gap == 0 ? CheckStatus::Pass : CheckStatus::Inconclusive,
          static_cast<double>(assoc_gap), assoc_witness);
  std::size_t scale_fail = 0;
  for (const Rational z : {Rational(2), Rational(1, 3), Rational(-5)}) {
    const auto sc = scaling_isomorphism(L, z);
    for (std::size_t i = 0; i < trials; ++i) {
      const auto x = draw(), y = draw();
      if (!(sc.map(ext_product(L, x, y)) == ext_product(sc.target, sc.map(x), sc.map(y)))) ++scale_fail;
    }
  }
  rep.check("scaling_homomorphism", scale_fail == 0, static_cast<double>(scale_fail));
  ojson center = ojson::array();
  for (ElementId r = 0; r < n; ++r)
    if (is_central(L, ExtensionElement<Rational>{Rational(0), r})) center.push_back(r);
  rep.result() = {{"trials", trials}, {"associativity_lift_gaps", assoc_gap}, {"central_elements", center},
                  {"example_square", ext_product(L, {Rational(0), n > 1 ? 1u : 0u}, {Rational(0), n > 1 ? 1u : 0u}).to_string()}};
}

inline void cmd_wigner(Report& rep, const RunArgs& a, const WorkbenchConfig& cfg) {
  if (!a.matrix && a.inputs.size() != 1) throw Error(ErrorKind::ValidationError, "wigner needs --matrix FILE");
  const CMatrix v = io::load_matrix(a.matrix ? *a.matrix : a.inputs[0]);
  const SymmetryOperator truth{v, a.antilinear};
  if (v.rows() != v.cols()) throw Error(ErrorKind::ValidationError, "matrix must be square");
  const double defect = unitarity_defect(v);
  if (defect > tol::kUnitary) throw Error(ErrorKind::ValidationError, "matrix is not unitary", {{"kind", "NotUnitary"}, {"defect", defect}});
  const RaySymmetry t = phase_randomized(truth, cfg.seed);
  const std::size_t d = truth.dim();
  const SymmetryReport sr = verify_symmetry(t, std::max<std::size_t>(d * d, 16), cfg.seed + 1, cfg.tol("symmetry"));
  rep.check("preserves_transition_probabilities", true, sr.max_deviation);
  const SymmetryOperator op = reconstruct(t);
  rep.check("classification", op.antilinear == truth.antilinear, 0.0,
            {{"expected", a.antilinear ? "Antilinear" : "Linear"}, {"got", op.antilinear ? "Antilinear" : "Linear"}});
  const double rt = roundtrip_residual(t, op, 100, cfg.seed + 2);
  rep.check("roundtrip", rt <= cfg.tol("roundtrip"), rt);
  const double ud = unitarity_defect(op.matrix);
  rep.check("unitary", ud <= cfg.tol("symmetry"), ud);
  const SymmetryOperator sq = compose(op, op);
  rep.check("square_is_linear_unitary", !sq.antilinear && unitarity_defect(sq.matrix) <= 1e-12,
            unitarity_defect(sq.matrix));
  rep.result() = {{"dim", d}, {"classification", op.antilinear ? "Antilinear" : "Linear"},
                  {"roundtrip_residual", rt}, {"matrix", ojson::parse(io::matrix_to_json(op.matrix).dump())}};
}

template <RaySection S>
void scan_section(Report& rep, const S& sec, const std::vector<typename S::element_type>& elements,
                  const WorkbenchConfig& cfg, bool all_pairs) {
  using E = typename S::element_type;
  const StateVector psi = StateVector::basis(sec.dim(), 0);
  auto [gauged, ctx] = wigner_gauge(sec, std::span<const E>(elements), psi, cfg.alpha);
  std::vector<std::pair<E, E>> pairs;
  const auto& adm = ctx.admissible;
  if (all_pairs) {
    for (const E& r : adm)
      for (const E& s : adm) pairs.emplace_back(r, s);
  } else {
    CounterRng rng(cfg.seed ^ 0x5bd1e995ULL);
    for (std::size_t i = 0; i < cfg.samples; ++i)
      pairs.emplace_back(adm[rng.below(adm.size())], adm[rng.below(adm.size())]);
  }
  const auto recs = continuity_scan(gauged, ctx, std::span<const std::pair<E, E>>(pairs));
  const double slack = cfg.tol("bound");
  auto count = [&](auto pick) {
    std::size_t v = 0;
    double worst = -1e300;
    ojson w = ojson::object();
    for (const auto& rc : recs) {
      const BoundCheck& b = pick(rc);
      worst = std::max(worst, b.lhs - b.rhs);
      if (!b.holds(slack) && v++ == 0) w = {{"r", ojson::parse(rc.r.dump())}, {"s", ojson::parse(rc.s.dump())}, {"lhs", b.lhs}, {"rhs", b.rhs}};
    }
    return std::tuple{v, worst, w};
  };
  for (const auto& [name, pick] : std::vector<std::pair<std::string, BoundCheck ContinuityRecord::*>>{
           {"z_bound", &ContinuityRecord::z_bound}, {"diff_sigma_bound", &ContinuityRecord::diff_sigma_bound},
           {"diff_distance_bound", &ContinuityRecord::diff_distance_bound}, {"modulus_bound", &ContinuityRecord::modulus_bound}}) {
    auto [v, worst, w] = count([&](const ContinuityRecord& rc) -> const BoundCheck& { return rc.*pick; });
    rep.check(name, v == 0, recs.empty() ? 0.0 : worst, w);
  }
  double zid = 0.0, orth = 0.0, sigma_g = 0.0;
  for (const auto& rc : recs) {
    zid = std::max(zid, rc.z_identity);
    orth = std::max(orth, rc.orthogonality);
    if (rc.sigma_g_residual) sigma_g = std::max(sigma_g, *rc.sigma_g_residual);
  }
  rep.check("z_identity", zid <= slack, zid);
  rep.check("z_orthogonality", orth <= 1e-10, orth);
  rep.check("sigma_g_relation", sigma_g <= 1e-9, sigma_g);
  if (sec.dim() >= 2) {
    const ChiReport chi = chi_continuity_check(gauged, ctx, StateVector::basis(sec.dim(), 0),
                                               StateVector::basis(sec.dim(), 1),
                                               std::span<const std::pair<E, E>>(pairs), cfg.pre_constant, slack);
    rep.check("chi_bound", chi.violations == 0, chi.max_ratio, ojson::parse(chi.first_violation.dump()));
    rep.check("chi_identity", chi.identity_residual <= slack, chi.identity_residual);
    rep.result()["chi"] = {{"constant", chi.constant},
                           {"violations_at_2^(2/3)", chi.violations_two_thirds},
                           {"violations_at_2^(3/2)", chi.violations_three_halves},
                           {"max_ratio", chi.max_ratio}};
  }
  rep.result()["admissible"] = adm.size();
  rep.result()["excluded"] = ctx.excluded.size();
  rep.result()["pairs"] = pairs.size();
}

inline void cmd_continuity_scan(Report& rep, const RunArgs& a, const WorkbenchConfig& cfg) {
  std::optional<nlohmann::json> j;
  if (!a.inputs.empty()) {
    require_inputs(a, 1, "continuity-scan");
    j = io::read_json(a.inputs[0]);
  }
  if (j && detail::classify(*j) == InputKind::Rep) {
    const RayRepresentation r = io::rep_from_json(*j);
    std::vector<ElementId> elems(r.order());
    for (ElementId e = 0; e < r.order(); ++e) elems[e] = e;
    rep.result()["section"] = "finite";
    scan_section(rep, FiniteSection(r), elems, cfg, true);
    return;
  }
  Su2Section::Mode mode = Su2Section::Mode::SpinHalfSo3;
  bool twist = true;
  WorkbenchConfig c = cfg;
  if (j) {
    if (detail::classify(*j) != InputKind::Su2Preset) {
      throw Error(ErrorKind::ValidationError, "continuity-scan expects a rep file or an su2 preset");
    }
    const std::string m = j->value("mode", "SpinHalfSo3");
    if (m == "SpinHalf") mode = Su2Section::Mode::SpinHalf;
    else if (m == "SpinHalfSo3") mode = Su2Section::Mode::SpinHalfSo3;
    else if (m == "Vector") mode = Su2Section::Mode::Vector;
    else throw Error(ErrorKind::ValidationError, "unknown su2 mode", {{"mode", m}});
    twist = j->value("twist", true);
  }
  const std::vector<Quaternion> sample =
      sample_near_identity(SampledCompactGroup{}, c.radius, std::max<std::size_t>(2, c.samples), c.seed);
  rep.result()["section"] = "su2";
  rep.result()["radius"] = c.radius;
  scan_section(rep, Su2Section(mode, twist, c.seed), sample, c, false);
}

}  // namespace detail

/// Dispatches one command. Input loading failures propagate as ParseError or
/// ValidationError; failures inside the analysis become fail records.
inline Report run(const std::string& command, const RunArgs& args, const WorkbenchConfig& cfg) {
  if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
    throw Error(ErrorKind::UnknownCommand, "unknown command", {{"command", command}});
  }
  cfg.validate();
  Report rep(command, detail::digest(command, args, cfg));
  try {
    if (command == "validate") detail::cmd_validate(rep, args);
    else if (command == "cocycle") detail::cmd_cocycle(rep, args);
    else if (command == "gauge-fix") detail::cmd_gauge_fix(rep, args, cfg);
    else if (command == "trivialize") detail::cmd_trivialize(rep, args, cfg);
    else if (command == "equivalent") detail::cmd_equivalent(rep, args, cfg);
    else if (command == "obstruct") detail::cmd_obstruct(rep, args, cfg);
    else if (command == "weyl") detail::cmd_weyl(rep, args);
    else if (command == "extension") detail::cmd_extension(rep, args, cfg);
    else if (command == "wigner") detail::cmd_wigner(rep, args, cfg);
    else detail::cmd_continuity_scan(rep, args, cfg);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::ValidationError) throw;
    rep.check(std::string(to_string(e.kind())), false, 0.0, detail::error_witness(e));
  }
  return rep;
}

/// 0 pass, 1 fail, 2 usage, 3 parse/validation.
inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownCommand: return 2;
    case ErrorKind::BadAlpha:
    case ErrorKind::BadRadius:
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError: return 3;
    default: return 1;
  }
}

}  // namespace projrep::cli
