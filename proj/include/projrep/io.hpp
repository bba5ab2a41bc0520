#pragma once

#include <cstdint>
#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "projrep/cohomology.hpp"
#include "projrep/error.hpp"
#include "projrep/group.hpp"
#include "projrep/linalg.hpp"
#include "projrep/ray_rep.hpp"

// File formats:
//   group    {"order": n, "table": [[...], ...]}
//   rep      {"group": <group>, "dim": d, "matrices": [M_0, ..., M_{n-1}]}
//            with M = [[[re, im], ...], ...] row-major
//   exponent {"group": <group>, "exponents": [[e, ...], ...]}
//            with e = {"num": p, "den": q} (2 pi p/q) or a number (radians)
//   matrix   {"matrix": M}
namespace projrep::io {

using nlohmann::json;

namespace detail {

[[noreturn]] inline void schema_error(const std::string& path, const std::string& reason) {
  throw Error(ErrorKind::ParseError, path + ": " + reason, {{"line", 0}, {"path", path}, {"reason", reason}});
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) schema_error(path, "missing field '" + key + "'");
  return j.at(key);
}

inline std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline double as_real(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

/// Re-throws a domain failure during load as ValidationError carrying the
/// original kind and witness.
template <class F>
auto validated(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::ValidationError) throw;
    json w = e.witness();
    w["kind"] = std::string(to_string(e.kind()));
    throw Error(ErrorKind::ValidationError, e.what(), std::move(w));
  }
}

}  // namespace detail

/// Parses JSON text; syntax errors become ParseError with a 1-based line.
inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const std::int64_t line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + e.what(),
                {{"line", line}, {"reason", e.what()}});
  }
}

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path, {{"line", 0}, {"path", path}});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

inline void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ValidationError, "cannot write " + path, {{"path", path}});
  out << j.dump(2) << "\n";
}

// ---- group ----

inline json group_to_json(const FiniteGroup& g) { return {{"order", g.order()}, {"table", g.table()}}; }

inline FiniteGroup group_from_json(const json& j, const std::string& path = "group") {
  const std::int64_t order = detail::as_int(detail::field(j, "order", path), path + ".order");
  const json& t = detail::field(j, "table", path);
  if (!t.is_array()) detail::schema_error(path + ".table", "expected an array of rows");
  FiniteGroup::Table table;
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (!t[r].is_array()) detail::schema_error(path + ".table[" + std::to_string(r) + "]", "expected an array");
    std::vector<std::int64_t> row;
    for (std::size_t s = 0; s < t[r].size(); ++s)
      row.push_back(detail::as_int(t[r][s], path + ".table[" + std::to_string(r) + "][" + std::to_string(s) + "]"));
    table.push_back(std::move(row));
  }
  if (order < 0 || static_cast<std::size_t>(order) != table.size()) {
    throw Error(ErrorKind::ValidationError, "order does not match table size",
                {{"order", order}, {"rows", table.size()}});
  }
  return detail::validated([&] { return FiniteGroup::validate(table); });
}

// ---- matrices ----

inline json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) detail::schema_error(path, "expected a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) detail::schema_error(rp, "ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      const std::string ep = rp + "[" + std::to_string(c) + "]";
      if (!e.is_array() || e.size() != 2) detail::schema_error(ep, "expected [re, im]");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(detail::as_real(e[0], ep), detail::as_real(e[1], ep));
    }
  }
  return m;
}

// ---- representation ----

inline json rep_to_json(const RayRepresentation& rep) {
  json mats = json::array();
  for (const CMatrix& m : rep.matrices()) mats.push_back(matrix_to_json(m));
  return {{"group", group_to_json(rep.group())}, {"dim", rep.dim()}, {"matrices", mats}};
}

/// Validates the group, unitarity of every matrix and the order^2 scalar test.
/// Matrices are listed by the file's element labels.
inline RayRepresentation rep_from_json(const json& j) {
  const FiniteGroup g = group_from_json(detail::field(j, "group", "rep"), "rep.group");
  const std::int64_t dim = detail::as_int(detail::field(j, "dim", "rep"), "rep.dim");
  const json& ms = detail::field(j, "matrices", "rep");
  if (!ms.is_array()) detail::schema_error("rep.matrices", "expected an array");
  std::vector<CMatrix> raw;
  for (std::size_t r = 0; r < ms.size(); ++r) raw.push_back(matrix_from_json(ms[r], "rep.matrices[" + std::to_string(r) + "]"));
  if (raw.size() != g.order()) {
    throw Error(ErrorKind::ValidationError, "one matrix per group element required",
                {{"order", g.order()}, {"matrices", raw.size()}});
  }
  std::vector<CMatrix> mats(raw.size());
  for (std::size_t r = 0; r < raw.size(); ++r) {
    if (raw[r].rows() != dim || raw[r].cols() != dim) {
      throw Error(ErrorKind::ValidationError, "matrix does not have the declared dimension",
                  {{"element", r}, {"kind", "DimMismatch"}, {"dim", dim}});
    }
    mats[g.relabel()[r]] = raw[r];
  }
  return detail::validated([&] { return RayRepresentation::checked(g, std::move(mats)); });
}

// ---- exponent ----

inline json phase_to_json(const Phase& p) {
  if (p.is_exact()) return {{"num", p.turns().numerator()}, {"den", p.turns().denominator()}};
  return p.principal();
}

inline Phase phase_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return Phase::from_radians(j.get<double>());
  const std::int64_t num = detail::as_int(detail::field(j, "num", path), path + ".num");
  const std::int64_t den = detail::as_int(detail::field(j, "den", path), path + ".den");
  if (den <= 0) detail::schema_error(path + ".den", "denominator must be positive");
  return Phase::from_turns(num, den);
}

inline json exponent_to_json(const ExponentTable& d) {
  json rows = json::array();
  for (ElementId r = 0; r < d.order(); ++r) {
    json row = json::array();
    for (ElementId s = 0; s < d.order(); ++s) row.push_back(phase_to_json(d.at(r, s)));
    rows.push_back(std::move(row));
  }
  return {{"group", group_to_json(d.group())}, {"exponents", rows}};
}

/// Entries are indexed by the file's element labels. The table must satisfy
/// the exponent invariants.
inline ExponentTable exponent_from_json(const json& j) {
  const FiniteGroup g = group_from_json(detail::field(j, "group", "exponent"), "exponent.group");
  const json& e = detail::field(j, "exponents", "exponent");
  if (!e.is_array() || e.size() != g.order()) detail::schema_error("exponent.exponents", "expected order rows");
  ExponentTable d(g);
  for (std::size_t r = 0; r < g.order(); ++r) {
    if (!e[r].is_array() || e[r].size() != g.order()) {
      detail::schema_error("exponent.exponents[" + std::to_string(r) + "]", "expected order entries");
    }
    for (std::size_t s = 0; s < g.order(); ++s)
      d.at(g.relabel()[r], g.relabel()[s]) =
          phase_from_json(e[r][s], "exponent.exponents[" + std::to_string(r) + "][" + std::to_string(s) + "]");
  }
  const ExponentInvariantReport inv = verify_exponent(d);
  if (!inv.ok()) {
    json w = {{"identity_row", inv.identity_row}, {"inverse_pair", inv.inverse_pair},
              {"cocycle_failures", inv.cocycle.failures}};
    if (inv.cocycle.witness) w["triple"] = *inv.cocycle.witness;
    if (inv.witness) w["pair"] = *inv.witness;
    throw Error(ErrorKind::ValidationError, "exponent table violates its invariants", w);
  }
  return d;
}

inline FiniteGroup load_group(const std::string& path) { return group_from_json(read_json(path)); }
inline RayRepresentation load_rep(const std::string& path) { return rep_from_json(read_json(path)); }
inline ExponentTable load_exponent(const std::string& path) { return exponent_from_json(read_json(path)); }

inline CMatrix load_matrix(const std::string& path) {
  const json j = read_json(path);
  return matrix_from_json(detail::field(j, "matrix", "file"), "matrix");
}

}  // namespace projrep::io
