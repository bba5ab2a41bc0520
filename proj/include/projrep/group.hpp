#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "projrep/error.hpp"

namespace projrep {

using ElementId = std::size_t;

/// A finite group as a validated multiplication table. Elements are dense ids
/// 0..order-1 and the identity is always id 0.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<std::int64_t>>;

  /// Validates `raw` exhaustively (identity, inverses, associativity) and
  /// relabels so the identity becomes id 0.
  static FiniteGroup validate(const Table& raw);

  std::size_t order() const { return order_; }
  ElementId identity() const { return 0; }
  ElementId mul(ElementId r, ElementId s) const { return table_[r * order_ + s]; }
  ElementId inv(ElementId r) const { return inv_[r]; }

  bool commute(ElementId a, ElementId b) const { return mul(a, b) == mul(b, a); }

  /// Smallest k >= 1 with r^k = e.
  std::size_t element_order(ElementId r) const {
    std::size_t k = 1;
    for (ElementId p = r; p != identity(); p = mul(p, r)) ++k;
    return k;
  }

  /// lcm of element orders.
  std::size_t exponent() const {
    std::size_t e = 1;
    for (ElementId r = 0; r < order_; ++r) e = std::lcm(e, element_order(r));
    return e;
  }

  /// relabel()[original id] = id in this group. Identity when no relabel happened.
  const std::vector<ElementId>& relabel() const { return relabel_; }

  Table table() const {
    Table t(order_, std::vector<std::int64_t>(order_));
    for (ElementId r = 0; r < order_; ++r)
      for (ElementId s = 0; s < order_; ++s) t[r][s] = static_cast<std::int64_t>(mul(r, s));
    return t;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }

 private:
  std::size_t order_ = 0;
  std::vector<ElementId> table_;
  std::vector<ElementId> inv_;
  std::vector<ElementId> relabel_;
};

inline FiniteGroup FiniteGroup::validate(const Table& raw) {
  const std::size_t n = raw.size();
  if (n == 0) throw Error(ErrorKind::BadTable, "empty multiplication table");
  for (std::size_t r = 0; r < n; ++r) {
    if (raw[r].size() != n) {
      throw Error(ErrorKind::BadTable, "table is not square", {{"row", r}, {"length", raw[r].size()}});
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (raw[r][s] < 0 || static_cast<std::size_t>(raw[r][s]) >= n) {
        throw Error(ErrorKind::BadTable, "entry out of range",
                    {{"r", r}, {"s", s}, {"value", raw[r][s]}});
      }
    }
  }
  auto at = [&](std::size_t r, std::size_t s) { return static_cast<std::size_t>(raw[r][s]); };

  std::size_t e = n;
  for (std::size_t c = 0; c < n && e == n; ++c) {
    bool ok = true;
    for (std::size_t r = 0; r < n && ok; ++r) ok = at(c, r) == r && at(r, c) == r;
    if (ok) e = c;
  }
  if (e == n) throw Error(ErrorKind::NoIdentity, "no two-sided identity");

  std::vector<std::size_t> inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      if (at(r, s) == e && at(s, r) == e) {
        inv[r] = s;
        break;
      }
    }
    if (inv[r] == n) throw Error(ErrorKind::MissingInverse, "element has no inverse", {{"element", r}});
  }

  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t m = 0; m < n; ++m)
        if (at(at(r, s), m) != at(r, at(s, m))) {
          throw Error(ErrorKind::NonAssociative, "associativity fails",
                      {{"r", r}, {"s", s}, {"m", m}});
        }

  // swap labels e <-> 0
  std::vector<ElementId> lab(n);
  std::iota(lab.begin(), lab.end(), ElementId{0});
  std::swap(lab[0], lab[e]);

  FiniteGroup g;
  g.order_ = n;
  g.table_.assign(n * n, 0);
  g.inv_.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) g.table_[lab[r] * n + lab[s]] = lab[at(r, s)];
    g.inv_[lab[r]] = lab[inv[r]];
  }
  g.relabel_ = std::move(lab);
  return g;
}

inline FiniteGroup validate_group(const FiniteGroup::Table& raw) { return FiniteGroup::validate(raw); }

/// Z_n with table[a][b] = (a + b) mod n.
inline FiniteGroup make_cyclic(std::size_t n) {
  FiniteGroup::Table t(n, std::vector<std::int64_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<std::int64_t>((a + b) % n);
  return FiniteGroup::validate(t);
}

/// G x H with (g, h) stored at id g * |H| + h.
inline FiniteGroup make_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order() * h.order();
  FiniteGroup::Table t(n, std::vector<std::int64_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ga = a / h.order(), ha = a % h.order();
      const std::size_t gb = b / h.order(), hb = b % h.order();
      t[a][b] = static_cast<std::int64_t>(g.mul(ga, gb) * h.order() + h.mul(ha, hb));
    }
  }
  return FiniteGroup::validate(t);
}

/// Permutations of {0..k-1} in lexicographic order, as images p[i].
inline std::vector<std::vector<std::size_t>> permutations(std::size_t k) {
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Symmetric group S_k (k <= 4 in practice). Element ids follow the
/// lexicographic order of permutations(k); product is composition
/// (p q)(i) = p[q[i]].
inline FiniteGroup make_symmetric(std::size_t k) {
  const auto perms = permutations(k);
  const std::size_t n = perms.size();
  FiniteGroup::Table t(n, std::vector<std::int64_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::size_t> c(k);
      for (std::size_t i = 0; i < k; ++i) c[i] = perms[a][perms[b][i]];
      const auto it = std::find(perms.begin(), perms.end(), c);
      t[a][b] = static_cast<std::int64_t>(it - perms.begin());
    }
  }
  return FiniteGroup::validate(t);
}

/// Quaternion group Q8. Ids: 0:+1 1:-1 2:+i 3:-i 4:+j 5:-j 6:+k 7:-k.
inline FiniteGroup make_quaternion() {
  // unit index u in {1,i,j,k} = 0..3 and sign; Hamilton products of units
  static constexpr int kUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int kSign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  FiniteGroup::Table t(8, std::vector<std::int64_t>(8));
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, ub = b / 2;
      const int sa = (a % 2) ? -1 : 1, sb = (b % 2) ? -1 : 1;
      const int s = sa * sb * kSign[ua][ub];
      t[a][b] = 2 * kUnit[ua][ub] + (s < 0 ? 1 : 0);
    }
  }
  return FiniteGroup::validate(t);
}

}  // namespace projrep
