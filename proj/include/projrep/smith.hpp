#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace projrep {

using BigInt = boost::multiprecision::cpp_int;

/// Residue of a in [0, n).
inline std::int64_t mod_floor(const BigInt& a, std::int64_t n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return r.convert_to<std::int64_t>();
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

/// Inverse of a modulo n for gcd(a, n) = 1 (n = 1 gives 0).
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  if (n == 1) return 0;
  std::int64_t t = 0, new_t = 1, r = n, new_r = mod_floor(a, n);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return mod_floor(t, n);
}

/// Diagonalization U B V = S of an integer matrix with unimodular U, V. The
/// diagonal is not normalized to the divisibility chain; solving linear
/// congruences only needs S diagonal.
class SmithForm {
 public:
  using Matrix = std::vector<std::vector<BigInt>>;

  explicit SmithForm(const std::vector<std::vector<std::int64_t>>& b) {
    rows_ = b.size();
    cols_ = rows_ == 0 ? 0 : b[0].size();
    s_.assign(rows_, std::vector<BigInt>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) s_[i][j] = b[i][j];
    u_ = identity(rows_);
    v_ = identity(cols_);
    diagonalize();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rank_; }
  const BigInt& diag(std::size_t i) const { return s_[i][i]; }
  const Matrix& u() const { return u_; }
  const Matrix& v() const { return v_; }

  /// (U c) mod n.
  std::vector<std::int64_t> transform(const std::vector<std::int64_t>& c, std::int64_t n) const {
    std::vector<std::int64_t> w(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      BigInt acc = 0;
      for (std::size_t k = 0; k < rows_; ++k)
        if (c[k] != 0 && u_[i][k] != 0) acc += u_[i][k] * c[k];
      w[i] = mod_floor(acc, n);
    }
    return w;
  }

  /// gcd(d_i, n); rows past the rank have d_i = 0 and give n.
  std::int64_t row_gcd(std::size_t i, std::int64_t n) const {
    if (i >= rank_) return n;
    return std::gcd(mod_floor(s_[i][i], n), n);
  }

  /// A solution y of B y = c (mod n), or nullopt.
  std::optional<std::vector<std::int64_t>> solve(const std::vector<std::int64_t>& c,
                                                 std::int64_t n) const {
    if (first_violated_row(c, n)) return std::nullopt;
    const std::vector<std::int64_t> w = transform(c, n);
    std::vector<std::int64_t> z(cols_, 0);
    for (std::size_t i = 0; i < rank_; ++i) {
      const std::int64_t g = row_gcd(i, n);
      const std::int64_t m = n / g;
      const std::int64_t d = mod_floor(s_[i][i], n) / g;
      const std::int64_t rhs = w[i] / g;
      z[i] = static_cast<std::int64_t>((static_cast<__int128>(rhs) * mod_inverse(d, m)) % m);
    }
    return apply_v(z, n);
  }

  /// Row i of the diagonal system that has no solution, if any.
  std::optional<std::size_t> first_violated_row(const std::vector<std::int64_t>& c,
                                                std::int64_t n) const {
    const std::vector<std::int64_t> w = transform(c, n);
    for (std::size_t i = 0; i < rows_; ++i)
      if (w[i] % row_gcd(i, n) != 0) return i;
    return std::nullopt;
  }

  /// lambda = (n / g_i) row_i(U) mod n. Annihilates every column of B mod n
  /// and pairs nontrivially with any c that violates row i.
  std::vector<std::int64_t> functional(std::size_t i, std::int64_t n) const {
    const std::int64_t scale = n / row_gcd(i, n);
    std::vector<std::int64_t> lam(rows_);
    for (std::size_t k = 0; k < rows_; ++k) lam[k] = mod_floor(u_[i][k] * scale, n);
    return lam;
  }

  /// Generators of {y : B y = 0 mod n}.
  std::vector<std::vector<std::int64_t>> kernel_generators(std::int64_t n) const {
    std::vector<std::vector<std::int64_t>> gens;
    for (std::size_t j = 0; j < cols_; ++j) {
      std::vector<std::int64_t> z(cols_, 0);
      if (j < rank_) {
        const std::int64_t step = n / row_gcd(j, n);
        if (step == n) continue;
        z[j] = step;
      } else {
        z[j] = 1;
      }
      gens.push_back(apply_v(z, n));
    }
    return gens;
  }

 private:
  static Matrix identity(std::size_t n) {
    Matrix m(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
  }

  std::vector<std::int64_t> apply_v(const std::vector<std::int64_t>& z, std::int64_t n) const {
    std::vector<std::int64_t> y(cols_);
    for (std::size_t i = 0; i < cols_; ++i) {
      BigInt acc = 0;
      for (std::size_t k = 0; k < cols_; ++k)
        if (z[k] != 0) acc += v_[i][k] * z[k];
      y[i] = mod_floor(acc, n);
    }
    return y;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    std::swap(s_[a], s_[b]);
    std::swap(u_[a], u_[b]);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (auto& row : s_) std::swap(row[a], row[b]);
    for (auto& row : v_) std::swap(row[a], row[b]);
  }
  // row_a -= q row_b
  void sub_row(std::size_t a, std::size_t b, const BigInt& q) {
    for (std::size_t j = 0; j < cols_; ++j)
      if (s_[b][j] != 0) s_[a][j] -= q * s_[b][j];
    for (std::size_t j = 0; j < rows_; ++j)
      if (u_[b][j] != 0) u_[a][j] -= q * u_[b][j];
  }
  // col_a -= q col_b
  void sub_col(std::size_t a, std::size_t b, const BigInt& q) {
    for (std::size_t i = 0; i < rows_; ++i)
      if (s_[i][b] != 0) s_[i][a] -= q * s_[i][b];
    for (std::size_t i = 0; i < cols_; ++i)
      if (v_[i][b] != 0) v_[i][a] -= q * v_[i][b];
  }

  void diagonalize() {
    const std::size_t lim = std::min(rows_, cols_);
    for (std::size_t t = 0; t < lim; ++t) {
      // smallest nonzero |entry| in the trailing block becomes the pivot
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows_; ++i)
        for (std::size_t j = t; j < cols_; ++j)
          if (s_[i][j] != 0 && (!best || abs(s_[i][j]) < abs(s_[best->first][best->second])))
            best = {i, j};
      if (!best) break;
      swap_rows(t, best->first);
      swap_cols(t, best->second);
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < rows_; ++i) {
          if (s_[i][t] == 0) continue;
          sub_row(i, t, s_[i][t] / s_[t][t]);
          if (s_[i][t] != 0) {
            dirty = true;
            if (abs(s_[i][t]) < abs(s_[t][t])) swap_rows(t, i);
          }
        }
        for (std::size_t j = t + 1; j < cols_; ++j) {
          if (s_[t][j] == 0) continue;
          sub_col(j, t, s_[t][j] / s_[t][t]);
          if (s_[t][j] != 0) {
            dirty = true;
            if (abs(s_[t][j]) < abs(s_[t][t])) swap_cols(t, j);
          }
        }
        if (!dirty) break;
      }
      rank_ = t + 1;
    }
  }

  std::size_t rows_ = 0, cols_ = 0, rank_ = 0;
  Matrix s_, u_, v_;
};

}  // namespace projrep
