#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

#include <boost/rational.hpp>

namespace projrep {

using Rational = boost::rational<std::int64_t>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Representative of t modulo 1 in [0, 1).
inline Rational reduce_turns(Rational t) {
  const std::int64_t n = t.numerator();
  const std::int64_t d = t.denominator();
  std::int64_t r = n % d;
  if (r < 0) r += d;
  return Rational(r, d);
}

/// Angle in (-pi, pi].
inline double principal_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

/// Angle in [0, 2pi).
inline double lifted_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

inline double to_double(Rational r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Best rational approximation of `turns` (continued-fraction convergents)
/// with denominator <= max_den whose angle lies within `tol` radians of
/// 2*pi*turns. Result is reduced into [0, 1).
inline std::optional<Rational> snap_turns(double turns, std::int64_t max_den, double tol) {
  turns -= std::floor(turns);
  // convergents h/k of turns, seeded with h_{-1}/k_{-1} = 1/0, h_{-2}/k_{-2} = 0/1
  std::int64_t h = 1, h_prev = 0;
  std::int64_t k = 0, k_prev = 1;
  double x = turns;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(x);
    if (a_d > 1e15) break;
    const auto a = static_cast<std::int64_t>(a_d);
    const std::int64_t h_next = a * h + h_prev;
    const std::int64_t k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h; h = h_next;
    k_prev = k; k = k_next;
    const double approx = static_cast<double>(h) / static_cast<double>(k);
    if (std::abs(principal_angle(kTwoPi * (approx - turns))) <= tol) {
      return reduce_turns(Rational(h, k));
    }
    const double frac = x - a_d;
    if (frac < 1e-300) break;
    x = 1.0 / frac;
  }
  return std::nullopt;
}

/// A unimodular phase e^{i theta}. Exact variant: theta = 2*pi*p/q kept in
/// lowest terms with 0 <= p < q. Float variant: theta in (-pi, pi].
class Phase {
 public:
  Phase() : value_(Rational(0)) {}

  static Phase from_turns(Rational t) { return Phase(reduce_turns(t)); }
  static Phase from_turns(std::int64_t num, std::int64_t den) {
    return from_turns(Rational(num, den));
  }
  static Phase from_radians(double a) { return Phase(principal_angle(a)); }
  static Phase zero() { return Phase(); }

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }

  /// Exact turns in [0, 1). Precondition: is_exact().
  Rational turns() const { return std::get<Rational>(value_); }

  /// Angle in (-pi, pi].
  double principal() const {
    if (is_exact()) return principal_angle(kTwoPi * to_double(turns()));
    return std::get<double>(value_);
  }

  /// Angle in [0, 2pi).
  double lifted() const {
    if (is_exact()) return kTwoPi * to_double(turns());
    return lifted_angle(std::get<double>(value_));
  }

  std::complex<double> unit() const {
    if (is_exact()) {
      const Rational t = turns();
      // exact quarter turns avoid rounding noise in materialized factors
      if (t == Rational(0)) return {1.0, 0.0};
      if (t == Rational(1, 4)) return {0.0, 1.0};
      if (t == Rational(1, 2)) return {-1.0, 0.0};
      if (t == Rational(3, 4)) return {0.0, -1.0};
    }
    return std::polar(1.0, principal());
  }

  bool is_zero(double tol = 1e-9) const {
    if (is_exact()) return turns() == Rational(0);
    return std::abs(principal()) <= tol;
  }

  /// Exact comparison when both are exact, otherwise angular distance <= tol.
  bool equals(const Phase& o, double tol = 1e-9) const {
    if (is_exact() && o.is_exact()) return turns() == o.turns();
    return std::abs(principal_angle(principal() - o.principal())) <= tol;
  }

  /// Angular distance in [0, pi].
  double distance(const Phase& o) const {
    if (is_exact() && o.is_exact()) {
      return std::abs((Phase::from_turns(turns() - o.turns())).principal());
    }
    return std::abs(principal_angle(principal() - o.principal()));
  }

  Phase operator-() const {
    if (is_exact()) return from_turns(-turns());
    return from_radians(-principal());
  }

  friend Phase operator+(const Phase& a, const Phase& b) {
    if (a.is_exact() && b.is_exact()) return from_turns(a.turns() + b.turns());
    return from_radians(a.principal() + b.principal());
  }
  friend Phase operator-(const Phase& a, const Phase& b) { return a + (-b); }

  /// k * theta using the [0, 2pi) representative (exact stays exact).
  Phase scaled(Rational k) const {
    if (is_exact()) return from_turns(turns() * k);
    return from_radians(lifted() * to_double(k));
  }

  /// Exact phases print as "p/q" turns; floats as radians.
  std::string to_string() const {
    if (is_exact()) {
      return std::to_string(turns().numerator()) + "/" + std::to_string(turns().denominator());
    }
    return std::to_string(principal());
  }

 private:
  explicit Phase(Rational t) : value_(t) {}
  explicit Phase(double a) : value_(a) {}

  std::variant<Rational, double> value_;
};

/// Exact phase when arg(z) is within tol of 2*pi*p/q, q <= max_den.
inline Phase snap_phase(std::complex<double> z, std::int64_t max_den, double tol = 1e-9) {
  const double a = std::arg(z);
  if (auto t = snap_turns(a / kTwoPi, max_den, tol)) return Phase::from_turns(*t);
  return Phase::from_radians(a);
}

}  // namespace projrep
