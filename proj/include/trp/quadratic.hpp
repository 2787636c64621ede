#pragma once

// Exact arithmetic in the field Q(sqrt 3).

#include <trp/scalar.hpp>

#include <cmath>
#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace trp {

/// p + q*sqrt(3) with rational p, q. Closed under + - * /, totally ordered.
class QuadraticScalar {
 public:
  QuadraticScalar() = default;
  QuadraticScalar(Scalar p) : p_(std::move(p)) {}  // NOLINT: implicit embedding of Q
  QuadraticScalar(Scalar p, Scalar q) : p_(std::move(p)), q_(std::move(q)) {}
  QuadraticScalar(long v) : p_(v) {}  // NOLINT

  static QuadraticScalar sqrt3() { return {Scalar(0), Scalar(1)}; }

  const Scalar& rational_part() const { return p_; }
  const Scalar& sqrt3_part() const { return q_; }
  bool is_rational() const { return sgn(q_) == 0; }

  /// Sign of p + q*sqrt3; p^2 = 3q^2 only at zero because sqrt3 is irrational.
  int sign() const {
    int sp = sgn(p_);
    int sq = sgn(q_);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    int cmp_sq = cmp(Scalar(p_ * p_), Scalar(3 * q_ * q_));
    return cmp_sq > 0 ? sp : sq;
  }

  QuadraticScalar conjugate() const { return {p_, -q_}; }

  /// p^2 - 3q^2, the field norm.
  Scalar norm() const { return p_ * p_ - 3 * q_ * q_; }

  QuadraticScalar& operator+=(const QuadraticScalar& o) {
    p_ += o.p_;
    q_ += o.q_;
    return *this;
  }
  QuadraticScalar& operator-=(const QuadraticScalar& o) {
    p_ -= o.p_;
    q_ -= o.q_;
    return *this;
  }
  QuadraticScalar& operator*=(const QuadraticScalar& o) {
    if (o.is_rational()) {
      p_ *= o.p_;
      q_ *= o.p_;
      return *this;
    }
    Scalar p = p_ * o.p_ + 3 * q_ * o.q_;
    Scalar q = p_ * o.q_ + q_ * o.p_;
    p_ = std::move(p);
    q_ = std::move(q);
    return *this;
  }
  QuadraticScalar& operator/=(const QuadraticScalar& o) {
    if (o.is_rational()) {
      if (sgn(o.p_) == 0) throw Error("division by zero");
      p_ /= o.p_;
      q_ /= o.p_;
      return *this;
    }
    Scalar n = o.norm();
    *this *= o.conjugate();
    p_ /= n;
    q_ /= n;
    return *this;
  }

  friend QuadraticScalar operator+(QuadraticScalar a, const QuadraticScalar& b) { return a += b; }
  friend QuadraticScalar operator-(QuadraticScalar a, const QuadraticScalar& b) { return a -= b; }
  friend QuadraticScalar operator*(QuadraticScalar a, const QuadraticScalar& b) { return a *= b; }
  friend QuadraticScalar operator/(QuadraticScalar a, const QuadraticScalar& b) { return a /= b; }
  friend QuadraticScalar operator-(const QuadraticScalar& a) { return {Scalar(-a.p_), Scalar(-a.q_)}; }

  friend bool operator==(const QuadraticScalar& a, const QuadraticScalar& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const QuadraticScalar& a, const QuadraticScalar& b) {
    if (a == b) return std::strong_ordering::equal;
    return (a - b).sign() < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  double to_double() const { return p_.get_d() + q_.get_d() * std::sqrt(3.0); }

  /// `p`, `q*sqrt3` or `p+q*sqrt3` with canonical rationals; parse_quadratic reads it back.
  std::string str() const {
    if (is_rational()) return to_string(p_);
    std::string q_text;
    if (q_ == 1) {
      q_text = "sqrt3";
    } else if (q_ == -1) {
      q_text = "-sqrt3";
    } else {
      q_text = to_string(q_) + "*sqrt3";
    }
    if (sgn(p_) == 0) return q_text;
    if (q_text.front() != '-') q_text.insert(0, "+");
    return to_string(p_) + q_text;
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadraticScalar& x) { return os << x.str(); }

 private:
  Scalar p_;
  Scalar q_;
};

inline QuadraticScalar abs(const QuadraticScalar& x) { return x.sign() < 0 ? -x : x; }

inline const QuadraticScalar& max_of(const QuadraticScalar& a, const QuadraticScalar& b) {
  return a < b ? b : a;
}
inline const QuadraticScalar& min_of(const QuadraticScalar& a, const QuadraticScalar& b) {
  return b < a ? b : a;
}

/// Fixed-point rendering of an element of Q(sqrt 3), exact to the last printed digit
/// up to rounding direction.
inline std::string to_decimal(const QuadraticScalar& x, int places = 6) {
  if (x.is_rational()) return to_decimal(x.rational_part(), places);
  // sqrt3 to 40 digits is far beyond any rendered precision.
  static const Scalar sqrt3_approx = parse_scalar("1.7320508075688772935274463415058723669428");
  return to_decimal(Scalar(x.rational_part() + x.sqrt3_part() * sqrt3_approx), places);
}

namespace detail {

inline QuadraticScalar parse_quadratic_term(std::string_view term, std::string_view whole) {
  auto pos = term.find("sqrt3");
  if (pos == std::string_view::npos) return parse_scalar(term);
  Scalar coef(1);
  auto before = term.substr(0, pos);
  auto after = term.substr(pos + 5);
  if (!before.empty()) {
    if (before == "-") {
      coef = -1;
    } else if (before == "+") {
      coef = 1;
    } else {
      if (before.back() != '*') throw Error("malformed quadratic '" + std::string(whole) + "'");
      before.remove_suffix(1);
      coef = parse_scalar(before);
    }
  }
  if (!after.empty()) {
    if (after.front() != '/') throw Error("malformed quadratic '" + std::string(whole) + "'");
    coef /= parse_scalar(after.substr(1));
  }
  return {Scalar(0), coef};
}

}  // namespace detail

/// Parses sums of rational and sqrt3 terms, e.g. `sqrt3/2`, `2+sqrt3`, `1/2-3/4*sqrt3`.
inline QuadraticScalar parse_quadratic(std::string_view text) {
  if (text.empty()) throw Error("empty number");
  QuadraticScalar total;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '+' || text[i] == '-') {
      auto term = text.substr(start, i - start);
      if (term.empty() || term == "+" || term == "-") {
        throw Error("malformed quadratic '" + std::string(text) + "'");
      }
      if (term.front() == '+') term.remove_prefix(1);
      total += detail::parse_quadratic_term(term, text);
      start = i;
    }
  }
  return total;
}

}  // namespace trp
