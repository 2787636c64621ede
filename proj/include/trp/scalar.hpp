#pragma once

// Exact rational scalars backed by GMP.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trp {

/// Arbitrary-precision rational in canonical form (gcd(num, den) = 1, den > 0).
using Scalar = mpq_class;

/// Base for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace detail

/// Parses `p/q`, an integer, or a plain decimal such as `-2.125`.
inline Scalar parse_scalar(std::string_view text) {
  if (text.empty()) throw Error("empty number");
  std::string_view body = text;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Scalar value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) {
      throw Error("malformed rational '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    value = Scalar(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    auto dot = body.find('.');
    auto int_part = body.substr(0, dot);
    std::string_view frac_part;
    if (dot != std::string_view::npos) frac_part = body.substr(dot + 1);
    bool int_ok = int_part.empty() ? !frac_part.empty() : detail::all_digits(int_part);
    bool frac_ok = frac_part.empty() || detail::all_digits(frac_part);
    if (!int_ok || !frac_ok || (dot != std::string_view::npos && frac_part.empty())) {
      throw Error("malformed number '" + std::string(text) + "'");
    }
    std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    value = Scalar(mpz_class(digits, 10), den);
    value.canonicalize();
  }
  return negative ? Scalar(-value) : value;
}

/// Canonical text: `p` for integers, `p/q` otherwise. Inverse of parse_scalar.
inline std::string to_string(const Scalar& x) { return x.get_str(); }

/// Fixed-point rendering, rounded half away from zero.
inline std::string to_decimal(const Scalar& x, int places = 6) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  Scalar scaled = abs(x) * scale;
  mpz_class q = scaled.get_num() / scaled.get_den();
  mpz_class r = scaled.get_num() % scaled.get_den();
  if (2 * r >= scaled.get_den()) ++q;
  std::string digits = q.get_str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
  }
  std::string out = (sgn(x) < 0 && q != 0) ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) out += "." + digits.substr(digits.size() - static_cast<std::size_t>(places));
  return out;
}

/// num/den in canonical form.
inline Scalar make_scalar(long num, long den = 1) {
  if (den == 0) throw Error("zero denominator");
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

inline Scalar abs_diff(const Scalar& a, const Scalar& b) { return abs(Scalar(a - b)); }

inline const Scalar& max_of(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

}  // namespace trp
