#pragma once

// Exact arithmetic helpers over GMP rationals and integers.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace entrate {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "3/4", "0.36", "7", "1.5e-2" into an exact rational.
/// Throws std::invalid_argument on anything else.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = trim(text.substr(0, slash));
    std::string_view den = trim(text.substr(slash + 1));
    auto is_int = [](std::string_view s) {
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    if (!is_int(num) || !is_int(den)) return fail();
    std::string n(num), d(den);
    if (n.front() == '+') n.erase(0, 1);
    if (d.front() == '+') d.erase(0, 1);
    BigInt dz(d, 10);
    if (dz == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(BigInt(n, 10), dz);
    r.canonicalize();
    return r;
  }

  // decimal literal: [sign] digits [. digits] [(e|E) [sign] digits]
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool any_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits += text[pos++];
    any_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos++];
      --scale;
      any_digit = true;
    }
  }
  if (!any_digit) return fail();
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) exp_negative = text[pos++] == '-';
    std::string exp_digits;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) exp_digits += text[pos++];
    if (exp_digits.empty() || exp_digits.size() > 6) return fail();
    long e = std::stol(exp_digits);
    scale += exp_negative ? -e : e;
  }
  if (pos != text.size()) return fail();

  BigInt mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  BigInt ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale < 0 ? Rational(mantissa, ten_pow) : Rational(mantissa * ten_pow);
  r.canonicalize();
  return r;
}

/// Canonical text form: "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline Rational pow(const Rational& base, unsigned long exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  r.canonicalize();
  return r;
}

inline BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

/// log2 of a positive big integer, accurate far beyond the double range.
inline double log2(const BigInt& z) {
  if (sgn(z) <= 0) throw std::domain_error("log2 of non-positive integer");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

inline double log2(const Rational& q) { return log2(BigInt(q.get_num())) - log2(BigInt(q.get_den())); }

/// Narrowing conversion for counts; throws if the value does not fit.
inline std::uint64_t to_u64(const BigInt& z) {
  if (sgn(z) < 0) throw std::range_error("negative value where a count was expected");
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 64) throw std::range_error("count exceeds 64 bits: " + z.get_str());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
  return out;
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

}  // namespace entrate
