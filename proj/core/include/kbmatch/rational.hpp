#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "kbmatch/errors.hpp"

namespace kbmatch {

// Exact rational arithmetic for similarity scores and thresholds. Similarity
// values are ratios of small set cardinalities; thresholds are short decimals.
// Comparisons must not go through floating point (0.8 as a double is not 4/5).
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  static Rational zero() { return Rational(); }
  static Rational one() {
    Rational r;
    r.num = 1;
    return r;
  }

  void normalize() {
    if (den == 0) throw ConfigError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 lhs = static_cast<__int128>(a.num) * b.den;
    __int128 rhs = static_cast<__int128>(b.num) * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Parses "3", "-0.25", "8e-1", or "4/5" into an exact rational.
  static Rational fromString(std::string_view text) {
    auto fail = [&]() -> Rational {
      throw ConfigError("bad rational value '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      std::int64_t n = 0, d = 0;
      auto sv1 = text.substr(0, slash);
      auto sv2 = text.substr(slash + 1);
      auto r1 = std::from_chars(sv1.data(), sv1.data() + sv1.size(), n);
      auto r2 = std::from_chars(sv2.data(), sv2.data() + sv2.size(), d);
      if (r1.ec != std::errc{} || r1.ptr != sv1.data() + sv1.size()) return fail();
      if (r2.ec != std::errc{} || r2.ptr != sv2.data() + sv2.size()) return fail();
      return Rational(n, d);
    }

    bool neg = false;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') {
      neg = text[i] == '-';
      ++i;
    }
    std::int64_t mantissa = 0;
    int frac_digits = 0;
    int exponent = 0;
    bool any_digit = false;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
      mantissa = mantissa * 10 + (text[i] - '0');
      any_digit = true;
    }
    if (i < text.size() && text[i] == '.') {
      ++i;
      for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
        mantissa = mantissa * 10 + (text[i] - '0');
        ++frac_digits;
        any_digit = true;
      }
    }
    if (!any_digit) return fail();
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
      ++i;
      auto sv = text.substr(i);
      auto r = std::from_chars(sv.data(), sv.data() + sv.size(), exponent);
      if (r.ec != std::errc{} || r.ptr != sv.data() + sv.size()) return fail();
      i = text.size();
    }
    if (i != text.size()) return fail();

    std::int64_t n = neg ? -mantissa : mantissa;
    std::int64_t d = 1;
    int shift = exponent - frac_digits;
    for (; shift > 0; --shift) n *= 10;
    for (; shift < 0; ++shift) d *= 10;
    return Rational(n, d);
  }

  // Recovers the decimal a human wrote from its double image via the shortest
  // round-trip representation, then parses that exactly. fromDouble(0.8) == 4/5.
  static Rational fromDouble(double value) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw ConfigError("unrepresentable threshold value");
    return fromString(std::string_view(buf, static_cast<std::size_t>(p - buf)));
  }
};

}  // namespace kbmatch
