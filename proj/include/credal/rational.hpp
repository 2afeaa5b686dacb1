#pragma once

// Exact rational numbers.
//
// Values whose reduced numerator and denominator fit in 63 bits are kept
// inline and handled with 128-bit intermediates; anything larger spills to a
// shared, immutable GMP rational. The representation is canonical: a value is
// stored inline if and only if it fits, so equality never needs GMP for small
// values.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "credal/errors.hpp"

namespace credal {

class Rational {
  using i128 = __int128;
  using u128 = unsigned __int128;
  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

 public:
  Rational() noexcept = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor): integers are rationals
    *this = from_reduced(static_cast<i128>(value), 1);
  }

  Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw std::domain_error("rational with zero denominator");
    i128 n = numerator, d = denominator;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    *this = reduce(n, d);
  }

  /// Parses an integer ("-3"), a fraction ("6/25") or a finite decimal
  /// ("0.24", exactly 6/25). Returns nullopt on malformed text.
  static std::optional<Rational> parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '+' || text[0] == '-') {
      negative = text[0] == '-';
      pos = 1;
    }
    auto digits_from = [&](std::size_t start) {
      std::size_t end = start;
      while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
      return end;
    };
    const std::size_t int_end = digits_from(pos);
    if (int_end == pos) return std::nullopt;
    mpz_class numerator(std::string(text.substr(pos, int_end - pos)), 10);
    mpz_class denominator = 1;
    if (int_end < text.size()) {
      if (text[int_end] == '/') {
        const std::size_t den_end = digits_from(int_end + 1);
        if (den_end == int_end + 1 || den_end != text.size()) return std::nullopt;
        denominator = mpz_class(std::string(text.substr(int_end + 1, den_end - int_end - 1)), 10);
        if (denominator == 0) return std::nullopt;
      } else if (text[int_end] == '.') {
        const std::size_t frac_end = digits_from(int_end + 1);
        if (frac_end == int_end + 1 || frac_end != text.size()) return std::nullopt;
        const std::string frac(text.substr(int_end + 1, frac_end - int_end - 1));
        mpz_ui_pow_ui(denominator.get_mpz_t(), 10, frac.size());
        numerator = numerator * denominator + mpz_class(frac, 10);
      } else {
        return std::nullopt;
      }
    }
    if (negative) numerator = -numerator;
    mpq_class q(numerator, denominator);
    q.canonicalize();
    return from_mpq(q);
  }

  /// Throwing variant of parse().
  static Rational from_string(std::string_view text) {
    auto value = parse(text);
    if (!value) throw InputError("not a rational number: '" + std::string(text) + "'");
    return *value;
  }

  int sign() const noexcept {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_integer() const noexcept { return big_ ? big_->get_den() == 1 : den_ == 1; }

  std::string str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  double to_double() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational operator-() const {
    if (big_) return from_mpq(-*big_);
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == b.den_) return reduce(static_cast<i128>(a.num_) + b.num_, a.den_);
      return reduce(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                    static_cast<i128>(a.den_) * b.den_);
    }
    return from_mpq(a.to_mpq() + b.to_mpq());
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == b.den_) return reduce(static_cast<i128>(a.num_) - b.num_, a.den_);
      return reduce(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                    static_cast<i128>(a.den_) * b.den_);
    }
    return from_mpq(a.to_mpq() - b.to_mpq());
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0 || b.num_ == 0) return Rational();
      // Cross-cancel first so the product is already reduced.
      const std::int64_t g1 = std::gcd(a.num_, b.den_);
      const std::int64_t g2 = std::gcd(b.num_, a.den_);
      return from_reduced(static_cast<i128>(a.num_ / g1) * (b.num_ / g2),
                          static_cast<i128>(a.den_ / g2) * (b.den_ / g1));
    }
    return from_mpq(a.to_mpq() * b.to_mpq());
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("rational division by zero");
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0) return Rational();
      std::int64_t bn = b.den_, bd = b.num_;  // reciprocal of b
      if (bd < 0) {
        bn = -bn;
        bd = -bd;
      }
      const std::int64_t g1 = std::gcd(a.num_, bd);
      const std::int64_t g2 = std::gcd(bn, a.den_);
      return from_reduced(static_cast<i128>(a.num_ / g1) * (bn / g2),
                          static_cast<i128>(a.den_ / g2) * (bd / g1));
    }
    return from_mpq(a.to_mpq() / b.to_mpq());
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical form: a small value never equals a big one
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      const i128 lhs = static_cast<i128>(a.num_) * b.den_;
      const i128 rhs = static_cast<i128>(b.num_) * a.den_;
      return lhs <=> rhs;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
      if ((a >> 64) == 0 && (b >> 64) == 0)
        return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
      const u128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  // d > 0 required.
  static Rational reduce(i128 n, i128 d) {
    if (n == 0) return Rational();
    const u128 mag = n < 0 ? static_cast<u128>(-n) : static_cast<u128>(n);
    const u128 g = gcd128(mag, static_cast<u128>(d));
    if (g > 1) {
      n /= static_cast<i128>(g);
      d /= static_cast<i128>(g);
    }
    return from_reduced(n, d);
  }

  // (n, d) reduced with d > 0.
  static Rational from_reduced(i128 n, i128 d) {
    Rational r;
    if (n >= -kMax && n <= kMax && d <= kMax) {
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
      return r;
    }
    mpq_class q;
    set_mpz(q.get_num(), n);
    set_mpz(q.get_den(), d);
    r.num_ = 0;
    r.den_ = 1;
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
  }

  static Rational from_mpq(const mpq_class& q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
      const long ln = n.get_si();
      if (ln != std::numeric_limits<long>::min()) {
        Rational r;
        r.num_ = ln;
        r.den_ = d.get_si();
        return r;
      }
    }
    Rational r;
    r.big_ = std::make_shared<const mpq_class>(q);
    return r;
  }

  static void set_mpz(mpz_class& z, i128 v) {
    const bool negative = v < 0;
    const u128 mag = negative ? static_cast<u128>(-v) : static_cast<u128>(v);
    const std::uint64_t words[2] = {static_cast<std::uint64_t>(mag), static_cast<std::uint64_t>(mag >> 64)};
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
    if (negative) z = -z;
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

}  // namespace credal
