#pragma once

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "gly/errors.hpp"

namespace gly {

// Exact rational number. Always canonical: lowest terms, denominator > 0.
// Arithmetic is backed by GMP, so numerators and denominators grow as needed.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  Rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Strict parse of "p" or "p/q" (optional leading '-'). Fails on q = 0.
  static std::optional<Rational> parse(std::string_view s) {
    auto digits = [](std::string_view t) {
      if (t.empty()) return false;
      if (t[0] == '-') t.remove_prefix(1);
      if (t.empty()) return false;
      for (char c : t)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      return true;
    };
    const auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    if (!digits(num)) return std::nullopt;
    mpq_class v;
    if (slash == std::string_view::npos) {
      v = mpz_class(std::string(num));
    } else {
      std::string_view den = s.substr(slash + 1);
      if (!digits(den) || den[0] == '-') return std::nullopt;
      mpz_class d{std::string(den)};
      if (d == 0) return std::nullopt;
      v = mpq_class(mpz_class(std::string(num)), d);
    }
    Rational r;
    r.v_ = std::move(v);
    r.v_.canonicalize();
    return r;
  }

  /// Canonical text form: "p" when the denominator is 1, else "p/q".
  std::string str() const { return v_.get_str(); }

  double to_double() const { return v_.get_d(); }

  int sign() const { return sgn(v_); }

  bool is_integer() const { return v_.get_den() == 1; }

  /// Value as long; requires is_integer() and machine range.
  long to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p())
      throw DomainError("rational " + str() + " is not a machine integer");
    return v_.get_num().get_si();
  }

  Rational abs() const {
    Rational r;
    r.v_ = ::abs(v_);
    return r;
  }

  /// Largest integer <= *this, as a rational.
  Rational floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    Rational r;
    r.v_ = mpq_class(q);
    return r;
  }

  /// Fractional part in [0, 1): *this - floor(*this).
  Rational mod1() const { return *this - floor(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return wrap(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return wrap(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return wrap(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.v_ == 0) throw DomainError("rational division by zero");
    return wrap(a.v_ / b.v_);
  }
  Rational operator-() const { return wrap(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Rational wrap(mpq_class v) {
    Rational r;
    r.v_ = std::move(v);  // mpq arithmetic keeps values canonical
    return r;
  }
  mpq_class v_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Parse that throws ParseError with the offending text.
inline Rational parse_rational(std::string_view s, std::string_view context = {}) {
  if (auto r = Rational::parse(s)) return *r;
  std::string msg = "bad rational \"" + std::string(s) + "\"";
  if (!context.empty()) msg += " in " + std::string(context);
  throw ParseError(msg);
}

}  // namespace gly
