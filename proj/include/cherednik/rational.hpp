#pragma once

#include <stdexcept>
#include <string>

#include "cherednik/bigint.hpp"

namespace cherednik {

// Exact rational number. Denominator is kept positive and coprime to the
// numerator; all block data in this library is exact, so there is no
// floating-point path anywhere.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  // forms accepted: "p", "p/q", optional leading sign
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt::from_string(s));
    return Rational(BigInt::from_string(s.substr(0, slash)),
                    BigInt::from_string(s.substr(slash + 1)));
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == BigInt(1); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <= b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  std::string to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

  // value as long long when it is an integer fitting in one
  long long to_integer() const {
    if (!is_integer()) throw std::domain_error("Rational: not an integer");
    return num_.to_long_long();
  }

private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.is_negative()) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = BigInt(1);
      return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
      num_ = num_.divide_exact(g);
      den_ = den_.divide_exact(g);
    }
  }

  BigInt num_;
  BigInt den_;
};

}  // namespace cherednik
