#pragma once

#include <string>
#include <utility>

#include "polyvol/arith.hpp"

namespace polyvol {

// Reduced fraction: den > 0, gcd(num, den) = 1, zero is 0/1.  Exact under
// both integer tiers; in the word tier any intermediate that would wrap
// throws Overflow like the integers themselves.
template <class Int>
class Rational {
  using Ops = IntOps<Int>;

public:
  Rational() : num_(Ops::zero()), den_(Ops::one()) {}
  Rational(Int n) : num_(std::move(n)), den_(Ops::one()) {}
  Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static Rational from_i64(int64_t n, int64_t d = 1) {
    return Rational(Ops::from_i64(n), Ops::from_i64(d));
  }

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  bool is_zero() const { return sgn(num_) == 0; }
  int sign() const { return sgn(num_); }
  bool is_integer() const { return den_ == Ops::one(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    // Reduce via gcd of denominators first; keeps word-tier intermediates
    // as small as possible.
    Int g = Ops::gcd(a.den_, b.den_);
    Int bs = b.den_ / g;
    Int n = a.num_ * bs + b.num_ * (a.den_ / g);
    return Rational(std::move(n), a.den_ * bs);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Int g1 = Ops::gcd(Ops::abs(a.num_), b.den_);
    Int g2 = Ops::gcd(Ops::abs(b.num_), a.den_);
    Rational r;
    r.num_ = (a.num_ / g1) * (b.num_ / g2);
    r.den_ = (a.den_ / g2) * (b.den_ / g1);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error(ErrorKind::Internal, "rational division by zero");
    return a * Rational(b.den_, b.num_);
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return sgn(a.num_ * b.den_ - b.num_ * a.den_) < 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  // Largest-magnitude integer multiple of 10^-digits between 0 and *this
  // (truncation toward zero), returned as a count of 10^-digits units.
  Int truncate_scaled(unsigned digits) const {
    Int scale = Ops::pow_u(Ops::from_i64(10), digits);
    return (num_ * scale) / den_;
  }

  std::string str() const {
    if (is_integer()) return Ops::str(num_);
    return Ops::str(num_) + "/" + Ops::str(den_);
  }

private:
  void normalize() {
    int ds = sgn(den_);
    if (ds == 0) throw Error(ErrorKind::Internal, "rational with zero denominator");
    if (ds < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (sgn(num_) == 0) {
      den_ = Ops::one();
      return;
    }
    Int g = Ops::gcd(Ops::abs(num_), den_);
    if (g != Ops::one()) {
      num_ /= g;
      den_ /= g;
    }
  }

  Int num_, den_;
};

}  // namespace polyvol
