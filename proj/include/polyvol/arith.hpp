#pragma once

// Two interchangeable integer tiers.  All geometric kernels are templated on
// the integer type; a run is attempted with SmallInt (checked 64-bit words)
// and restarted from scratch with BigInt (GMP) if any operation overflows.
// Escalation never happens per-operation: mixing tiers inside one run would
// make results depend on evaluation order.

#include <charconv>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include <gmpxx.h>

#include "polyvol/errors.hpp"

namespace polyvol {

// Checked two's-complement word.  INT64_MIN is excluded from the value
// domain so that negation, abs and division are total; any operation whose
// mathematical result does not fit in (INT64_MIN, INT64_MAX] throws
// Overflow.
class SmallInt {
public:
  SmallInt() : v_(0) {}
  SmallInt(int v) : v_(v) {}
  SmallInt(long v) : v_(check(v)) {}
  SmallInt(long long v) : v_(check(v)) {}

  int64_t raw() const { return v_; }

  friend SmallInt operator+(SmallInt a, SmallInt b) {
    int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return SmallInt(check(r));
  }
  friend SmallInt operator-(SmallInt a, SmallInt b) {
    int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return SmallInt(check(r));
  }
  friend SmallInt operator*(SmallInt a, SmallInt b) {
    int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return SmallInt(check(r));
  }
  // Truncated division, same semantics as int64_t.  Callers use this either
  // in exact contexts (divisibility guaranteed) or deliberately truncating.
  friend SmallInt operator/(SmallInt a, SmallInt b) { return SmallInt(a.v_ / b.v_); }
  friend SmallInt operator%(SmallInt a, SmallInt b) { return SmallInt(a.v_ % b.v_); }

  SmallInt operator-() const { return SmallInt(-v_); }

  SmallInt& operator+=(SmallInt b) { return *this = *this + b; }
  SmallInt& operator-=(SmallInt b) { return *this = *this - b; }
  SmallInt& operator*=(SmallInt b) { return *this = *this * b; }
  SmallInt& operator/=(SmallInt b) { return *this = *this / b; }

  friend bool operator==(SmallInt a, SmallInt b) { return a.v_ == b.v_; }
  friend bool operator!=(SmallInt a, SmallInt b) { return a.v_ != b.v_; }
  friend bool operator<(SmallInt a, SmallInt b) { return a.v_ < b.v_; }
  friend bool operator<=(SmallInt a, SmallInt b) { return a.v_ <= b.v_; }
  friend bool operator>(SmallInt a, SmallInt b) { return a.v_ > b.v_; }
  friend bool operator>=(SmallInt a, SmallInt b) { return a.v_ >= b.v_; }

private:
  static int64_t check(int64_t v) {
    if (v == std::numeric_limits<int64_t>::min()) throw Overflow{};
    return v;
  }
  explicit SmallInt(int64_t v, int) : v_(v) {}
  int64_t v_;
};

using BigInt = mpz_class;

// Uniform access to the handful of operations the kernels need beyond
// ordinary operators.
template <class Int>
struct IntOps;

template <>
struct IntOps<SmallInt> {
  static SmallInt zero() { return SmallInt(0); }
  static SmallInt one() { return SmallInt(1); }
  static SmallInt from_i64(int64_t v) { return SmallInt(static_cast<long long>(v)); }
  static SmallInt from_string(const std::string& s) {
    int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc::result_out_of_range) throw Overflow{};
    if (ec != std::errc() || p != s.data() + s.size())
      throw Error(ErrorKind::ParseError, "bad integer literal '" + s + "'");
    return from_i64(v);
  }
  static int sgn(SmallInt a) { return a.raw() > 0 ? 1 : (a.raw() < 0 ? -1 : 0); }
  static SmallInt abs(SmallInt a) { return a.raw() < 0 ? -a : a; }
  static SmallInt gcd(SmallInt a, SmallInt b) {
    return from_i64(std::gcd(a.raw(), b.raw()));
  }
  static SmallInt pow_u(SmallInt b, unsigned e) {
    SmallInt r = one();
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
  }
  static bool fits_i64(SmallInt) { return true; }
  static int64_t to_i64(SmallInt a) { return a.raw(); }
  static std::string str(SmallInt a) { return std::to_string(a.raw()); }
  static size_t bits(SmallInt a) {
    uint64_t m = static_cast<uint64_t>(a.raw() < 0 ? -a.raw() : a.raw());
    size_t n = 0;
    while (m) { ++n; m >>= 1; }
    return n;
  }
};

template <>
struct IntOps<BigInt> {
  static BigInt zero() { return BigInt(0); }
  static BigInt one() { return BigInt(1); }
  static BigInt from_i64(int64_t v) {
    BigInt r;
    uint64_t mag = v < 0 ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(mag), 0, 0, &mag);
    if (v < 0) mpz_neg(r.get_mpz_t(), r.get_mpz_t());
    return r;
  }
  static BigInt from_string(const std::string& s) {
    try {
      return BigInt(s);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::ParseError, "bad integer literal '" + s + "'");
    }
  }
  static int sgn(const BigInt& a) { return mpz_sgn(a.get_mpz_t()); }
  static BigInt abs(const BigInt& a) { return ::abs(a); }
  static BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }
  static BigInt pow_u(const BigInt& b, unsigned e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
  }
  static bool fits_i64(const BigInt& a) { return a.fits_slong_p(); }
  static int64_t to_i64(const BigInt& a) { return a.get_si(); }
  static std::string str(const BigInt& a) { return a.get_str(); }
  static size_t bits(const BigInt& a) {
    if (sgn(a) == 0) return 0;
    return mpz_sizeinbase(a.get_mpz_t(), 2);
  }
};

template <class Int>
int sgn(const Int& a) { return IntOps<Int>::sgn(a); }

template <class Int>
Int iabs(const Int& a) { return IntOps<Int>::abs(a); }

}  // namespace polyvol
