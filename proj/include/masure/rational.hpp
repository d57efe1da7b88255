#pragma once

// Exact rational arithmetic on checked 64-bit integers, p-adic valuations,
// and rationals extended by +/- infinity.  Everything in this library is
// exact; there is no floating point anywhere.

#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace masure {

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

struct OverflowError : Error {
  OverflowError() : Error("Overflow", "exact integer arithmetic overflow") {}
};

namespace detail {

inline std::int64_t checked_i64(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw OverflowError();
  return static_cast<std::int64_t>(v);
}

inline std::int64_t gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return checked_i64(a);
}

}  // namespace detail

class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(std::int64_t n) : num_(n), den_(1) {}
  Rat(std::int64_t n, std::int64_t d) { init(n, d); }

  static Rat parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(std::stoll(s));
      return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw Error("BadRational", "cannot parse rational '" + s + "'");
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from128(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from128(n, d);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw Error("DivisionByZero", "rational division by zero");
    return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }
  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rat& operator+=(const Rat& b) { return *this = *this + b; }
  Rat& operator-=(const Rat& b) { return *this = *this - b; }
  Rat& operator*=(const Rat& b) { return *this = *this * b; }
  Rat& operator/=(const Rat& b) { return *this = *this / b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  // Largest integer <= *this.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  std::int64_t ceil() const { return -(-*this).floor(); }

  Rat abs() const { return num_ < 0 ? -*this : *this; }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
  }

 private:
  static Rat from128(__int128 n, __int128 d) {
    Rat r;
    if (d == 0) throw Error("DivisionByZero", "zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      r.num_ = 0;
      r.den_ = 1;
      return r;
    }
    std::int64_t g = detail::gcd128(n, d);
    r.num_ = detail::checked_i64(n / g);
    r.den_ = detail::checked_i64(d / g);
    return r;
  }
  void init(std::int64_t n, std::int64_t d) {
    Rat r = from128(n, d);
    num_ = r.num_;
    den_ = r.den_;
  }

  std::int64_t num_, den_;
};

// p-adic valuation of a nonzero integer.
inline std::int64_t padic_val(std::int64_t n, std::int64_t p) {
  if (n == 0) throw Error("DivisionByZero", "valuation of zero integer");
  if (n < 0) n = -n;
  std::int64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// A rational extended by +/- infinity.  Adding +inf to -inf is a programming
// error and is rejected loudly.
class ExtRat {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtRat() : kind_(Kind::Finite), v_() {}
  ExtRat(const Rat& v) : kind_(Kind::Finite), v_(v) {}
  ExtRat(std::int64_t v) : kind_(Kind::Finite), v_(Rat(v)) {}
  static ExtRat pos_inf() {
    ExtRat e;
    e.kind_ = Kind::PosInf;
    return e;
  }
  static ExtRat neg_inf() {
    ExtRat e;
    e.kind_ = Kind::NegInf;
    return e;
  }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  const Rat& value() const {
    if (!is_finite()) throw Error("NotFinite", "extended rational is infinite");
    return v_;
  }

  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.is_finite() && b.is_finite()) return ExtRat(a.v_ + b.v_);
    if (a.is_pos_inf() && b.is_neg_inf()) throw Error("IndeterminateSum", "(+inf) + (-inf)");
    if (a.is_neg_inf() && b.is_pos_inf()) throw Error("IndeterminateSum", "(-inf) + (+inf)");
    return a.is_finite() ? b : a;
  }
  ExtRat operator-() const {
    if (is_pos_inf()) return neg_inf();
    if (is_neg_inf()) return pos_inf();
    return ExtRat(-v_);
  }
  friend ExtRat operator-(const ExtRat& a, const ExtRat& b) { return a + (-b); }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || a.v_ == b.v_;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.kind_ == b.kind_) return a.is_finite() && a.v_ < b.v_;
    if (a.is_neg_inf()) return true;
    if (b.is_pos_inf()) return true;
    return false;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return a < b || a == b; }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return b <= a; }

  std::string str() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    return v_.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtRat& e) {
    return os << e.str();
  }

 private:
  Kind kind_;
  Rat v_;
};

using VecR = std::vector<Rat>;
using VecI = std::vector<std::int64_t>;

inline VecR operator+(const VecR& a, const VecR& b) {
  VecR r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline VecR operator-(const VecR& a, const VecR& b) {
  VecR r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline VecR operator*(const Rat& c, const VecR& a) {
  VecR r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}
inline bool is_zero(const VecR& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace masure
