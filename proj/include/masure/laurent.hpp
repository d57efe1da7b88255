#pragma once

// Laurent polynomials in t with exact rational coefficients, and small dense
// matrices over them.  Rationals embed as degree-zero polynomials, so a single
// matrix type serves both the p-adic and the loop-group instantiations.

#include <map>
#include <sstream>

#include "masure/rational.hpp"

namespace masure {

class Laurent {
 public:
  Laurent() = default;
  Laurent(const Rat& c) {
    if (!c.is_zero()) c_[0] = c;
  }
  Laurent(std::int64_t c) : Laurent(Rat(c)) {}
  static Laurent term(const Rat& c, int n) {
    Laurent l;
    if (!c.is_zero()) l.c_[n] = c;
    return l;
  }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const {
    return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0);
  }
  bool is_monomial() const { return c_.size() == 1; }
  Rat constant() const {
    if (!is_constant()) throw Error("NotConstant", "Laurent polynomial has t-terms");
    return coeff(0);
  }
  Rat coeff(int n) const {
    auto it = c_.find(n);
    return it == c_.end() ? Rat(0) : it->second;
  }
  int min_deg() const { return c_.empty() ? 0 : c_.begin()->first; }
  int max_deg() const { return c_.empty() ? 0 : c_.rbegin()->first; }
  const std::map<int, Rat>& coeffs() const { return c_; }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    Laurent r = a;
    for (const auto& [n, c] : b.c_) r.add(n, c);
    return r;
  }
  friend Laurent operator-(const Laurent& a, const Laurent& b) {
    Laurent r = a;
    for (const auto& [n, c] : b.c_) r.add(n, -c);
    return r;
  }
  Laurent operator-() const {
    Laurent r;
    for (const auto& [n, c] : c_) r.c_[n] = -c;
    return r;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [n, c] : a.c_)
      for (const auto& [m, d] : b.c_) r.add(n + m, c * d);
    return r;
  }
  Laurent& operator+=(const Laurent& b) { return *this = *this + b; }
  Laurent& operator-=(const Laurent& b) { return *this = *this - b; }
  Laurent& operator*=(const Laurent& b) { return *this = *this * b; }

  // Inverse of a unit c*t^n.
  Laurent unit_inverse() const {
    if (!is_monomial()) throw Error("NotUnit", "Laurent inverse of a non-monomial");
    auto [n, c] = *c_.begin();
    return term(Rat(1) / c, -n);
  }

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, c] : c_) {
      if (!first) os << " + ";
      first = false;
      os << c.str();
      if (n != 0) os << "*t^" << n;
    }
    return os.str();
  }

 private:
  void add(int n, const Rat& c) {
    auto it = c_.find(n);
    if (it == c_.end()) {
      if (!c.is_zero()) c_[n] = c;
      return;
    }
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }

  std::map<int, Rat> c_;  // exponent -> coefficient, no zero entries
};

// Small square matrix over a commutative ring R (Rat or Laurent).
template <class R>
class Mat {
 public:
  Mat() : n_(0) {}
  explicit Mat(int n) : n_(n), a_(n * n, R(0)) {}
  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = R(1);
    return m;
  }

  int size() const { return n_; }
  R& operator()(int i, int j) { return a_[i * n_ + j]; }
  const R& operator()(int i, int j) const { return a_[i * n_ + j]; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat r(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const R& x = a(i, k);
        if (x == R(0)) continue;
        for (int j = 0; j < a.n_; ++j) r(i, j) += x * b(k, j);
      }
    return r;
  }
  friend bool operator==(const Mat& a, const Mat& b) { return a.n_ == b.n_ && a.a_ == b.a_; }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  R det() const {
    if (n_ == 1) return a_[0];
    if (n_ == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
    if (n_ == 3) {
      const Mat& m = *this;
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }
    throw Error("Unsupported", "det only for n <= 3");
  }

  // Inverse of a determinant-one matrix (adjugate), n <= 3.
  Mat inverse_det1() const {
    if (det() != R(1)) throw Error("NotUnimodular", "inverse_det1 needs det == 1");
    Mat r(n_);
    if (n_ == 1) {
      r(0, 0) = R(1);
      return r;
    }
    if (n_ == 2) {
      const Mat& m = *this;
      r(0, 0) = m(1, 1);
      r(0, 1) = -m(0, 1);
      r(1, 0) = -m(1, 0);
      r(1, 1) = m(0, 0);
      return r;
    }
    if (n_ == 3) {
      const Mat& m = *this;
      auto c = [&](int i, int j) {
        int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
        return m(i1, j1) * m(i2, j2) - m(i1, j2) * m(i2, j1);
      };
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = c(j, i);
      return r;
    }
    throw Error("Unsupported", "inverse only for n <= 3");
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n_; ++i) {
      os << "[";
      for (int j = 0; j < n_; ++j) {
        if (j) os << ", ";
        if constexpr (std::is_same_v<R, Rat>)
          os << (*this)(i, j).str();
        else
          os << (*this)(i, j).str();
      }
      os << "]";
      if (i + 1 < n_) os << ", ";
    }
    os << "]";
    return os.str();
  }

 private:
  int n_;
  std::vector<R> a_;
};

using MatL = Mat<Laurent>;

}  // namespace masure
