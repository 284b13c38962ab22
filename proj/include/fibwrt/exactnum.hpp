// Copyright 2026 The fibwrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <ostream>
#include <string>

#include "fibwrt/field.hpp"

namespace fibwrt {

/**
 * A value mantissa * D^dpow where D is the positive square root of phi + 2.
 *
 * Constructors keep the given exponent. canonical() folds D^2 into the
 * mantissa so that dpow is 0 or 1, and zero always has dpow 0.
 */
class DScaledValue {
 public:
  DScaledValue() = default;
  DScaledValue(FieldElement m, int dpow = 0) : m_(std::move(m)), dpow_(dpow) {}  // NOLINT

  static DScaledValue d() { return DScaledValue(FieldElement(1), 1); }

  const FieldElement& mantissa() const { return m_; }
  int dpow() const { return dpow_; }
  bool is_zero() const { return m_.is_zero(); }

  DScaledValue canonical() const {
    if (m_.is_zero()) return DScaledValue();
    FieldElement m = m_;
    int p = dpow_;
    const FieldElement d2 = total_dimension_squared();
    if (p >= 2) {
      m *= d2.pow((p) / 2);
      p %= 2;
    } else if (p < 0) {
      const int k = (-p + 1) / 2;
      m *= d2.pow(-k);
      p += 2 * k;
    }
    return DScaledValue(std::move(m), p);
  }

  /// Collapse to a field element when D is available in the field.
  std::optional<FieldElement> as_field() const {
    const DScaledValue c = canonical();
    if (c.dpow_ == 0) return c.m_;
    const auto& d = total_dimension_in_field();
    if (!d) return std::nullopt;
    return c.m_ * *d;
  }

  friend bool operator==(const DScaledValue& a, const DScaledValue& b) {
    const DScaledValue x = a.canonical(), y = b.canonical();
    if (x.dpow_ == y.dpow_) return x.m_ == y.m_;
    // Different parity: only comparable through D in the field.
    const auto& d = total_dimension_in_field();
    if (!d) return false;
    return *x.as_field() == *y.as_field();
  }
  friend bool operator!=(const DScaledValue& a, const DScaledValue& b) {
    return !(a == b);
  }

  friend DScaledValue operator*(const DScaledValue& a, const DScaledValue& b) {
    return DScaledValue(a.m_ * b.m_, a.dpow_ + b.dpow_).canonical();
  }
  friend DScaledValue operator+(const DScaledValue& a, const DScaledValue& b) {
    const DScaledValue x = a.canonical(), y = b.canonical();
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.dpow_ == y.dpow_) return DScaledValue(x.m_ + y.m_, x.dpow_).canonical();
    const auto fx = x.as_field(), fy = y.as_field();
    if (!fx || !fy) throw std::domain_error("sum mixes D parities and D is not in the field");
    return DScaledValue(*fx + *fy, 0);
  }
  DScaledValue operator-() const { return DScaledValue(-m_, dpow_); }
  friend DScaledValue operator-(const DScaledValue& a, const DScaledValue& b) {
    return a + (-b);
  }

  DScaledValue conj() const { return DScaledValue(m_.conj(), dpow_); }
  DScaledValue inverse() const { return DScaledValue(m_.inverse(), -dpow_).canonical(); }

  BigComplex to_complex(mpfr_prec_t bits = 53) const {
    const DScaledValue c = canonical();
    BigComplex z = c.m_.to_complex(bits);
    if (c.dpow_ == 0) return z;
    const BigFloat d = BigFloat::sqrt_of(total_dimension_squared().to_complex(bits).re);
    return BigComplex(z.re * d, z.im * d);
  }
  std::complex<double> to_complex_double() const { return to_complex(64).to_complex(); }

  std::string to_string() const {
    const DScaledValue c = canonical();
    if (c.dpow_ == 0) return c.m_.to_string();
    return c.m_.to_string() + "*D";
  }

 private:
  FieldElement m_;
  int dpow_ = 0;
};

/**
 * Exact amplitude m / sqrt(2)^k with k >= 0 minimal.
 *
 * Sums are only defined when the two exponents have equal parity; other
 * sums leave the set and raise std::domain_error.
 */
class RootTwoInteger {
 public:
  RootTwoInteger() = default;
  RootTwoInteger(long m) : m_(m) {}  // NOLINT
  RootTwoInteger(mpz_class m, int k) : m_(std::move(m)), k_(k) {
    if (k_ < 0) throw std::invalid_argument("negative sqrt(2) exponent");
    canonicalize();
  }

  const mpz_class& m() const { return m_; }
  int k() const { return k_; }
  bool is_zero() const { return m_ == 0; }

  friend bool operator==(const RootTwoInteger& a, const RootTwoInteger& b) {
    return a.k_ == b.k_ && a.m_ == b.m_;
  }
  friend bool operator!=(const RootTwoInteger& a, const RootTwoInteger& b) {
    return !(a == b);
  }

  friend RootTwoInteger operator+(const RootTwoInteger& a, const RootTwoInteger& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if ((a.k_ - b.k_) % 2 != 0)
      throw std::domain_error("sum of amplitudes with mixed sqrt(2) parity");
    const RootTwoInteger& lo = a.k_ <= b.k_ ? a : b;
    const RootTwoInteger& hi = a.k_ <= b.k_ ? b : a;
    mpz_class lifted = lo.m_;
    mpz_mul_2exp(lifted.get_mpz_t(), lifted.get_mpz_t(), (hi.k_ - lo.k_) / 2);
    return RootTwoInteger(lifted + hi.m_, hi.k_);
  }
  RootTwoInteger operator-() const {
    RootTwoInteger r(*this);
    r.m_ = -r.m_;
    return r;
  }
  friend RootTwoInteger operator-(const RootTwoInteger& a, const RootTwoInteger& b) {
    return a + (-b);
  }
  friend RootTwoInteger operator*(const RootTwoInteger& a, const RootTwoInteger& b) {
    return RootTwoInteger(a.m_ * b.m_, a.k_ + b.k_);
  }

  /// Exact rational value; only defined for even k.
  std::optional<mpq_class> to_rational() const {
    if (k_ % 2) return std::nullopt;
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k_ / 2);
    mpq_class q(m_, den);
    q.canonicalize();
    return q;
  }

  BigFloat to_bigfloat(mpfr_prec_t bits = 53) const {
    const BigFloat two(2.0, bits);
    BigFloat s = BigFloat::sqrt_of(two);
    BigFloat den(1.0, bits);
    for (int i = 0; i < k_; ++i) den = den * s;
    return BigFloat(m_, bits) / den;
  }
  double to_double() const { return to_bigfloat(64).to_double(); }

  std::string to_string() const {
    return m_.get_str() + "/√2^" + std::to_string(k_);
  }
  friend std::ostream& operator<<(std::ostream& os, const RootTwoInteger& r) { return os << r.to_string(); }

 private:
  void canonicalize() {
    if (m_ == 0) {
      k_ = 0;
      return;
    }
    while (k_ >= 2 && mpz_even_p(m_.get_mpz_t())) {
      m_ /= 2;
      k_ -= 2;
    }
  }

  mpz_class m_ = 0;
  int k_ = 0;
};

}  // namespace fibwrt
