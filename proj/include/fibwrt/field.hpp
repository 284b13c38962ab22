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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fibwrt/bigfloat.hpp"

namespace fibwrt {

/// Degree of Q(zeta_20) over Q.
inline constexpr int kCycloDegree = 8;
/// Degree of the working field Q(zeta_20, sqrt(phi)) over Q.
inline constexpr int kFieldDegree = 16;

namespace detail {

using Cyc = std::array<mpz_class, kCycloDegree>;

// x^8 = x^6 - x^4 + x^2 - 1 modulo the 20th cyclotomic polynomial.
inline void reduce_cyclo(std::vector<mpz_class>& c) {
  for (int d = static_cast<int>(c.size()) - 1; d >= kCycloDegree; --d) {
    if (c[d] == 0) continue;
    const mpz_class t = c[d];
    c[d - 2] += t;
    c[d - 4] -= t;
    c[d - 6] += t;
    c[d - 8] -= t;
    c[d] = 0;
  }
  c.resize(kCycloDegree);
}

inline Cyc x_power(int k) {
  k %= 20;
  if (k < 0) k += 20;
  std::vector<mpz_class> c(std::max(k + 1, kCycloDegree));
  c[k] = 1;
  reduce_cyclo(c);
  Cyc out;
  for (int i = 0; i < kCycloDegree; ++i) out[i] = c[i];
  return out;
}

inline bool cyc_zero(const Cyc& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

inline Cyc cyc_mul(const Cyc& a, const Cyc& b) {
  std::vector<mpz_class> c(2 * kCycloDegree - 1);
  for (int i = 0; i < kCycloDegree; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < kCycloDegree; ++j) {
      if (b[j] == 0) continue;
      c[i + j] += a[i] * b[j];
    }
  }
  reduce_cyclo(c);
  Cyc out;
  for (int i = 0; i < kCycloDegree; ++i) out[i] = std::move(c[i]);
  return out;
}

inline Cyc cyc_add(const Cyc& a, const Cyc& b) {
  Cyc out;
  for (int i = 0; i < kCycloDegree; ++i) out[i] = a[i] + b[i];
  return out;
}

inline Cyc cyc_sub(const Cyc& a, const Cyc& b) {
  Cyc out;
  for (int i = 0; i < kCycloDegree; ++i) out[i] = a[i] - b[i];
  return out;
}

// phi = 1 + zeta^4 + zeta^-4
inline const Cyc& phi_cyc() {
  static const Cyc v = [] {
    Cyc a = x_power(0), b = x_power(4), c = x_power(16);
    return cyc_add(cyc_add(a, b), c);
  }();
  return v;
}

inline const std::array<Cyc, kCycloDegree>& conj_table() {
  static const std::array<Cyc, kCycloDegree> t = [] {
    std::array<Cyc, kCycloDegree> r;
    for (int k = 0; k < kCycloDegree; ++k) r[k] = x_power(20 - k);
    return r;
  }();
  return t;
}

// Solve a * y = 1 in Q(zeta_20) by elimination on the multiplication matrix.
inline std::array<mpq_class, kCycloDegree> cyc_inverse(const Cyc& a) {
  if (cyc_zero(a)) throw std::domain_error("division by zero in field");
  constexpr int n = kCycloDegree;
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
  for (int j = 0; j < n; ++j) {
    Cyc col = cyc_mul(a, x_power(j));
    for (int i = 0; i < n; ++i) m[i][j] = col[i];
  }
  m[0][n] = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) throw std::domain_error("singular multiplication matrix");
    std::swap(m[p], m[c]);
    const mpq_class piv = m[c][c];
    for (int j = c; j <= n; ++j) m[c][j] /= piv;
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const mpq_class f = m[r][c];
      for (int j = c; j <= n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::array<mpq_class, kCycloDegree> y;
  for (int i = 0; i < n; ++i) y[i] = m[i][n];
  return y;
}

}  // namespace detail

/**
 * Element of Q(zeta_20, sqrt(phi)).
 *
 * Coordinate k + 8*s holds the coefficient of zeta^k * sqrt(phi)^s for
 * k < 8 and s in {0, 1}. Stored as 16 integer numerators over one positive
 * common denominator in lowest terms, so equal values have equal storage.
 */
class FieldElement {
 public:
  FieldElement() : den_(1) {}
  FieldElement(long n) : den_(1) { num_[0] = n; }  // NOLINT
  explicit FieldElement(const mpq_class& q) : den_(q.get_den()) {
    num_[0] = q.get_num();
  }

  static FieldElement zeta(int k) {
    FieldElement r;
    const detail::Cyc c = detail::x_power(k);
    for (int i = 0; i < kCycloDegree; ++i) r.num_[i] = c[i];
    return r;
  }
  static FieldElement sqrt_phi() {
    FieldElement r;
    r.num_[kCycloDegree] = 1;
    return r;
  }
  static FieldElement phi() {
    FieldElement r;
    for (int i = 0; i < kCycloDegree; ++i) r.num_[i] = detail::phi_cyc()[i];
    return r;
  }
  static FieldElement from_coords(const std::array<mpq_class, kFieldDegree>& q) {
    FieldElement r;
    mpz_class den = 1;
    for (const auto& x : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    for (int i = 0; i < kFieldDegree; ++i) {
      mpq_class x(q[i]);
      x.canonicalize();
      r.num_[i] = x.get_num() * (den / x.get_den());
    }
    r.den_ = den;
    r.normalize();
    return r;
  }

  mpq_class coord(int i) const {
    mpq_class q(num_.at(i), den_);
    q.canonicalize();
    return q;
  }
  std::array<mpq_class, kFieldDegree> coords() const {
    std::array<mpq_class, kFieldDegree> out;
    for (int i = 0; i < kFieldDegree; ++i) out[i] = coord(i);
    return out;
  }
  const mpz_class& denominator() const { return den_; }
  const mpz_class& numerator(int i) const { return num_.at(i); }

  bool is_zero() const {
    for (const auto& x : num_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (int i = 1; i < kFieldDegree; ++i)
      if (num_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) {
    return !(a == b);
  }

  FieldElement operator-() const {
    FieldElement r(*this);
    for (auto& x : r.num_) x = -x;
    return r;
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    FieldElement r;
    if (a.den_ == b.den_) {
      for (int i = 0; i < kFieldDegree; ++i) r.num_[i] = a.num_[i] + b.num_[i];
      r.den_ = a.den_;
    } else {
      for (int i = 0; i < kFieldDegree; ++i)
        r.num_[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
      r.den_ = a.den_ * b.den_;
    }
    r.normalize();
    return r;
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return a + (-b);
  }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    if (a.is_zero() || b.is_zero()) return FieldElement();
    detail::Cyc a0, a1, b0, b1;
    split(a, a0, a1);
    split(b, b0, b1);
    const bool a1z = detail::cyc_zero(a1), b1z = detail::cyc_zero(b1);
    detail::Cyc c0, c1;
    if (a1z && b1z) {
      c0 = detail::cyc_mul(a0, b0);
    } else if (a1z) {
      c0 = detail::cyc_mul(a0, b0);
      c1 = detail::cyc_mul(a0, b1);
    } else if (b1z) {
      c0 = detail::cyc_mul(a0, b0);
      c1 = detail::cyc_mul(a1, b0);
    } else {
      const detail::Cyc p0 = detail::cyc_mul(a0, b0);
      const detail::Cyc p1 = detail::cyc_mul(a1, b1);
      const detail::Cyc p2 =
          detail::cyc_mul(detail::cyc_add(a0, a1), detail::cyc_add(b0, b1));
      c0 = detail::cyc_add(p0, detail::cyc_mul(detail::phi_cyc(), p1));
      c1 = detail::cyc_sub(detail::cyc_sub(p2, p0), p1);
    }
    FieldElement r;
    for (int i = 0; i < kCycloDegree; ++i) {
      r.num_[i] = std::move(c0[i]);
      r.num_[i + kCycloDegree] = std::move(c1[i]);
    }
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
  }

  FieldElement inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in field");
    detail::Cyc a0, a1;
    split(*this, a0, a1);
    // (a0 + a1 s)^-1 = (a0 - a1 s) / (a0^2 - phi a1^2), times the denominator.
    const detail::Cyc norm = detail::cyc_sub(
        detail::cyc_mul(a0, a0),
        detail::cyc_mul(detail::phi_cyc(), detail::cyc_mul(a1, a1)));
    const auto ninv = detail::cyc_inverse(norm);
    std::array<mpq_class, kFieldDegree> q;
    for (int i = 0; i < kCycloDegree; ++i) q[i] = ninv[i] * den_;
    const FieldElement n = from_coords(q);
    FieldElement conjs;
    for (int i = 0; i < kCycloDegree; ++i) {
      conjs.num_[i] = a0[i];
      conjs.num_[i + kCycloDegree] = -a1[i];
    }
    conjs.normalize();
    return conjs * n;
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inverse();
  }
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

  /// Complex conjugation: zeta -> zeta^-1, sqrt(phi) fixed.
  FieldElement conj() const {
    FieldElement r;
    const auto& t = detail::conj_table();
    for (int s = 0; s < 2; ++s)
      for (int k = 0; k < kCycloDegree; ++k) {
        const mpz_class& c = num_[k + kCycloDegree * s];
        if (c == 0) continue;
        for (int i = 0; i < kCycloDegree; ++i)
          r.num_[i + kCycloDegree * s] += c * t[k][i];
      }
    r.den_ = den_;
    r.normalize();
    return r;
  }

  /// |x|^2 as a field element.
  FieldElement norm2() const { return *this * conj(); }

  FieldElement pow(long e) const {
    FieldElement base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    FieldElement r(1);
    while (n) {
      if (n & 1) r *= base;
      n >>= 1;
      if (n) base *= base;
    }
    return r;
  }

  /// Value under zeta -> exp(i pi / 10), sqrt(phi) -> positive root.
  BigComplex to_complex(mpfr_prec_t bits = 53) const;
  std::complex<double> to_complex_double() const { return to_complex(64).to_complex(); }

  /// Value under the embedding with index e in [0, 16).
  std::complex<double> embed(int e) const;

  /// Canonical text: sixteen rationals in parentheses.
  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < kFieldDegree; ++i) {
      if (i) os << ' ';
      os << coord(i).get_str();
    }
    os << ')';
    return os.str();
  }

  static FieldElement parse(const std::string& text) {
    std::string t = text;
    const auto l = t.find('('), r = t.rfind(')');
    if (l == std::string::npos || r == std::string::npos || r < l)
      throw std::invalid_argument("field element must be parenthesised");
    std::istringstream is(t.substr(l + 1, r - l - 1));
    std::array<mpq_class, kFieldDegree> q;
    std::string tok;
    int i = 0;
    while (is >> tok) {
      if (i >= kFieldDegree) throw std::invalid_argument("too many coordinates");
      if (q[i].set_str(tok, 10) != 0) throw std::invalid_argument("bad rational: " + tok);
      q[i].canonicalize();
      ++i;
    }
    if (i != kFieldDegree) throw std::invalid_argument("expected 16 coordinates");
    return from_coords(q);
  }

 private:
  static void split(const FieldElement& a, detail::Cyc& lo, detail::Cyc& hi) {
    for (int i = 0; i < kCycloDegree; ++i) {
      lo[i] = a.num_[i];
      hi[i] = a.num_[i + kCycloDegree];
    }
  }

  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      for (auto& x : num_) x = -x;
    }
    mpz_class g = den_;
    for (const auto& x : num_) {
      if (g == 1) break;
      if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (is_zero()) {
      den_ = 1;
      return;
    }
    if (g != 1) {
      den_ /= g;
      for (auto& x : num_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
  }

  std::array<mpz_class, kFieldDegree> num_;
  mpz_class den_;
};

namespace detail {

struct EmbeddingBasis {
  std::array<BigComplex, kFieldDegree> basis;
};

inline const EmbeddingBasis& primary_basis(mpfr_prec_t bits) {
  static std::mutex mu;
  static std::map<mpfr_prec_t, EmbeddingBasis> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(bits);
  if (it != cache.end()) return it->second;
  EmbeddingBasis b;
  const BigFloat pi = BigFloat::pi(bits);
  const BigFloat one(1.0, bits), two(2.0, bits), five(5.0, bits);
  const BigFloat phi = (one + BigFloat::sqrt_of(five)) / two;
  const BigFloat sp = BigFloat::sqrt_of(phi);
  for (int k = 0; k < kCycloDegree; ++k) {
    const BigFloat ang = pi * BigFloat(static_cast<double>(k), bits) / BigFloat(10.0, bits);
    BigComplex z(BigFloat::cos_of(ang), BigFloat::sin_of(ang));
    b.basis[k] = z;
    b.basis[k + kCycloDegree] = BigComplex(z.re * sp, z.im * sp);
  }
  return cache.emplace(bits, std::move(b)).first->second;
}

inline constexpr std::array<int, kCycloDegree> kUnits = {1, 3, 7, 9, 11, 13, 17, 19};

// Value of basis element i under embedding e: zeta -> exp(i pi j / 10) for
// j = kUnits[e / 2], sqrt(phi) -> (+/-) principal root of the image of phi.
inline std::complex<double> basis_embed(int e, int i) {
  const int j = kUnits[e / 2];
  const double sign = (e % 2) ? -1.0 : 1.0;
  const int k = i % kCycloDegree;
  const std::complex<double> z = std::polar(1.0, M_PI * j * k / 10.0);
  if (i < kCycloDegree) return z;
  const double phij = 1.0 + 2.0 * std::cos(2.0 * M_PI * j / 5.0);
  return z * sign * std::sqrt(std::complex<double>(phij, 0.0));
}

}  // namespace detail

inline BigComplex FieldElement::to_complex(mpfr_prec_t bits) const {
  const auto& b = detail::primary_basis(bits);
  BigComplex acc(bits);
  for (int i = 0; i < kFieldDegree; ++i) {
    if (num_[i] == 0) continue;
    const BigFloat c(num_[i], bits);
    acc = acc + BigComplex(b.basis[i].re * c, b.basis[i].im * c);
  }
  const BigFloat d(den_, bits);
  return BigComplex(acc.re / d, acc.im / d);
}

inline std::complex<double> FieldElement::embed(int e) const {
  std::complex<double> acc = 0.0;
  for (int i = 0; i < kFieldDegree; ++i) {
    if (num_[i] == 0) continue;
    acc += num_[i].get_d() * detail::basis_embed(e, i);
  }
  return acc / den_.get_d();
}

namespace detail {

// Best rational approximation with denominator at most max_den.
inline std::optional<mpq_class> rationalize(double x, long max_den, double tol) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double y = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(y);
    if (std::abs(a) > 1e15) break;
    const long ai = static_cast<long>(a);
    const long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / q1) < tol) {
      mpq_class r(p1, q1);
      r.canonicalize();
      return r;
    }
    const double frac = y - a;
    if (frac < 1e-15) break;
    y = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace detail

/**
 * Square root of x inside the field, if one exists with small coordinates.
 *
 * Candidates come from the 16 complex embeddings; each surviving candidate is
 * confirmed by squaring exactly, so a returned value is always a true root.
 * A nullopt means no root with denominators below 10^6 was found.
 */
inline std::optional<FieldElement> sqrt_in_field(const FieldElement& x) {
  if (x.is_zero()) return FieldElement();
  using Mat = Eigen::Matrix<std::complex<double>, kFieldDegree, kFieldDegree>;
  using Vec = Eigen::Matrix<std::complex<double>, kFieldDegree, 1>;
  Mat v;
  for (int e = 0; e < kFieldDegree; ++e)
    for (int i = 0; i < kFieldDegree; ++i) v(e, i) = detail::basis_embed(e, i);
  const Mat vinv = v.inverse();
  Vec roots;
  for (int e = 0; e < kFieldDegree; ++e) roots(e) = std::sqrt(x.embed(e));
  Vec y;
  for (std::uint32_t mask = 0; mask < (1u << (kFieldDegree - 1)); ++mask) {
    for (int e = 0; e < kFieldDegree; ++e)
      y(e) = (e > 0 && ((mask >> (e - 1)) & 1u)) ? -roots(e) : roots(e);
    const Vec c = vinv * y;
    bool ok = true;
    std::array<mpq_class, kFieldDegree> q;
    for (int i = 0; i < kFieldDegree && ok; ++i) {
      if (std::abs(c(i).imag()) > 1e-7) {
        ok = false;
        break;
      }
      auto r = detail::rationalize(c(i).real(), 1000000, 1e-8);
      if (!r) ok = false;
      else q[i] = *r;
    }
    if (!ok) continue;
    FieldElement cand = FieldElement::from_coords(q);
    if (cand * cand == x) return cand;
  }
  return std::nullopt;
}

/// phi + 2, the sum of squared quantum dimensions.
inline FieldElement total_dimension_squared() {
  return FieldElement::phi() + FieldElement(2);
}

/**
 * The positive square root of phi + 2 as a field element, or nullopt if the
 * field does not contain it. Computed once per process.
 */
inline const std::optional<FieldElement>& total_dimension_in_field() {
  static const std::optional<FieldElement> d = [] {
    auto r = sqrt_in_field(total_dimension_squared());
    if (r && r->to_complex_double().real() < 0) r = -*r;
    return r;
  }();
  return d;
}

}  // namespace fibwrt
