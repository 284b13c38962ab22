#pragma once

#include <optional>
#include <vector>

#include "fibwrt/rep.hpp"

namespace fibwrt::testing {

using Dense = Representation::DenseMatrix;

inline Dense multiply(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<FieldElement>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline Dense adjoint(const Dense& a) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<FieldElement>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[j][i] = a[i][j].conj();
  return c;
}

inline bool is_identity(const Dense& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j] != FieldElement(i == j ? 1 : 0)) return false;
  return true;
}

/// Scalar s with a = s * b exactly, if one exists.
inline std::optional<FieldElement> proportional(const Dense& a, const Dense& b) {
  std::optional<FieldElement> s;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (b[i][j].is_zero()) {
        if (!a[i][j].is_zero()) return std::nullopt;
        continue;
      }
      const FieldElement r = a[i][j] / b[i][j];
      if (!s) s = r;
      else if (*s != r) return std::nullopt;
    }
  return s;
}

/// Chain-convention intersection: only (a_i,b_i), (b_i,c_i), (b_{i+1},c_i) meet.
inline bool curves_meet(GeneratorId x, GeneratorId y) {
  auto meet = [](GeneratorId u, GeneratorId v) {
    if (u.kind == GeneratorKind::A && v.kind == GeneratorKind::B) return u.handle == v.handle;
    if (u.kind == GeneratorKind::B && v.kind == GeneratorKind::C)
      return u.handle == v.handle || u.handle == v.handle + 1;
    return false;
  };
  return meet(x, y) || meet(y, x);
}

}  // namespace fibwrt::testing
