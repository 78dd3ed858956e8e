#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace herglotz::linalg {

// Solves the d-by-d system A x = b by LU with partial pivoting; A is
// row-major and both arguments are clobbered (x lands in b). Returns false
// when a pivot falls below the singularity threshold. Sized for the tiny
// Newton systems here (d <= a few dozen), not for general use.
inline bool lu_solve(std::vector<double>& A, std::vector<double>& b, std::size_t d) {
  double scale = 0.0;
  for (double v : A) scale = std::max(scale, std::fabs(v));
  const double tiny = 1e-14 * (1.0 + scale);

  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::fabs(A[r * d + col]) > std::fabs(A[piv * d + col])) piv = r;
    if (std::fabs(A[piv * d + col]) <= tiny) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < d; ++c) std::swap(A[col * d + c], A[piv * d + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < d; ++r) {
      const double f = A[r * d + col] / A[col * d + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < d; ++c) A[r * d + c] -= f * A[col * d + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = d; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < d; ++c) s -= A[r * d + c] * b[c];
    b[r] = s / A[r * d + r];
  }
  return true;
}

}  // namespace herglotz::linalg
