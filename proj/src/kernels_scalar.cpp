#include <cmath>
#include <cstddef>

#include "herglotz/errors.hpp"
#include "herglotz/kernels.hpp"

namespace herglotz::kernels {
namespace {

void s_fill(double* out, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = c;
}

void s_copy(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i];
}

void s_neg(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = -x[i];
}

void s_add(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + y[i];
}

void s_sub(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - y[i];
}

void s_mul(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

void s_div(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] == 0.0) throw DomainError("division by zero");
    out[i] = x[i] / y[i];
  }
}

void s_sqrt(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < 0.0) throw DomainError("sqrt of negative value");
    out[i] = std::sqrt(x[i]);
  }
}

void s_scale(const double* x, double c, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = c * x[i];
}

void s_axpby(double a, const double* x, double b, const double* y, double* out,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double s_sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double s_dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double s_max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

double s_min_val(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

}  // namespace

const Ops& scalar_backend() {
  static const Ops table = {s_fill, s_copy, s_neg,   s_add, s_sub,
                            s_mul,  s_div,  s_sqrt,  s_scale, s_axpby,
                            s_sum,  s_dot,  s_max_abs, s_min_val};
  return table;
}

}  // namespace herglotz::kernels
