#pragma once

#include <cstddef>

// Grid-length arithmetic kernels. Every operation has a scalar reference
// implementation; on x86-64 an AVX2 variant is compiled alongside and picked
// at runtime when the CPU supports it. The environment variable HERGLOTZ_SIMD
// (auto | scalar | avx2) forces a backend; "avx2" silently degrades to scalar
// when the instruction set is unavailable.
//
// Elementwise kernels (and max_abs/min_val, whose reductions are associative)
// produce bit-identical results on both backends. sum and dot accumulate in a
// different order under AVX2, so callers must not rely on their last few ulps.
//
// Transcendentals (sin, cos, exp, log, pow) are deliberately not kernels:
// they go through libm one element at a time so that grid evaluation matches
// pointwise evaluation exactly.

namespace herglotz::kernels {

enum class Backend { Scalar, Avx2 };

struct Ops {
  void (*fill)(double* out, double c, std::size_t n);
  void (*copy)(const double* x, double* out, std::size_t n);
  void (*neg)(const double* x, double* out, std::size_t n);
  void (*add)(const double* x, const double* y, double* out, std::size_t n);
  void (*sub)(const double* x, const double* y, double* out, std::size_t n);
  void (*mul)(const double* x, const double* y, double* out, std::size_t n);
  // div throws DomainError on a zero divisor, sqrt_el on a negative argument.
  void (*div)(const double* x, const double* y, double* out, std::size_t n);
  void (*sqrt_el)(const double* x, double* out, std::size_t n);
  void (*scale)(const double* x, double c, double* out, std::size_t n);
  // out = a*x + b*y
  void (*axpby)(double a, const double* x, double b, const double* y, double* out,
                std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  double (*min_val)(const double* x, std::size_t n);
};

const Ops& scalar_backend();
// Null when the binary was built without AVX2 support or the CPU lacks it.
const Ops* avx2_backend();

Backend active_backend();
const char* backend_name(Backend b);

// Dispatched entry points.
inline const Ops& ops() {
  const Ops* a = active_backend() == Backend::Avx2 ? avx2_backend() : nullptr;
  return a ? *a : scalar_backend();
}

inline void fill(double* out, double c, std::size_t n) { ops().fill(out, c, n); }
inline void copy(const double* x, double* out, std::size_t n) { ops().copy(x, out, n); }
inline void neg(const double* x, double* out, std::size_t n) { ops().neg(x, out, n); }
inline void add(const double* x, const double* y, double* out, std::size_t n) {
  ops().add(x, y, out, n);
}
inline void sub(const double* x, const double* y, double* out, std::size_t n) {
  ops().sub(x, y, out, n);
}
inline void mul(const double* x, const double* y, double* out, std::size_t n) {
  ops().mul(x, y, out, n);
}
inline void div(const double* x, const double* y, double* out, std::size_t n) {
  ops().div(x, y, out, n);
}
inline void sqrt_el(const double* x, double* out, std::size_t n) {
  ops().sqrt_el(x, out, n);
}
inline void scale(const double* x, double c, double* out, std::size_t n) {
  ops().scale(x, c, out, n);
}
inline void axpby(double a, const double* x, double b, const double* y, double* out,
                  std::size_t n) {
  ops().axpby(a, x, b, y, out, n);
}
inline double sum(const double* x, std::size_t n) { return ops().sum(x, n); }
inline double dot(const double* x, const double* y, std::size_t n) {
  return ops().dot(x, y, n);
}
inline double max_abs(const double* x, std::size_t n) { return ops().max_abs(x, n); }
inline double min_val(const double* x, std::size_t n) { return ops().min_val(x, n); }

}  // namespace herglotz::kernels
