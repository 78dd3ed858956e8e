#include <cstdlib>
#include <cstring>

#include "herglotz/kernels.hpp"

namespace herglotz::kernels {

#if HERGLOTZ_HAVE_AVX2
namespace detail {
const Ops& avx2_table();
}

static bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Ops* avx2_backend() {
  static const Ops* table = cpu_has_avx2() ? &detail::avx2_table() : nullptr;
  return table;
}
#else
const Ops* avx2_backend() { return nullptr; }
#endif

static Backend resolve_backend() {
  const char* env = std::getenv("HERGLOTZ_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Backend::Scalar;
  if (env && std::strcmp(env, "avx2") == 0)
    return avx2_backend() ? Backend::Avx2 : Backend::Scalar;
  // auto
  return avx2_backend() ? Backend::Avx2 : Backend::Scalar;
}

Backend active_backend() {
  static const Backend b = resolve_backend();
  return b;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Avx2:
      return "avx2";
    case Backend::Scalar:
    default:
      return "scalar";
  }
}

}  // namespace herglotz::kernels
