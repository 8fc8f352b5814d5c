#include "edgekit/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#if defined(__x86_64__) || defined(__i386__)
#define EDGEKIT_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#endif
#if defined(__aarch64__)
#define EDGEKIT_HAVE_NEON_BUILD 1
#include <arm_neon.h>
#endif

namespace edgekit::kernels {
namespace {

// ----- scalar reference ------------------------------------------------

void mul_scalar(double* out, const double* a, const double* b, int order) {
    assert(out != a && out != b);
    std::memset(out, 0, sizeof(double) * table_size(order));
    for (int i = 0; i <= order; ++i) {
        const double* arow = a + row_offset(order, i);
        for (int j = 0; j <= order - i; ++j) {
            const double aij = arow[j];
            // multiply the monomial u^i v^j by every row of b that fits
            for (int k = 0; k <= order - i - j; ++k) {
                const double* brow = b + row_offset(order, k);
                double* orow = out + row_offset(order, i + k) + j;
                const int len = order - i - j - k + 1;
                for (int l = 0; l < len; ++l)
                    orow[l] = std::fma(aij, brow[l], orow[l]);
            }
        }
    }
}

void add_scalar(double* out, const double* a, const double* b, int n) {
    for (int i = 0; i < n; ++i) out[i] = a[i] + b[i];
}
void sub_scalar(double* out, const double* a, const double* b, int n) {
    for (int i = 0; i < n; ++i) out[i] = a[i] - b[i];
}
void scale_scalar(double* out, const double* a, double s, int n) {
    for (int i = 0; i < n; ++i) out[i] = a[i] * s;
}
void axpy_scalar(double* out, double s, const double* x, int n) {
    for (int i = 0; i < n; ++i) out[i] = std::fma(s, x[i], out[i]);
}

constexpr Ops kScalar{"scalar", mul_scalar, add_scalar, sub_scalar,
                      scale_scalar, axpy_scalar};

// ----- AVX2 + FMA -------------------------------------------------------

#ifdef EDGEKIT_HAVE_AVX2_BUILD

__attribute__((target("avx2,fma"))) void mul_avx2(double* out, const double* a,
                                                  const double* b, int order) {
    assert(out != a && out != b);
    std::memset(out, 0, sizeof(double) * table_size(order));
    for (int i = 0; i <= order; ++i) {
        const double* arow = a + row_offset(order, i);
        for (int j = 0; j <= order - i; ++j) {
            const double aij = arow[j];
            const __m256d va = _mm256_set1_pd(aij);
            for (int k = 0; k <= order - i - j; ++k) {
                const double* brow = b + row_offset(order, k);
                double* orow = out + row_offset(order, i + k) + j;
                const int len = order - i - j - k + 1;
                int l = 0;
                for (; l + 4 <= len; l += 4) {
                    __m256d vo = _mm256_loadu_pd(orow + l);
                    __m256d vb = _mm256_loadu_pd(brow + l);
                    vo = _mm256_fmadd_pd(va, vb, vo);
                    _mm256_storeu_pd(orow + l, vo);
                }
                for (; l < len; ++l)
                    orow[l] = std::fma(aij, brow[l], orow[l]);
            }
        }
    }
}

__attribute__((target("avx2,fma"))) void add_avx2(double* out, const double* a,
                                                  const double* b, int n) {
    int i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] + b[i];
}
__attribute__((target("avx2,fma"))) void sub_avx2(double* out, const double* a,
                                                  const double* b, int n) {
    int i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] - b[i];
}
__attribute__((target("avx2,fma"))) void scale_avx2(double* out,
                                                    const double* a, double s,
                                                    int n) {
    const __m256d vs = _mm256_set1_pd(s);
    int i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
    for (; i < n; ++i) out[i] = a[i] * s;
}
__attribute__((target("avx2,fma"))) void axpy_avx2(double* out, double s,
                                                   const double* x, int n) {
    const __m256d vs = _mm256_set1_pd(s);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vo = _mm256_loadu_pd(out + i);
        vo = _mm256_fmadd_pd(vs, _mm256_loadu_pd(x + i), vo);
        _mm256_storeu_pd(out + i, vo);
    }
    for (; i < n; ++i) out[i] = std::fma(s, x[i], out[i]);
}

constexpr Ops kAvx2{"avx2", mul_avx2, add_avx2, sub_avx2, scale_avx2,
                    axpy_avx2};

bool avx2_usable() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#endif  // EDGEKIT_HAVE_AVX2_BUILD

// ----- NEON -------------------------------------------------------------

#ifdef EDGEKIT_HAVE_NEON_BUILD

void mul_neon(double* out, const double* a, const double* b, int order) {
    assert(out != a && out != b);
    std::memset(out, 0, sizeof(double) * table_size(order));
    for (int i = 0; i <= order; ++i) {
        const double* arow = a + row_offset(order, i);
        for (int j = 0; j <= order - i; ++j) {
            const double aij = arow[j];
            const float64x2_t va = vdupq_n_f64(aij);
            for (int k = 0; k <= order - i - j; ++k) {
                const double* brow = b + row_offset(order, k);
                double* orow = out + row_offset(order, i + k) + j;
                const int len = order - i - j - k + 1;
                int l = 0;
                for (; l + 2 <= len; l += 2) {
                    float64x2_t vo = vld1q_f64(orow + l);
                    vo = vfmaq_f64(vo, va, vld1q_f64(brow + l));
                    vst1q_f64(orow + l, vo);
                }
                for (; l < len; ++l)
                    orow[l] = std::fma(aij, brow[l], orow[l]);
            }
        }
    }
}

void add_neon(double* out, const double* a, const double* b, int n) {
    int i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) out[i] = a[i] + b[i];
}
void sub_neon(double* out, const double* a, const double* b, int n) {
    int i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) out[i] = a[i] - b[i];
}
void scale_neon(double* out, const double* a, double s, int n) {
    const float64x2_t vs = vdupq_n_f64(s);
    int i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vs));
    for (; i < n; ++i) out[i] = a[i] * s;
}
void axpy_neon(double* out, double s, const double* x, int n) {
    const float64x2_t vs = vdupq_n_f64(s);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vo = vld1q_f64(out + i);
        vo = vfmaq_f64(vo, vs, vld1q_f64(x + i));
        vst1q_f64(out + i, vo);
    }
    for (; i < n; ++i) out[i] = std::fma(s, x[i], out[i]);
}

constexpr Ops kNeon{"neon", mul_neon, add_neon, sub_neon, scale_neon,
                    axpy_neon};

#endif  // EDGEKIT_HAVE_NEON_BUILD

const Ops* pick_active() {
    const char* env = std::getenv("EDGEKIT_KERNELS");
    if (env) {
        const std::string want(env);
        if (want == "scalar") return &kScalar;
#ifdef EDGEKIT_HAVE_AVX2_BUILD
        if (want == "avx2" && avx2_usable()) return &kAvx2;
#endif
#ifdef EDGEKIT_HAVE_NEON_BUILD
        if (want == "neon") return &kNeon;
#endif
        return &kScalar;  // unknown/unavailable name: fall back
    }
    if (const Ops* s = simd()) return s;
    return &kScalar;
}

}  // namespace

const Ops& scalar() { return kScalar; }

const Ops* simd() {
#ifdef EDGEKIT_HAVE_AVX2_BUILD
    if (avx2_usable()) return &kAvx2;
#endif
#ifdef EDGEKIT_HAVE_NEON_BUILD
    return &kNeon;
#endif
    return nullptr;
}

const Ops& active() {
    static const Ops* chosen = pick_active();
    return *chosen;
}

std::vector<const Ops*> available() {
    std::vector<const Ops*> v{&kScalar};
    if (const Ops* s = simd()) v.push_back(s);
    return v;
}

}  // namespace edgekit::kernels
