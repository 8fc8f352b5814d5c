#pragma once

// Low-level coefficient kernels for truncated bivariate polynomial
// arithmetic.  A jet of order N stores its monomial coefficients in a dense
// triangular table, row-major by u-exponent: row i holds c_{i0},...,c_{i,N-i}
// contiguously, starting at offset i*(N+1) - i*(i-1)/2.
//
// Every kernel exists in a scalar reference version and, where the target
// supports it, a SIMD version (AVX2+FMA on x86-64, NEON on aarch64).  The
// SIMD multiply vectorizes only the innermost row-accumulation loop, so each
// output element sees contributions in exactly the same order as the scalar
// code; results are therefore required to be bitwise identical, and the
// equivalence tests assert that.  The backend is chosen once at runtime from
// CPU features and can be overridden with EDGEKIT_KERNELS=scalar|avx2|neon.

#include <vector>

namespace edgekit::kernels {

struct Ops {
    const char* name;
    // out = a*b truncated to total degree <= order.  out must not alias a/b.
    void (*mul)(double* out, const double* a, const double* b, int order);
    // elementwise over n coefficients
    void (*add)(double* out, const double* a, const double* b, int n);
    void (*sub)(double* out, const double* a, const double* b, int n);
    void (*scale)(double* out, const double* a, double s, int n);
    void (*axpy)(double* out, double s, const double* x, int n);  // out += s*x
};

// Offset of row i (coefficients with u-exponent i) in the triangular table.
constexpr int row_offset(int order, int i) {
    return i * (order + 1) - i * (i - 1) / 2;
}
constexpr int table_size(int order) { return (order + 1) * (order + 2) / 2; }

const Ops& scalar();            // always available reference implementation
const Ops* simd();              // best SIMD backend for this CPU, or nullptr
const Ops& active();            // dispatch result (env override honored)

// All backends usable on this machine (scalar first); for equivalence tests.
std::vector<const Ops*> available();

}  // namespace edgekit::kernels
