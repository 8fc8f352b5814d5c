#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "edgekit/kernels.hpp"

using namespace edgekit::kernels;

namespace {

std::vector<double> random_table(std::mt19937_64& rng, int order) {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    std::vector<double> t(table_size(order));
    for (double& x : t) x = d(rng);
    return t;
}

// Brute-force monomial-by-monomial product, truncated at total degree order.
std::vector<double> schoolbook_mul(const std::vector<double>& a,
                                   const std::vector<double>& b, int order) {
    std::vector<double> out(table_size(order), 0.0);
    for (int i = 0; i <= order; ++i)
        for (int j = 0; j <= order - i; ++j)
            for (int k = 0; k <= order; ++k)
                for (int l = 0; l <= order - k; ++l) {
                    if (i + k + j + l > order) continue;
                    out[row_offset(order, i + k) + j + l] +=
                        a[row_offset(order, i) + j] *
                        b[row_offset(order, k) + l];
                }
    return out;
}

}  // namespace

TEST_CASE("environment override selects the scalar backend") {
    // Must run before anything else calls active(): the choice is cached.
    setenv("EDGEKIT_KERNELS", "scalar", 1);
    CHECK(std::string(active().name) == "scalar");
}

TEST_CASE("row_offset walks the triangular table contiguously") {
    for (int order = 0; order <= 8; ++order) {
        int expect = 0;
        for (int i = 0; i <= order; ++i) {
            CHECK(row_offset(order, i) == expect);
            expect += order - i + 1;
        }
        CHECK(expect == table_size(order));
    }
}

TEST_CASE("multiply matches the schoolbook oracle") {
    std::mt19937_64 rng(101);
    for (int order : {0, 1, 2, 3, 6}) {
        const auto a = random_table(rng, order);
        const auto b = random_table(rng, order);
        const auto want = schoolbook_mul(a, b, order);
        for (const Ops* ops : available()) {
            std::vector<double> got(table_size(order), -1.0);
            ops->mul(got.data(), a.data(), b.data(), order);
            for (size_t i = 0; i < want.size(); ++i)
                CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("all backends produce bitwise-identical results") {
    std::mt19937_64 rng(7);
    const auto backends = available();
    REQUIRE(!backends.empty());
    CHECK(std::string(backends.front()->name) == "scalar");

    for (int order : {1, 3, 6, 9}) {
        const int n = table_size(order);
        const auto a = random_table(rng, order);
        const auto b = random_table(rng, order);

        std::vector<double> ref_mul(n), ref_add(n), ref_sub(n), ref_scale(n),
            ref_axpy(b);
        scalar().mul(ref_mul.data(), a.data(), b.data(), order);
        scalar().add(ref_add.data(), a.data(), b.data(), n);
        scalar().sub(ref_sub.data(), a.data(), b.data(), n);
        scalar().scale(ref_scale.data(), a.data(), 1.7, n);
        scalar().axpy(ref_axpy.data(), -0.3, a.data(), n);

        for (const Ops* ops : backends) {
            std::vector<double> mul(n), add(n), sub(n), scl(n), axpy(b);
            ops->mul(mul.data(), a.data(), b.data(), order);
            ops->add(add.data(), a.data(), b.data(), n);
            ops->sub(sub.data(), a.data(), b.data(), n);
            ops->scale(scl.data(), a.data(), 1.7, n);
            ops->axpy(axpy.data(), -0.3, a.data(), n);
            CHECK(std::memcmp(mul.data(), ref_mul.data(), n * 8) == 0);
            CHECK(std::memcmp(add.data(), ref_add.data(), n * 8) == 0);
            CHECK(std::memcmp(sub.data(), ref_sub.data(), n * 8) == 0);
            CHECK(std::memcmp(scl.data(), ref_scale.data(), n * 8) == 0);
            CHECK(std::memcmp(axpy.data(), ref_axpy.data(), n * 8) == 0);
        }
    }
}

TEST_CASE("multiply by the unit table is the identity") {
    std::mt19937_64 rng(11);
    const int order = 6;
    const auto a = random_table(rng, order);
    std::vector<double> one(table_size(order), 0.0);
    one[0] = 1.0;
    for (const Ops* ops : available()) {
        std::vector<double> got(table_size(order));
        ops->mul(got.data(), a.data(), one.data(), order);
        CHECK(std::memcmp(got.data(), a.data(), got.size() * 8) == 0);
    }
}
