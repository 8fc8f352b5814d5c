#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "edgekit/jet.hpp"
#include "support.hpp"

using namespace edgekit;
using testsupport::random_jet;
using testsupport::random_unit_jet;

namespace {

constexpr int N = 6;

double max_coeff_diff(const Jet2& a, const Jet2& b) {
    REQUIRE(a.order() == b.order());
    double m = 0;
    for (int i = 0; i <= a.order(); ++i)
        for (int j = 0; j <= a.order() - i; ++j)
            m = std::max(m, std::abs(a.coeff(i, j) - b.coeff(i, j)));
    return m;
}

}  // namespace

TEST_CASE("(1+u)(1+v) = 1+u+v+uv") {
    Jet2 a(N, 1.0), b(N, 1.0);
    a.set_coeff(1, 0, 1.0);
    b.set_coeff(0, 1, 1.0);
    const Jet2 p = a * b;
    CHECK(p.coeff(0, 0) == 1.0);
    CHECK(p.coeff(1, 0) == 1.0);
    CHECK(p.coeff(0, 1) == 1.0);
    CHECK(p.coeff(1, 1) == 1.0);
    CHECK(p.coeff(2, 0) == 0.0);
    CHECK(p.coeff(0, 2) == 0.0);
}

TEST_CASE("additive identity and ring axioms on random jets") {
    std::mt19937_64 rng(2024);
    const Jet2 zero(N, 0.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Jet2 a = random_jet(rng, N), b = random_jet(rng, N),
                   c = random_jet(rng, N);
        CHECK(max_coeff_diff(a + zero, a) == 0.0);
        CHECK(max_coeff_diff(a + b, b + a) == 0.0);
        CHECK(max_coeff_diff(a * b, b * a) <= 1e-12);
        CHECK(max_coeff_diff((a + b) + c, a + (b + c)) <= 1e-12);
        CHECK(max_coeff_diff((a * b) * c, a * (b * c)) <= 1e-12);
        CHECK(max_coeff_diff(a * (b + c), a * b + a * c) <= 1e-12);
    }
}

TEST_CASE("order mismatch is rejected") {
    const Jet2 a(4, 1.0), b(6, 1.0);
    CHECK_THROWS_WITH(a + b, "incompatible jet orders");
    CHECK_THROWS_WITH(a * b, "incompatible jet orders");
}

TEST_CASE("compose: x^2 with (u+v, 0)") {
    Jet2 f(N, 0.0);
    f.set_coeff(2, 0, 1.0);  // f(x, y) = x^2
    const Jet2 p =
        Jet2::variable(N, Axis::u) + Jet2::variable(N, Axis::v);  // u + v
    const Jet2 r = compose(f, p, Jet2(N, 0.0));
    CHECK(r.coeff(2, 0) == doctest::Approx(1.0));
    CHECK(r.coeff(1, 1) == doctest::Approx(2.0));
    CHECK(r.coeff(0, 2) == doctest::Approx(1.0));
    CHECK(r.coeff(1, 0) == 0.0);
}

TEST_CASE("compose with the identity substitution is the identity") {
    std::mt19937_64 rng(5);
    const Jet2 f = random_jet(rng, N);
    const Jet2 r =
        compose(f, Jet2::variable(N, Axis::u), Jet2::variable(N, Axis::v));
    CHECK(max_coeff_diff(r, f) <= 1e-14);
}

TEST_CASE("compose: sin series with u^2 matches direct sin(u^2) expansion") {
    // sin(x) = x - x^3/6 + x^5/120; sin(u^2) = u^2 - u^6/6 + O(u^10)
    Jet2 sin_series(N, 0.0);
    sin_series.set_coeff(1, 0, 1.0);
    sin_series.set_coeff(3, 0, -1.0 / 6.0);
    sin_series.set_coeff(5, 0, 1.0 / 120.0);
    Jet2 u2(N, 0.0);
    u2.set_coeff(2, 0, 1.0);
    const Jet2 r = compose(sin_series, u2, Jet2(N, 0.0));
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N - i; ++j) {
            double want = 0.0;
            if (i == 2 && j == 0) want = 1.0;
            if (i == 6 && j == 0) want = -1.0 / 6.0;
            CHECK(r.coeff(i, j) == doctest::Approx(want).epsilon(1e-14));
        }
}

TEST_CASE("compose rejects non-origin-preserving substitutions") {
    const Jet2 f(N, 1.0);
    CHECK_THROWS_WITH(compose(f, Jet2(N, 0.5), Jet2(N, 0.0)),
                      "substitution not origin-preserving");
}

TEST_CASE("compose associativity") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const Jet2 f = random_jet(rng, N);
        Jet2 p(N), q(N), r(N), s(N);
        testsupport::random_diffeo(rng, N, p, q);
        testsupport::random_diffeo(rng, N, r, s);
        const Jet2 left = compose(compose(f, p, q), r, s);
        const Jet2 right = compose(f, compose(p, r, s), compose(q, r, s));
        CHECK(max_coeff_diff(left, right) <= 1e-10);
    }
}

TEST_CASE("reciprocal of 1-u is the geometric series") {
    Jet2 f(N, 1.0);
    f.set_coeff(1, 0, -1.0);
    const Jet2 r = reciprocal(f);
    for (int i = 0; i <= N; ++i)
        CHECK(r.coeff(i, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r.coeff(0, 1) == 0.0);
}

TEST_CASE("reciprocal of a constant") {
    const Jet2 r = reciprocal(Jet2(N, 2.0));
    CHECK(r.coeff(0, 0) == doctest::Approx(0.5));
    CHECK(r.coeff(1, 0) == 0.0);
}

TEST_CASE("f * reciprocal(f) = 1 for random unit jets") {
    std::mt19937_64 rng(23);
    const Jet2 one(N, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Jet2 f = random_unit_jet(rng, N);
        CHECK(max_coeff_diff(f * reciprocal(f), one) <= 1e-10);
    }
}

TEST_CASE("reciprocal rejects non-unit jets") {
    Jet2 f(N, 0.0);
    f.set_coeff(1, 0, 1.0);
    CHECK_THROWS_WITH(reciprocal(f), "division by non-unit jet");
}

TEST_CASE("sqrt of 1+u is the binomial series") {
    Jet2 f(N, 1.0);
    f.set_coeff(1, 0, 1.0);
    const Jet2 r = sqrt_jet(f);
    CHECK(r.coeff(0, 0) == doctest::Approx(1.0));
    CHECK(r.coeff(1, 0) == doctest::Approx(0.5));
    CHECK(r.coeff(2, 0) == doctest::Approx(-1.0 / 8.0));
    CHECK(r.coeff(3, 0) == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("sqrt of a constant") {
    const Jet2 r = sqrt_jet(Jet2(N, 4.0));
    CHECK(r.coeff(0, 0) == doctest::Approx(2.0));
    CHECK(r.coeff(2, 0) == 0.0);
}

TEST_CASE("sqrt self-check: g*g = f") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Jet2 f = random_jet(rng, N);
        f.set_coeff(0, 0, 0.5 + trial * 0.25);
        const Jet2 g = sqrt_jet(f);
        CHECK(max_coeff_diff(g * g, f) <= 1e-10 * (1.0 + f.max_abs()));
        CHECK(g.coeff(0, 0) > 0.0);
    }
}

TEST_CASE("sqrt rejects non-positive-unit jets") {
    CHECK_THROWS_WITH(sqrt_jet(Jet2(N, -1.0)), "sqrt of non-positive-unit jet");
    CHECK_THROWS_WITH(sqrt_jet(Jet2(N, 0.0)), "sqrt of non-positive-unit jet");
}

TEST_CASE("partial derivatives") {
    Jet2 f(N, 0.0);
    f.set_coeff(1, 2, 1.0);  // uv^2
    const Jet2 dv = partial(f, Axis::v);
    CHECK(dv.coeff(1, 1) == doctest::Approx(2.0));  // 2uv
    CHECK(dv.max_abs() == 2.0);

    CHECK(partial(Jet2(N, 3.0), Axis::u).max_abs() == 0.0);

    std::mt19937_64 rng(37);
    const Jet2 g = random_jet(rng, N);
    CHECK(max_coeff_diff(partial(partial(g, Axis::u), Axis::v),
                         partial(partial(g, Axis::v), Axis::u)) == 0.0);
}

TEST_CASE("Leibniz rule") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const Jet2 f = random_jet(rng, N), g = random_jet(rng, N);
        for (Axis ax : {Axis::u, Axis::v}) {
            const Jet2 lhs = partial(f * g, ax);
            const Jet2 rhs = f * partial(g, ax) + g * partial(f, ax);
            // Compare through the trusted degree: the product's top band is
            // not reproducible from truncated factors.
            Jet2 diff = lhs - rhs;
            diff.set_trusted(N - 1);
            CHECK(diff.max_abs_trusted() <= 1e-12 * (1.0 + lhs.max_abs()));
        }
    }
}

TEST_CASE("factor_out examples") {
    Jet2 f(N, 0.0);
    f.set_coeff(1, 1, 1.0);  // uv
    f.set_coeff(0, 2, 1.0);  // v^2
    const Jet2 g = factor_out(f, Axis::v, 1);
    CHECK(g.coeff(1, 0) == 1.0);
    CHECK(g.coeff(0, 1) == 1.0);
    CHECK(g.coeff(1, 1) == 0.0);

    Jet2 v3(N, 0.0);
    v3.set_coeff(0, 3, 1.0);
    const Jet2 v = factor_out(v3, Axis::v, 2);
    CHECK(v.coeff(0, 1) == 1.0);
    CHECK(v.max_abs() == 1.0);
}

TEST_CASE("factor_out rejects non-divisible jets") {
    Jet2 f(N, 0.0);
    f.set_coeff(1, 0, 1.0);  // u is not divisible by v
    CHECK_THROWS_WITH(factor_out(f, Axis::v, 1), "not divisible");
}

TEST_CASE("multiply_axis then factor_out is the identity") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const Jet2 g = random_jet(rng, N);
        const Jet2 back = factor_out(multiply_axis(g, Axis::v, 2), Axis::v, 2);
        // Degrees above N-2 of g are pushed past the truncation boundary and
        // cannot come back.
        for (int i = 0; i <= N; ++i)
            for (int j = 0; j <= N - i; ++j)
                CHECK(back.coeff(i, j) ==
                      (i + j <= N - 2 ? g.coeff(i, j) : 0.0));
    }
}

TEST_CASE("trusted-degree bookkeeping") {
    std::mt19937_64 rng(47);
    const Jet2 f = random_jet(rng, N);
    CHECK(f.trusted() == N);
    CHECK(partial(f, Axis::u).trusted() == N - 1);
    CHECK(multiply_axis(f, Axis::v, 1).trusted() == N);  // capped at order
    CHECK(multiply_axis(partial(f, Axis::u), Axis::v, 1).trusted() == N);
    Jet2 v2g = multiply_axis(f, Axis::v, 2);
    CHECK(factor_out(v2g, Axis::v, 2).trusted() == N - 2);
    Jet2 lowered = f;
    lowered.set_trusted(3);
    CHECK((lowered * f).trusted() == 3);
    CHECK((lowered + f).trusted() == 3);
    Jet2 p(N), q(N);
    testsupport::random_diffeo(rng, N, p, q);
    p.set_trusted(4);
    CHECK(compose(f, p, q).trusted() == 4);
}

TEST_CASE("shift_basepoint recentres the polynomial") {
    std::mt19937_64 rng(53);
    const Jet2 f = random_jet(rng, N);
    const Jet2 s = shift_basepoint(f, 0.3, -0.2);
    // Values agree: s(x, y) = f(0.3 + x, -0.2 + y).
    CHECK(eval(s, 0.0, 0.0) ==
          doctest::Approx(eval(f, 0.3, -0.2)).epsilon(1e-13));
    CHECK(eval(s, 0.05, 0.07) ==
          doctest::Approx(eval(f, 0.35, -0.13)).epsilon(1e-13));
    // Shifting back restores the table.
    CHECK(max_coeff_diff(shift_basepoint(s, -0.3, 0.2), f) <= 1e-12);
}

TEST_CASE("restrict_to_axis keeps one row") {
    std::mt19937_64 rng(59);
    const Jet2 f = random_jet(rng, N);
    const Jet2 ru = restrict_to_axis(f, Axis::u);
    for (int i = 0; i <= N; ++i) CHECK(ru.coeff(i, 0) == f.coeff(i, 0));
    CHECK(ru.coeff(0, 1) == 0.0);
    CHECK(eval(ru, 0.4, 0.0) == doctest::Approx(eval(f, 0.4, 0.0)));
}

TEST_CASE("vector jets: det3 equals cross-dot") {
    std::mt19937_64 rng(61);
    const Jet2Vec3 a{random_jet(rng, N), random_jet(rng, N),
                     random_jet(rng, N)};
    const Jet2Vec3 b{random_jet(rng, N), random_jet(rng, N),
                     random_jet(rng, N)};
    const Jet2Vec3 c{random_jet(rng, N), random_jet(rng, N),
                     random_jet(rng, N)};
    const Jet2 lhs = det3(a, b, c);
    const Jet2 rhs = dot(cross(a, b), c);
    CHECK(max_coeff_diff(lhs, rhs) <= 1e-12 * (1.0 + lhs.max_abs()));
}

TEST_CASE("rotation acts componentwise on vector jets") {
    std::mt19937_64 rng(67);
    const Jet2Vec3 a{random_jet(rng, N), random_jet(rng, N),
                     random_jet(rng, N)};
    const Vec3 ax{0.3, -0.5, 0.8};
    const Mat3 r = axis_angle(ax / norm(ax), 1.2);
    const Jet2Vec3 ra = rotate(r, a);
    // Unit-norm preservation: |ra|^2 = |a|^2 as jets.
    CHECK(max_coeff_diff(dot(ra, ra), dot(a, a)) <=
          1e-12 * (1.0 + dot(a, a).max_abs()));
}
