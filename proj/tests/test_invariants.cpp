#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "edgekit/invariants.hpp"
#include "edgekit/normal_form.hpp"
#include "edgekit/verify.hpp"
#include "support.hpp"

using namespace edgekit;

namespace {

constexpr int N = 6;

SurfaceGerm germ_of(const std::string& map_text) {
    return SurfaceGerm::from_expr_string(map_text, N);
}

// Tangent developable of the unit-pitch helix, ingested as expressions so
// re-centering along the edge is exact.
AdaptedGerm helix_developable() {
    return to_adapted(germ_of(
        "map(cos(u) - v*sin(u), sin(u) + v*cos(u), u + v)"));
}

const double kSqrt2 = std::sqrt(2.0);

}  // namespace

TEST_CASE("model-germ invariants are its coefficients") {
    const double a20 = 0.7, a30 = -0.4, b20 = 0.9, b30 = 0.3, b12 = -0.6,
                 b03 = 1.3;
    const InvariantSet s =
        invariants_at(to_adapted(realize(a20, a30, b20, b30, b12, b03)));
    CHECK(s.kappa_s == doctest::Approx(a20).epsilon(1e-11));
    CHECK(s.kappa_nu == doctest::Approx(b20).epsilon(1e-11));
    CHECK(s.kappa_n == doctest::Approx(b20).epsilon(1e-11));
    CHECK(s.kappa_u == doctest::Approx(b20).epsilon(1e-11));
    CHECK(s.kappa_c == doctest::Approx(b03).epsilon(1e-11));
    CHECK(s.kappa_t == doctest::Approx(b12).epsilon(1e-11));
    CHECK(s.kappa_i == doctest::Approx(b30).epsilon(1e-11));
    CHECK(s.kappa ==
          doctest::Approx(std::hypot(a20, b20)).epsilon(1e-11));
    REQUIRE(s.tau.has_value());
    CHECK(*s.tau == doctest::Approx((a20 * b30 - b20 * a30) /
                                    (a20 * a20 + b20 * b20))
                        .epsilon(1e-9));
}

TEST_CASE("standard cuspidal edge has only cuspidal curvature") {
    const InvariantSet s =
        invariants_at(to_adapted(germ_of("map(u, v^2/2, v^3/6)")));
    CHECK(std::abs(s.kappa_s) <= 1e-12);
    CHECK(std::abs(s.kappa_n) <= 1e-12);
    CHECK(s.kappa_c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(s.kappa_t) <= 1e-12);
    CHECK(std::abs(s.kappa_i) <= 1e-12);
    CHECK(std::abs(s.kappa) <= 1e-12);
    CHECK_FALSE(s.tau.has_value());
}

TEST_CASE("cuspidal curvature of (u, v^2, v^3)") {
    const InvariantSet s =
        invariants_at(to_adapted(germ_of("map(u, v^2, v^3)")));
    CHECK(s.kappa_c == doctest::Approx(3.0 / kSqrt2).epsilon(1e-12));
}

TEST_CASE("helix tangent developable invariants") {
    const AdaptedGerm a = helix_developable();
    for (double u : {0.0, 0.3}) {  // the helix is screw-symmetric
        CAPTURE(u);
        const InvariantSet s = invariants_at(a, u);
        CHECK(s.kappa_s == doctest::Approx(-0.5).epsilon(1e-9));
        CHECK(std::abs(s.kappa_n) <= 1e-9);
        CHECK(s.kappa_c == doctest::Approx(-kSqrt2).epsilon(1e-9));
        CHECK(s.kappa_t == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(s.kappa_i == doctest::Approx(-0.25).epsilon(1e-9));
        CHECK(s.kappa == doctest::Approx(0.5).epsilon(1e-9));
        REQUIRE(s.tau.has_value());
        CHECK(*s.tau == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("invariants are undefined where the edge degenerates") {
    const AdaptedGerm a =
        to_adapted(germ_of("map(u, v^2*(1/2 + u), v^3/6)"));
    CHECK_THROWS_AS(invariants_at(a, -0.5), std::domain_error);
}

TEST_CASE("derivative formulas match numeric differentiation") {
    const double a20 = 0.7, a30 = -0.4, b20 = 0.9, b30 = 0.3, b12 = -0.6,
                 b03 = 1.3;
    const DerivedInvariants d =
        derived_invariants(to_adapted(realize(a20, a30, b20, b30, b12, b03)));
    CHECK(d.kappa_s_prime_formula ==
          doctest::Approx(a30 + b12 * b20).epsilon(1e-11));
    CHECK(d.kappa_n_prime_formula ==
          doctest::Approx(b30 - a20 * b12).epsilon(1e-11));
    REQUIRE(d.kappa_prime_formula.has_value());
    CHECK(*d.kappa_prime_formula ==
          doctest::Approx((a20 * a30 + b20 * b30) / std::hypot(a20, b20))
              .epsilon(1e-11));
    CHECK(d.max_discrepancy <= 1e-6);
}

TEST_CASE("helix developable has constant singular curvature") {
    const DerivedInvariants d = derived_invariants(helix_developable());
    CHECK(std::abs(d.kappa_s_prime_numeric) <= 1e-7);
    CHECK(d.max_discrepancy <= 1e-6);
}

TEST_CASE("curvature relations hold exactly on model germs") {
    const RelationResiduals r = relation_residuals(
        invariants_at(to_adapted(realize(0.7, -0.4, 0.9, 0.3, -0.6, 1.3))));
    CHECK(r.pythagorean_abs <= 1e-10);
    CHECK(r.umbilic_abs <= 1e-10);
}

TEST_CASE("pythagorean residual of the 3-4-5 triple is zero") {
    InvariantSet s;
    s.kappa_s = 3;
    s.kappa_n = 4;
    s.kappa = 5;
    s.kappa_u = 4;
    CHECK(relation_residuals(s).pythagorean_abs == 0.0);
    CHECK(relation_residuals(s).umbilic_abs == 0.0);
}

TEST_CASE("curvature relations hold on random germs") {
    std::mt19937_64 rng(307);
    double worst_pyth = 0, worst_umb = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const AdaptedGerm a = to_adapted(random_cuspidal_edge_germ(rng).germ);
        const RelationResiduals r = relation_residuals(invariants_at(a));
        worst_pyth = std::max(worst_pyth, r.pythagorean_rel);
        worst_umb = std::max(worst_umb, r.umbilic_abs);
    }
    CHECK(worst_pyth <= 1e-8);
    CHECK(worst_umb <= 1e-8);
}

TEST_CASE("tangent sphere of a model germ with b20 = 3") {
    const ContactDescriptor c =
        sphere_center(to_adapted(realize(0.4, 0.1, 3.0, -0.2, 0.3, 1.0)));
    REQUIRE(c.kind == ContactDescriptor::Kind::sphere);
    CHECK(c.epsilon == 1);
    CHECK(c.radius == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
    CHECK(c.center.x == doctest::Approx(0.0));
    CHECK(c.center.y == doctest::Approx(0.0));
    CHECK(c.center.z == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
}

TEST_CASE("tangent plane when the normal curvature vanishes") {
    const ContactDescriptor c =
        sphere_center(to_adapted(realize(0.4, 0.1, 0.0, 0.0, 0.3, 1.0)));
    REQUIRE(c.kind == ContactDescriptor::Kind::plane);
    CHECK(c.point.x == doctest::Approx(0.0));
    CHECK(std::abs(c.normal.z) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("sphere center sits one radius from the edge point") {
    std::mt19937_64 rng(311);
    for (int trial = 0; trial < 20; ++trial) {
        const AdaptedGerm a = to_adapted(random_cuspidal_edge_germ(rng).germ);
        const ContactDescriptor c = sphere_center(a);
        REQUIRE(c.kind == ContactDescriptor::Kind::sphere);
        CHECK(norm(c.center - c.point) ==
              doctest::Approx(c.radius).epsilon(1e-11));
        CHECK(c.radius == doctest::Approx(1.0 / invariants_at(a).kappa_n)
                              .epsilon(1e-11));
    }
}

TEST_CASE("winding identity on a closed tangent developable") {
    // (1,3) torus knot: curvature and torsion are bounded away from zero on
    // the whole period, so every ruling point is a genuine cuspidal edge.
    const std::vector<expr::NodePtr> asts = {
        expr::parse("(2 + cos(3*u)/2)*cos(u)"),
        expr::parse("(2 + cos(3*u)/2)*sin(u)"),
        expr::parse("sin(3*u)/2")};
    const int count = 1200;
    const double dt = 2 * M_PI / count;
    std::vector<KtSample> samples;
    samples.reserve(count);
    for (int i = 0; i < count; ++i) {
        const auto c = testsupport::curve_jet(asts, N, i * dt);
        const AdaptedGerm a = to_adapted(testsupport::developable_germ(c));
        samples.push_back({invariants_at(a).kappa_t,
                           testsupport::curve_torsion(c), norm(c.d1) * dt});
    }
    const WindingResult w = kt_winding(samples);
    CHECK(w.n == 0);
    CHECK(w.gap <= 1e-3);
}

TEST_CASE("winding identity counts synthetic frame turns") {
    for (int k : {1, 2, 5}) {
        CAPTURE(k);
        const int count = 4000;
        const double du = 2 * M_PI / count;
        std::vector<KtSample> samples;
        samples.reserve(count);
        for (int i = 0; i < count; ++i) {
            const double u = i * du;
            const double c3 = 0.3 + 0.1 * std::sin(u);
            samples.push_back({c3 - k, c3, du});
        }
        const WindingResult w = kt_winding(samples);
        CHECK(w.n == k);
        CHECK(w.gap <= 1e-9);
    }
}

TEST_CASE("winding identity on constant zero input") {
    const std::vector<KtSample> samples(1500, KtSample{0.0, 0.0, 0.01});
    const WindingResult w = kt_winding(samples);
    CHECK(w.n == 0);
    CHECK(w.gap == 0.0);
}

TEST_CASE("winding identity rejects bad input") {
    const std::vector<KtSample> few(100, KtSample{0.0, 0.0, 0.01});
    CHECK_THROWS_WITH(kt_winding(few),
                      "insufficient sampling or non-closed curve");
    // A half-turn mismatch cannot be a closed-frame integral.
    const int count = 2000;
    std::vector<KtSample> open;
    open.reserve(count);
    for (int i = 0; i < count; ++i)
        open.push_back({0.0, 0.5, 2 * M_PI / count});
    CHECK_THROWS_WITH(kt_winding(open),
                      "insufficient sampling or non-closed curve");
}

TEST_CASE("invariants do not depend on the adapted frame pair") {
    std::mt19937_64 rng(313);
    for (int g = 0; g < 5; ++g) {
        const AdaptedGerm a = to_adapted(random_cuspidal_edge_germ(rng).germ);
        const InvariantSet s = invariants_at(a);
        for (int trial = 0; trial < 5; ++trial) {
            const Jet2 xi_u = testsupport::random_unit_jet(rng, N);
            const Jet2 xi_v =
                multiply_axis(testsupport::random_jet(rng, N, 0.4), Axis::v, 1);
            const Jet2 eta_u =
                multiply_axis(testsupport::random_jet(rng, N, 0.4), Axis::v, 1);
            Jet2 eta_v = testsupport::random_unit_jet(rng, N);
            if (xi_u.constant_term() * eta_v.constant_term() < 0)
                eta_v = -eta_v;
            const FrameInvariants f =
                invariants_from_frame(a, xi_u, xi_v, eta_u, eta_v);
            CHECK(std::abs(f.kappa_n - s.kappa_n) <= 1e-8);
            CHECK(std::abs(f.kappa_c - s.kappa_c) <= 1e-8);
            CHECK(std::abs(f.kappa_t - s.kappa_t) <= 1e-8);
            CHECK(std::abs(f.kappa_i - s.kappa_i) <= 1e-8);
        }
    }
}

TEST_CASE("simplified torsion formula agrees at orthogonal points") {
    std::mt19937_64 rng(317);
    for (int trial = 0; trial < 10; ++trial) {
        const RandomGerm rg = random_cuspidal_edge_germ(rng);
        const AdaptedGerm a = to_adapted(rg.model);
        // At u = 0 the model has <f_u, f_vv> = 0, so the correction term of
        // the full formula vanishes and the first term is the whole value.
        const Jet2Vec3& J = a.adapted.f;
        const Vec3 fu = J.deriv(1, 0), fvv = J.deriv(0, 2),
                   fuvv = J.deriv(1, 2);
        REQUIRE(std::abs(dot(fu, fvv)) <= 1e-12);
        const Vec3 w = cross(fu, fvv);
        const double simplified = det3(fu, fvv, fuvv) / dot(w, w);
        CHECK(std::abs(simplified - invariants_at(a).kappa_t) <= 1e-10);
    }
}

TEST_CASE("singular curvature sign follows the second-order coefficient") {
    CHECK(invariants_at(to_adapted(realize(0.6, 0.1, 0.8, 0.2, -0.3, 1.0)))
              .kappa_s > 0);
    CHECK(invariants_at(to_adapted(realize(-0.6, 0.1, 0.8, 0.2, -0.3, 1.0)))
              .kappa_s < 0);
}

TEST_CASE("locally bijective projection forces zero torsion at the edge") {
    // Germ shaped like the reduced form with no v^2 term in the third
    // component: projecting out the second component is locally bijective,
    // which is only possible when the cusp-directional torsion vanishes.
    const InvariantSet s = invariants_at(to_adapted(germ_of(
        "map(u, u^2/2 + u^3/12 + v^2/2,"
        "    u^2/3 + u^3/10 + v^3*(1/6 + u/4 + v/5))")));
    CHECK(std::abs(s.kappa_t) <= 1e-10);
}

TEST_CASE("invariants survive rotations and structure-preserving diffeos") {
    std::mt19937_64 rng(331);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    for (int trial = 0; trial < 15; ++trial) {
        const AdaptedGerm a = to_adapted(random_cuspidal_edge_germ(rng).germ);
        const InvariantSet s = invariants_at(a);

        // Source diffeo preserving v = 0, the edge orientation, and the
        // side of v: p = u + ..., q = v * (positive unit).
        Jet2 p = Jet2::variable(N, Axis::u, 0.0);
        p.set_coeff(2, 0, uniform(-0.4, 0.4));
        p.set_coeff(1, 1, uniform(-0.4, 0.4));
        p.set_coeff(0, 2, uniform(-0.4, 0.4));
        Jet2 m = testsupport::random_jet(rng, N, 0.3);
        m.set_coeff(0, 0, uniform(0.6, 1.6));
        const Jet2 q = multiply_axis(m, Axis::v, 1);
        const double scale = uniform(0.5, 1.5);
        const Jet2Vec3 moved =
            rotate(random_rotation(rng), compose(a.adapted.f, p * scale, q));

        const InvariantSet t =
            invariants_at(to_adapted(SurfaceGerm::from_jets(moved)));
        CHECK(std::abs(t.kappa_s - s.kappa_s) <= 1e-8);
        CHECK(std::abs(t.kappa_n - s.kappa_n) <= 1e-8);
        CHECK(std::abs(t.kappa_c - s.kappa_c) <= 1e-8);
        CHECK(std::abs(t.kappa_t - s.kappa_t) <= 1e-8);
        CHECK(std::abs(t.kappa_i - s.kappa_i) <= 1e-8);
    }
}
