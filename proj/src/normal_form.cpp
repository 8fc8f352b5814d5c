#include "edgekit/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgekit {

namespace {

// Newton inversion in the jet ring: P with f(P(u,v), v) = u.  Requires
// f_u(0) != 0.  The solution's degree-m coefficients depend only on f's
// coefficients of degree <= m, so P inherits f's trusted degree.
Jet2 invert_in_u(const Jet2& f) {
    const int n = f.order();
    const Jet2 uvar = Jet2::variable(n, Axis::u);
    const Jet2 vvar = Jet2::variable(n, Axis::v);
    const Jet2 fu = partial(f, Axis::u);
    Jet2 p = uvar * (1.0 / f.coeff(1, 0));
    for (int it = 0; it < n + 3; ++it) {
        const Jet2 res = compose(f, p, vvar) - uvar;
        if (res.max_abs() <= 10 * f.zero_tolerance()) break;
        p = p - res * reciprocal(compose(fu, p, vvar));
        p.set_coeff(0, 0, 0.0);
    }
    if ((compose(f, p, vvar) - uvar).max_abs() > 10 * f.zero_tolerance())
        throw std::runtime_error("substitution inversion did not converge");
    p.set_trusted(f.trusted());
    return p;
}

// Newton inversion of a v-divisible substitution: W with s(u, W(u,v)) = v.
// Requires s_v(0) != 0; W stays v-divisible.
Jet2 invert_in_v(const Jet2& s) {
    const int n = s.order();
    const Jet2 uvar = Jet2::variable(n, Axis::u);
    const Jet2 vvar = Jet2::variable(n, Axis::v);
    const Jet2 sv = partial(s, Axis::v);
    Jet2 w = vvar * (1.0 / s.coeff(0, 1));
    for (int it = 0; it < n + 3; ++it) {
        const Jet2 res = compose(s, uvar, w) - vvar;
        if (res.max_abs() <= 10 * s.zero_tolerance()) break;
        w = w - res * reciprocal(compose(sv, uvar, w));
        w.set_coeff(0, 0, 0.0);
    }
    if ((compose(s, uvar, w) - vvar).max_abs() > 10 * s.zero_tolerance())
        throw std::runtime_error("substitution inversion did not converge");
    w.set_trusted(s.trusted());
    return w;
}

// Split an adapted component into a(u) + v²·b(u,v).
void split_v2(const Jet2& comp, Jet2& a_part, Jet2& b_part) {
    a_part = restrict_to_axis(comp, Axis::u);
    b_part = factor_out(comp - a_part, Axis::v, 2);
}

void extract(const Jet2Vec3& f, NormalFormCoefficients& o) {
    o.a20 = f.y.deriv(2, 0);
    o.a30 = f.y.deriv(3, 0);
    o.b20 = f.z.deriv(2, 0);
    o.b30 = f.z.deriv(3, 0);
    o.b12 = f.z.deriv(1, 2);
    o.b03 = f.z.deriv(0, 3);
}

Jet2Vec3 cubic_model(const NormalFormCoefficients& o, int n) {
    Jet2Vec3 m(Jet2(n, 0.0), Jet2(n, 0.0), Jet2(n, 0.0));
    m.x.set_coeff(1, 0, 1.0);
    m.y.set_coeff(2, 0, o.a20 / 2);
    m.y.set_coeff(3, 0, o.a30 / 6);
    m.y.set_coeff(0, 2, 0.5);
    m.z.set_coeff(2, 0, o.b20 / 2);
    m.z.set_coeff(3, 0, o.b30 / 6);
    m.z.set_coeff(1, 2, o.b12 / 2);
    m.z.set_coeff(0, 3, o.b03 / 6);
    return m;
}

}  // namespace

NormalFormCoefficients reduce(const SurfaceGerm& g) {
    if (g.order() < 6) throw std::invalid_argument("increase jet order");
    const int n = g.order();
    const Jet2 uvar = Jet2::variable(n, Axis::u);
    const Jet2 vvar = Jet2::variable(n, Axis::v);

    const AdaptedGerm a = to_adapted(g);

    NormalFormCoefficients out;
    auto& log = out.transform_log;
    log.push_back({Transform::Kind::source_substitution, a.change_u,
                   a.change_v, Mat3::identity(),
                   "adapt: singular set to v=0, null direction to dv"});
    Jet2Vec3 f = a.adapted.f;

    // Align the edge tangent with the x-axis.
    const Mat3 r1 = rotation_to_x_axis(f.deriv(1, 0));
    f = rotate(r1, f);
    log.push_back({Transform::Kind::target_rotation, Jet2(), Jet2(), r1,
                   "align edge tangent with x-axis"});

    // Make the first component exactly u (invert it as the new edge
    // parameter).
    const Jet2 p = invert_in_u(f.x);
    f = compose(f, p, vvar);
    log.push_back({Transform::Kind::source_substitution, p, vvar,
                   Mat3::identity(), "normalize edge parameter"});

    // Rotate the normal plane so the v²-coefficient pair points along +y.
    Jet2 a2, b2, a3, b3;
    split_v2(f.y, a2, b2);
    split_v2(f.z, a3, b3);
    const double theta = std::atan2(-b3.constant_term(), b2.constant_term());
    const Mat3 ath = rotation_yz(theta);
    f = rotate(ath, f);
    log.push_back({Transform::Kind::target_rotation, Jet2(), Jet2(), ath,
                   "rotate cusp direction to +y"});

    split_v2(f.y, a2, b2);
    split_v2(f.z, a3, b3);
    if (b2.constant_term() <= 1e-9 * (1.0 + f.y.max_abs()))
        throw std::runtime_error("reduction degenerate — dλ(η)≈0");

    // Scale v so the second component becomes a₂(u) + v²/2: substitute the
    // inverse of v·sqrt(2 b₂).
    const Jet2 s = multiply_axis(sqrt_jet(b2 * 2.0), Axis::v, 1);
    const Jet2 w = invert_in_v(s);
    f = compose(f, uvar, w);
    log.push_back({Transform::Kind::source_substitution, uvar, w,
                   Mat3::identity(), "normalize cusp amplitude"});

    extract(f, out);

    // Sign normalization: force b20 >= 0; at b20 = 0 the involution leaves
    // b20 fixed, so canonicalize a30 >= 0 there instead (a20 is involution-
    // invariant, so it cannot break the remaining tie).
    const double tolc = 1e-9 * (1.0 + f.y.max_abs() + f.z.max_abs());
    const bool flip = out.b20 < -tolc ||
                      (std::abs(out.b20) <= tolc && out.a30 < -tolc);
    if (flip) {
        const Jet2 mu = -uvar, mv = -vvar;
        Mat3 half;
        half.m = {-1, 0, 0, 0, 1, 0, 0, 0, -1};
        f = rotate(half, compose(f, mu, mv));
        log.push_back({Transform::Kind::source_substitution, mu, mv,
                       Mat3::identity(), "edge-reversing involution (source)"});
        log.push_back({Transform::Kind::target_rotation, Jet2(), Jet2(), half,
                       "edge-reversing involution (target half-turn)"});
        out.edge_reversed = true;
        extract(f, out);
    }

    if (std::abs(out.b03) <= 1e-9 * (1.0 + f.z.max_abs()))
        throw std::runtime_error("reduction degenerate — dλ(η)≈0");

    out.reduced = f;
    out.tail = f - cubic_model(out, n);
    out.trusted = f.trusted();
    return out;
}

Jet2Vec3 replay(const SurfaceGerm& g, const std::vector<Transform>& log) {
    Jet2Vec3 f = g.f;
    for (const Transform& t : log)
        f = (t.kind == Transform::Kind::source_substitution)
                ? compose(f, t.p, t.q)
                : rotate(t.rotation, f);
    return f;
}

SurfaceGerm realize(double a20, double a30, double b20, double b30, double b12,
                    double b03, int order) {
    if (std::abs(b03) < 1e-12)
        throw std::invalid_argument("not a cuspidal edge");
    if (b20 < 0)
        throw std::invalid_argument("normal form requires b20 >= 0");
    if (order < 3) throw std::invalid_argument("increase jet order");
    NormalFormCoefficients c;
    c.a20 = a20;
    c.a30 = a30;
    c.b20 = b20;
    c.b30 = b30;
    c.b12 = b12;
    c.b03 = b03;
    return SurfaceGerm::from_jets(cubic_model(c, order), /*polynomial=*/true);
}

EquivalenceResult equivalent_to_order3(const SurfaceGerm& f,
                                       const SurfaceGerm& g) {
    const NormalFormCoefficients cf = reduce(f), cg = reduce(g);
    EquivalenceResult r;

    const auto tf = cf.tuple(), tg = cg.tuple();
    r.equivalent = true;
    for (int i = 0; i < 6; ++i) {
        r.coefficient_difference[i] = tf[i] - tg[i];
        if (std::abs(r.coefficient_difference[i]) > 1e-7) r.equivalent = false;
    }

    // The same decision through the invariant list {κ_s, κ_n, κ_c, κ_t,
    // κ_s′, κ_n′}, written in coefficient form.
    const auto inv6 = [](const NormalFormCoefficients& c) {
        return std::array<double, 6>{c.a20,
                                     c.b20,
                                     c.b03,
                                     c.b12,
                                     c.a30 + c.b12 * c.b20,
                                     c.b30 - c.a20 * c.b12};
    };
    const auto vf = inv6(cf), vg = inv6(cg);
    r.invariants_agree = true;
    for (int i = 0; i < 6; ++i) {
        r.invariant_difference[i] = vf[i] - vg[i];
        if (std::abs(r.invariant_difference[i]) > 1e-7)
            r.invariants_agree = false;
    }
    return r;
}

}  // namespace edgekit
