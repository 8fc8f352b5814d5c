#include "edgekit/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edgekit/normal_form.hpp"

namespace edgekit {

namespace {

constexpr double kPi = 3.14159265358979323846;

InvariantSet invariants_at_origin(const AdaptedGerm& a) {
    const Jet2Vec3& f = a.adapted.f;
    const Vec3 fu = f.deriv(1, 0);
    const Vec3 fuu = f.deriv(2, 0);
    const Vec3 fuuu = f.deriv(3, 0);
    const Vec3 fvv = f.deriv(0, 2);
    const Vec3 fuvv = f.deriv(1, 2);
    const Vec3 fvvv = f.deriv(0, 3);
    const Vec3 nu = a.normal.constant_term();

    const double e1 = norm(fu);            // |f_u|
    const double e2 = e1 * e1;             // first form E
    const Vec3 cr = cross(fu, fvv);        // f_u × f_vv
    const double crn = norm(cr);
    if (e1 <= 1e-12 || crn <= 1e-9 * (1.0 + e1 * norm(fvv)))
        throw std::domain_error("invariants undefined here");

    InvariantSet s;
    // Singular curvature: sgn(dλ(η)) det(f_u, f_uu, ν)/|f_u|³ with dλ(η) > 0
    // by the normal's orientation.
    s.kappa_s = det3(fu, fuu, nu) / (e2 * e1);
    // Signed limiting normal curvature ⟨γ̂″, ν⟩/|γ̂′|², written through the
    // determinant so the κ_n route is independent of the parabola route.
    s.kappa_nu = det3(fu, fvv, fuu) / (e2 * crn);
    s.kappa_n = std::abs(s.kappa_nu);
    s.kappa_u = curvature_parabola(a).kappa_u;
    // Cuspidal curvature.
    s.kappa_c = std::pow(e1, 1.5) * det3(fu, fvv, fvvv) / std::pow(crn, 2.5);
    // Cusp-directional torsion, full two-term form (the second term vanishes
    // exactly when ⟨f_u, f_vv⟩ = 0).
    s.kappa_t = det3(fu, fvv, fuvv) / (crn * crn) -
                det3(fu, fvv, fuu) * dot(fu, fvv) / (e2 * crn * crn);
    // Edge inflectional curvature.
    s.kappa_i = det3(fu, fvv, fuuu) / (e2 * e1 * crn) -
                3.0 * dot(fu, fuu) * det3(fu, fvv, fuu) / (e2 * e2 * e1 * crn);
    // Frenet data of the edge curve γ̂(u) = f(u, 0).
    const Vec3 gcross = cross(fu, fuu);
    s.kappa = norm(gcross) / (e2 * e1);
    if (s.kappa > 1e-9)
        s.tau = det3(fu, fuu, fuuu) / dot(gcross, gcross);
    return s;
}

}  // namespace

AdaptedGerm recenter_on_edge(const AdaptedGerm& a, double u) {
    // Map the edge point through the chart change, then re-expand there.
    const double su = eval(a.change_u, u, 0.0);
    const double sv = eval(a.change_v, u, 0.0);
    SurfaceGerm g = a.original.recenter(su, sv);

    // The chart change is a truncated jet, so (su, sv) drifts off the true
    // singular set by the truncation error; snap back with a 1-d Newton on
    // the dominant cross-product component.
    for (int it = 0; it < 4; ++it) {
        const Jet2Vec3 c =
            cross(partial(g.f, Axis::u), partial(g.f, Axis::v));
        int best = -1;
        double best_grad = 0, scale = 0;
        for (int i = 0; i < 3; ++i) {
            scale = std::max(scale, c[i].max_abs());
            const double grad =
                std::hypot(c[i].coeff(1, 0), c[i].coeff(0, 1));
            if (grad > best_grad) {
                best_grad = grad;
                best = i;
            }
        }
        if (best < 0 || best_grad <= 1e-9 * (1.0 + scale)) break;
        const double val = c[best].constant_term();
        if (std::abs(val) <= 1e-13 * (1.0 + scale)) break;
        const double cu = c[best].coeff(1, 0), cv = c[best].coeff(0, 1);
        if (std::abs(cv) >= std::abs(cu))
            g = g.recenter(0.0, -val / cv);
        else
            g = g.recenter(-val / cu, 0.0);
    }

    try {
        // Slack on the degeneracy guards: the shift leaks the jet table's
        // truncated tail into every degree, scaled by shift^(order - degree).
        return to_adapted(g, 1e4);
    } catch (const std::invalid_argument& e) {
        throw std::domain_error(std::string("invariants undefined here (") +
                                e.what() + ")");
    }
}

InvariantSet invariants_at(const AdaptedGerm& a, double u) {
    if (u == 0.0) return invariants_at_origin(a);
    return invariants_at_origin(recenter_on_edge(a, u));
}

DerivedInvariants derived_invariants(const AdaptedGerm& a) {
    DerivedInvariants d;
    const double h = 1e-3;
    d.step = h;

    // Each off-origin sample re-adapts independently, and that chart may
    // traverse the edge backwards relative to the center chart; the even
    // invariants don't notice, but the signed κ_ν flips with the chart, so
    // reconcile it through tangent continuity.
    const Vec3 t0 = a.adapted.f.deriv(1, 0);
    const auto sample = [&](double u) {
        if (u == 0.0) return invariants_at(a, 0);
        const AdaptedGerm r = recenter_on_edge(a, u);
        InvariantSet s = invariants_at(r, 0);
        if (dot(r.adapted.f.deriv(1, 0), t0) < 0) s.kappa_nu = -s.kappa_nu;
        return s;
    };
    const InvariantSet m2 = sample(-2 * h);
    const InvariantSet m1 = sample(-h);
    const InvariantSet c0 = sample(0);
    const InvariantSet p1 = sample(h);
    const InvariantSet p2 = sample(2 * h);

    // d/ds = (1/|γ̂′|) d/du in the adapted chart.
    const double speed = norm(a.adapted.f.deriv(1, 0));
    const auto D = [&](double f_m2, double f_m1, double f_p1, double f_p2) {
        return (f_m2 - 8 * f_m1 + 8 * f_p1 - f_p2) / (12 * h) / speed;
    };

    d.kappa_s_prime_numeric =
        D(m2.kappa_s, m1.kappa_s, p1.kappa_s, p2.kappa_s);
    // κ_n = |κ_ν|: differentiate the signed value, then restore the sign.
    const double sig_nu = c0.kappa_nu >= 0 ? 1.0 : -1.0;
    d.kappa_n_prime_numeric =
        sig_nu * D(m2.kappa_nu, m1.kappa_nu, p1.kappa_nu, p2.kappa_nu);
    if (c0.kappa > 1e-9)
        d.kappa_prime_numeric = D(m2.kappa, m1.kappa, p1.kappa, p2.kappa);

    // Coefficient formulas on the reduced normal form.  When the reduction
    // reversed the edge, arc-length derivatives of the even invariants change
    // sign relative to this chart, hence the σ factor.
    const NormalFormCoefficients nf = reduce(a.original);
    const double sigma = nf.edge_reversed ? -1.0 : 1.0;
    d.kappa_s_prime_formula = sigma * (nf.a30 + nf.b12 * nf.b20);
    d.kappa_n_prime_formula = sigma * (nf.b30 - nf.a20 * nf.b12);
    const double k0 = std::hypot(nf.a20, nf.b20);
    if (k0 > 1e-9)
        d.kappa_prime_formula =
            sigma * (nf.a20 * nf.a30 + nf.b20 * nf.b30) / k0;

    d.max_discrepancy = std::max(
        std::abs(d.kappa_s_prime_numeric - d.kappa_s_prime_formula),
        std::abs(d.kappa_n_prime_numeric - d.kappa_n_prime_formula));
    if (d.kappa_prime_numeric && d.kappa_prime_formula)
        d.max_discrepancy =
            std::max(d.max_discrepancy,
                     std::abs(*d.kappa_prime_numeric - *d.kappa_prime_formula));
    return d;
}

RelationResiduals relation_residuals(const InvariantSet& s) {
    RelationResiduals r;
    r.pythagorean_abs = std::abs(s.kappa * s.kappa - s.kappa_s * s.kappa_s -
                                 s.kappa_n * s.kappa_n);
    r.pythagorean_rel = r.pythagorean_abs / (1.0 + s.kappa * s.kappa);
    r.umbilic_abs = std::abs(s.kappa_u - s.kappa_n);
    r.umbilic_rel = r.umbilic_abs / (1.0 + s.kappa_n);
    return r;
}

ContactDescriptor sphere_center(const AdaptedGerm& a, double u) {
    const AdaptedGerm local = (u == 0.0) ? a : recenter_on_edge(a, u);
    ContactDescriptor d;
    if (u == 0.0) {
        d.point = {0, 0, 0};
    } else {
        const double su = eval(a.change_u, u, 0.0);
        const double sv = eval(a.change_v, u, 0.0);
        d.point = a.original.has_evaluator() ? a.original.evaluate(su, sv)
                                             : eval(a.original.f, su, sv);
    }
    d.normal = local.normal.constant_term();

    const Vec3 fu = local.adapted.f.deriv(1, 0);
    const Vec3 fuu = local.adapted.f.deriv(2, 0);
    const double ii = dot(fuu, d.normal);          // II_ν(X,X), X = ∂u
    const double kn = std::abs(ii) / dot(fu, fu);  // limiting normal curvature
    if (kn <= 1e-9) {
        d.kind = ContactDescriptor::Kind::plane;
        return d;
    }
    d.kind = ContactDescriptor::Kind::sphere;
    d.epsilon = ii > 0 ? 1 : -1;
    d.radius = 1.0 / kn;
    d.center = d.point + (d.epsilon / kn) * d.normal;
    return d;
}

WindingResult kt_winding(const std::vector<KtSample>& samples,
                         std::size_t min_samples) {
    if (samples.size() < min_samples || samples.size() < 2)
        throw std::runtime_error("insufficient sampling or non-closed curve");
    double int_kt = 0, int_c3 = 0;
    const std::size_t m = samples.size();
    for (std::size_t i = 0; i < m; ++i) {
        const KtSample& s0 = samples[i];
        const KtSample& s1 = samples[(i + 1) % m];
        int_kt += 0.5 * (s0.kappa_t + s1.kappa_t) * s0.du;
        int_c3 += 0.5 * (s0.c3 + s1.c3) * s0.du;
    }
    WindingResult r;
    r.integral_difference = (int_c3 - int_kt) / (2 * kPi);
    r.n = std::lround(r.integral_difference);
    r.gap = std::abs(r.integral_difference - static_cast<double>(r.n));
    if (r.gap > 0.1)
        throw std::runtime_error("insufficient sampling or non-closed curve");
    return r;
}

FrameInvariants invariants_from_frame(const AdaptedGerm& a, const Jet2& xi_u,
                                      const Jet2& xi_v, const Jet2& eta_u,
                                      const Jet2& eta_v) {
    const Jet2Vec3& f = a.adapted.f;
    const auto apply = [](const Jet2& au, const Jet2& av, const Jet2Vec3& w) {
        return au * partial(w, Axis::u) + av * partial(w, Axis::v);
    };
    const Jet2Vec3 xf = apply(xi_u, xi_v, f);
    const Jet2Vec3 xxf = apply(xi_u, xi_v, xf);
    const Jet2Vec3 xxxf = apply(xi_u, xi_v, xxf);
    const Jet2Vec3 eef = apply(eta_u, eta_v, apply(eta_u, eta_v, f));
    const Jet2Vec3 eeef = apply(eta_u, eta_v, eef);
    const Jet2Vec3 xeef = apply(xi_u, xi_v, eef);

    const Vec3 X = xf.constant_term();
    const Vec3 XX = xxf.constant_term();
    const Vec3 XXX = xxxf.constant_term();
    const Vec3 EE = eef.constant_term();
    const Vec3 EEE = eeef.constant_term();
    const Vec3 XEE = xeef.constant_term();

    const double xn = norm(X);
    const double x2 = xn * xn;
    const Vec3 cr = cross(X, EE);
    const double crn = norm(cr);
    if (xn <= 1e-12 || crn <= 1e-12)
        throw std::domain_error("invariants undefined here");

    FrameInvariants r;
    r.kappa_n = std::abs(det3(X, EE, XX)) / (x2 * crn);
    r.kappa_c = std::pow(xn, 1.5) * det3(X, EE, EEE) / std::pow(crn, 2.5);
    r.kappa_t = det3(X, EE, XEE) / (crn * crn) -
                det3(X, EE, XX) * dot(X, EE) / (x2 * crn * crn);
    r.kappa_i = det3(X, EE, XXX) / (x2 * xn * crn) -
                3.0 * dot(X, XX) * det3(X, EE, XX) / (x2 * x2 * xn * crn);
    return r;
}

}  // namespace edgekit
