#include "edgekit/forms.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace edgekit {

namespace {

Jet2Vec3 cross_of_partials(const Jet2Vec3& f) {
    return cross(partial(f, Axis::u), partial(f, Axis::v));
}

// Pick the cross-product component with the largest gradient at 0; returns
// -1 when every gradient is below the degeneracy threshold.
int best_component(const Jet2Vec3& c, double& grad_out) {
    double table_scale = 0, best_grad = 0;
    int best = -1;
    for (int i = 0; i < 3; ++i) {
        table_scale = std::max(table_scale, c[i].max_abs());
        const double grad = std::hypot(c[i].coeff(1, 0), c[i].coeff(0, 1));
        if (grad > best_grad) {
            best_grad = grad;
            best = i;
        }
    }
    grad_out = best_grad;
    if (best < 0 || best_grad <= 1e-9 * (1.0 + table_scale)) return -1;
    return best;
}

// Newton in the jet ring for graph(u) with w(u, graph(u)) = 0, graph(0) = 0.
bool solve_graph(const Jet2& w, Jet2& graph) {
    const int n = w.order();
    const Jet2 uvar = Jet2::variable(n, Axis::u);
    const Jet2 wv = partial(w, Axis::v);
    graph = Jet2(n, 0.0);
    for (int it = 0; it < n + 3; ++it) {
        const Jet2 res = compose(w, uvar, graph);
        if (res.max_abs() <= 10 * w.zero_tolerance()) {
            // Implicit-function dependency: degree-m solution coefficients
            // need only degree <= m data, so restore the data's trusted degree.
            graph.set_trusted(w.trusted());
            return true;
        }
        graph = graph - res * reciprocal(compose(wv, uvar, graph));
        graph.set_coeff(0, 0, 0.0);
    }
    return compose(w, uvar, graph).max_abs() <= 10 * w.zero_tolerance();
}

}  // namespace

namespace detail {

AdaptAttempt try_adapt(const SurfaceGerm& g, double residual_slack) {
    AdaptAttempt out;
    const int n = g.order();
    if (n < 3) {
        out.error = "increase jet order";
        return out;
    }
    const Jet2 uvar = Jet2::variable(n, Axis::u);
    const Jet2 vvar = Jet2::variable(n, Axis::v);

    Jet2Vec3 work = g.f;
    Jet2 P = uvar, Q = vvar;  // accumulated substitution: new chart -> original
    bool swapped = false;

    // The origin must be a singular point.
    {
        const Jet2Vec3 c = cross_of_partials(work);
        double table_scale = 0;
        for (int i = 0; i < 3; ++i)
            table_scale = std::max(table_scale, c[i].max_abs());
        if (norm(c.constant_term()) > 1e-9 * (1.0 + table_scale)) {
            out.error = "origin is not a singular point";
            return out;
        }
        double grad = 0;
        const int best = best_component(c, grad);
        if (best < 0) {
            out.error = "degenerate singular point";
            return out;
        }
        // Quarter-turn when the singular curve runs mostly along the v-axis,
        // so it becomes a graph v = graph(u) with a well-conditioned solve.
        if (std::abs(c[best].coeff(0, 1)) < std::abs(c[best].coeff(1, 0))) {
            swapped = true;
            const Jet2 p = -vvar, q = uvar;
            work = compose(work, p, q);
            P = compose(P, p, q);
            Q = compose(Q, p, q);
        }
    }

    // Straighten the singular curve onto v = 0.
    {
        const Jet2Vec3 c = cross_of_partials(work);
        double grad = 0;
        const int best = best_component(c, grad);
        if (best < 0) {
            out.error = "degenerate singular point";
            return out;
        }
        if (std::abs(c[best].coeff(0, 1)) <= 1e-9 * (1.0 + grad)) {
            out.error = "transversality failure, swap coordinates";
            return out;
        }
        Jet2 graph;
        if (!solve_graph(c[best], graph)) {
            out.error = "degenerate singular point";
            return out;
        }
        const Jet2 q1 = vvar + graph;
        work = compose(work, uvar, q1);
        P = compose(P, uvar, q1);
        Q = compose(Q, uvar, q1);

        // Rank must drop along the whole straightened curve (all components
        // of f_u x f_v vanish on v = 0).
        const Jet2Vec3 c2 = cross_of_partials(work);
        for (int i = 0; i < 3; ++i)
            if (restrict_to_axis(c2[i], Axis::u).max_abs_trusted() >
                50 * residual_slack * c2[i].zero_tolerance()) {
                out.error = "degenerate singular point";
                return out;
            }
    }

    if (norm(work.deriv(1, 0)) <= 1e-9) {
        out.error = "degenerate singular point";
        return out;
    }

    // Shear the null direction onto ∂_v: with μ = <f_u,f_v>/<f_u,f_u> on
    // v = 0, substitute (u, v) -> (u - μ(u) v, v).
    {
        const Jet2Vec3 fu = partial(work, Axis::u);
        const Jet2Vec3 fv = partial(work, Axis::v);
        const Jet2 e0 = restrict_to_axis(dot(fu, fu), Axis::u);
        const Jet2 t0 = restrict_to_axis(dot(fu, fv), Axis::u);
        const Jet2 s = -(t0 * reciprocal(e0));
        const Jet2 p2 = uvar + multiply_axis(s, Axis::v, 1);
        work = compose(work, p2, vvar);
        P = compose(P, p2, vvar);
        Q = compose(Q, p2, vvar);

        const Jet2Vec3 fv2 = partial(work, Axis::v);
        for (int i = 0; i < 3; ++i)
            if (restrict_to_axis(fv2[i], Axis::u).max_abs_trusted() >
                50 * residual_slack * fv2[i].zero_tolerance()) {
                out.error = "degenerate singular point";
                return out;
            }
    }

    // Project onto the adapted-chart constraint f_v(u, 0) = 0: the residue
    // just checked is below tolerance, so zero the v-degree-1 row outright.
    // Downstream consumers (factor_out, unit_normal) then see exact zeros.
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i + 1 <= n; ++i) work[k].set_coeff(i, 1, 0.0);

    SurfaceGerm adapted;
    adapted.f = work;  // jets_only: the chart change has no closed form

    Jet2Vec3 nu;
    try {
        nu = unit_normal(adapted, residual_slack);
    } catch (const std::exception& e) {
        out.error = e.what();
        return out;
    }

    AdaptedGerm a;
    a.original = g;
    a.adapted = std::move(adapted);
    a.change_u = std::move(P);
    a.change_v = std::move(Q);
    a.swapped = swapped;
    a.h = factor_out(partial(work, Axis::v), Axis::v, 1);
    a.normal = std::move(nu);
    a.lambda = area_density(a.adapted, a.normal);
    out.dlambda_eta = a.dlambda_eta();
    out.ok = true;
    out.adapted = std::move(a);
    return out;
}

std::pair<double, double> front_condition_sv(const AdaptedGerm& a) {
    const Vec3 xu = a.adapted.f.deriv(1, 0), xv = a.adapted.f.deriv(0, 1);
    const Vec3 nu = a.normal.deriv(1, 0), nv = a.normal.deriv(0, 1);
    // Second singular value of the stacked 6x2 matrix (df; dnu) via
    // Gram-Schmidt with one re-orthogonalization pass: the Gram-eigenvalue
    // route loses half the digits for near-dependent columns.
    double ac[6] = {xu.x, xu.y, xu.z, nu.x, nu.y, nu.z};
    double bc[6] = {xv.x, xv.y, xv.z, nv.x, nv.y, nv.z};
    auto dot6 = [](const double* p, const double* q) {
        double s = 0;
        for (int i = 0; i < 6; ++i) s += p[i] * q[i];
        return s;
    };
    const double na = std::sqrt(dot6(ac, ac));
    if (na == 0) return {0.0, 1.0};
    double q[6];
    for (int i = 0; i < 6; ++i) q[i] = ac[i] / na;
    double r12 = dot6(q, bc);
    double w[6];
    for (int i = 0; i < 6; ++i) w[i] = bc[i] - r12 * q[i];
    const double corr = dot6(q, w);
    for (int i = 0; i < 6; ++i) w[i] -= corr * q[i];
    r12 += corr;
    const double nw = std::sqrt(dot6(w, w));
    // Singular values of the 2x2 triangle [[na, r12], [0, nw]].
    const double t = na * na + r12 * r12 + nw * nw;
    const double det = na * nw;
    const double s1 =
        std::sqrt(0.5 * (t + std::sqrt(std::max(0.0, t * t - 4 * det * det))));
    const double s2 = s1 > 0 ? det / s1 : 0.0;
    return {s2, 1.0 + s1};
}

}  // namespace detail

AdaptedGerm to_adapted(const SurfaceGerm& g, double residual_slack) {
    detail::AdaptAttempt attempt = detail::try_adapt(g, residual_slack);
    if (!attempt.ok) {
        const int rank = differential_rank(g);
        const char* kind = rank == 2   ? "regular"
                           : rank == 0 ? "corank2"
                                       : "degenerate_singularity";
        throw std::invalid_argument("not a cuspidal edge: " +
                                    std::string(kind) + " (" + attempt.error +
                                    ")");
    }
    AdaptedGerm& a = *attempt.adapted;
    if (a.dlambda_eta() <= a.lambda.zero_tolerance())
        throw std::invalid_argument(
            "not a cuspidal edge: degenerate_singularity (dλ(η)(0) ≈ 0)");
    const auto [sv2, scale] = detail::front_condition_sv(a);
    if (sv2 <= 1e-8 * scale)
        throw std::invalid_argument("not a cuspidal edge: frontal_not_front");
    return std::move(a);
}

FormCoeffs fundamental_forms(const AdaptedGerm& a, double u) {
    const Jet2Vec3 J =
        (u == 0) ? a.adapted.f : shift_basepoint(a.adapted.f, u, 0.0);
    const Jet2Vec3 N = (u == 0) ? a.normal : shift_basepoint(a.normal, u, 0.0);

    const Vec3 fu = J.deriv(1, 0), fv = J.deriv(0, 1);
    FormCoeffs r;
    r.fuu = J.deriv(2, 0);
    r.fuv = J.deriv(1, 1);
    r.fvv = J.deriv(0, 2);
    Vec3 nu0 = N.constant_term();
    const double nn = norm(nu0);
    if (nn <= 1e-12 || norm(fu) <= 1e-12)
        throw std::domain_error("normal undefined (degenerate germ)");
    nu0 = nu0 / nn;  // re-unitize: the shifted jet is only approximately unit

    r.E = dot(fu, fu);
    r.F = dot(fu, fv);
    r.G = dot(fv, fv);
    r.l_nu = dot(r.fuu, nu0);
    r.m_nu = dot(r.fuv, nu0);
    r.n_nu = dot(r.fvv, nu0);
    const Vec3 t = fu / norm(fu);
    r.fuu_perp = r.fuu - dot(r.fuu, t) * t;
    r.fvv_perp = r.fvv - dot(r.fvv, t) * t;
    r.trusted = J.trusted();
    return r;
}

ParabolaDesc curvature_parabola(const AdaptedGerm& a, double u) {
    const FormCoeffs fc = fundamental_forms(a, u);
    ParabolaDesc p;
    p.vertex = fc.fuu_perp / fc.E;
    p.direction = fc.fvv_perp;
    if (norm(p.direction) <= 1e-9 * (1.0 + norm(fc.fvv)))
        throw std::domain_error("parabola degenerate (not a cuspidal edge)");
    // Distance from the normal-plane origin to the parabola's axis line
    // {vertex + t·direction}: both vertex and direction lie in the normal
    // plane, so direction x f_u spans the in-plane normal of that line.
    const Jet2Vec3 J = (u == 0) ? a.adapted.f : shift_basepoint(a.adapted.f, u, 0.0);
    const Vec3 fu = J.deriv(1, 0);
    p.kappa_u = std::abs(det3(p.vertex, p.direction, fu)) /
                norm(cross(p.direction, fu));
    return p;
}

}  // namespace edgekit
