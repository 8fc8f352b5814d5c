#include "edgekit/germ.hpp"

#include <cmath>
#include <stdexcept>

#include "edgekit/forms.hpp"

namespace edgekit {

// ----- SurfaceGerm ---------------------------------------------------------

static Jet2Vec3 translate_to_origin(Jet2Vec3 f, Vec3& offset) {
    offset = f.constant_term();
    for (int i = 0; i < 3; ++i) f[i].set_coeff(0, 0, 0.0);
    return f;
}

SurfaceGerm SurfaceGerm::from_jets(Jet2Vec3 jets, bool polynomial) {
    SurfaceGerm g;
    g.f = translate_to_origin(std::move(jets), g.offset);
    g.backing = polynomial ? Backing::polynomial : Backing::jets_only;
    return g;
}

SurfaceGerm SurfaceGerm::from_table(const std::string& json_text) {
    return from_jets(expr::load_table(json_text), /*polynomial=*/true);
}

SurfaceGerm SurfaceGerm::from_exprs(const std::array<expr::NodePtr, 3>& asts,
                                    int order, double u0, double v0) {
    SurfaceGerm g;
    Jet2Vec3 jets(expr::elevate(asts[0], order, u0, v0),
                  expr::elevate(asts[1], order, u0, v0),
                  expr::elevate(asts[2], order, u0, v0));
    g.f = translate_to_origin(std::move(jets), g.offset);
    g.backing = Backing::expression;
    g.asts = asts;
    g.base_u = u0;
    g.base_v = v0;
    return g;
}

SurfaceGerm SurfaceGerm::from_expr_string(const std::string& map_text,
                                          int order, double u0, double v0) {
    return from_exprs(expr::parse_map(map_text), order, u0, v0);
}

Vec3 SurfaceGerm::evaluate(double du, double dv) const {
    switch (backing) {
        case Backing::polynomial:
            return eval(f, du, dv);
        case Backing::expression: {
            Vec3 raw{expr::eval(asts[0], base_u + du, base_v + dv),
                     expr::eval(asts[1], base_u + du, base_v + dv),
                     expr::eval(asts[2], base_u + du, base_v + dv)};
            return raw - offset;
        }
        default:
            throw std::logic_error("germ has no closed-form evaluator");
    }
}

SurfaceGerm SurfaceGerm::recenter(double du, double dv) const {
    if (backing == Backing::expression)
        return from_exprs(asts, order(), base_u + du, base_v + dv);
    // Polynomial shift.  Exact for polynomial backing; for jets_only the
    // truncated tail makes this approximate, which downstream consumers must
    // absorb (the invariants layer re-solves for the singular set).
    return from_jets(shift_basepoint(f, du, dv),
                     backing == Backing::polynomial);
}

// ----- pointwise linear algebra ---------------------------------------------

int differential_rank(const SurfaceGerm& g) {
    const Vec3 fu = g.f.deriv(1, 0), fv = g.f.deriv(0, 1);
    const auto sv = singular_values_2col(dot(fu, fu), dot(fu, fv), dot(fv, fv));
    const double s1 = sv[0];
    // Gram eigenvalues carry only half the digits for the small singular
    // value; recover it from the exact identity s1*s2 = |fu x fv|.
    const double s2 = s1 > 0 ? norm(cross(fu, fv)) / s1 : 0.0;
    const double thr = 1e-9 * (1.0 + s1);
    return (s1 > thr ? 1 : 0) + (s2 > thr ? 1 : 0);
}

Jet2Vec3 unit_normal(const SurfaceGerm& g, double residual_slack) {
    const Jet2Vec3 fu = partial(g.f, Axis::u);
    Jet2Vec3 fv = partial(g.f, Axis::v);
    for (int i = 0; i < 3; ++i) {
        const Jet2 on_axis = restrict_to_axis(fv[i], Axis::u);
        if (on_axis.max_abs_trusted() >
            10 * residual_slack * fv[i].zero_tolerance())
            throw std::invalid_argument(
                "germ not adapted (f_v must vanish on v = 0)");
        // The on-axis residue passed the check; drop it so the division
        // below is exact.
        for (int k = 0; k <= fv[i].order(); ++k) fv[i].set_coeff(k, 0, 0.0);
    }
    const Jet2Vec3 h = factor_out(fv, Axis::v, 1);
    const Jet2Vec3 w = cross(fu, h);
    const double scale =
        1.0 + norm(fu.constant_term()) * norm(h.constant_term());
    if (norm(w.constant_term()) <= 1e-9 * scale)
        throw std::domain_error("normal undefined (degenerate germ)");
    return reciprocal(sqrt_jet(dot(w, w))) * w;
}

Jet2 area_density(const SurfaceGerm& g, const Jet2Vec3& nu) {
    return det3(partial(g.f, Axis::u), partial(g.f, Axis::v), nu);
}

// ----- classification --------------------------------------------------------

const char* Classification::kind_name(Kind k) {
    switch (k) {
        case Kind::regular: return "regular";
        case Kind::cuspidal_edge: return "cuspidal_edge";
        case Kind::degenerate_singularity: return "degenerate_singularity";
        case Kind::frontal_not_front: return "frontal_not_front";
        case Kind::corank2: return "corank2";
    }
    return "unknown";
}

Classification classify(const SurfaceGerm& g) {
    Classification c;
    c.rank = differential_rank(g);
    if (c.rank == 2) {
        c.kind = Classification::Kind::regular;
        c.detail = "immersive at the origin";
        return c;
    }
    if (c.rank == 0) {
        c.kind = Classification::Kind::corank2;
        c.detail = "df(0) = 0";
        return c;
    }

    const detail::AdaptAttempt attempt = detail::try_adapt(g);
    if (!attempt.ok) {
        c.kind = Classification::Kind::degenerate_singularity;
        c.dlambda_eta = attempt.dlambda_eta;
        c.detail = attempt.error;
        return c;
    }
    const AdaptedGerm& a = *attempt.adapted;
    c.dlambda_eta = a.dlambda_eta();
    c.lambda_gradient = {a.lambda.coeff(1, 0), a.lambda.coeff(0, 1)};
    if (c.dlambda_eta <= a.lambda.zero_tolerance()) {
        c.kind = Classification::Kind::degenerate_singularity;
        c.detail = "dλ(η)(0) ≈ 0";
        return c;
    }
    const auto [sv2, scale] = detail::front_condition_sv(a);
    if (sv2 <= 1e-8 * scale) {
        c.kind = Classification::Kind::frontal_not_front;
        c.detail = "(df, dν)(0) has rank < 2";
        return c;
    }
    c.kind = Classification::Kind::cuspidal_edge;
    c.detail = "front with dλ(η)(0) != 0";
    return c;
}

// ----- singular curve ---------------------------------------------------------

SingularCurve singular_curve(const SurfaceGerm& g) {
    const int n = g.order();
    const Jet2Vec3 fu = partial(g.f, Axis::u);
    const Jet2Vec3 fv = partial(g.f, Axis::v);
    const Jet2Vec3 c = cross(fu, fv);

    double best_grad = 0, table_scale = 0;
    int best = -1;
    for (int i = 0; i < 3; ++i) {
        table_scale = std::max(table_scale, c[i].max_abs());
        const double grad = std::hypot(c[i].coeff(1, 0), c[i].coeff(0, 1));
        if (grad > best_grad) {
            best_grad = grad;
            best = i;
        }
    }
    if (best < 0 || best_grad <= 1e-9 * (1.0 + table_scale))
        throw std::domain_error("degenerate singular point");

    const Jet2& w = c[best];
    if (std::abs(w.coeff(0, 1)) <= 1e-9 * (1.0 + best_grad))
        throw std::invalid_argument("transversality failure, swap coordinates");

    // Newton in the jet ring for v = graph(u) with w(u, graph(u)) = 0.
    const Jet2 uvar = Jet2::variable(n, Axis::u);
    const Jet2 wv = partial(w, Axis::v);
    Jet2 graph(n, 0.0);
    bool converged = false;
    for (int it = 0; it < n + 3 && !converged; ++it) {
        Jet2 res = compose(w, uvar, graph);
        if (res.max_abs() <= 10 * w.zero_tolerance()) {
            converged = true;
            break;
        }
        graph = graph - res * reciprocal(compose(wv, uvar, graph));
        graph.set_coeff(0, 0, 0.0);
    }
    if (!converged &&
        compose(w, uvar, graph).max_abs() > 10 * w.zero_tolerance())
        throw std::domain_error("degenerate singular point");
    // A solution coefficient of degree m depends only on data coefficients of
    // degree <= m, so the pessimistic minimum taken inside the Newton update
    // is tightened back to the data's trusted degree.
    graph.set_trusted(w.trusted());

    // All three cross-product components must vanish along the curve, or the
    // differential does not actually drop rank there.
    for (int i = 0; i < 3; ++i)
        if (compose(c[i], uvar, graph).max_abs_trusted() >
            50 * c[i].zero_tolerance())
            throw std::domain_error("degenerate singular point");

    // Null field: the kernel of the first fundamental form along the curve.
    const Jet2Vec3 au = compose(fu, uvar, graph);
    const Jet2Vec3 av = compose(fv, uvar, graph);
    const Jet2 ee = dot(au, au), ff = dot(au, av), gg = dot(av, av);
    Jet2 du_dir, dv_dir;
    if (ee.constant_term() >= gg.constant_term()) {
        du_dir = -ff;
        dv_dir = ee;
    } else {
        du_dir = gg;
        dv_dir = -ff;
    }
    Jet2 len2 = du_dir * du_dir + dv_dir * dv_dir;
    const double dir_scale =
        1.0 + std::max(ee.constant_term(), gg.constant_term());
    if (std::sqrt(len2.constant_term()) <= 1e-9 * dir_scale)
        throw std::domain_error("degenerate singular point");
    const Jet2 inv_len = reciprocal(sqrt_jet(len2));
    Jet2 eta_u = du_dir * inv_len, eta_v = dv_dir * inv_len;

    // Orient so (curve tangent (1, graph'(0)), η) is positively oriented.
    const double turn = eta_v.constant_term() -
                        graph.coeff(1, 0) * eta_u.constant_term();
    if (turn < 0) {
        eta_u = -eta_u;
        eta_v = -eta_v;
    }
    return {graph, eta_u, eta_v};
}

}  // namespace edgekit
