#include "edgekit/verify.hpp"

#include <algorithm>
#include <cmath>

#include "edgekit/invariants.hpp"
#include "edgekit/normal_form.hpp"
#include "edgekit/presets.hpp"

namespace edgekit {

Mat3 random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    double q[4], s = 0;
    do {
        for (double& x : q) x = n(rng);
        s = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    } while (s < 1e-6);
    return quaternion_to_matrix(q[0] / s, q[1] / s, q[2] / s, q[3] / s);
}

RandomGerm random_cuspidal_edge_germ(std::mt19937_64& rng, int order) {
    std::uniform_real_distribution<double> sym(-2.0, 2.0);
    std::uniform_real_distribution<double> small(-0.45, 0.45);
    std::uniform_real_distribution<double> big(0.55, 1.0);
    std::uniform_real_distribution<double> mag03(0.3, 2.0);
    std::uniform_real_distribution<double> magb20(0.15, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    RandomGerm out;
    out.tuple = {sym(rng), sym(rng), magb20(rng), sym(rng), sym(rng),
                 (unit(rng) < 0.5 ? -1.0 : 1.0) * mag03(rng)};
    out.model = realize(out.tuple[0], out.tuple[1], out.tuple[2], out.tuple[3],
                        out.tuple[4], out.tuple[5], order);

    // Source diffeomorphism jet: linear part with |q_v| > |q_u| (singular
    // curve stays a well-conditioned graph over u) and determinant bounded
    // away from zero; decaying random higher-order terms.
    double p10, p01, q10, q01, det;
    do {
        p10 = (unit(rng) < 0.5 ? -1.0 : 1.0) * big(rng);
        p01 = small(rng);
        q10 = small(rng);
        q01 = (unit(rng) < 0.5 ? -1.0 : 1.0) * big(rng);
        det = p10 * q01 - p01 * q10;
        if (det < 0) {
            p10 = -p10;
            p01 = -p01;
            det = -det;
        }
    } while (det < 0.25);

    Jet2 p(order, 0.0), q(order, 0.0);
    p.set_coeff(1, 0, p10);
    p.set_coeff(0, 1, p01);
    q.set_coeff(1, 0, q10);
    q.set_coeff(0, 1, q01);
    double decay = 0.3;
    for (int d = 2; d <= order; ++d) {
        decay /= 3.0;
        for (int i = 0; i <= d; ++i) {
            p.set_coeff(i, d - i, small(rng) * decay);
            q.set_coeff(i, d - i, small(rng) * decay);
        }
    }

    const Mat3 r = random_rotation(rng);
    out.germ = SurfaceGerm::from_jets(rotate(r, compose(out.model.f, p, q)),
                                      /*polynomial=*/true);
    return out;
}

namespace {

void push(std::vector<VerifyItem>& items, const std::string& name,
          double residual, double tolerance) {
    items.push_back({name, residual <= tolerance, residual, tolerance});
}

void push_fail(std::vector<VerifyItem>& items, const std::string& name,
               const std::string& why) {
    items.push_back({name + " [" + why + "]", false, 1.0, 0.0});
}

double tuple_distance(const std::array<double, 6>& a,
                      const std::array<double, 6>& b) {
    double m = 0;
    for (int i = 0; i < 6; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

void check_germ(std::vector<VerifyItem>& items, const std::string& name,
                const SurfaceGerm& g, const std::array<double, 6>* expected) {
    const Classification cls = classify(g);
    items.push_back({name + ": classification = cuspidal_edge",
                     cls.kind == Classification::Kind::cuspidal_edge,
                     cls.kind == Classification::Kind::cuspidal_edge ? 0.0
                                                                     : 1.0,
                     0.0});
    if (cls.kind != Classification::Kind::cuspidal_edge) return;

    try {
        const AdaptedGerm a = to_adapted(g);
        const InvariantSet inv = invariants_at(a, 0);
        const RelationResiduals res = relation_residuals(inv);
        push(items, name + ": kappa^2 = kappa_s^2 + kappa_n^2",
             res.pythagorean_rel, 1e-8);
        push(items, name + ": kappa_u = kappa_n", res.umbilic_abs, 1e-8);

        const NormalFormCoefficients nf = reduce(g);
        // Compare trusted coefficients only: the reduction projects the
        // adapted jet onto f_v(u,0) = 0, which replay does not repeat, so
        // untrusted degrees differ by design.
        Jet2Vec3 diff = replay(g, nf.transform_log) - nf.reduced;
        for (int i = 0; i < 3; ++i) diff[i].set_trusted(nf.trusted);
        const double rp =
            std::max({diff.x.max_abs_trusted(), diff.y.max_abs_trusted(),
                      diff.z.max_abs_trusted()});
        push(items, name + ": transform log replays the reduction", rp, 1e-9);

        if (expected)
            push(items, name + ": reduce recovers the source tuple",
                 tuple_distance(nf.tuple(), *expected), 1e-7);

        const DerivedInvariants d = derived_invariants(a);
        push(items, name + ": edge derivatives (numeric vs formula)",
             d.max_discrepancy, 1e-6);
    } catch (const std::exception& e) {
        push_fail(items, name, e.what());
    }
}

}  // namespace

std::vector<VerifyItem> verify_germ(const SurfaceGerm& g,
                                    const std::string& name) {
    std::vector<VerifyItem> items;
    check_germ(items, name, g, nullptr);
    return items;
}

std::vector<VerifyItem> verify_corpus(const VerifyOptions& options) {
    std::vector<VerifyItem> items;
    for (const std::string& name : preset_names())
        check_germ(items, name, preset_germ(name), nullptr);

    std::mt19937_64 rng(options.seed);
    for (int k = 0; k < options.random_count; ++k) {
        const RandomGerm rg = random_cuspidal_edge_germ(rng);
        check_germ(items, "random[" + std::to_string(k) + "]", rg.germ,
                   &rg.tuple);
    }
    return items;
}

}  // namespace edgekit
