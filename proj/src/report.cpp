#include "edgekit/report.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace edgekit {

namespace {

using nlohmann::json;

json num(double x) {
    if (!std::isfinite(x)) return "undefined";
    return x;
}

json num(const std::optional<double>& x) {
    if (!x) return "undefined";
    return num(*x);
}

json vec(const Vec3& v) { return json::array({num(v.x), num(v.y), num(v.z)}); }

}  // namespace

Report make_report(const SurfaceGerm& g, double u) {
    Report r;
    r.at_u = u;
    r.jet_order = g.order();
    r.trusted_degree = g.f.trusted();
    r.classification = classify(g);
    if (r.classification.kind != Classification::Kind::cuspidal_edge) {
        r.error = std::string("invariants undefined here (classification: ") +
                  Classification::kind_name(r.classification.kind) + ")";
        return r;
    }
    try {
        const AdaptedGerm a = to_adapted(g);
        InvariantSet inv = invariants_at(a, u);
        try {
            const AdaptedGerm local = (u == 0) ? a : recenter_on_edge(a, u);
            const DerivedInvariants d = derived_invariants(local);
            inv.kappa_s_prime = d.kappa_s_prime_numeric;
            inv.kappa_n_prime = d.kappa_n_prime_numeric;
            inv.kappa_prime = d.kappa_prime_numeric;
        } catch (const std::exception& e) {
            if (r.error.empty()) r.error = e.what();
        }
        r.invariants = inv;
        r.residuals = relation_residuals(inv);
        r.contact = sphere_center(a, u);
    } catch (const std::exception& e) {
        if (r.error.empty()) r.error = e.what();
    }
    try {
        r.normal_form = reduce(g);
        r.trusted_degree = r.normal_form->trusted;
    } catch (const std::exception& e) {
        if (r.error.empty()) r.error = e.what();
    }
    return r;
}

std::string report_to_json(const Report& r) {
    json j;
    j["schema"] = kReportSchema;
    j["version"] = kToolVersion;
    j["at"] = num(r.at_u);
    j["jet_order"] = r.jet_order;
    j["trusted_degree"] = r.trusted_degree;

    json cls;
    cls["kind"] = Classification::kind_name(r.classification.kind);
    cls["rank"] = r.classification.rank;
    cls["dlambda_eta"] = num(r.classification.dlambda_eta);
    cls["detail"] = r.classification.detail;
    j["classification"] = cls;

    if (r.invariants) {
        const InvariantSet& s = *r.invariants;
        json inv;
        inv["kappa_s"] = num(s.kappa_s);
        inv["kappa_nu"] = num(s.kappa_nu);
        inv["kappa_n"] = num(s.kappa_n);
        inv["kappa_u"] = num(s.kappa_u);
        inv["kappa_c"] = num(s.kappa_c);
        inv["kappa_t"] = num(s.kappa_t);
        inv["kappa_i"] = num(s.kappa_i);
        inv["kappa"] = num(s.kappa);
        inv["tau"] = num(s.tau);
        inv["kappa_s_prime"] = num(s.kappa_s_prime);
        inv["kappa_n_prime"] = num(s.kappa_n_prime);
        inv["kappa_prime"] = num(s.kappa_prime);
        j["invariants"] = inv;
    } else {
        j["invariants"] = "undefined";
    }

    if (r.residuals) {
        json res;
        res["pythagorean_abs"] = num(r.residuals->pythagorean_abs);
        res["pythagorean_rel"] = num(r.residuals->pythagorean_rel);
        res["umbilic_abs"] = num(r.residuals->umbilic_abs);
        res["umbilic_rel"] = num(r.residuals->umbilic_rel);
        j["residuals"] = res;
    } else {
        j["residuals"] = "undefined";
    }

    if (r.normal_form) {
        const NormalFormCoefficients& c = *r.normal_form;
        json nf;
        nf["a20"] = num(c.a20);
        nf["a30"] = num(c.a30);
        nf["b20"] = num(c.b20);
        nf["b30"] = num(c.b30);
        nf["b12"] = num(c.b12);
        nf["b03"] = num(c.b03);
        nf["edge_reversed"] = c.edge_reversed;
        nf["trusted"] = c.trusted;
        nf["transforms"] = static_cast<int>(c.transform_log.size());
        j["normal_form"] = nf;
    } else {
        j["normal_form"] = "undefined";
    }

    if (r.contact) {
        const ContactDescriptor& c = *r.contact;
        json ct;
        ct["kind"] =
            c.kind == ContactDescriptor::Kind::sphere ? "sphere" : "plane";
        ct["point"] = vec(c.point);
        ct["normal"] = vec(c.normal);
        if (c.kind == ContactDescriptor::Kind::sphere) {
            ct["center"] = vec(c.center);
            ct["radius"] = num(c.radius);
            ct["epsilon"] = c.epsilon;
        }
        j["contact"] = ct;
    } else {
        j["contact"] = "undefined";
    }

    if (!r.error.empty()) j["error"] = r.error;
    return j.dump(2) + "\n";
}

std::string report_to_text(const Report& r) {
    std::ostringstream os;
    os.precision(12);
    os << "classification: "
       << Classification::kind_name(r.classification.kind)
       << " (rank " << r.classification.rank << ", dlambda_eta "
       << r.classification.dlambda_eta << ")\n";
    os << "jet order " << r.jet_order << ", trusted degree "
       << r.trusted_degree << ", at u = " << r.at_u << "\n";
    if (r.invariants) {
        const InvariantSet& s = *r.invariants;
        os << "kappa_s  = " << s.kappa_s << "\n";
        os << "kappa_nu = " << s.kappa_nu << "   kappa_n = " << s.kappa_n
           << "   kappa_u = " << s.kappa_u << "\n";
        os << "kappa_c  = " << s.kappa_c << "\n";
        os << "kappa_t  = " << s.kappa_t << "\n";
        os << "kappa_i  = " << s.kappa_i << "\n";
        os << "kappa    = " << s.kappa << "   tau = ";
        if (s.tau)
            os << *s.tau;
        else
            os << "undefined";
        os << "\n";
        if (s.kappa_s_prime) os << "kappa_s' = " << *s.kappa_s_prime << "\n";
        if (s.kappa_n_prime) os << "kappa_n' = " << *s.kappa_n_prime << "\n";
        if (s.kappa_prime) os << "kappa'   = " << *s.kappa_prime << "\n";
    }
    if (r.normal_form) {
        const auto& c = *r.normal_form;
        os << "normal form: a20 = " << c.a20 << ", a30 = " << c.a30
           << ", b20 = " << c.b20 << ", b30 = " << c.b30
           << ", b12 = " << c.b12 << ", b03 = " << c.b03
           << (c.edge_reversed ? "  (edge reversed)" : "") << "\n";
    }
    if (r.contact) {
        const auto& c = *r.contact;
        if (c.kind == ContactDescriptor::Kind::sphere)
            os << "contact sphere: center (" << c.center.x << ", "
               << c.center.y << ", " << c.center.z << "), radius " << c.radius
               << ", epsilon " << c.epsilon << "\n";
        else
            os << "contact plane through point, normal (" << c.normal.x
               << ", " << c.normal.y << ", " << c.normal.z << ")\n";
    }
    if (!r.error.empty()) os << "note: " << r.error << "\n";
    return os.str();
}

std::string transform_log_to_text(const NormalFormCoefficients& nf) {
    std::ostringstream os;
    os.precision(12);
    int k = 0;
    for (const Transform& t : nf.transform_log) {
        os << "  [" << k++ << "] ";
        if (t.kind == Transform::Kind::source_substitution) {
            os << "source substitution: " << t.label << "\n";
        } else {
            const auto& m = t.rotation.m;
            os << "target rotation: " << t.label << "  [[" << m[0] << ", "
               << m[1] << ", " << m[2] << "], [" << m[3] << ", " << m[4]
               << ", " << m[5] << "], [" << m[6] << ", " << m[7] << ", "
               << m[8] << "]]\n";
        }
    }
    return os.str();
}

}  // namespace edgekit
