#include "edgekit/jet.hpp"

#include <algorithm>
#include <cmath>

namespace edgekit {
namespace {

const kernels::Ops& ops() { return kernels::active(); }

void require_same_order(const Jet2& a, const Jet2& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("incompatible jet orders");
}

int min_trusted(const Jet2& a, const Jet2& b) {
    return std::min(a.trusted(), b.trusted());
}

}  // namespace

double Jet2::max_abs() const {
    double m = 0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

double Jet2::max_abs_trusted() const {
    double m = 0;
    const int top = std::min(order_, trusted_);
    for (int d = 0; d <= top; ++d)
        for (int i = 0; i <= d; ++i)
            m = std::max(m, std::abs(coeff(i, d - i)));
    return m;
}

// ----- ring operations ------------------------------------------------

Jet2 operator+(const Jet2& a, const Jet2& b) {
    require_same_order(a, b);
    Jet2 r(a.order());
    ops().add(r.data(), a.data(), b.data(), a.size());
    return r.set_trusted(min_trusted(a, b));
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
    require_same_order(a, b);
    Jet2 r(a.order());
    ops().sub(r.data(), a.data(), b.data(), a.size());
    return r.set_trusted(min_trusted(a, b));
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
    require_same_order(a, b);
    Jet2 r(a.order());
    ops().mul(r.data(), a.data(), b.data(), a.order());
    return r.set_trusted(min_trusted(a, b));
}

Jet2 operator-(const Jet2& a) { return a * -1.0; }

Jet2 operator*(const Jet2& a, double s) {
    Jet2 r(a.order());
    ops().scale(r.data(), a.data(), s, a.size());
    return r.set_trusted(a.trusted());
}

Jet2 operator+(const Jet2& a, double s) {
    Jet2 r = a;
    r.set_coeff(0, 0, r.constant_term() + s);
    return r;
}

// ----- compose ---------------------------------------------------------

Jet2 compose(const Jet2& f, const Jet2& p, const Jet2& q) {
    require_same_order(f, p);
    require_same_order(f, q);
    const int n = f.order();

    Jet2 ps = p, qs = q;
    if (std::abs(p.constant_term()) > p.zero_tolerance() ||
        std::abs(q.constant_term()) > q.zero_tolerance())
        throw std::invalid_argument("substitution not origin-preserving");
    ps.set_coeff(0, 0, 0.0);
    qs.set_coeff(0, 0, 0.0);

    // powers of the substituted coordinates
    std::vector<Jet2> pk(n + 1, Jet2(n)), qk(n + 1, Jet2(n));
    pk[0] = Jet2(n, 1.0);
    qk[0] = Jet2(n, 1.0);
    for (int k = 1; k <= n; ++k) {
        pk[k] = pk[k - 1] * ps;
        qk[k] = qk[k - 1] * qs;
    }

    Jet2 out(n, 0.0);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n - i; ++j) {
            const double cij = f.coeff(i, j);
            if (cij == 0.0) continue;
            Jet2 term = (j == 0) ? pk[i] : (i == 0 ? qk[j] : pk[i] * qk[j]);
            ops().axpy(out.data(), cij, term.data(), out.size());
        }
    }
    return out.set_trusted(
        std::min(f.trusted(), std::min(p.trusted(), q.trusted())));
}

// ----- reciprocal / sqrt -----------------------------------------------

Jet2 reciprocal(const Jet2& f) {
    const double c0 = f.constant_term();
    if (std::abs(c0) <= f.zero_tolerance())
        throw std::domain_error("division by non-unit jet");
    const int n = f.order();
    // f = c0 (1 + w); 1/f = (1/c0) sum (-w)^k, Horner form
    Jet2 w = f * (1.0 / c0);
    w.set_coeff(0, 0, 0.0);
    Jet2 r(n, 1.0);
    for (int k = 0; k < n; ++k) {
        r = r * w * -1.0 + 1.0;
    }
    return (r * (1.0 / c0)).set_trusted(f.trusted());
}

Jet2 sqrt_jet(const Jet2& f) {
    const double c0 = f.constant_term();
    if (c0 <= f.zero_tolerance())
        throw std::domain_error("sqrt of non-positive-unit jet");
    const int n = f.order();
    // f = c0 (1 + w); sqrt(f) = sqrt(c0) sum binom(1/2, k) w^k
    Jet2 w = f * (1.0 / c0);
    w.set_coeff(0, 0, 0.0);
    std::vector<double> binom(n + 1);
    binom[0] = 1.0;
    for (int k = 1; k <= n; ++k)
        binom[k] = binom[k - 1] * (0.5 - (k - 1)) / k;
    Jet2 r(n, binom[n]);
    for (int k = n - 1; k >= 0; --k) r = r * w + binom[k];
    return (r * std::sqrt(c0)).set_trusted(f.trusted());
}

// ----- partial / factor_out / shift / eval ------------------------------

Jet2 partial(const Jet2& f, Axis axis) {
    const int n = f.order();
    Jet2 r(n, 0.0);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n - i; ++j) {
            if (axis == Axis::u) {
                if (i + 1 + j <= n) r.set_coeff(i, j, (i + 1) * f.coeff(i + 1, j));
            } else {
                if (i + j + 1 <= n) r.set_coeff(i, j, (j + 1) * f.coeff(i, j + 1));
            }
        }
    return r.set_trusted(f.trusted() - 1);
}

Jet2 factor_out(const Jet2& f, Axis axis, int k) {
    if (k <= 0) throw std::invalid_argument("factor_out requires k >= 1");
    const int n = f.order();
    const double tol = f.zero_tolerance();
    // Divisibility is only decidable on trusted coefficients; the rest carry
    // truncation error and are discarded by the shift anyway.
    const int top = std::min(n, f.trusted());
    for (int i = 0; i <= top; ++i)
        for (int j = 0; j <= top - i; ++j) {
            const int e = (axis == Axis::u) ? i : j;
            if (e < k && std::abs(f.coeff(i, j)) > tol)
                throw std::invalid_argument("not divisible");
        }
    Jet2 r(n, 0.0);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n - i; ++j) {
            const int si = (axis == Axis::u) ? i + k : i;
            const int sj = (axis == Axis::u) ? j : j + k;
            if (si + sj <= n) r.set_coeff(i, j, f.coeff(si, sj));
        }
    return r.set_trusted(f.trusted() - k);
}

Jet2 multiply_axis(const Jet2& f, Axis axis, int k) {
    if (k <= 0) throw std::invalid_argument("multiply_axis requires k >= 1");
    const int n = f.order();
    Jet2 r(n, 0.0);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n - i; ++j) {
            const int si = (axis == Axis::u) ? i - k : i;
            const int sj = (axis == Axis::u) ? j : j - k;
            if (si >= 0 && sj >= 0) r.set_coeff(i, j, f.coeff(si, sj));
        }
    return r.set_trusted(f.trusted() + k);
}

Jet2 shift_basepoint(const Jet2& f, double du, double dv) {
    const int n = f.order();
    // binomial table
    std::vector<std::vector<double>> C(n + 1, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i <= n; ++i) {
        C[i][0] = 1.0;
        for (int j = 1; j <= i; ++j) C[i][j] = C[i - 1][j - 1] + C[i - 1][j];
    }
    std::vector<double> pu(n + 1, 1.0), pv(n + 1, 1.0);
    for (int k = 1; k <= n; ++k) {
        pu[k] = pu[k - 1] * du;
        pv[k] = pv[k - 1] * dv;
    }
    Jet2 r(n, 0.0);
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n - a; ++b) {
            double s = 0;
            for (int i = a; i <= n; ++i)
                for (int j = b; j <= n - i; ++j)
                    s += f.coeff(i, j) * C[i][a] * C[j][b] * pu[i - a] *
                         pv[j - b];
            r.set_coeff(a, b, s);
        }
    return r.set_trusted(f.trusted());
}

double eval(const Jet2& f, double u, double v) {
    const int n = f.order();
    // Horner in u of row polynomials in v.
    double acc = 0;
    for (int i = n; i >= 0; --i) {
        double row = 0;
        for (int j = n - i; j >= 0; --j) row = row * v + f.coeff(i, j);
        acc = acc * u + row;
    }
    return acc;
}

Jet2 restrict_to_axis(const Jet2& f, Axis keep) {
    const int n = f.order();
    Jet2 r(n, 0.0);
    for (int k = 0; k <= n; ++k)
        r.set_coeff(keep == Axis::u ? k : 0, keep == Axis::u ? 0 : k,
                    f.coeff(keep == Axis::u ? k : 0,
                            keep == Axis::u ? 0 : k));
    return r.set_trusted(f.trusted());
}

Jet2 pow_jet(const Jet2& f, int k) {
    if (k < 0) throw std::invalid_argument("pow_jet requires k >= 0");
    Jet2 r(f.order(), 1.0);
    Jet2 base = f;
    int e = k;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return r;
}

// ----- Jet2Vec3 ----------------------------------------------------------

Jet2Vec3::Jet2Vec3(Jet2 x_, Jet2 y_, Jet2 z_)
    : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {
    if (x.order() != y.order() || x.order() != z.order())
        throw std::invalid_argument("incompatible jet orders");
}

int Jet2Vec3::trusted() const {
    return std::min(x.trusted(), std::min(y.trusted(), z.trusted()));
}

Jet2Vec3 operator+(const Jet2Vec3& a, const Jet2Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
Jet2Vec3 operator-(const Jet2Vec3& a, const Jet2Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
Jet2Vec3 operator*(const Jet2Vec3& a, double s) {
    return {a.x * s, a.y * s, a.z * s};
}
Jet2Vec3 operator*(const Jet2& s, const Jet2Vec3& a) {
    return {s * a.x, s * a.y, s * a.z};
}

Jet2 dot(const Jet2Vec3& a, const Jet2Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
Jet2Vec3 cross(const Jet2Vec3& a, const Jet2Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}
Jet2 det3(const Jet2Vec3& a, const Jet2Vec3& b, const Jet2Vec3& c) {
    return dot(a, cross(b, c));
}

Jet2Vec3 compose(const Jet2Vec3& f, const Jet2& p, const Jet2& q) {
    return {compose(f.x, p, q), compose(f.y, p, q), compose(f.z, p, q)};
}
Jet2Vec3 partial(const Jet2Vec3& f, Axis axis) {
    return {partial(f.x, axis), partial(f.y, axis), partial(f.z, axis)};
}
Jet2Vec3 factor_out(const Jet2Vec3& f, Axis axis, int k) {
    return {factor_out(f.x, axis, k), factor_out(f.y, axis, k),
            factor_out(f.z, axis, k)};
}
Jet2Vec3 shift_basepoint(const Jet2Vec3& f, double du, double dv) {
    return {shift_basepoint(f.x, du, dv), shift_basepoint(f.y, du, dv),
            shift_basepoint(f.z, du, dv)};
}
Jet2Vec3 restrict_to_axis(const Jet2Vec3& f, Axis keep) {
    return {restrict_to_axis(f.x, keep), restrict_to_axis(f.y, keep),
            restrict_to_axis(f.z, keep)};
}
Vec3 eval(const Jet2Vec3& f, double u, double v) {
    return {eval(f.x, u, v), eval(f.y, u, v), eval(f.z, u, v)};
}

Jet2Vec3 rotate(const Mat3& r, const Jet2Vec3& f) {
    return {f.x * r.m[0] + f.y * r.m[1] + f.z * r.m[2],
            f.x * r.m[3] + f.y * r.m[4] + f.z * r.m[5],
            f.x * r.m[6] + f.y * r.m[7] + f.z * r.m[8]};
}

}  // namespace edgekit
