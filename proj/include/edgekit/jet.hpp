#pragma once

// Truncated bivariate Taylor jets: the computational substrate for all
// derivative extraction and coordinate changes in the library.
//
// A Jet2 of order N stores the monomial coefficients c_{ij} of u^i v^j for
// i+j <= N (that is, (d^{i+j}f / du^i dv^j)(0) / (i! j!)) in a dense
// triangular table, row-major by u-exponent.  All arithmetic truncates at
// total degree N.
//
// Alongside the order, each jet carries a *trusted degree*: the largest total
// degree whose coefficients are exact images of the underlying function.
// Construction and exact operations keep it at N; partial() lowers it by one,
// factor_out(.., k) by k, and binary operations take the minimum.  Consumers
// that extract derivative values check it to know which extractions are
// meaningful.

#include <stdexcept>
#include <vector>

#include "edgekit/kernels.hpp"
#include "edgekit/vec3.hpp"

namespace edgekit {

enum class Axis { u, v };

class Jet2 {
  public:
    Jet2() : Jet2(0, 0.0) {}
    explicit Jet2(int order, double constant = 0.0)
        : order_(check_order(order)),
          trusted_(order),
          c_(kernels::table_size(order), 0.0) {
        c_[0] = constant;
    }

    // The coordinate jet: base + u (or base + v).
    static Jet2 variable(int order, Axis axis, double base = 0.0) {
        Jet2 j(order, base);
        if (order < 1)
            throw std::invalid_argument("variable jet requires order >= 1");
        j.set_coeff(axis == Axis::u ? 1 : 0, axis == Axis::u ? 0 : 1, 1.0);
        return j;
    }

    int order() const { return order_; }
    int trusted() const { return trusted_; }
    Jet2& set_trusted(int d) {
        trusted_ = d < -1 ? -1 : (d > order_ ? order_ : d);
        return *this;
    }

    int size() const { return static_cast<int>(c_.size()); }
    int index(int i, int j) const {
        return kernels::row_offset(order_, i) + j;
    }

    double coeff(int i, int j) const {
        check_ij(i, j);
        return c_[index(i, j)];
    }
    void set_coeff(int i, int j, double value) {
        check_ij(i, j);
        c_[index(i, j)] = value;
    }
    // Derivative value d^{i+j}f / du^i dv^j at the basepoint.
    double deriv(int i, int j) const {
        return coeff(i, j) * factorial(i) * factorial(j);
    }

    double constant_term() const { return c_[0]; }
    const double* data() const { return c_.data(); }
    double* data() { return c_.data(); }

    // max |c_ij| over the table
    double max_abs() const;
    // max |c_ij| over total degree <= trusted; coefficients past the trusted
    // degree carry truncation error by construction, so residual checks
    // against zero must ignore them.
    double max_abs_trusted() const;
    // Coefficients with |c| <= this threshold are treated as zero.
    double zero_tolerance() const { return 1e-9 * (1.0 + max_abs()); }

    static double factorial(int n) {
        double r = 1;
        for (int k = 2; k <= n; ++k) r *= k;
        return r;
    }

  private:
    static int check_order(int order) {
        if (order < 0) throw std::invalid_argument("negative jet order");
        return order;
    }
    void check_ij(int i, int j) const {
        if (i < 0 || j < 0 || i + j > order_)
            throw std::out_of_range("jet coefficient index out of range");
    }

    int order_;
    int trusted_;
    std::vector<double> c_;
};

// ----- ring operations ---------------------------------------------------

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator*(const Jet2& a, double s);
inline Jet2 operator*(double s, const Jet2& a) { return a * s; }
inline Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }
Jet2 operator+(const Jet2& a, double s);
inline Jet2 operator+(double s, const Jet2& a) { return a + s; }
inline Jet2 operator-(const Jet2& a, double s) { return a + (-s); }
inline Jet2 operator-(double s, const Jet2& a) { return (-a) + s; }

// ----- structural operations ----------------------------------------------

// Substitution f(p(u,v), q(u,v)) for origin-preserving p, q.
Jet2 compose(const Jet2& f, const Jet2& p, const Jet2& q);

// Multiplicative inverse; requires a nonzero constant term.
Jet2 reciprocal(const Jet2& f);

// Square root with positive constant term; result has constant +sqrt(c00).
Jet2 sqrt_jet(const Jet2& f);

// Partial derivative.  Keeps the allocated order (top band zeroed) and lowers
// the trusted degree by one.
Jet2 partial(const Jet2& f, Axis axis);

// Exact division by u^k or v^k.  Keeps the allocated order, zero-fills the
// vacated top entries, lowers the trusted degree by k.
Jet2 factor_out(const Jet2& f, Axis axis, int k);

// Multiplication by u^k or v^k (the exact inverse of factor_out).  Degree-m
// coefficients of the product come from degree-(m-k) coefficients of f, so the
// trusted degree *rises* by k (capped at the order).
Jet2 multiply_axis(const Jet2& f, Axis axis, int k);

// Taylor re-centering at (du, dv): exact for the stored polynomial.  Callers
// holding a non-polynomial source should re-expand that source instead.
Jet2 shift_basepoint(const Jet2& f, double du, double dv);

// Evaluate the stored polynomial.
double eval(const Jet2& f, double u, double v);

// Restriction to an axis: zero every coefficient with a positive exponent of
// the other variable (i.e. f(u,0) for keep = Axis::u).
Jet2 restrict_to_axis(const Jet2& f, Axis keep);

// Raise to a non-negative integer power.
Jet2 pow_jet(const Jet2& f, int k);

// ----- vector-valued jets --------------------------------------------------

struct Jet2Vec3 {
    Jet2 x, y, z;

    Jet2Vec3() = default;
    Jet2Vec3(Jet2 x_, Jet2 y_, Jet2 z_);

    int order() const { return x.order(); }
    int trusted() const;

    const Jet2& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    Jet2& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 constant_term() const {
        return {x.constant_term(), y.constant_term(), z.constant_term()};
    }
    // Vector of derivative values d^{i+j}f / du^i dv^j at the basepoint.
    Vec3 deriv(int i, int j) const {
        return {x.deriv(i, j), y.deriv(i, j), z.deriv(i, j)};
    }
};

Jet2Vec3 operator+(const Jet2Vec3& a, const Jet2Vec3& b);
Jet2Vec3 operator-(const Jet2Vec3& a, const Jet2Vec3& b);
Jet2Vec3 operator*(const Jet2Vec3& a, double s);
Jet2Vec3 operator*(const Jet2& s, const Jet2Vec3& a);

Jet2 dot(const Jet2Vec3& a, const Jet2Vec3& b);
Jet2Vec3 cross(const Jet2Vec3& a, const Jet2Vec3& b);
Jet2 det3(const Jet2Vec3& a, const Jet2Vec3& b, const Jet2Vec3& c);

Jet2Vec3 compose(const Jet2Vec3& f, const Jet2& p, const Jet2& q);
Jet2Vec3 partial(const Jet2Vec3& f, Axis axis);
Jet2Vec3 factor_out(const Jet2Vec3& f, Axis axis, int k);
Jet2Vec3 shift_basepoint(const Jet2Vec3& f, double du, double dv);
Jet2Vec3 restrict_to_axis(const Jet2Vec3& f, Axis keep);
Vec3 eval(const Jet2Vec3& f, double u, double v);
Jet2Vec3 rotate(const Mat3& r, const Jet2Vec3& f);

}  // namespace edgekit
