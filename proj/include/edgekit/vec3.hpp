#pragma once

// Minimal fixed-size linear algebra used by the geometry layers: 3-vectors,
// 3x3 matrices (rotations of the target space), and singular values of tall
// matrices with two columns via the closed-form eigenvalues of the 2x2 Gram
// matrix.  Problem sizes never exceed 6x2, so closed forms beat a library
// dependency.

#include <array>
#include <cmath>

namespace edgekit {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
    return dot(a, cross(b, c));
}

struct Mat3 {
    // row-major
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return {}; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += m[3 * i + k] * o.m[3 * k + j];
                r.m[3 * i + j] = s;
            }
        return r;
    }
    Mat3 transposed() const {
        return Mat3{{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
    }
    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) -
               m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
};

// Rotation by angle about a unit axis (Rodrigues formula).
inline Mat3 axis_angle(const Vec3& axis, double angle) {
    const double c = std::cos(angle), s = std::sin(angle), t = 1 - c;
    const double x = axis.x, y = axis.y, z = axis.z;
    Mat3 r;
    r.m = {t * x * x + c,     t * x * y - s * z, t * x * z + s * y,
           t * x * y + s * z, t * y * y + c,     t * y * z - s * x,
           t * x * z - s * y, t * y * z + s * x, t * z * z + c};
    return r;
}

// Proper rotation taking w to (|w|, 0, 0).  For w anti-parallel to the x-axis
// the minimal rotation is ambiguous; we pick the half-turn about z.
inline Mat3 rotation_to_x_axis(const Vec3& w) {
    const double n = norm(w);
    const Vec3 a = w / n;
    const Vec3 ex{1, 0, 0};
    const Vec3 axis = cross(a, ex);
    const double s = norm(axis);
    const double c = dot(a, ex);
    if (s < 1e-14) {
        if (c > 0) return Mat3::identity();
        return axis_angle({0, 0, 1}, M_PI);
    }
    return axis_angle(axis / s, std::atan2(s, c));
}

// Rotation in the (y,z)-plane by theta: (y,z) -> (y cos - z sin, y sin + z cos).
inline Mat3 rotation_yz(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    Mat3 r;
    r.m = {1, 0, 0, 0, c, -s, 0, s, c};
    return r;
}

// Rotation from a unit quaternion (w,x,y,z); used for seeded random rotations.
inline Mat3 quaternion_to_matrix(double w, double x, double y, double z) {
    Mat3 r;
    r.m = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
           2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
           2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)};
    return r;
}

// Singular values (descending) of a matrix with two columns a, b of any
// common length, via the eigenvalues of [[<a,a>,<a,b>],[<a,b>,<b,b>]].
inline std::array<double, 2> singular_values_2col(double aa, double ab,
                                                  double bb) {
    const double tr = aa + bb;
    const double disc = std::sqrt(std::max(0.0, (aa - bb) * (aa - bb) +
                                                    4 * ab * ab));
    const double l1 = std::max(0.0, (tr + disc) / 2);
    const double l2 = std::max(0.0, (tr - disc) / 2);
    return {std::sqrt(l1), std::sqrt(l2)};
}

}  // namespace edgekit
