#include "gclink/quaternion.hpp"

#include "gclink/errors.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace gclink {

Quaternion Quaternion::normalized() const {
    const double n = norm();
    return {a / n, b / n, c / n, d / n};
}

Quaternion Quaternion::inverse() const {
    const double n2 = norm2();
    return {a / n2, -b / n2, -c / n2, -d / n2};
}

Quaternion& Quaternion::operator+=(const Quaternion& o) {
    a += o.a;
    b += o.b;
    c += o.c;
    d += o.d;
    return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& o) {
    a -= o.a;
    b -= o.b;
    c -= o.c;
    d -= o.d;
    return *this;
}

Quaternion& Quaternion::operator*=(double s) {
    a *= s;
    b *= s;
    c *= s;
    d *= s;
    return *this;
}

Quaternion operator+(Quaternion x, const Quaternion& y) { return x += y; }
Quaternion operator-(Quaternion x, const Quaternion& y) { return x -= y; }
Quaternion operator*(Quaternion x, double s) { return x *= s; }
Quaternion operator*(double s, Quaternion x) { return x *= s; }

Quaternion operator*(const Quaternion& x, const Quaternion& y) {
    return {x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
            x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
            x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
            x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
}

double dot(const Quaternion& x, const Quaternion& y) {
    return x.a * y.a + x.b * y.b + x.c * y.c + x.d * y.d;
}

double sphere_distance(const Quaternion& x, const Quaternion& y) {
    // atan2 form stays accurate near 0 and pi where acos loses digits.
    const double s = (x - y).norm();
    const double t = (x + y).norm();
    return 2.0 * std::atan2(s, t);
}

Quaternion exp_pure(const Vec3& axis, double t) {
    const double s = std::sin(t);
    return {std::cos(t), axis[0] * s, axis[1] * s, axis[2] * s};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.a << ", " << q.b << ", " << q.c << ", " << q.d << ')';
}

PureUnit PureUnit::from(const Quaternion& q, double tol) {
    if (std::abs(q.a) > tol || std::abs(q.norm() - 1.0) > tol) {
        std::ostringstream msg;
        msg << "not a pure unit quaternion: " << q;
        throw NotOrthonormal(msg.str());
    }
    return PureUnit(q.imag().normalized());
}

PureUnit PureUnit::normalize(const Vec3& v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw NotOrthonormal("cannot normalize the zero vector");
    return PureUnit(v / n);
}

double PureUnit::distance(const PureUnit& o) const {
    return 2.0 * std::atan2((v_ - o.v_).norm(), (v_ + o.v_).norm());
}

FiberAxes fiber_axes(const Quaternion& x, const Quaternion& y) {
    constexpr double tol = 1e-10;
    if (std::abs(x.norm() - 1.0) > tol || std::abs(y.norm() - 1.0) > tol ||
        std::abs(dot(x, y)) > tol) {
        throw NotOrthonormal("fiber_axes needs orthonormal unit quaternions");
    }
    // Re(y conj(x)) = Re(conj(x) y) = <x, y> = 0, so both products are pure.
    const Quaternion left = y * x.conj();
    const Quaternion right = x.conj() * y;
    return {PureUnit::normalize(left.imag()), PureUnit::normalize(right.imag())};
}

PureUnit conj_action(const Quaternion& x, const PureUnit& p) {
    const Quaternion r = x * p.quat() * x.conj();
    return PureUnit::normalize(r.imag());
}

Quaternion solve_axis_transport(const PureUnit& p, const PureUnit& q) {
    const Vec3& u = q.vec();
    const Vec3& v = p.vec();
    const double c = u.dot(v);
    if (c < -1.0 + 1e-12) {
        // Half turn about the normalized projection of the basis vector least
        // aligned with u; ties go to the earliest of i, j, k.
        int best = 0;
        for (int e = 1; e < 3; ++e) {
            if (std::abs(u[e]) < std::abs(u[best]) - 1e-15) best = e;
        }
        Vec3 axis = Vec3::Unit(best);
        axis -= axis.dot(u) * u;
        return Quaternion::pure(axis.normalized());
    }
    // Half-angle form of the rotation about u x v taking u to v.
    const Vec3 w = u.cross(v);
    return Quaternion(1.0 + c, w[0], w[1], w[2]).normalized();
}

double fiber_distance(const PureUnit& axis, Side side, const Quaternion& x1, const Quaternion& x2) {
    const Quaternion a = axis.quat();
    const Quaternion turned = side == Side::Right ? x2 * a : a * x2;
    const double r = std::hypot(dot(x1, x2), dot(x1, turned));
    // acos near 1 is ill conditioned; recover the angle from the residual.
    const double s = std::sqrt(std::max(0.0, 1.0 - std::min(1.0, r * r)));
    return std::atan2(s, std::min(1.0, r));
}

}  // namespace gclink
