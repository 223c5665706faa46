#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <iosfwd>

namespace gclink {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

/// A real quaternion a + b i + c j + d k.
///
/// Coordinates double as the standard coordinates of R^4; the identification
/// H = C^2 used throughout is (a + b i, c + d i), so that a + b i + c j + d k
/// equals z + w j with z = a + b i and w = c + d i.
struct Quaternion {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Quaternion from_vec(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
    static Quaternion pure(const Vec3& v) { return {0.0, v[0], v[1], v[2]}; }

    Vec4 vec() const { return {a, b, c, d}; }
    Vec3 imag() const { return {b, c, d}; }
    double real() const { return a; }

    Quaternion conj() const { return {a, -b, -c, -d}; }
    double norm2() const { return a * a + b * b + c * c + d * d; }
    double norm() const { return std::sqrt(norm2()); }
    Quaternion normalized() const;
    Quaternion inverse() const;

    Quaternion operator-() const { return {-a, -b, -c, -d}; }
    Quaternion& operator+=(const Quaternion& o);
    Quaternion& operator-=(const Quaternion& o);
    Quaternion& operator*=(double s);
};

Quaternion operator+(Quaternion x, const Quaternion& y);
Quaternion operator-(Quaternion x, const Quaternion& y);
Quaternion operator*(Quaternion x, double s);
Quaternion operator*(double s, Quaternion x);

/// Hamilton product: i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j.
Quaternion operator*(const Quaternion& x, const Quaternion& y);

/// Euclidean inner product in R^4.
double dot(const Quaternion& x, const Quaternion& y);

/// Spherical distance between two unit quaternions, in [0, pi].
double sphere_distance(const Quaternion& x, const Quaternion& y);

/// cos t + axis * sin t for a pure axis.
Quaternion exp_pure(const Vec3& axis, double t);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kGeometryTol = 1e-9;

/// A point of the 2-sphere of pure unit quaternions.
class PureUnit {
public:
    /// Builds from a quaternion, throwing NotOrthonormal if it is not pure
    /// and unit within `tol`.
    static PureUnit from(const Quaternion& q, double tol = kAlgebraTol);
    /// Normalizes an arbitrary nonzero 3-vector.
    static PureUnit normalize(const Vec3& v);

    static PureUnit i() { return PureUnit(Vec3::UnitX()); }
    static PureUnit j() { return PureUnit(Vec3::UnitY()); }
    static PureUnit k() { return PureUnit(Vec3::UnitZ()); }

    const Vec3& vec() const { return v_; }
    Quaternion quat() const { return Quaternion::pure(v_); }
    PureUnit operator-() const { return PureUnit(-v_); }

    /// Angle between the two points on the sphere.
    double distance(const PureUnit& o) const;

private:
    explicit PureUnit(const Vec3& v) : v_(v) {}
    Vec3 v_;
};

/// Axes exhibiting an oriented great circle as a left fiber and a right fiber.
/// Reversing the circle's orientation negates both axes.
struct FiberAxes {
    PureUnit left_axis;   // circle = {(cos t + left sin t) x}
    PureUnit right_axis;  // circle = {x (cos t + right sin t)}
};

enum class Side { Left, Right };

/// Axes of the great circle through orthonormal unit quaternions x, y
/// oriented from x towards y.  Throws NotOrthonormal.
FiberAxes fiber_axes(const Quaternion& x, const Quaternion& y);

/// x p x^{-1} for unit x.
PureUnit conj_action(const Quaternion& x, const PureUnit& p);

/// A unit quaternion x with x q x^{-1} = p; it is the shortest rotation
/// taking q to p, or a half turn about a canonical perpendicular axis when
/// p = -q.
Quaternion solve_axis_transport(const PureUnit& p, const PureUnit& q);

/// Distance between the `side` fibers with the given axis through x1 and x2.
/// Value in [0, pi/2], independent of the points chosen on each fiber.
double fiber_distance(const PureUnit& axis, Side side, const Quaternion& x1, const Quaternion& x2);

}  // namespace gclink
