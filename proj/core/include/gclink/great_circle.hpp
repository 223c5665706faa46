#pragma once

#include "gclink/quaternion.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace gclink {

using Mat4 = Eigen::Matrix4d;
using Frame = Eigen::Matrix<double, 4, 2>;

/// An oriented 2-plane through the origin of R^4, i.e. an oriented great
/// circle of S^3.  The basis is orthonormal; its order fixes the orientation.
class GreatCircle {
public:
    /// Validates an orthonormal pair, throwing NotOrthonormal.
    GreatCircle(const Vec4& v1, const Vec4& v2);

    /// Gram-Schmidt on an arbitrary independent pair, keeping orientation.
    static GreatCircle span(const Vec4& u, const Vec4& v);
    static GreatCircle span(const Frame& f) { return span(f.col(0), f.col(1)); }

    const Vec4& v1() const { return v1_; }
    const Vec4& v2() const { return v2_; }
    Frame frame() const;

    /// cos t v1 + sin t v2.
    Vec4 point(double t) const;
    Quaternion quat(double t) const { return Quaternion::from_vec(point(t)); }

    GreatCircle reversed() const { return GreatCircle(v2_, v1_, Unchecked{}); }
    /// Image of the circle under a linear map, re-orthonormalized.
    GreatCircle transformed(const Mat4& m) const { return span(m * v1_, m * v2_); }

    FiberAxes axes() const { return fiber_axes(quat(0.0), quat(M_PI / 2)); }

private:
    struct Unchecked {};
    GreatCircle(const Vec4& v1, const Vec4& v2, Unchecked) : v1_(v1), v2_(v2) {}
    Vec4 v1_;
    Vec4 v2_;
};

/// det[v1 v2 w1 w2] of the two stacked bases.
double plane_determinant(const GreatCircle& c1, const GreatCircle& c2);

/// True iff the planes meet only at the origin (|det| > 1e-9).
bool transverse(const GreatCircle& c1, const GreatCircle& c2);

/// Sign of the stacked-basis determinant.  Throws NotTransverse.
int linking_number(const GreatCircle& c1, const GreatCircle& c2);

/// A finite collection of pairwise transverse great circles.
class GCLink {
public:
    GCLink() = default;
    /// Audits transversality; throws NotTransverse.
    explicit GCLink(std::vector<GreatCircle> components);

    std::size_t size() const { return components_.size(); }
    bool empty() const { return components_.empty(); }
    const GreatCircle& operator[](std::size_t i) const { return components_[i]; }
    const std::vector<GreatCircle>& components() const { return components_; }
    auto begin() const { return components_.begin(); }
    auto end() const { return components_.end(); }

    /// Pairwise linking numbers; the diagonal is zero.
    std::vector<std::vector<int>> linking_matrix() const;

    /// Applies a linear map to every component.
    GCLink transformed(const Mat4& m) const;
    /// Mirror image: negates the fourth coordinate.
    GCLink mirrored() const;
    GCLink permuted(std::span<const std::size_t> order) const;

private:
    std::vector<GreatCircle> components_;
};

/// An affine 2-plane in R^4 whose intersection with S^3 is a round circle.
struct RoundCircle {
    Vec4 base;  // any point of the affine plane
    Vec4 d1;    // orthonormal directions of the plane
    Vec4 d2;

    /// The circle in S^3: center (foot of the perpendicular) and radius.
    Vec4 center() const;
    double radius() const;
    Vec4 point(double t) const;
};

/// Linking number of two disjoint closed curves in S^3 computed from the
/// exact Gauss integral of their stereographically projected polygons.
/// Returns the real value; it is an integer up to discretization error.
double gauss_linking(const std::vector<Vec4>& curve1, const std::vector<Vec4>& curve2);

/// Samples a curve t -> point(t) over a full period into `samples` points.
template <typename C>
std::vector<Vec4> sample_curve(const C& c, int samples) {
    std::vector<Vec4> pts;
    pts.reserve(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) pts.push_back(c.point(2.0 * M_PI * s / samples));
    return pts;
}

/// Replaces each affine plane by its parallel plane through the origin.
/// Checks beforehand, with the Gauss integral, that the circles are disjoint
/// and link pairwise +-1; throws BadLinking otherwise.
GCLink straighten(std::span<const RoundCircle> circles);

/// Orientation-preserving isometry of R^4 taking `c` onto span(e3, e4) with
/// its orientation.
Mat4 isometry_to_e34(const GreatCircle& c);

/// Smallest value of w^2 + x^2 on the circle.
double min_wx_weight(const GreatCircle& c);

/// The plane spanned by (w, x, s y, s z) over the basis vectors of `c`.
/// Shrinking s pushes a circle transverse to span(e3, e4) towards span(e1, e2).
GreatCircle push_off_e34(const GreatCircle& c, double s);

/// Flow parameter used by torus_sum: the first s = 0.9^k with
/// min_wx_weight(push_off_e34(c, s)) >= 1/sqrt(2) for every c.  One common s
/// for all circles keeps the flow an isotopy: det scales by s^2.
double push_off_scale(std::span<const GreatCircle> cs);

/// Torus sum of l1 along component i and l2 along component j.  The result
/// lists the other components of l1 in order, then those of l2.
GCLink torus_sum(const GCLink& l1, std::size_t i, const GCLink& l2, std::size_t j);

}  // namespace gclink
