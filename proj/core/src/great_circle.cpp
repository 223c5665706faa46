#include "gclink/great_circle.hpp"

#include "gclink/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace gclink {

namespace {

constexpr double kTransverseTol = 1e-9;
constexpr double kOrthoTol = 1e-12;

using Vec3d = Eigen::Vector3d;

// Exact Gauss integral of two straight segments (a->b, c->d), as a signed
// solid angle.  Sum over all segment pairs / 4 pi is the polygon linking
// number.
double segment_solid_angle(const Vec3d& a, const Vec3d& b, const Vec3d& c, const Vec3d& d) {
    const Vec3d r13 = c - a;
    const Vec3d r14 = d - a;
    const Vec3d r23 = c - b;
    const Vec3d r24 = d - b;
    const std::array<Vec3d, 4> raw = {r13.cross(r14), r14.cross(r24), r24.cross(r23), r23.cross(r13)};
    std::array<Vec3d, 4> n;
    for (std::size_t k = 0; k < 4; ++k) {
        const double len = raw[k].norm();
        if (len == 0.0) return 0.0;
        n[k] = raw[k] / len;
    }
    auto clamped_asin = [](double x) { return std::asin(std::clamp(x, -1.0, 1.0)); };
    const double omega = clamped_asin(n[0].dot(n[1])) + clamped_asin(n[1].dot(n[2])) +
                         clamped_asin(n[2].dot(n[3])) + clamped_asin(n[3].dot(n[0]));
    const double orient = ((d - c).cross(b - a)).dot(r13);
    return orient > 0 ? omega : (orient < 0 ? -omega : 0.0);
}

// Candidate projection poles: the 24 vertices of the 24-cell.  Some vertex
// is far from any pair of circles, which keeps the projected polygons tame.
std::vector<Vec4> pole_candidates() {
    std::vector<Vec4> out;
    for (int k = 0; k < 4; ++k) {
        out.push_back(Vec4::Unit(k));
        out.push_back(-Vec4::Unit(k));
    }
    for (int m = 0; m < 16; ++m) {
        Vec4 v;
        for (int k = 0; k < 4; ++k) v[k] = (m >> k) & 1 ? -0.5 : 0.5;
        out.push_back(v);
    }
    return out;
}

// Rotation of R^4 taking `pole` to e4: a Householder reflection followed by
// negating the first coordinate, which fixes e4 and restores det = +1.
Mat4 pole_to_e4(const Vec4& pole) {
    const Vec4 v = pole - Vec4::Unit(3);
    if (v.norm() < 1e-12) return Mat4::Identity();
    const Vec4 u = v.normalized();
    Mat4 h = Mat4::Identity() - 2.0 * u * u.transpose();
    h.row(0) *= -1.0;
    return h;
}

Vec3d stereographic(const Vec4& x) {
    const double denom = 1.0 - x[3];
    return Vec3d(x[0], x[1], x[2]) / denom;
}

}  // namespace

GreatCircle::GreatCircle(const Vec4& v1, const Vec4& v2) : v1_(v1), v2_(v2) {
    if (std::abs(v1.norm() - 1.0) > kOrthoTol || std::abs(v2.norm() - 1.0) > kOrthoTol ||
        std::abs(v1.dot(v2)) > kOrthoTol) {
        throw NotOrthonormal("great circle basis must be orthonormal");
    }
}

GreatCircle GreatCircle::span(const Vec4& u, const Vec4& v) {
    const double nu = u.norm();
    if (!(nu > 0.0)) throw NotOrthonormal("degenerate plane basis");
    const Vec4 e1 = u / nu;
    Vec4 w = v - e1.dot(v) * e1;
    w -= e1.dot(w) * e1;
    const double nw = w.norm();
    if (!(nw > 1e-14 * std::max(1.0, v.norm()))) throw NotOrthonormal("degenerate plane basis");
    return GreatCircle(e1, w / nw, Unchecked{});
}

Frame GreatCircle::frame() const {
    Frame f;
    f.col(0) = v1_;
    f.col(1) = v2_;
    return f;
}

Vec4 GreatCircle::point(double t) const { return std::cos(t) * v1_ + std::sin(t) * v2_; }

double plane_determinant(const GreatCircle& c1, const GreatCircle& c2) {
    Mat4 m;
    m << c1.v1(), c1.v2(), c2.v1(), c2.v2();
    return m.determinant();
}

bool transverse(const GreatCircle& c1, const GreatCircle& c2) {
    return std::abs(plane_determinant(c1, c2)) > kTransverseTol;
}

int linking_number(const GreatCircle& c1, const GreatCircle& c2) {
    const double det = plane_determinant(c1, c2);
    if (!(std::abs(det) > kTransverseTol)) {
        std::ostringstream msg;
        msg << "planes are not transverse (det = " << det << ")";
        throw NotTransverse(msg.str());
    }
    return det > 0 ? 1 : -1;
}

GCLink::GCLink(std::vector<GreatCircle> components) : components_(std::move(components)) {
    for (std::size_t a = 0; a < components_.size(); ++a) {
        for (std::size_t b = a + 1; b < components_.size(); ++b) {
            if (!transverse(components_[a], components_[b])) {
                std::ostringstream msg;
                msg << "components " << a << " and " << b << " are not transverse";
                throw NotTransverse(msg.str());
            }
        }
    }
}

std::vector<std::vector<int>> GCLink::linking_matrix() const {
    const std::size_t n = size();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            m[a][b] = m[b][a] = linking_number(components_[a], components_[b]);
        }
    }
    return m;
}

GCLink GCLink::transformed(const Mat4& m) const {
    std::vector<GreatCircle> out;
    out.reserve(size());
    for (const auto& c : components_) out.push_back(c.transformed(m));
    return GCLink(std::move(out));
}

GCLink GCLink::mirrored() const {
    Mat4 m = Mat4::Identity();
    m(3, 3) = -1.0;
    return transformed(m);
}

GCLink GCLink::permuted(std::span<const std::size_t> order) const {
    std::vector<GreatCircle> out;
    out.reserve(order.size());
    for (std::size_t k : order) out.push_back(components_.at(k));
    return GCLink(std::move(out));
}

Vec4 RoundCircle::center() const { return base - base.dot(d1) * d1 - base.dot(d2) * d2; }

double RoundCircle::radius() const {
    const double r2 = 1.0 - center().squaredNorm();
    return r2 > 0 ? std::sqrt(r2) : 0.0;
}

Vec4 RoundCircle::point(double t) const {
    return center() + radius() * (std::cos(t) * d1 + std::sin(t) * d2);
}

double gauss_linking(const std::vector<Vec4>& curve1, const std::vector<Vec4>& curve2) {
    // Project from the candidate pole farthest from both curves.
    Vec4 best_pole = Vec4::Unit(3);
    double best_gap = -1.0;
    for (const Vec4& pole : pole_candidates()) {
        double gap = std::numeric_limits<double>::infinity();
        for (const auto* curve : {&curve1, &curve2}) {
            for (const Vec4& x : *curve) gap = std::min(gap, 1.0 - pole.dot(x));
        }
        if (gap > best_gap) {
            best_gap = gap;
            best_pole = pole;
        }
    }
    const Mat4 rot = pole_to_e4(best_pole);
    auto project = [&](const std::vector<Vec4>& curve) {
        std::vector<Vec3d> out;
        out.reserve(curve.size());
        for (const Vec4& x : curve) out.push_back(stereographic(rot * x));
        return out;
    };
    const auto p1 = project(curve1);
    const auto p2 = project(curve2);
    double total = 0.0;
    for (std::size_t a = 0; a < p1.size(); ++a) {
        const Vec3d& s0 = p1[a];
        const Vec3d& s1 = p1[(a + 1) % p1.size()];
        for (std::size_t b = 0; b < p2.size(); ++b) {
            total += segment_solid_angle(s0, s1, p2[b], p2[(b + 1) % p2.size()]);
        }
    }
    return total / (4.0 * M_PI);
}

GCLink straighten(std::span<const RoundCircle> circles) {
    constexpr int kSamples = 1000;
    std::vector<std::vector<Vec4>> samples;
    samples.reserve(circles.size());
    for (const auto& c : circles) {
        if (!(c.center().norm() < 1.0)) throw BadLinking("affine plane misses the open unit ball");
        samples.push_back(sample_curve(c, kSamples));
    }
    for (std::size_t a = 0; a < circles.size(); ++a) {
        for (std::size_t b = a + 1; b < circles.size(); ++b) {
            double gap = std::numeric_limits<double>::infinity();
            for (const Vec4& x : samples[a]) {
                for (const Vec4& y : samples[b]) gap = std::min(gap, (x - y).squaredNorm());
            }
            if (std::sqrt(gap) < 1e-6) throw BadLinking("circles intersect");
            const double lk = gauss_linking(samples[a], samples[b]);
            if (std::abs(std::abs(lk) - 1.0) > 0.1) {
                std::ostringstream msg;
                msg << "circles " << a << " and " << b << " link " << lk << ", not +-1";
                throw BadLinking(msg.str());
            }
        }
    }
    std::vector<GreatCircle> out;
    out.reserve(circles.size());
    for (const auto& c : circles) out.push_back(GreatCircle::span(c.d1, c.d2));
    return GCLink(std::move(out));
}

Mat4 isometry_to_e34(const GreatCircle& c) {
    // Complete (v1, v2) to an orthonormal basis with the coordinate vectors
    // that are least aligned with the plane.
    std::array<int, 4> order = {0, 1, 2, 3};
    std::array<double, 4> weight{};
    for (int e = 0; e < 4; ++e) weight[e] = c.v1()[e] * c.v1()[e] + c.v2()[e] * c.v2()[e];
    std::sort(order.begin(), order.end(), [&](int x, int y) { return weight[x] < weight[y]; });
    std::array<Vec4, 2> comp;
    int found = 0;
    for (int e : order) {
        if (found == 2) break;
        Vec4 w = Vec4::Unit(e);
        for (int pass = 0; pass < 2; ++pass) {
            w -= c.v1().dot(w) * c.v1();
            w -= c.v2().dot(w) * c.v2();
            for (int k = 0; k < found; ++k) w -= comp[k].dot(w) * comp[k];
        }
        const double n = w.norm();
        if (n > 1e-6) comp[found++] = w / n;
    }
    Mat4 frame;
    frame << comp[0], comp[1], c.v1(), c.v2();
    if (frame.determinant() < 0) frame.col(0) = -frame.col(0);
    return frame.transpose();
}

double min_wx_weight(const GreatCircle& c) {
    Eigen::Matrix2d top;
    top << c.v1()[0], c.v2()[0], c.v1()[1], c.v2()[1];
    const Eigen::Matrix2d gram = top.transpose() * top;
    return Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(gram).eigenvalues()[0];
}

GreatCircle push_off_e34(const GreatCircle& c, double s) {
    Vec4 u = c.v1();
    Vec4 v = c.v2();
    u.tail<2>() *= s;
    v.tail<2>() *= s;
    return GreatCircle::span(u, v);
}

double push_off_scale(std::span<const GreatCircle> cs) {
    const double target = 1.0 / std::sqrt(2.0);
    double s = 1.0;
    for (int k = 0; k < 2000; ++k) {
        const bool ok = std::all_of(cs.begin(), cs.end(),
                                    [&](const GreatCircle& c) { return min_wx_weight(push_off_e34(c, s)) >= target; });
        if (ok) return s;
        s *= 0.9;
    }
    throw NotTransverse("component cannot be pushed off span(e3, e4)");
}

namespace {

std::vector<GreatCircle> pushed_complement(const GCLink& link, std::size_t idx) {
    const Mat4 iso = isometry_to_e34(link[idx]);
    std::vector<GreatCircle> moved;
    for (std::size_t k = 0; k < link.size(); ++k) {
        if (k != idx) moved.push_back(link[k].transformed(iso));
    }
    const double s = push_off_scale(moved);
    std::vector<GreatCircle> out;
    for (const auto& c : moved) out.push_back(push_off_e34(c, s));
    return out;
}

}  // namespace

GCLink torus_sum(const GCLink& l1, std::size_t i, const GCLink& l2, std::size_t j) {
    if (i >= l1.size() || j >= l2.size()) throw InvalidParams("torus_sum component index out of range");
    std::vector<GreatCircle> out = pushed_complement(l1, i);
    // The Clifford-torus swap (w, x, y, z) -> (y, z, w, x) is an
    // orientation-preserving isometry.
    Mat4 swap = Mat4::Zero();
    swap(0, 2) = swap(1, 3) = swap(2, 0) = swap(3, 1) = 1.0;
    for (const GreatCircle& c : pushed_complement(l2, j)) out.push_back(c.transformed(swap));
    return GCLink(std::move(out));
}

}  // namespace gclink
