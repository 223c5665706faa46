#include "gclink/hopf.hpp"

#include "gclink/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace gclink {

namespace {

constexpr double kFiberTol = 1e-9;
constexpr double kTangencyTol = 1e-7;
constexpr int kStepsPerPi = 2000;
constexpr int kSectionCandidates = 300;

double wrap_pi(double x) {
    // Into [-pi, pi).
    return x - 2.0 * M_PI * std::floor((x + M_PI) / (2.0 * M_PI));
}

double mod_positive(double x, double period) {
    const double r = std::fmod(x, period);
    return r < 0 ? r + period : r;
}

// Image of g(t) is the rotation of w0 about `axis` by rate * t.
struct Motion {
    Vec3 axis;
    double rate;
    Vec3 w0;
};

Motion motion(const GreatCircle& g, const HopfBundle& b) {
    const FiberAxes ax = g.axes();
    const Vec3 w0 = b.project(g.quat(0.0)).vec();
    if (b.handedness == Handedness::Right) return {ax.right_axis.vec(), -2.0, w0};
    return {ax.left_axis.vec(), 2.0, w0};
}

// Parameter t in [0, pi) with the image of g(t) equal to p (on the circle).
double parameter_of(const Motion& m, const Vec3& p) {
    const Vec3 u0 = m.w0 - m.w0.dot(m.axis) * m.axis;
    const Vec3 up = p - p.dot(m.axis) * m.axis;
    const double phi = std::atan2(m.axis.dot(u0.cross(up)), u0.dot(up));
    return mod_positive(phi / m.rate, M_PI);
}

// Phase of x in its fiber relative to the section that is singular at `pole`.
double fiber_phase(const HopfBundle& b, const Quaternion& x, const PureUnit& pole) {
    const PureUnit p = b.project(x);
    const Quaternion c = solve_axis_transport(-pole, b.axis);
    const Quaternion r = solve_axis_transport(p, -pole) * c;
    // Right-handed: the section is conj(r) and x = lambda conj(r).
    // Left-handed: the section is r and x = r lambda.
    const Quaternion lambda = b.handedness == Handedness::Right ? x * r : r.conj() * x;
    return std::atan2(lambda.imag().dot(b.axis.vec()), lambda.real());
}

const std::vector<Vec3>& fibonacci_sphere() {
    static const std::vector<Vec3> pts = [] {
        std::vector<Vec3> out;
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        for (int k = 0; k < kSectionCandidates; ++k) {
            const double z = 1.0 - 2.0 * (k + 0.5) / kSectionCandidates;
            const double r = std::sqrt(1.0 - z * z);
            const double a = 2.0 * M_PI * k / golden;
            out.emplace_back(r * std::cos(a), r * std::sin(a), z);
        }
        return out;
    }();
    return pts;
}

int side(const SphereCircle& c, const PureUnit& p) { return c.side_margin(p) > 0 ? 1 : -1; }

struct Track {
    double start_phase;
    double total;
};

// Lift of `c` from P along the arc lying on side `wanted` of `other`, to Q.
Track track_arc(const SphereCircle& c, const SphereCircle& other, int wanted, const PureUnit& P,
                const PureUnit& Q, const PureUnit& pole) {
    const Motion m = motion(c.source, c.bundle);
    const double tp = parameter_of(m, P.vec());
    const double tq = parameter_of(m, Q.vec());
    double span = mod_positive(tq - tp, M_PI);
    double dir = 1.0;
    if (side(other, c.at(tp + span / 2)) != wanted) {
        dir = -1.0;
        span = M_PI - span;
    }
    const int steps = std::max(16, static_cast<int>(std::ceil(span / M_PI * kStepsPerPi)));
    double prev = fiber_phase(c.bundle, c.source.quat(tp), pole);
    const double start = prev;
    double total = 0.0;
    for (int s = 1; s <= steps; ++s) {
        const double t = tp + dir * span * s / steps;
        const double cur = fiber_phase(c.bundle, c.source.quat(t), pole);
        total += wrap_pi(cur - prev);
        prev = cur;
    }
    return {start, total};
}

nlohmann::json as_json(const Vec3& v) { return nlohmann::json::array({v[0], v[1], v[2]}); }

}  // namespace

PureUnit HopfBundle::project(const Quaternion& x) const {
    const Quaternion q = axis.quat();
    const Quaternion img = handedness == Handedness::Right ? x.conj() * q * x : x * q * x.conj();
    return PureUnit::normalize(img.imag());
}

double SphereCircle::side_margin(const PureUnit& p) const { return angular_radius - center.distance(p); }

Projection project(const GreatCircle& g, const HopfBundle& b) {
    const FiberAxes ax = g.axes();
    const PureUnit& collapsed = b.handedness == Handedness::Right ? ax.left_axis : ax.right_axis;
    const Vec3 shift = collapsed.vec() - b.axis.vec();
    const Vec3 flip = collapsed.vec() + b.axis.vec();
    if (shift.norm() < kFiberTol || flip.norm() < kFiberTol) return PointImage{b.project(g.quat(0.0))};

    const Motion m = motion(g, b);
    PureUnit center = PureUnit::normalize(m.axis);
    const PureUnit w0 = PureUnit::normalize(m.w0);
    double radius = center.distance(w0);
    if (radius > M_PI / 2) {
        center = -center;
        radius = M_PI - radius;
    }
    SphereCircle c;
    c.center = center;
    c.angular_radius = radius;
    c.source = g;
    c.bundle = b;
    c.twist = mod_positive(fiber_phase(b, g.quat(0.0), -center), 2.0 * M_PI);
    return c;
}

const char* to_string(PairType t) {
    switch (t) {
        case PairType::Disjoint:
            return "Disjoint";
        case PairType::PullApart:
            return "PullApart";
        case PairType::Nested:
            return "Nested";
    }
    return "?";
}

std::vector<PureUnit> intersect(const SphereCircle& c1, const SphereCircle& c2) {
    const Vec3& u = c1.center.vec();
    const Vec3& v = c2.center.vec();
    const double h1 = std::cos(c1.angular_radius);
    const double h2 = std::cos(c2.angular_radius);
    const double C = u.dot(v);
    const double den = 1.0 - C * C;
    if (den < 1e-14) {
        if (std::abs(h1 - (C > 0 ? h2 : -h2)) < kTangencyTol) throw TangentCircles("circles coincide");
        return {};
    }
    const double a = (h1 - h2 * C) / den;
    const double bb = (h2 - h1 * C) / den;
    const Vec3 base = a * u + bb * v;
    const Vec3 n = u.cross(v);
    const double rest = 1.0 - base.squaredNorm();
    if (rest < -kTangencyTol) return {};
    if (rest <= kTangencyTol) throw TangentCircles("circles are tangent");
    const double g = std::sqrt(rest / n.squaredNorm());
    return {PureUnit::normalize(base + g * n), PureUnit::normalize(base - g * n)};
}

bool bigon_collapsible(const SphereCircle& c1, const SphereCircle& c2, Region r) {
    const std::vector<PureUnit> pts = intersect(c1, c2);
    if (pts.size() != 2) throw InvalidParams("bigon of circles that do not intersect");
    const int s1 = (r == Region::Lens || r == Region::Crescent1) ? 1 : -1;
    const int s2 = (r == Region::Lens || r == Region::Crescent2) ? 1 : -1;

    // Put the singularity of the section outside the bigon and far from both
    // circles, so the phase is smooth along both arcs.
    const Vec3* best = nullptr;
    double best_gap = -1.0;
    for (const Vec3& cand : fibonacci_sphere()) {
        const PureUnit p = PureUnit::normalize(cand);
        if (side(c1, p) == s1 && side(c2, p) == s2) continue;
        const double gap = std::min(std::abs(c1.side_margin(p)), std::abs(c2.side_margin(p)));
        if (gap > best_gap) {
            best_gap = gap;
            best = &cand;
        }
    }
    const PureUnit pole = PureUnit::normalize(*best);

    const Track t1 = track_arc(c1, c2, s2, pts[0], pts[1], pole);
    const Track t2 = track_arc(c2, c1, s1, pts[0], pts[1], pole);
    const double height = mod_positive(t2.start_phase - t1.start_phase, M_PI);
    const double end = height + (t2.total - t1.total);
    return end > 0.0 && end < M_PI;
}

PairType pair_type(const SphereCircle& c1, const SphereCircle& c2) {
    if (intersect(c1, c2).empty()) return PairType::Disjoint;
    const bool lens = bigon_collapsible(c1, c2, Region::Lens);
    const bool ext = bigon_collapsible(c1, c2, Region::Exterior);
    const bool a = bigon_collapsible(c1, c2, Region::Crescent1);
    const bool b = bigon_collapsible(c1, c2, Region::Crescent2);
    if (lens && ext && !a && !b) return PairType::PullApart;
    if (a && b && !lens && !ext) return PairType::Nested;
    std::ostringstream msg;
    msg << "bigon test inconclusive (lens " << lens << ", exterior " << ext << ", crescents " << a << b << ")";
    throw IndeterminateConfiguration(msg.str());
}

Configuration configuration(const GCLink& L, const HopfBundle& B, std::span<const std::size_t> fiber_indices) {
    Configuration out;
    out.bundle = B;
    for (std::size_t k = 0; k < L.size(); ++k) {
        const Projection img = project(L[k], B);
        const bool must_be_fiber = std::find(fiber_indices.begin(), fiber_indices.end(), k) != fiber_indices.end();
        if (const auto* pt = std::get_if<PointImage>(&img)) {
            out.points.push_back({k, pt->point});
        } else {
            if (must_be_fiber) {
                std::ostringstream msg;
                msg << "component " << k << " is not a fiber of the bundle";
                throw InvalidParams(msg.str());
            }
            out.circles.push_back({k, std::get<SphereCircle>(img)});
        }
    }
    for (const auto& c : out.circles) {
        std::vector<bool> row;
        for (const auto& p : out.points) {
            const double margin = c.circle.side_margin(p.point);
            if (std::abs(margin) < kFiberTol) throw IndeterminateConfiguration("point image lies on a circle");
            row.push_back(margin > 0);
        }
        out.inside.push_back(std::move(row));
    }
    for (std::size_t a = 0; a < out.circles.size(); ++a) {
        for (std::size_t b = a + 1; b < out.circles.size(); ++b) {
            out.pairs.push_back({a, b, pair_type(out.circles[a].circle, out.circles[b].circle)});
        }
    }
    return out;
}

void to_json(nlohmann::json& j, const HopfBundle& b) {
    j = {{"axis", as_json(b.axis.vec())}, {"handedness", b.handedness == Handedness::Right ? "right" : "left"}};
}

void to_json(nlohmann::json& j, const SphereCircle& c) {
    j = {{"center", as_json(c.center.vec())}, {"radius", c.angular_radius}, {"twist", c.twist}};
}

void to_json(nlohmann::json& j, const Configuration& c) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : c.points) points.push_back({{"component", p.component}, {"point", as_json(p.point.vec())}});
    nlohmann::json circles = nlohmann::json::array();
    for (std::size_t k = 0; k < c.circles.size(); ++k) {
        nlohmann::json entry = c.circles[k].circle;
        entry["component"] = c.circles[k].component;
        nlohmann::json inside = nlohmann::json::array();
        for (std::size_t p = 0; p < c.points.size(); ++p) {
            if (c.inside[k][p]) inside.push_back(c.points[p].component);
        }
        entry["inside"] = std::move(inside);
        circles.push_back(std::move(entry));
    }
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : c.pairs) {
        pairs.push_back({{"a", c.circles[p.a].component}, {"b", c.circles[p.b].component}, {"type", to_string(p.type)}});
    }
    j = {{"bundle", c.bundle}, {"points", points}, {"circles", circles}, {"pairs", pairs}};
}

}  // namespace gclink
