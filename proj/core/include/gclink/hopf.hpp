#pragma once

#include "gclink/great_circle.hpp"
#include "gclink/quaternion.hpp"

#include <nlohmann/json_fwd.hpp>

#include <span>
#include <variant>
#include <vector>

namespace gclink {

enum class Handedness { Right, Left };

/// Hopf bundle S^3 -> S^2 with a pure unit axis q.  The right-handed bundle
/// identifies left q-fibers and is x -> conj(x) q x; the left-handed one
/// identifies right q-fibers and is x -> x q conj(x).
struct HopfBundle {
    PureUnit axis = PureUnit::i();
    Handedness handedness = Handedness::Right;

    PureUnit project(const Quaternion& x) const;
    /// Side of the fibers collapsed by the projection.
    Side fiber_side() const { return handedness == Handedness::Right ? Side::Left : Side::Right; }
};

/// Image of a non-fiber geodesic: a round circle on S^2.
struct SphereCircle {
    PureUnit center = PureUnit::i();
    double angular_radius = 0.0;  // in (0, pi/2]
    /// Fiber phase of the lift through the source's first basis vector,
    /// measured against the bundle section that is singular at -center.
    double twist = 0.0;  // in [0, 2 pi)
    GreatCircle source{Vec4::Unit(0), Vec4::Unit(1)};
    HopfBundle bundle;

    /// Signed offset from the circle: positive inside the disk about center.
    double side_margin(const PureUnit& p) const;
    bool contains(const PureUnit& p) const { return side_margin(p) > 0.0; }
    /// Image of source.point(t).
    PureUnit at(double t) const { return bundle.project(source.quat(t)); }
};

/// Image of a geodesic that is a fiber of the bundle.
struct PointImage {
    PureUnit point = PureUnit::i();
};

using Projection = std::variant<SphereCircle, PointImage>;

/// Projects a geodesic.  The result is a point exactly when g is a fiber
/// (its collapsed-side axis is +-B.axis within 1e-9).
Projection project(const GreatCircle& g, const HopfBundle& b);

enum class PairType { Disjoint, PullApart, Nested };
const char* to_string(PairType t);

/// The 0 or 2 intersection points of two circles.  Throws TangentCircles when
/// they are tangent or coincide within 1e-7.
std::vector<PureUnit> intersect(const SphereCircle& c1, const SphereCircle& c2);

/// Disjoint when the circles do not meet.  Otherwise decides which pair of
/// opposite bigons can be collapsed without the lifted geodesics crossing:
/// the lens and exterior (PullApart) or the two crescents (Nested).  The two
/// circles must come from the same bundle.  Throws TangentCircles, or
/// IndeterminateConfiguration if the fiber-height test is inconclusive.
PairType pair_type(const SphereCircle& c1, const SphereCircle& c2);

/// Bigon of two intersecting circles, named by which disks it lies in.
enum class Region { Lens, Crescent1, Crescent2, Exterior };

/// True iff the bigon can be collapsed: the relative fiber height of the two
/// lifts, tracked from one intersection point to the other across the bigon,
/// stays inside (0, pi).
bool bigon_collapsible(const SphereCircle& c1, const SphereCircle& c2, Region r);

struct Configuration {
    struct Point {
        std::size_t component;
        PureUnit point;
    };
    struct Circle {
        std::size_t component;
        SphereCircle circle;
    };
    struct Pair {
        std::size_t a;  // indices into circles
        std::size_t b;
        PairType type;
    };

    HopfBundle bundle;
    std::vector<Point> points;
    std::vector<Circle> circles;
    /// inside[c][p]: point p lies in the disk of circle c.
    std::vector<std::vector<bool>> inside;
    std::vector<Pair> pairs;

    bool empty() const { return points.empty() && circles.empty(); }
};

/// Projects every component.  Components listed in fiber_indices must be
/// fibers of the bundle (InvalidParams otherwise); other components may
/// project to circles or points.
Configuration configuration(const GCLink& L, const HopfBundle& B, std::span<const std::size_t> fiber_indices);

void to_json(nlohmann::json& j, const HopfBundle& b);
void to_json(nlohmann::json& j, const SphereCircle& c);
void to_json(nlohmann::json& j, const Configuration& c);

}  // namespace gclink
