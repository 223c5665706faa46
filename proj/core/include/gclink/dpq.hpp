#pragma once

#include "gclink/great_circle.hpp"

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include <array>
#include <string>
#include <vector>

namespace gclink {

/// Parameters of the dihedral link D_{p/q}: the orbit of the real great
/// circle under phi(z, w) = (e^{2 pi i/q} z, e^{2 pi i p/q} w).
struct DpqParams {
    int p = 1;
    int q = 3;
    /// The fraction as given, before normalization.
    int original_p = 1;
    int original_q = 3;
    /// True when normalization had to replace p by -p or -1/p (mod q), which
    /// gives the mirror image; p -> 1/p is realized by swapping z and w.
    bool mirrored = false;

    /// Requires q >= 3 odd, p >= 1 and gcd(p, q) = 1; throws InvalidParams.
    /// The stored p is reduced mod q and then, if needed, replaced by the
    /// first of 1/p, -p, -1/p (mod q) that is at most q/2.
    static DpqParams make(long p, long q);
    /// Like make, but keeps p mod q as given.
    static DpqParams exact(long p, long q);

    std::string fraction() const;
};

/// Component n has the basis (e^{2 pi i n/q}, 0), (0, e^{2 pi i p n/q}) in
/// C^2 = R^4 with coordinates (Re z, Im z, Re w, Im w).
GCLink build(const DpqParams& params);

/// The map phi as a 4x4 rotation.  It sends component n onto n+1 mod q.
Mat4 phi(const DpqParams& params);

/// Axis intersections in units of pi/q, as integers mod 2q.
struct AxisSchedule {
    int p = 1;
    int q = 3;
    /// Per component (orbit numbering): the angles where it meets the z-axis
    /// {w = 0} and the w-axis {z = 0}.  The second entry is the first + q.
    std::vector<std::array<int, 2>> z_pairs;
    std::vector<std::array<int, 2>> w_pairs;
    /// Position of each component along the z-axis and along the w-axis:
    /// the angle of its intersection inside [0, pi).
    std::vector<int> z_label;
    std::vector<int> w_label;
    /// Inverse maps: the component with a given z- or w-label.
    std::vector<int> by_z;
    std::vector<int> by_w;
};

AxisSchedule axis_schedule(const DpqParams& params);

/// One component of the standard projection.  The curve is an inner chord
/// from `start` to `end` followed by an outer loop: radially out to
/// `outer_radius`, counterclockwise around by `arc_span`, radially back in to
/// `start`.  Parameter s runs over [0, 4): chord, out, arc, in.
struct DiagramStrand {
    int component = 0;
    int z_label = 0;
    Eigen::Vector2d start;
    Eigen::Vector2d end;
    double outer_radius = 1.5;
    double arc_from = 0.0;
    double arc_span = M_PI;

    Eigen::Vector2d at(double s) const;
    Eigen::Vector2d tangent(double s) const;
    /// |d at / ds| on the piece containing s.
    double speed(double s) const;
};

struct DiagramCrossing {
    int over = 0;  // component indices
    int under = 0;
    /// +1 for a right-handed crossing: sign of over x under.
    int sign = 0;
    Eigen::Vector2d at;
    double over_s = 0.0;
    double under_s = 0.0;
};

struct GaussEntry {
    int crossing = 0;  // index into LinkDiagram::crossings
    bool over = false;
    int sign = 0;
};

struct LinkDiagram {
    DpqParams params;
    std::vector<DiagramStrand> strands;  // indexed by component
    std::vector<DiagramCrossing> crossings;
    /// Crossings met along each component, in order of s.
    std::vector<std::vector<GaussEntry>> gauss;

    /// Half the signed crossing count between each pair.
    std::vector<std::vector<int>> linking_matrix() const;
    /// One line per component: "n: O+1,U-2,..." with 1-based crossing labels.
    std::string gauss_text() const;
};

/// Inner chords join the w-angles k p pi/q and k p pi/q + pi for z-label
/// k = 0..q-1; chord k crosses over every chord before it, and the outer
/// loops cross under every earlier loop.
LinkDiagram standard_diagram(const DpqParams& params);

struct SvgOptions {
    int width = 512;
    int height = 512;
    double stroke_width = 2.0;
    /// Half-length of the break in the under-strand, in diagram units.
    double gap = 0.05;
};

/// One <g> per component holding one <polyline> per piece between gaps.
/// Output depends only on the diagram and the options.
std::string render_svg(const LinkDiagram& d, const SvgOptions& opts = {});

void to_json(nlohmann::json& j, const DpqParams& p);
void to_json(nlohmann::json& j, const AxisSchedule& s);
void to_json(nlohmann::json& j, const LinkDiagram& d);

}  // namespace gclink
