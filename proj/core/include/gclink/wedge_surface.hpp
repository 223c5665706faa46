#pragma once

#include "gclink/dpq.hpp"

#include <nlohmann/json_fwd.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace gclink {

enum class AxisKind { Z, W };
const char* to_string(AxisKind a);

/// A point of the z- or w-axis at `units` * pi/q, optionally nudged to just
/// before (eps = -1) or just after (eps = +1) that angle.  The nudge is an
/// infinitesimal: it orders strictly between neighbouring lattice angles.
struct AxisAngle {
    int units = 0;  // mod 2q
    int eps = 0;

    /// Position on the cyclic order of 6q slots: 3 units + eps + 1, mod 6q.
    int key(int q) const;
    std::string to_string() const;
    auto operator<=>(const AxisAngle&) const = default;
};

/// A non-negative rational a/b, b > 0, kept in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend Rational operator+(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return (a <=> b) == 0; }
};

/// z-disk of radius c centred at angle theta: points (r e^{i theta}, w) of
/// S^3 with r >= 0 and |w| <= c.  A w-disk swaps the roles of z and w.  The
/// radius is stored squared so that 1/sqrt(2) is exact.
struct DiskSpec {
    AxisKind axis = AxisKind::Z;
    AxisAngle center;
    Rational radius_sq = {1, 2};

    /// Radius c = num/den in (0, 1].  Throws InvalidParams.
    static DiskSpec make(AxisKind axis, AxisAngle center, std::int64_t num, std::int64_t den);
    static DiskSpec with_radius_sq(AxisKind axis, AxisAngle center, Rational c2);
    double radius() const;
};

struct DiskIntersection {
    enum class Kind { NoIntersect, Axis, Point, Region };
    Kind kind = Kind::NoIntersect;
    /// For Point: |z| and |w| of the single common point, squared, with the
    /// arguments of the z- and w-disk centres.
    Rational z_modulus_sq;
    Rational w_modulus_sq;
};
const char* to_string(DiskIntersection::Kind k);

/// Same axis: only equal centres overlap (Region), otherwise the disks meet
/// exactly when both radii are 1, along the other axis.  Mixed axes: decided
/// exactly by c^2 + c'^2 against 1.  Centres are angles in units of pi/q.
DiskIntersection disk_intersect(const DiskSpec& d1, const DiskSpec& d2);

/// Counterclockwise arc of an axis from `from` to `to`.
struct Wedge {
    AxisKind axis = AxisKind::W;
    AxisAngle from;
    AxisAngle to;
    /// Lattice points (units) strictly inside, in counterclockwise order.
    std::vector<int> points;
    /// w-labels of the components through those points.
    std::vector<int> components;
};

struct SurfaceSpec {
    DpqParams params;
    int start = 0;  // w-label of the first component on the M' side
    std::vector<Wedge> w_wedges;
    std::vector<Wedge> z_wedges;
    std::vector<DiskSpec> w_disks;
    std::vector<DiskSpec> z_disks;
    int euler_characteristic = 0;
    int genus = 0;
    /// Indexed by w-label: true for the 2p components on the M' side.
    std::vector<bool> m_prime;
};

/// The surface S_{n..n+2p-1}: boundary of the two w-wedges over (just before
/// n, just after n+2p-1) and its antipode, joined by the 2p z-wedges that
/// each hold the components w-labelled k and k+p.  Throws RangeError unless
/// 2p < q.  Components are numbered along the w-axis.
SurfaceSpec surface_spec(const DpqParams& params, int start = 0);

struct WedgeCensus {
    SurfaceSpec surface;
    /// Lattice points in each complementary w-wedge (each must be >= 2p).
    std::vector<int> complementary_w_points;
    /// Components crossing each complementary z-wedge (each must be >= 2).
    std::vector<int> complementary_z_points;
    /// Components crossing each M' z-wedge (each must be exactly 2).
    std::vector<int> z_wedge_points;
    /// phi-images of the M' wedges contained in each complementary wedge,
    /// w-wedges first (each must be exactly 1).
    std::vector<int> images_per_complementary_wedge;
    bool phi_image_in_complement = false;
};

/// Checks the combinatorial premises of the incompressibility argument
/// exactly.  Throws RangeError unless 4p < q and PremiseFailure naming the
/// first failed check.
WedgeCensus wedge_census(const DpqParams& params, int start = 0);

struct CoannularEntry {
    int position;   // index among the 2q points of the w-axis, 0 at angle 0
    int component;  // w-label: position mod q
    int slope;      // +1 right-handed, -1 left-handed
};

struct CoannularReport {
    std::vector<CoannularEntry> entries;
    std::size_t count() const { return entries.size(); }
};

/// Components beside the w-disks of the first w-wedge of S_{0..2p-1}.  The
/// slope is -1 when every other component of its z-wedge lies above it on
/// the z-axis and +1 when all lie below.  Throws RangeError unless 4p < q.
CoannularReport coannular_slopes(const DpqParams& params);

void to_json(nlohmann::json& j, const AxisAngle& a);
void to_json(nlohmann::json& j, const DiskSpec& d);
void to_json(nlohmann::json& j, const Wedge& w);
void to_json(nlohmann::json& j, const SurfaceSpec& s);
void to_json(nlohmann::json& j, const WedgeCensus& c);
void to_json(nlohmann::json& j, const CoannularReport& r);

}  // namespace gclink
