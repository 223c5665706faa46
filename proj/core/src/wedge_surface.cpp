#include "gclink/wedge_surface.hpp"

#include "gclink/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gclink {

namespace {

__extension__ using i128 = __int128;

int mod(int a, int m) { return ((a % m) + m) % m; }

AxisAngle from_key(int key) { return {key / 3, key % 3 - 1}; }

// Cyclic arc of slots [a, b] on a circle of k slots.
bool in_arc(int x, int a, int b, int k) { return mod(x - a, k) <= mod(b - a, k); }

bool arc_within(int a, int b, int c, int d, int k) {
    const int da = mod(a - c, k), db = mod(b - c, k);
    return da <= db && db <= mod(d - c, k);
}

Wedge make_wedge(AxisKind axis, AxisAngle from, AxisAngle to, int q, const std::vector<int>& label_at) {
    Wedge w;
    w.axis = axis;
    w.from = {mod(from.units, 2 * q), from.eps};
    w.to = {mod(to.units, 2 * q), to.eps};
    const int k = 6 * q;
    const int a = w.from.key(q), b = w.to.key(q);
    for (int step = 0; step < 2 * q; ++step) {
        const int u = mod(w.from.units + step, 2 * q);
        if (!in_arc(AxisAngle{u, 0}.key(q), a, b, k)) continue;
        w.points.push_back(u);
        w.components.push_back(label_at[static_cast<std::size_t>(u)]);
    }
    return w;
}

// The arcs between consecutive wedges, as wedges themselves.
std::vector<Wedge> complements(std::vector<Wedge> ws, int q, const std::vector<int>& label_at) {
    std::sort(ws.begin(), ws.end(), [q](const Wedge& l, const Wedge& r) { return l.from.key(q) < r.from.key(q); });
    std::vector<Wedge> out;
    const int k = 6 * q;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        const Wedge& next = ws[(i + 1) % ws.size()];
        const AxisAngle from = from_key(mod(ws[i].to.key(q) + 1, k));
        const AxisAngle to = from_key(mod(next.from.key(q) - 1, k));
        out.push_back(make_wedge(ws[i].axis, from, to, q, label_at));
    }
    return out;
}

Wedge shifted(const Wedge& w, int units, int q, const std::vector<int>& label_at) {
    return make_wedge(w.axis, {w.from.units + units, w.from.eps}, {w.to.units + units, w.to.eps}, q, label_at);
}

bool wedge_within(const Wedge& inner, const Wedge& outer, int q) {
    return arc_within(inner.from.key(q), inner.to.key(q), outer.from.key(q), outer.to.key(q), 6 * q);
}

// w-label of the component through each lattice point of an axis.
std::vector<int> w_labels_on_w(const AxisSchedule& s) {
    std::vector<int> at(static_cast<std::size_t>(2 * s.q));
    for (int n = 0; n < s.q; ++n) {
        for (int u : s.w_pairs[static_cast<std::size_t>(n)]) at[static_cast<std::size_t>(u)] = s.w_label[static_cast<std::size_t>(n)];
    }
    return at;
}

std::vector<int> w_labels_on_z(const AxisSchedule& s) {
    std::vector<int> at(static_cast<std::size_t>(2 * s.q));
    for (int n = 0; n < s.q; ++n) {
        for (int u : s.z_pairs[static_cast<std::size_t>(n)]) at[static_cast<std::size_t>(u)] = s.w_label[static_cast<std::size_t>(n)];
    }
    return at;
}

[[noreturn]] void premise(const std::string& what, const DpqParams& p) {
    throw PremiseFailure(what + " for " + p.fraction());
}

}  // namespace

const char* to_string(AxisKind a) { return a == AxisKind::Z ? "z" : "w"; }

int AxisAngle::key(int q) const { return mod(3 * units + eps + 1, 6 * q); }

std::string AxisAngle::to_string() const {
    std::string s = std::to_string(units);
    if (eps < 0) s += "-";
    if (eps > 0) s += "+";
    return s;
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidParams("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational::make(a.num * b.den + b.num * a.den, a.den * b.den);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const i128 l = static_cast<i128>(a.num) * b.den;
    const i128 r = static_cast<i128>(b.num) * a.den;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

DiskSpec DiskSpec::make(AxisKind axis, AxisAngle center, std::int64_t num, std::int64_t den) {
    const Rational c = Rational::make(num, den);
    if (c.num <= 0 || c.num > c.den) throw InvalidParams("disk radius must lie in (0, 1]");
    return with_radius_sq(axis, center, Rational::make(c.num * c.num, c.den * c.den));
}

DiskSpec DiskSpec::with_radius_sq(AxisKind axis, AxisAngle center, Rational c2) {
    if (c2.num <= 0 || c2.num > c2.den) throw InvalidParams("disk radius must lie in (0, 1]");
    return {axis, center, c2};
}

double DiskSpec::radius() const { return std::sqrt(radius_sq.value()); }

const char* to_string(DiskIntersection::Kind k) {
    switch (k) {
        case DiskIntersection::Kind::NoIntersect:
            return "NoIntersect";
        case DiskIntersection::Kind::Axis:
            return "Axis";
        case DiskIntersection::Kind::Point:
            return "Point";
        case DiskIntersection::Kind::Region:
            return "Region";
    }
    return "?";
}

DiskIntersection disk_intersect(const DiskSpec& d1, const DiskSpec& d2) {
    using K = DiskIntersection::Kind;
    const Rational one{1, 1};
    DiskIntersection out;
    if (d1.axis == d2.axis) {
        if (d1.center == d2.center) {
            out.kind = K::Region;
        } else if (d1.radius_sq == one && d2.radius_sq == one) {
            out.kind = K::Axis;
        }
        return out;
    }
    const DiskSpec& z = d1.axis == AxisKind::Z ? d1 : d2;
    const DiskSpec& w = d1.axis == AxisKind::Z ? d2 : d1;
    const auto cmp = z.radius_sq + w.radius_sq <=> one;
    if (cmp < 0) return out;
    if (cmp > 0) {
        out.kind = K::Region;
        return out;
    }
    // The z-disk bounds |w| by its radius, the w-disk bounds |z| by its own.
    out.kind = K::Point;
    out.z_modulus_sq = w.radius_sq;
    out.w_modulus_sq = z.radius_sq;
    return out;
}

SurfaceSpec surface_spec(const DpqParams& params, int start) {
    const int p = params.p, q = params.q;
    if (2 * p >= q) throw RangeError("surface needs p/q < 1/2, got " + params.fraction());
    const AxisSchedule sched = axis_schedule(params);
    const std::vector<int> on_w = w_labels_on_w(sched);
    const std::vector<int> on_z = w_labels_on_z(sched);
    const int n = mod(start, q);
    const Rational half{1, 2};

    SurfaceSpec s;
    s.params = params;
    s.start = n;
    s.m_prime.assign(static_cast<std::size_t>(q), false);
    for (int i = 0; i < 2 * p; ++i) s.m_prime[static_cast<std::size_t>(mod(n + i, q))] = true;

    for (int shift : {0, q}) {
        const AxisAngle from{mod(n + shift, 2 * q), -1};
        const AxisAngle to{mod(n + 2 * p - 1 + shift, 2 * q), 1};
        s.w_wedges.push_back(make_wedge(AxisKind::W, from, to, q, on_w));
        s.w_disks.push_back({AxisKind::W, from, half});
        s.w_disks.push_back({AxisKind::W, to, half});
    }

    // Components w-labelled m and m+p are neighbours on the z-axis.
    for (int i = 0; i < p; ++i) {
        const int a = sched.by_w[static_cast<std::size_t>(mod(n + i, q))];
        const int b = sched.by_w[static_cast<std::size_t>(mod(n + i + p, q))];
        int found = 0;
        for (int ya : sched.z_pairs[static_cast<std::size_t>(a)]) {
            for (int yb : sched.z_pairs[static_cast<std::size_t>(b)]) {
                int lo = -1;
                if (mod(yb - ya, 2 * q) == 1) lo = ya;
                if (mod(ya - yb, 2 * q) == 1) lo = yb;
                if (lo < 0) continue;
                const AxisAngle from{lo, -1}, to{mod(lo + 1, 2 * q), 1};
                s.z_wedges.push_back(make_wedge(AxisKind::Z, from, to, q, on_z));
                s.z_disks.push_back({AxisKind::Z, from, half});
                s.z_disks.push_back({AxisKind::Z, to, half});
                ++found;
            }
        }
        if (found != 2) throw std::logic_error("z-axis neighbours not found");
    }

    // The handlebody is a ball per wedge, every z-wedge glued to every
    // w-wedge along one rectangle of the torus |z| = |w|.
    const int v = static_cast<int>(s.w_wedges.size() + s.z_wedges.size());
    const int e = static_cast<int>(s.w_wedges.size() * s.z_wedges.size());
    s.euler_characteristic = 2 * (v - e);
    s.genus = (2 - s.euler_characteristic) / 2;
    return s;
}

WedgeCensus wedge_census(const DpqParams& params, int start) {
    const int p = params.p, q = params.q;
    if (4 * p >= q) throw RangeError("wedge census needs p/q < 1/4, got " + params.fraction());
    const AxisSchedule sched = axis_schedule(params);
    const std::vector<int> on_w = w_labels_on_w(sched);
    const std::vector<int> on_z = w_labels_on_z(sched);

    WedgeCensus c;
    c.surface = surface_spec(params, start);
    const SurfaceSpec& s = c.surface;

    for (const Wedge& w : s.z_wedges) {
        c.z_wedge_points.push_back(static_cast<int>(w.points.size()));
        if (w.points.size() != 2) premise("an M' z-wedge does not hold exactly two components", params);
    }
    for (std::size_t i = 0; i < s.w_wedges.size(); ++i) {
        for (int m : s.w_wedges[i].components) {
            if (!s.m_prime[static_cast<std::size_t>(m)]) premise("a w-wedge holds an M'' component", params);
        }
    }

    const std::vector<Wedge> cw = complements(s.w_wedges, q, on_w);
    const std::vector<Wedge> cz = complements(s.z_wedges, q, on_z);
    for (const Wedge& w : cw) {
        c.complementary_w_points.push_back(static_cast<int>(w.points.size()));
        if (static_cast<int>(w.points.size()) < 2 * p) premise("a complementary w-wedge has fewer than 2p points", params);
    }
    for (const Wedge& w : cz) {
        c.complementary_z_points.push_back(static_cast<int>(w.points.size()));
        if (w.points.size() < 2) premise("a complementary z-wedge meets fewer than two components", params);
    }

    // phi turns the z-axis by 2 units and the w-axis by 2p units.
    auto place = [&](const std::vector<Wedge>& wedges, const std::vector<Wedge>& gaps, int units,
                     const std::vector<int>& labels) {
        std::vector<int> hits(gaps.size(), 0);
        for (const Wedge& w : wedges) {
            const Wedge img = shifted(w, units, q, labels);
            bool placed = false;
            for (std::size_t g = 0; g < gaps.size(); ++g) {
                if (wedge_within(img, gaps[g], q)) {
                    ++hits[g];
                    placed = true;
                }
            }
            if (!placed) premise("phi(M') is not inside M''", params);
        }
        return hits;
    };
    const std::vector<int> hw = place(s.w_wedges, cw, 2 * p, on_w);
    const std::vector<int> hz = place(s.z_wedges, cz, 2, on_z);
    c.phi_image_in_complement = true;
    c.images_per_complementary_wedge = hw;
    c.images_per_complementary_wedge.insert(c.images_per_complementary_wedge.end(), hz.begin(), hz.end());
    for (int h : c.images_per_complementary_wedge) {
        if (h != 1) premise("an M'' wedge does not hold exactly one wedge of phi(M')", params);
    }
    return c;
}

CoannularReport coannular_slopes(const DpqParams& params) {
    const int p = params.p, q = params.q;
    if (4 * p >= q) throw RangeError("coannular slopes need p/q < 1/4, got " + params.fraction());
    const AxisSchedule sched = axis_schedule(params);
    const std::vector<int> on_z = w_labels_on_z(sched);
    const SurfaceSpec s = surface_spec(params, 0);
    std::vector<Wedge> z_all = s.z_wedges;
    for (Wedge& g : complements(s.z_wedges, q, on_z)) z_all.push_back(std::move(g));

    std::vector<int> positions;
    for (std::size_t d = 0; d < 2; ++d) {
        const AxisAngle& at = s.w_disks[d].center;
        positions.push_back(mod(at.eps < 0 ? at.units - 1 : at.units, 2 * q));
        positions.push_back(mod(at.eps < 0 ? at.units : at.units + 1, 2 * q));
    }
    std::sort(positions.begin(), positions.end());

    CoannularReport r;
    for (int x : positions) {
        const int m = x % q;
        const int y = sched.z_pairs[static_cast<std::size_t>(sched.by_w[static_cast<std::size_t>(m)])][0];
        const Wedge* home = nullptr;
        for (const Wedge& w : z_all) {
            if (std::find(w.points.begin(), w.points.end(), y) != w.points.end()) home = &w;
        }
        if (home == nullptr) throw std::logic_error("component outside every z-wedge");
        const auto here = std::find(home->points.begin(), home->points.end(), y) - home->points.begin();
        const bool lowest = here == 0;
        const bool highest = here + 1 == static_cast<long>(home->points.size());
        if (lowest == highest) premise("component " + std::to_string(x) + " is not at an end of its z-wedge", params);
        r.entries.push_back({x, m, lowest ? -1 : 1});
    }
    return r;
}

void to_json(nlohmann::json& j, const AxisAngle& a) { j = a.to_string(); }

void to_json(nlohmann::json& j, const DiskSpec& d) {
    j = {{"axis", to_string(d.axis)},
         {"center", d.center},
         {"radius_sq", std::to_string(d.radius_sq.num) + "/" + std::to_string(d.radius_sq.den)}};
}

void to_json(nlohmann::json& j, const Wedge& w) {
    j = {{"axis", to_string(w.axis)}, {"from", w.from}, {"to", w.to}, {"points", w.points}, {"components", w.components}};
}

void to_json(nlohmann::json& j, const SurfaceSpec& s) {
    std::vector<int> mp, mpp;
    for (std::size_t m = 0; m < s.m_prime.size(); ++m) (s.m_prime[m] ? mp : mpp).push_back(static_cast<int>(m));
    j = {{"params", s.params},
         {"unit", "pi/q"},
         {"start", s.start},
         {"w_wedges", s.w_wedges},
         {"z_wedges", s.z_wedges},
         {"w_disks", s.w_disks},
         {"z_disks", s.z_disks},
         {"euler_characteristic", s.euler_characteristic},
         {"genus", s.genus},
         {"m_prime", mp},
         {"m_double_prime", mpp}};
}

void to_json(nlohmann::json& j, const WedgeCensus& c) {
    j = {{"complementary_w_points", c.complementary_w_points},
         {"complementary_z_points", c.complementary_z_points},
         {"z_wedge_points", c.z_wedge_points},
         {"images_per_complementary_wedge", c.images_per_complementary_wedge},
         {"phi_image_in_complement", c.phi_image_in_complement},
         {"passed", true}};
}

void to_json(nlohmann::json& j, const CoannularReport& r) {
    nlohmann::json e = nlohmann::json::array();
    for (const CoannularEntry& x : r.entries) e.push_back({{"position", x.position}, {"component", x.component}, {"slope", x.slope}});
    j = {{"entries", e}, {"count", r.count()}};
}

}  // namespace gclink
