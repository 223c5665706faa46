#include "doctest.h"

#include "gclink/classify.hpp"
#include "gclink/dpq.hpp"
#include "gclink/errors.hpp"

#include <cmath>
#include <numeric>
#include <regex>
#include <set>

using namespace gclink;

namespace {

std::vector<DpqParams> all_params(int max_q) {
    std::vector<DpqParams> out;
    for (int q = 3; q <= max_q; q += 2) {
        for (int p = 1; p < q; ++p) {
            if (std::gcd(p, q) == 1) out.push_back(DpqParams::exact(p, q));
        }
    }
    return out;
}

// Orthogonal projector onto a plane; equal projectors mean equal planes.
Eigen::Matrix4d projector(const GreatCircle& c) { return c.frame() * c.frame().transpose(); }

// Angle of a complex coordinate in units of pi/q, rounded, mod 2q.
int angle_units(double re, double im, int q, double* residual) {
    const double u = std::atan2(im, re) / (M_PI / q);
    const double r = std::round(u);
    *residual = std::abs(u - r) * (M_PI / q);
    return static_cast<int>(((static_cast<long>(r) % (2 * q)) + 2 * q) % (2 * q));
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("params validation and normalization") {
    CHECK_THROWS_AS(DpqParams::make(1, 4), InvalidParams);
    CHECK_THROWS_AS(DpqParams::make(3, 9), InvalidParams);
    CHECK_THROWS_AS(DpqParams::make(0, 5), InvalidParams);
    CHECK_THROWS_AS(DpqParams::make(1, 1), InvalidParams);

    const DpqParams a = DpqParams::make(2, 5);
    CHECK(a.p == 2);
    CHECK_FALSE(a.mirrored);
    const DpqParams b = DpqParams::make(3, 5);  // 3^-1 = 2 mod 5
    CHECK(b.p == 2);
    CHECK_FALSE(b.mirrored);
    CHECK(b.original_p == 3);
    const DpqParams c = DpqParams::make(4, 5);  // 4^-1 = 4, so -4 = 1
    CHECK(c.p == 1);
    CHECK(c.mirrored);
    CHECK(DpqParams::make(12, 5).p == 2);

    for (const DpqParams& e : all_params(41)) {
        const DpqParams n = DpqParams::make(e.p, e.q);
        CHECK(2 * n.p < n.q);
        CHECK(std::gcd(n.p, n.q) == 1);
    }
}

TEST_CASE("normalization preserves the link up to the recorded mirror") {
    for (const DpqParams& e : all_params(5)) {
        const DpqParams n = DpqParams::make(e.p, e.q);
        const LinkClass raw = classify(build(e));
        const LinkClass norm = classify(build(n));
        CHECK(raw == (n.mirrored ? norm.mirrored() : norm));
    }
}

TEST_CASE("build") {
    const GCLink l3 = build(DpqParams::make(1, 3));
    REQUIRE(l3.size() == 3);
    const double c = std::cos(2 * M_PI / 3), s = std::sin(2 * M_PI / 3);
    CHECK((l3[1].v1() - Vec4(c, s, 0, 0)).norm() < 1e-15);
    CHECK((l3[1].v2() - Vec4(0, 0, c, s)).norm() < 1e-15);

    SUBCASE("pairs are transverse, bounded away from zero") {
        for (const DpqParams& p : all_params(25)) {
            const GCLink l = build(p);
            const double bound = std::pow(std::sin(M_PI / p.q), 2) * 0.99;
            for (std::size_t a = 0; a < l.size(); ++a) {
                for (std::size_t b = a + 1; b < l.size(); ++b) {
                    CHECK(std::abs(plane_determinant(l[a], l[b])) > bound);
                }
            }
        }
    }

    SUBCASE("phi permutes components cyclically") {
        for (const DpqParams& p : all_params(15)) {
            const GCLink l = build(p);
            const GCLink moved = l.transformed(phi(p));
            for (std::size_t n = 0; n < l.size(); ++n) {
                const std::size_t next = (n + 1) % l.size();
                CHECK((projector(moved[n]) - projector(l[next])).norm() < 1e-12);
                // Orientation is carried along too.
                CHECK(plane_determinant(moved[n], l[(next + 1) % l.size()]) ==
                      doctest::Approx(plane_determinant(l[next], l[(next + 1) % l.size()])).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("axis schedule of D(2/5)") {
    const AxisSchedule s = axis_schedule(DpqParams::make(2, 5));
    // Units of pi/5.
    const std::vector<std::array<int, 2>> z{{0, 5}, {2, 7}, {4, 9}, {6, 1}, {8, 3}};
    const std::vector<std::array<int, 2>> w{{0, 5}, {4, 9}, {8, 3}, {2, 7}, {6, 1}};
    CHECK(s.z_pairs == z);
    CHECK(s.w_pairs == w);
}

TEST_CASE("axis schedule properties") {
    for (const DpqParams& p : all_params(31)) {
        const AxisSchedule s = axis_schedule(p);
        const int q = p.q;
        std::set<int> zs, ws;
        for (int n = 0; n < q; ++n) {
            zs.insert(s.z_pairs[n].begin(), s.z_pairs[n].end());
            ws.insert(s.w_pairs[n].begin(), s.w_pairs[n].end());
        }
        CHECK(zs.size() == static_cast<std::size_t>(2 * q));
        CHECK(ws.size() == static_cast<std::size_t>(2 * q));
        CHECK(s.w_pairs[0] == std::array<int, 2>{0, q});
        for (int m = 0; m < q; ++m) {
            // The m-th component along the w-axis sits at m pi/q and its antipode.
            const auto& pair = s.w_pairs[s.by_w[m]];
            CHECK(std::set<int>(pair.begin(), pair.end()) == std::set<int>{m, m + q});
            // Neighbours along the z-axis are p apart along the w-axis.
            const int here = s.w_label[s.by_z[m]];
            const int next = s.w_label[s.by_z[(m + 1) % q]];
            CHECK((next - here + q) % q == p.p % q);
        }
    }
}

TEST_CASE("float embedding agrees with the integer schedule") {
    for (const DpqParams& p : all_params(25)) {
        const GCLink l = build(p);
        const AxisSchedule s = axis_schedule(p);
        for (int n = 0; n < p.q; ++n) {
            double r1 = 0, r2 = 0;
            // t = 0 lies on the z-axis, t = pi/2 on the w-axis.
            const Vec4 z = l[n].point(0), w = l[n].point(M_PI / 2);
            CHECK(std::hypot(z[2], z[3]) < 1e-12);
            CHECK(std::hypot(w[0], w[1]) < 1e-12);
            CHECK(angle_units(z[0], z[1], p.q, &r1) == s.z_pairs[n][0]);
            CHECK(angle_units(w[2], w[3], p.q, &r2) == s.w_pairs[n][0]);
            CHECK(r1 < 1e-12);
            CHECK(r2 < 1e-12);
            const Vec4 za = l[n].point(M_PI), wa = l[n].point(3 * M_PI / 2);
            CHECK(angle_units(za[0], za[1], p.q, &r1) == s.z_pairs[n][1]);
            CHECK(angle_units(wa[2], wa[3], p.q, &r2) == s.w_pairs[n][1]);
        }
    }
}

TEST_CASE("standard diagram structure") {
    for (const DpqParams& p : all_params(15)) {
        const LinkDiagram d = standard_diagram(p);
        const std::size_t q = static_cast<std::size_t>(p.q);
        CHECK(d.crossings.size() == q * (q - 1));
        std::vector<std::vector<int>> meets(q, std::vector<int>(q, 0));
        for (const DiagramCrossing& c : d.crossings) {
            CHECK(c.over != c.under);
            CHECK(std::abs(c.sign) == 1);
            ++meets[c.over][c.under];
            ++meets[c.under][c.over];
        }
        for (std::size_t a = 0; a < q; ++a) {
            CHECK(d.gauss[a].size() == 2 * (q - 1));
            for (std::size_t b = 0; b < q; ++b) CHECK(meets[a][b] == (a == b ? 0 : 2));
        }
        // Each crossing appears once over and once under across all codes.
        std::vector<int> over(d.crossings.size(), 0), under(d.crossings.size(), 0);
        for (const auto& seq : d.gauss) {
            for (const GaussEntry& e : seq) (e.over ? over : under)[e.crossing]++;
        }
        for (std::size_t c = 0; c < d.crossings.size(); ++c) {
            CHECK(over[c] == 1);
            CHECK(under[c] == 1);
        }
    }
}

TEST_CASE("standard diagram of D(1/3) and D(2/5)") {
    const LinkDiagram d3 = standard_diagram(DpqParams::make(1, 3));
    CHECK(d3.crossings.size() == 6);
    const auto lk = d3.linking_matrix();
    CHECK(std::abs(lk[0][1]) == 1);
    CHECK(lk[0][1] == lk[0][2]);
    CHECK(lk[0][1] == lk[1][2]);

    const DpqParams p25 = DpqParams::make(2, 5);
    const LinkDiagram d5 = standard_diagram(p25);
    for (const DiagramStrand& s : d5.strands) {
        // Chord k is parallel to the diameter at k p pi/q.
        const Eigen::Vector2d dir = s.end - s.start;
        const double target = s.z_label * 2 * M_PI / 5;
        CHECK(std::abs(std::sin(std::atan2(dir.y(), dir.x()) - target)) < 1e-12);
        // Endpoints sit on the unit circle near k p pi/q and its antipode.
        CHECK(s.start.norm() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(s.end.norm() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(std::sin(std::atan2(s.end.y(), s.end.x()) - target)) < 0.25 * std::sin(M_PI / 5));
    }
    CHECK(d5.gauss_text().find("0: ") == 0);
    const std::regex line(R"(\d+: ([OU][+-]\d+)(,[OU][+-]\d+)*)");
    std::istringstream text(d5.gauss_text());
    int lines = 0;
    for (std::string l; std::getline(text, l); ++lines) CHECK(std::regex_match(l, line));
    CHECK(lines == 5);
}

TEST_CASE("diagram linking equals determinant and Gauss-integral linking") {
    for (const DpqParams& p : all_params(15)) {
        const GCLink l = build(p);
        const auto geo = l.linking_matrix();
        const auto dia = standard_diagram(p).linking_matrix();
        CHECK_MESSAGE(geo == dia, p.fraction());
        // Gauss integral on pairs (0, d); phi-equivariance covers the rest.
        for (std::size_t d = 1; d < l.size(); ++d) {
            const double g = gauss_linking(sample_curve(l[0], 160), sample_curve(l[d], 160));
            CHECK(std::abs(g - dia[0][d]) < 0.1);
        }
    }
}

TEST_CASE("D(2/5) is the hyperbolic five-component link") {
    CHECK(classify(build(DpqParams::make(2, 5))) == LinkClass::hyperbolic5());
    CHECK(classify(build(DpqParams::make(1, 5))).kind() == LinkClass::Kind::Hopf);
    CHECK(classify(build(DpqParams::make(1, 3))).kind() == LinkClass::Kind::Hopf);
}

TEST_CASE("svg rendering") {
    const LinkDiagram d = standard_diagram(DpqParams::make(2, 5));
    const std::string svg = render_svg(d);
    CHECK(svg.find("width=\"512\" height=\"512\"") != std::string::npos);
    CHECK(count(svg, "<g id=\"component-") == 5);
    CHECK(count(svg, "<polyline") == 20);
    CHECK(svg == render_svg(standard_diagram(DpqParams::make(2, 5))));

    SvgOptions big;
    big.width = 800;
    big.height = 600;
    CHECK(render_svg(d, big).find("viewBox=\"0 0 800 600\"") != std::string::npos);

    const std::string svg15 = render_svg(standard_diagram(DpqParams::make(7, 15)));
    CHECK(count(svg15, "<polyline") == 15 * 14);
}
