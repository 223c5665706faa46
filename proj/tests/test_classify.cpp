#include "doctest.h"
#include "support.hpp"

#include "gclink/classify.hpp"
#include "gclink/errors.hpp"

#include <cmath>
#include <numeric>

using namespace gclink;
using testing::hopf_link;

namespace {

GCLink reorient(const GCLink& l, unsigned mask) {
    std::vector<GreatCircle> out;
    for (std::size_t k = 0; k < l.size(); ++k) out.push_back(mask >> k & 1 ? l[k].reversed() : l[k]);
    return GCLink(out);
}

const LinkClass kPlus3 = LinkClass::hopf(1, 3);
const LinkClass kMinus3 = LinkClass::hopf(-1, 3);

}  // namespace

TEST_CASE("class names and normal form") {
    CHECK(LinkClass::hopf(1, 5).name() == "+5");
    CHECK(LinkClass::hopf(-1, 2).name() == "+2");
    CHECK(LinkClass::hopf(-1, 1).name() == "+1");
    CHECK(LinkClass::hyperbolic5().name() == "HYP5");
    CHECK(LinkClass::tree({{-1, 3}, {1, 3}}, {{0, 1}}).name() == "T(+3,-3)");
    CHECK(LinkClass::tree({{-1, 3}, {1, 4}}, {{0, 1}}).name() == "T(+4,-3)");
    CHECK(LinkClass::tree({{1, 3}, {-1, 4}}, {{0, 1}}).name() == "T(-4,+3)");
    CHECK(LinkClass::tree({{1, 3}, {-1, 3}, {1, 3}}, {{1, 0}, {2, 1}}).name() == "T(+3,-3,+3)");
    // Same-sign neighbors merge; size-2 nodes disappear.
    CHECK(LinkClass::tree({{1, 3}, {1, 3}}, {{0, 1}}).name() == "+4");
    CHECK(LinkClass::tree({{1, 2}, {-1, 3}}, {{0, 1}}).name() == "-3");
    CHECK(LinkClass::tree({{1, 3}, {1, 2}, {-1, 3}}, {{0, 1}, {1, 2}}).name() == "T(+3,-3)");
    CHECK(LinkClass::tree({{1, 3}, {-1, 3}, {-1, 3}}, {{0, 1}, {1, 2}}).name() == "T(-4,+3)");
    // Node order in the input does not matter.
    CHECK(LinkClass::tree({{1, 3}, {-1, 3}, {1, 3}}, {{0, 1}, {1, 2}}) ==
          LinkClass::tree({{-1, 3}, {1, 3}, {1, 3}}, {{0, 1}, {0, 2}}));
    // A star is not a path.
    const LinkClass star = LinkClass::tree({{-1, 3}, {1, 3}, {1, 3}, {1, 3}}, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(star.components() == 6);
    CHECK(star.name().rfind("T(", 0) == 0);
    CHECK_THROWS_AS(LinkClass::tree({{1, 3}, {-1, 3}}, {}), InvalidParams);
    CHECK_THROWS_AS(LinkClass::tree({{1, 2}, {-1, 3}, {1, 3}, {1, 3}}, {{0, 1}, {0, 2}, {0, 3}}), InvalidParams);
}

TEST_CASE("mirror and component counts") {
    const LinkClass t = LinkClass::tree({{1, 4}, {-1, 3}}, {{0, 1}});
    CHECK(t.components() == 5);
    CHECK(t.mirrored().name() == "T(-4,+3)");
    CHECK(t.mirrored().mirrored() == t);
    CHECK(LinkClass::hyperbolic5().mirrored().name() == "HYP5");
    CHECK(LinkClass::hopf(1, 2).mirrored().name() == "+2");
}

TEST_CASE("tree merge") {
    CHECK(tree_merge(kPlus3, 0, kMinus3, 0).name() == "T(+3,-3)");
    CHECK(tree_merge(kPlus3, 0, kPlus3, 0).name() == "+4");
    CHECK(tree_merge(LinkClass::hopf(1, 2), 0, kMinus3, 0).name() == "-3");
    const LinkClass t = tree_merge(kPlus3, 0, kMinus3, 0);
    const std::size_t minus = t.nodes()[0].sign < 0 ? 0 : 1;
    CHECK(tree_merge(t, minus, kPlus3, 0).name() == "T(+3,-3,+3)");
    CHECK(tree_merge(t, 1 - minus, kPlus3, 0).name() == "T(+4,-3)");
    CHECK_THROWS_AS(tree_merge(LinkClass::hyperbolic5(), 0, kPlus3, 0), InvalidParams);
}

TEST_CASE("triple handedness") {
    const GCLink plus = hopf_link(3);
    CHECK(triple_handedness(plus, {0, 1, 2}) == 1);
    CHECK(triple_handedness(plus.mirrored(), {0, 1, 2}) == -1);
    const GCLink five = hopf_link(5);
    int count = 0;
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = a + 1; b < 5; ++b)
            for (std::size_t c = b + 1; c < 5; ++c) count += triple_handedness(five, {a, b, c}) == 1;
    CHECK(count == 10);
    CHECK_THROWS_AS(triple_handedness(plus, {0, 0, 1}), InvalidParams);
}

TEST_CASE("triple handedness equals the linking product and ignores roles") {
    std::mt19937_64 rng(61);
    for (int s = 0; s < 500; ++s) {
        const GCLink l = census_sample(3, 99, static_cast<std::size_t>(s));
        const int t = triple_handedness(l, {0, 1, 2});
        CHECK(t == triple_linking_product(l, {0, 1, 2}));
        CHECK(t == triple_handedness(l, {1, 2, 0}));
        CHECK(t == triple_handedness(l, {2, 0, 1}));
        CHECK(t == triple_handedness(l, {1, 0, 2}));
        CHECK(t == triple_handedness(reorient(l, static_cast<unsigned>(rng() % 8)), {0, 1, 2}));
    }
}

TEST_CASE("standardization sends the triple to fibers") {
    for (std::size_t s = 0; s < 200; ++s) {
        const GCLink l = census_sample(3, 5, s);
        const Standardization st = standardize(l, {0, 1, 2});
        CHECK(st.map.determinant() > 0);
        const GreatCircle e12(Vec4::Unit(0), Vec4::Unit(1));
        const GreatCircle e34(Vec4::Unit(2), Vec4::Unit(3));
        const GreatCircle graph = GreatCircle::span(Vec4(1, 0, 1, 0), Vec4(0, 1, 0, st.sign));
        const auto near_plane = [](const GreatCircle& a, const GreatCircle& b) {
            // Same plane iff the stacked determinant and the projection residual vanish.
            const Frame f = b.frame();
            const Frame p = f * (f.transpose() * a.frame());
            return (p - a.frame()).norm() < 1e-8;
        };
        CHECK(near_plane(l[0].transformed(st.map), e12));
        CHECK(near_plane(l[1].transformed(st.map), e34));
        CHECK(near_plane(l[2].transformed(st.map), graph));
        CHECK(st.sign == triple_handedness(l, {0, 1, 2}));
        // All three are fibers of the chosen bundle.
        for (const auto& c : {e12, e34, graph}) CHECK(std::holds_alternative<PointImage>(project(c, st.bundle)));
    }
}

TEST_CASE("small classifications") {
    CHECK(classify(hopf_link(1)).name() == "+1");
    CHECK(classify(hopf_link(2)).name() == "+2");
    CHECK(classify(hopf_link(2).mirrored()).name() == "+2");
    CHECK(classify(hopf_link(3)).name() == "+3");
    CHECK(classify(hopf_link(3, -1)).name() == "-3");
    CHECK(classify(hopf_link(4)).name() == "+4");
    CHECK(classify(hopf_link(5)).name() == "+5");
    CHECK(classify(hopf_link(5, -1)).name() == "-5");
    CHECK_THROWS_AS(classify(GCLink()), UnsupportedSize);
    std::vector<GreatCircle> six;
    for (std::size_t k = 0; k < 6; ++k) six.push_back(census_sample(6, 1, 0)[k]);
    CHECK_THROWS_AS(classify(GCLink(six)), UnsupportedSize);
}

TEST_CASE("torus sums classify as trees") {
    const GCLink p3 = hopf_link(3), m3 = hopf_link(3, -1), p4 = hopf_link(4), p2 = hopf_link(2);
    CHECK(classify(torus_sum(p3, 0, m3, 0)).name() == "T(+3,-3)");
    CHECK(classify(torus_sum(p4, 1, m3, 2)).name() == "T(+4,-3)");
    CHECK(classify(torus_sum(p2, 0, p2, 1)).name() == "+2");
    CHECK(classify(torus_sum(p3, 2, p3, 1)).name() == "+4");
    const Classification c = classify_detailed(torus_sum(p3, 0, m3, 0));
    REQUIRE(c.evidence.contains("nodes"));
    // Components 0,1 come from the +3 summand.
    CHECK(c.node_of[0] == c.node_of[1]);
    CHECK(c.node_of[2] == c.node_of[3]);
    CHECK(c.link_class.nodes()[c.node_of[0]].sign == 1);
}

TEST_CASE("classification commutes with torus sums") {
    std::vector<GCLink> pieces = {hopf_link(2), hopf_link(3), hopf_link(3, -1), hopf_link(4), hopf_link(4, -1)};
    pieces.push_back(torus_sum(hopf_link(3), 0, hopf_link(3, -1), 0));
    int checked = 0;
    for (const auto& a : pieces) {
        for (const auto& b : pieces) {
            if (a.size() + b.size() - 2 > 5) continue;
            const Classification ca = classify_detailed(a);
            const Classification cb = classify_detailed(b);
            for (std::size_t i = 0; i < a.size(); ++i) {
                for (std::size_t j = 0; j < b.size(); ++j) {
                    const GCLink s = torus_sum(a, i, b, j);
                    const LinkClass expected = tree_merge(ca.link_class, ca.node_of[i], cb.link_class, cb.node_of[j]);
                    CHECK(classify(s).name() == expected.name());
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("invariance under reordering, orientation and isometries") {
    std::mt19937_64 rng(67);
    for (int n = 3; n <= 5; ++n) {
        for (std::size_t s = 0; s < 150; ++s) {
            const GCLink l = census_sample(n, 3, s);
            const std::string name = classify(l).name();
            std::vector<std::size_t> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            CHECK(classify(l.permuted(order)).name() == name);
            CHECK(classify(reorient(l, static_cast<unsigned>(rng()))).name() == name);
            CHECK(classify(l.transformed(testing::random_rotation(rng))).name() == name);
            CHECK(classify(l.mirrored()).name() == LinkClass(classify(l)).mirrored().name());
        }
    }
}

TEST_CASE("configuration evidence agrees with the class") {
    std::size_t decided = 0;
    for (std::size_t s = 0; s < 400; ++s) {
        const Classification c = classify_detailed(census_sample(5, 11, s));
        if (c.evidence["configuration"].is_null()) continue;
        ++decided;
        const auto cand = c.evidence["configuration_candidates"].get<std::vector<std::string>>();
        CHECK(std::find(cand.begin(), cand.end(), c.link_class.name()) != cand.end());
        CHECK(c.evidence["configuration"]["points"].size() == 3);
        CHECK(c.evidence["configuration"]["circles"].size() == 2);
    }
    CHECK(decided > 300);
}

TEST_CASE("perturbed round Hopf link straightens to a 3-component class") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-0.2 / 2, 0.2 / 2);
    const GCLink base = hopf_link(3);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<RoundCircle> rc;
        for (const auto& c : base) rc.push_back({Vec4(u(rng), u(rng), u(rng), u(rng)), c.v1(), c.v2()});
        const std::string name = classify(straighten(rc)).name();
        CHECK((name == "+3" || name == "-3"));
    }
}

TEST_CASE("census") {
    CHECK(census(2, 100, 1).classes.size() == 1);
    CHECK(census(3, 200, 1).classes.size() == 2);
    const ClassCensus c4 = census(4, 2000, 7);
    CHECK(c4.classes.size() == 3);
    CHECK(c4.indeterminate == 0);
    // Independent of the worker count.
    const ClassCensus a = census(5, 300, 3, 1);
    const ClassCensus b = census(5, 300, 3, 4);
    CHECK(a.classes == b.classes);
    CHECK(a.rejected == b.rejected);
    const nlohmann::json j = c4;
    CHECK(j["distinct_classes"] == 3);
}
