#include "doctest.h"

#include "gclink/errors.hpp"
#include "gclink/two_bridge.hpp"

#include <nlohmann/json.hpp>

#include <numeric>
#include <random>
#include <set>

using namespace gclink;

namespace {

using Frac = std::pair<std::int64_t, std::int64_t>;  // (num, den), den > 0, lowest terms

Frac reduce(std::int64_t n, std::int64_t d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    return {n / g, d / g};
}

// Evaluates the continued fraction from the back by hand.
Frac back_substitute(const std::vector<std::int64_t>& a) {
    Frac v{0, 1};
    for (std::size_t i = a.size(); i-- > 0;) v = reduce(v.second, a[i] * v.second + v.first);
    return v;
}

// Residues equivalent to p mod q found by multiplying, not by inverting.
std::set<std::int64_t> brute_class(std::int64_t p, std::int64_t q) {
    std::set<std::int64_t> out;
    for (std::int64_t x = 0; x < q; ++x) {
        const std::int64_t px = p * x % q;
        if (x == p % q || x == (q - p % q) % q || px == 1 % q || px == (q - 1) % q) out.insert(x);
    }
    return out;
}

// Every value 1/(a1 + 1/(a2 + ...)) with ai = +-2 and denominator <= max_q.
// A tail's denominator is smaller than the whole value's, so pruning is safe.
std::set<Frac> all_plus_minus_two_values(std::int64_t max_q) {
    std::set<Frac> seen;
    std::vector<Frac> frontier{{0, 1}};
    while (!frontier.empty()) {
        std::vector<Frac> next;
        for (const Frac& t : frontier) {
            for (std::int64_t a : {2, -2}) {
                const Frac v = reduce(t.second, a * t.second + t.first);
                if (v.second > max_q || seen.count(v)) continue;
                seen.insert(v);
                next.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace

TEST_CASE("fractions and slopes") {
    CHECK(Fraction::parse("2/9") == Fraction{2, 9});
    CHECK(Fraction::parse("-5/23") == Fraction{-5, 23});
    CHECK_THROWS_AS(Fraction::parse("2-9"), ParseError);
    CHECK_THROWS_AS(Fraction::parse("a/9"), ParseError);
    CHECK_THROWS_AS(Fraction::parse("2/"), ParseError);
    CHECK_THROWS_AS(Fraction::make(3, 9), InvalidParams);
    CHECK_THROWS_AS(Fraction::knot(1, 4), InvalidParams);
    CHECK(Slope::parse("1/0") == Slope{1, 0});
    CHECK(Slope::parse("-1/0") == Slope{1, 0});
    CHECK(Slope::parse("8/-1") == Slope{-8, 1});
    CHECK_THROWS_AS(Slope::make(0, 0), InvalidParams);
    CHECK_THROWS_AS(Slope::make(4, 2), InvalidParams);
}

TEST_CASE("equivalence examples") {
    CHECK(equivalent(Fraction::knot(5, 23), Fraction::knot(18, 23)));
    CHECK(equivalent(Fraction::knot(1, 3), Fraction::knot(1, 3)));
    CHECK_FALSE(equivalent(Fraction::knot(1, 5), Fraction::knot(2, 5)));
    CHECK_FALSE(equivalent(Fraction::knot(1, 5), Fraction::knot(1, 7)));
    CHECK(equivalent(Fraction::knot(2, 5), Fraction::knot(3, 5)));
}

TEST_CASE("equivalence is an equivalence relation matching the residue rule") {
    for (std::int64_t q = 1; q <= 101; q += 2) {
        std::vector<Fraction> fs;
        for (std::int64_t p = 0; p < q; ++p) {
            if (std::gcd(p, q) == 1) fs.push_back(Fraction::knot(p, q));
        }
        for (const Fraction& a : fs) {
            CHECK(equivalent(a, a));
            const std::set<std::int64_t> cls = brute_class(a.p, q);
            for (const Fraction& b : fs) {
                const bool ab = equivalent(a, b);
                REQUIRE(ab == equivalent(b, a));
                REQUIRE(ab == (cls.count(b.p) == 1));
            }
        }
        // Transitivity: equivalence classes partition the residues.
        for (const Fraction& a : fs) {
            for (const Fraction& b : fs) {
                if (!equivalent(a, b)) continue;
                for (const Fraction& c : fs) {
                    if (equivalent(b, c)) REQUIRE(equivalent(a, c));
                }
            }
        }
    }
}

TEST_CASE("even continued fractions") {
    const EvenExpansion e = even_cf(Fraction::make(18, 23));
    REQUIRE(std::holds_alternative<std::vector<std::int64_t>>(e));
    CHECK(std::get<std::vector<std::int64_t>>(e) == std::vector<std::int64_t>{2, -2, 2, -2, -2, 2});
    CHECK(std::get<std::vector<std::int64_t>>(even_cf(Fraction::make(2, 3))) == std::vector<std::int64_t>{2, -2});
    CHECK(std::holds_alternative<NoExpansion>(even_cf(Fraction::make(1, 3))));
    CHECK_THROWS_AS(even_cf(Fraction::make(3, 2)), InvalidParams);

    int expanded = 0;
    for (std::int64_t q = 2; q <= 200; ++q) {
        for (std::int64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const EvenExpansion r = even_cf(Fraction::make(p, q));
            // An all-even expansion exists exactly when p and q have opposite parity.
            const bool exists = (p * q) % 2 == 0;
            REQUIRE(std::holds_alternative<std::vector<std::int64_t>>(r) == exists);
            if (!exists) continue;
            const auto& a = std::get<std::vector<std::int64_t>>(r);
            for (std::int64_t x : a) {
                CHECK(x != 0);
                CHECK(x % 2 == 0);
            }
            REQUIRE(back_substitute(a) == Frac{p, q});
            CHECK(evaluate_cf(a) == Fraction{p, q});
            ++expanded;
        }
    }
    CHECK(expanded > 5000);
}

TEST_CASE("fibered") {
    CHECK(fibered(Fraction::knot(5, 23)));
    CHECK(fibered(Fraction::knot(2, 5)));
    CHECK_FALSE(fibered(Fraction::knot(2, 7)));
    CHECK(fibered(Fraction::knot(1, 3)));  // through 2/3

    const std::set<Frac> reachable = all_plus_minus_two_values(41);
    for (std::int64_t q = 3; q <= 41; q += 2) {
        for (std::int64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            bool oracle = false;
            for (std::int64_t r : brute_class(p, q)) oracle = oracle || reachable.count({r, q}) > 0;
            CHECK_MESSAGE(fibered(Fraction::knot(p, q)) == oracle, p << "/" << q);
        }
    }

    for (std::int64_t q = 3; q <= 101; q += 2) {
        for (std::int64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const bool f = fibered(Fraction::knot(p, q));
            for (std::int64_t r : brute_class(p, q)) REQUIRE(fibered(Fraction::knot(r, q)) == f);
        }
    }
}

TEST_CASE("filling lifts, distance and reducible fillings") {
    const MultipleSlope a = lift_filling(Fraction::knot(2, 5), Slope::make(6, 1));
    CHECK(a.slopes == std::vector<Slope>(5, Slope::make(3, 1)));
    CHECK(lift_filling(Fraction::knot(2, 9), Slope::make(8, 1)).slopes == std::vector<Slope>(9, Slope::make(4, 1)));
    CHECK_THROWS_AS(lift_filling(Fraction::knot(2, 9), Slope::make(3, 1)), OddNumerator);
    CHECK_THROWS_AS(lift_filling(Fraction::knot(2, 9), Slope::make(1, 0)), OddNumerator);

    CHECK(delta(Slope::make(1, 0), Slope::make(0, 1)) == 1);
    CHECK(delta(Slope::make(3, 1), Slope::make(1, 1)) == 2);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> u(-40, 40);
    auto random_slope = [&] {
        while (true) {
            const std::int64_t m = u(rng), l = u(rng);
            if ((m != 0 || l != 0) && std::gcd(m, l) == 1) return Slope::make(m, l);
        }
    };
    for (int i = 0; i < 2000; ++i) {
        const Slope r = random_slope(), s = random_slope();
        CHECK(delta(r, s) == delta(s, r));
        CHECK((delta(r, s) == 0) == (r == s));
        CHECK(delta(r, r) == 0);
        CHECK(delta(Slope{-r.m, -r.l}, s) == delta(r, s));
    }

    CHECK(reducible_fillings(Fraction::knot(1, 3)) == std::vector<Slope>{Slope::make(6, 1), Slope::make(-6, 1)});
    CHECK(reducible_fillings(Fraction::knot(2, 5)).empty());
    CHECK(reducible_fillings(Fraction::knot(4, 9)).empty());
    CHECK(reducible_fillings(Fraction::knot(8, 9)).size() == 2);
    CHECK(reducible_fillings(Fraction::knot(0, 1)) == std::vector<Slope>{Slope::make(0, 1)});
}

TEST_CASE("certificates") {
    const Certificate c = certify_vhaken(Fraction::knot(2, 9), Slope::make(8, 1));
    CHECK(c.status == Certificate::Status::CertifiedModuloLambda);
    CHECK(c.reason.empty());
    CHECK(*c.representative == 2);
    CHECK(*c.lifted == Slope::make(4, 1));
    CHECK(*c.delta_plus == 3);
    CHECK(*c.delta_minus == 5);
    CHECK(c.coannular.size() == 4);
    CHECK(c.lambda_caveat);
    CHECK_FALSE(*c.filling_reducible);

    const Certificate d = certify_vhaken(Fraction::knot(2, 9), Slope::make(4, 1));
    CHECK(d.status == Certificate::Status::NotCertified);
    CHECK(d.reason == "distance");
    CHECK(*d.lifted == Slope::make(2, 1));
    CHECK(*d.delta_plus == 1);

    CHECK(certify_vhaken(Fraction::knot(1, 3), Slope::make(8, 1)).reason == "range");
    CHECK(certify_vhaken(Fraction::knot(2, 9), Slope::make(7, 1)).reason == "odd");
    CHECK(certify_vhaken(Fraction::knot(2, 9), Slope::make(1, 0)).reason == "odd");
    // 7/9 is equivalent to 2/9 (7 = -2).
    CHECK(certify_vhaken(Fraction::knot(7, 9), Slope::make(8, 1)).status == Certificate::Status::CertifiedModuloLambda);

    const nlohmann::json j = c;
    CHECK(j["status"] == "CertifiedModuloLambda");
    CHECK(j["lifted"] == "4/1");
    CHECK(j["delta_plus_one"] == 3);
    CHECK(j["delta_minus_one"] == 5);
    CHECK(j["lambda_caveat"] == true);
    CHECK(j["representative"] == "2/9");
}

TEST_CASE("certificate self-consistency") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> u(-30, 30);
    int certified = 0;
    for (std::int64_t q = 3; q <= 61; q += 2) {
        for (std::int64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Fraction f = Fraction::knot(p, q);
            for (int k = 0; k < 6; ++k) {
                std::int64_t m = u(rng), l = u(rng);
                if ((m == 0 && l == 0) || std::gcd(m, l) != 1) continue;
                const Slope s = Slope::make(m, l);
                const Certificate c = certify_vhaken(f, s);
                bool has_small = false;
                for (std::int64_t r : brute_class(p, q)) has_small = has_small || (r > 0 && 4 * r < q);
                CHECK((c.reason == "range") == !has_small);
                if (c.status != Certificate::Status::CertifiedModuloLambda) continue;
                ++certified;
                REQUIRE(c.lifted);
                CHECK(2 * c.lifted->m == s.m);
                CHECK(*c.delta_plus >= 2);
                CHECK(*c.delta_minus >= 2);
                for (const auto& e : c.coannular) CHECK(e.delta >= 2);
                CHECK(std::find(c.reducible.begin(), c.reducible.end(), s) == c.reducible.end());
            }
        }
    }
    CHECK(certified > 100);
}

TEST_CASE("torus knots are never certified") {
    for (std::int64_t q = 3; q <= 101; q += 2) {
        const Certificate c = certify_vhaken(Fraction::knot(1, q), Slope::make(8 * q + 2, 1));
        CHECK(c.status == Certificate::Status::NotCertified);
        // Only 1/3 lacks a representative below 1/4.
        CHECK(c.reason == (q == 3 ? "range" : "torus"));
    }
}
