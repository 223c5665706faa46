#include "gclink/two_bridge.hpp"

#include "gclink/errors.hpp"
#include "gclink/wedge_surface.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>
#include <numeric>
#include <tuple>

namespace gclink {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    // Extended Euclid; a and m coprime.
    std::int64_t r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t k = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - k * s1);
    }
    return mod(s0, m);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t d = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
    return d;
}

std::pair<std::int64_t, std::int64_t> parse_pair(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) throw ParseError("expected A/B, got '" + text + "'");
    auto number = [&](std::size_t from, std::size_t to) {
        std::int64_t v = 0;
        const char* b = text.data() + from;
        const char* e = text.data() + to;
        if (b != e && *b == '+') ++b;
        const auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || ptr != e || b == e) throw ParseError("bad integer in '" + text + "'");
        return v;
    };
    return {number(0, slash), number(slash + 1, text.size())};
}

// One step of the expansion of n/d (|n| < d): 1/(n/d) = a + r.
struct Step {
    std::int64_t a;
    std::int64_t rn;  // r = rn / rd with rd > 0
    std::int64_t rd;
};

Step step_with(std::int64_t n, std::int64_t d, std::int64_t a) {
    // d/n - a = (d - a n)/n
    std::int64_t rn = d - a * n, rd = n;
    if (rd < 0) {
        rn = -rn;
        rd = -rd;
    }
    return {a, rn, rd};
}

bool all_twos(std::int64_t n, std::int64_t d, std::map<std::pair<std::int64_t, std::int64_t>, bool>& memo) {
    const auto key = std::make_pair(n, d);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;
    memo[key] = false;  // guards against revisiting along the current path
    bool ok = false;
    for (std::int64_t a : {2, -2}) {
        const Step s = step_with(n, d, a);
        if (s.rn == 0) {
            ok = true;
            break;
        }
        if (std::llabs(s.rn) < s.rd && all_twos(s.rn, s.rd, memo)) {
            ok = true;
            break;
        }
    }
    memo[key] = ok;
    return ok;
}

}  // namespace

Fraction Fraction::make(std::int64_t p, std::int64_t q) {
    if (q <= 0) throw InvalidParams("denominator must be positive");
    if (std::gcd(p, q) != 1) throw InvalidParams(std::to_string(p) + "/" + std::to_string(q) + " is not in lowest terms");
    return {p, q};
}

Fraction Fraction::knot(std::int64_t p, std::int64_t q) {
    const Fraction f = make(p, q);
    if (q % 2 == 0) throw InvalidParams("knot fractions need an odd denominator");
    return f;
}

Fraction Fraction::parse(const std::string& text) {
    const auto [p, q] = parse_pair(text);
    return make(p, q);
}

std::string Fraction::to_string() const { return std::to_string(p) + "/" + std::to_string(q); }

Slope Slope::make(std::int64_t m, std::int64_t l) {
    if (m == 0 && l == 0) throw InvalidParams("0/0 is not a slope");
    if (std::gcd(m, l) != 1) throw InvalidParams(std::to_string(m) + "/" + std::to_string(l) + " is not in lowest terms");
    if (l < 0 || (l == 0 && m < 0)) return {-m, -l};
    return {m, l};
}

Slope Slope::parse(const std::string& text) {
    const auto [m, l] = parse_pair(text);
    return make(m, l);
}

std::string Slope::to_string() const { return std::to_string(m) + "/" + std::to_string(l); }

std::vector<std::int64_t> representatives(const Fraction& f) {
    const std::int64_t q = f.q;
    const std::int64_t p = mod(f.p, q);
    if (q == 1) return {0, 0, 0, 0};
    const std::int64_t inv = inverse_mod(p, q);
    return {p, mod(-p, q), inv, mod(-inv, q)};
}

bool equivalent(const Fraction& f1, const Fraction& f2) {
    if (f1.q != f2.q) return false;
    const std::vector<std::int64_t> r = representatives(f1);
    return std::find(r.begin(), r.end(), mod(f2.p, f2.q)) != r.end();
}

EvenExpansion even_cf(const Fraction& f) {
    if (f.p <= 0 || f.p >= f.q) throw InvalidParams("even_cf needs 0 < p < q");
    std::vector<std::int64_t> out;
    std::int64_t n = f.p, d = f.q;
    while (true) {
        // Nearest even integer to d/n: 2 round(d / 2n).
        const std::int64_t num = n > 0 ? d : -d;
        const std::int64_t den = std::llabs(n);
        const std::int64_t a = 2 * floor_div(num + den, 2 * den);
        const Step s = step_with(n, d, a);
        if (std::llabs(s.rn) == s.rd) return NoExpansion{};
        out.push_back(a);
        if (s.rn == 0) return out;
        n = s.rn;
        d = s.rd;
    }
}

Fraction evaluate_cf(const std::vector<std::int64_t>& a) {
    std::int64_t n = 0, d = 1;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        // 1 / (a + n/d) = d / (a d + n)
        const std::int64_t nd = *it * d + n;
        n = d;
        d = nd;
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const std::int64_t g = std::gcd(n, d);
        n /= g;
        d /= g;
    }
    return {n, d};
}

bool fibered(const Fraction& f) {
    if (f.q == 1) return true;  // the unknot
    std::map<std::pair<std::int64_t, std::int64_t>, bool> memo;
    for (std::int64_t r : representatives(f)) {
        if (r > 0 && all_twos(r, f.q, memo)) return true;
    }
    return false;
}

MultipleSlope lift_filling(const Fraction& f, const Slope& s) {
    if (s.m % 2 != 0) throw OddNumerator("filling slope " + s.to_string() + " has an odd numerator");
    MultipleSlope out;
    out.slopes.assign(static_cast<std::size_t>(f.q), Slope::make(s.m / 2, s.l));
    return out;
}

std::int64_t delta(const Slope& r, const Slope& s) { return std::llabs(r.m * s.l - r.l * s.m); }

std::vector<Slope> reducible_fillings(const Fraction& f) {
    const std::int64_t p = mod(f.p, f.q);
    if (p == 0) return {Slope::make(0, 1)};
    if (p == 1 || p == f.q - 1) return {Slope::make(2 * f.q, 1), Slope::make(-2 * f.q, 1)};
    return {};
}

Certificate certify_vhaken(const Fraction& f, const Slope& s) {
    Certificate c;
    c.input = f;
    c.filling = s;
    c.reducible = reducible_fillings(f);

    for (std::int64_t r : representatives(f)) {
        if (r > 0 && 4 * r < f.q && (!c.representative || r < *c.representative)) c.representative = r;
    }
    if (!c.representative) {
        c.reason = "range";
        return c;
    }
    const std::int64_t p = mod(f.p, f.q);
    if (p == 1 || p == f.q - 1) {
        c.reason = "torus";
        return c;
    }
    if (s.m % 2 != 0) {
        c.reason = "odd";
        return c;
    }
    c.lifted = lift_filling(f, s).slopes.front();

    const CoannularReport report = coannular_slopes(DpqParams::make(*c.representative, f.q));
    bool far = true;
    for (const CoannularEntry& e : report.entries) {
        const Slope cs = Slope::make(e.slope, 1);
        const std::int64_t d = delta(*c.lifted, cs);
        c.coannular.push_back({e.position, e.component, cs, d});
        far = far && d >= c.K + 1;
    }
    c.delta_plus = delta(*c.lifted, Slope::make(1, 1));
    c.delta_minus = delta(*c.lifted, Slope::make(-1, 1));
    if (!far) {
        c.reason = "distance";
        return c;
    }
    c.filling_reducible = std::find(c.reducible.begin(), c.reducible.end(), s) != c.reducible.end();
    if (*c.filling_reducible) {
        c.reason = "reducible";
        return c;
    }
    c.status = Certificate::Status::CertifiedModuloLambda;
    return c;
}

const char* to_string(Certificate::Status s) {
    return s == Certificate::Status::CertifiedModuloLambda ? "CertifiedModuloLambda" : "NotCertified";
}

void to_json(nlohmann::json& j, const Fraction& f) { j = f.to_string(); }

void to_json(nlohmann::json& j, const Slope& s) { j = s.to_string(); }

void to_json(nlohmann::json& j, const MultipleSlope& s) { j = s.slopes; }

void to_json(nlohmann::json& j, const Certificate& c) {
    auto opt = [](const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json co = nlohmann::json::array();
    for (const auto& e : c.coannular) {
        co.push_back({{"position", e.position}, {"component", e.component}, {"slope", e.slope}, {"delta", e.delta}});
    }
    j = {{"fraction", c.input},
         {"filling", c.filling},
         {"status", to_string(c.status)},
         {"reason", c.reason.empty() ? nlohmann::json(nullptr) : nlohmann::json(c.reason)},
         {"representative", c.representative ? nlohmann::json(std::to_string(*c.representative) + "/" +
                                                               std::to_string(c.input.q))
                                             : nlohmann::json(nullptr)},
         {"lifted", opt(c.lifted)},
         {"lifted_copies", c.lifted ? nlohmann::json(c.input.q) : nlohmann::json(nullptr)},
         {"coannular", co},
         {"delta_plus_one", opt(c.delta_plus)},
         {"delta_minus_one", opt(c.delta_minus)},
         {"reducible_fillings", c.reducible},
         {"filling_reducible", opt(c.filling_reducible)},
         {"K", c.K},
         {"lambda_caveat", c.lambda_caveat},
         {"caveat", "finitely many filling slopes in an unknown set Lambda are excluded but not identified"}};
}

}  // namespace gclink
