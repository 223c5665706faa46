#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gclink {

/// p/q in lowest terms with q > 0.  Knot fractions also need q odd.
struct Fraction {
    std::int64_t p = 1;
    std::int64_t q = 3;

    /// Throws InvalidParams unless gcd(p, q) = 1 and q > 0.
    static Fraction make(std::int64_t p, std::int64_t q);
    /// make() plus q odd.
    static Fraction knot(std::int64_t p, std::int64_t q);
    /// Parses "P/Q"; throws ParseError.
    static Fraction parse(const std::string& text);

    std::string to_string() const;
    bool operator==(const Fraction&) const = default;
};

/// A boundary slope m/l, stored with l > 0, or as 1/0.
struct Slope {
    std::int64_t m = 1;
    std::int64_t l = 0;

    /// Throws InvalidParams for 0/0 or a common factor.
    static Slope make(std::int64_t m, std::int64_t l);
    static Slope parse(const std::string& text);

    std::string to_string() const;
    bool operator==(const Slope&) const = default;
};

/// One slope per boundary torus of the dihedral cover.
struct MultipleSlope {
    std::vector<Slope> slopes;
};

/// q1 = q2 and p2 is one of p1, -p1, 1/p1, -1/p1 mod q.
bool equivalent(const Fraction& f1, const Fraction& f2);

/// The four residues in [0, q) equivalent to f.
std::vector<std::int64_t> representatives(const Fraction& f);

struct NoExpansion {};
using EvenExpansion = std::variant<std::vector<std::int64_t>, NoExpansion>;

/// p/q = 1/(a1 + 1/(a2 + ...)) with every ai even, each ai the even integer
/// nearest the current reciprocal.  NoExpansion when a reciprocal is an odd
/// integer.  Requires 0 < p < q.
EvenExpansion even_cf(const Fraction& f);

/// Evaluates 1/(a1 + 1/(a2 + ...)) exactly.
Fraction evaluate_cf(const std::vector<std::int64_t>& a);

/// Some equivalent p'/q has an expansion with every entry +-2.
bool fibered(const Fraction& f);

/// s = m/l with m even lifts to q copies of (m/2)/l.  Throws OddNumerator.
MultipleSlope lift_filling(const Fraction& f, const Slope& s);

/// |m_r l_s - l_r m_s|.
std::int64_t delta(const Slope& r, const Slope& s);

/// +-2q/1 when p = +-1 mod q, 0/1 when p = 0 mod q, else empty.
std::vector<Slope> reducible_fillings(const Fraction& f);

struct Certificate {
    enum class Status { CertifiedModuloLambda, NotCertified };

    Fraction input;
    Slope filling;
    Status status = Status::NotCertified;
    /// "range", "torus", "odd", "distance" or "reducible" when not certified.
    std::string reason;

    std::optional<std::int64_t> representative;  // p' with 4p' < q
    std::optional<Slope> lifted;
    struct Coannular {
        int position;
        int component;
        Slope slope;
        std::int64_t delta;
    };
    std::vector<Coannular> coannular;
    std::optional<std::int64_t> delta_plus;   // against 1/1
    std::optional<std::int64_t> delta_minus;  // against -1/1
    std::vector<Slope> reducible;
    std::optional<bool> filling_reducible;
    /// Distance threshold is K + 1 with K = 1.
    int K = 1;
    /// The excluded finite slope set is not known; always true.
    bool lambda_caveat = true;
};

/// Checks, in order: an equivalent p'/q < 1/4 exists (range); the knot is
/// not a (2, q) torus knot (torus); the filling lifts (odd); the lift is at
/// distance >= 2 from every coannular slope (distance); the filling is not
/// reducible (reducible).
Certificate certify_vhaken(const Fraction& f, const Slope& s);

const char* to_string(Certificate::Status s);

void to_json(nlohmann::json& j, const Fraction& f);
void to_json(nlohmann::json& j, const Slope& s);
void to_json(nlohmann::json& j, const MultipleSlope& s);
void to_json(nlohmann::json& j, const Certificate& c);

}  // namespace gclink
