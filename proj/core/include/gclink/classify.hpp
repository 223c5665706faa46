#pragma once

#include "gclink/great_circle.hpp"
#include "gclink/hopf.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gclink {

/// A signed Hopf link on `size` fibers.  Size 1 and 2 links are always +.
struct HopfNode {
    int sign = 1;
    int size = 1;

    auto operator<=>(const HopfNode&) const = default;
};

/// Canonical class of a great circle link: a single Hopf link, a tree of
/// Hopf links joined by torus sums, or the hyperbolic 5-component link.
class LinkClass {
public:
    enum class Kind { Hopf, TorusSumTree, Hyperbolic5 };
    using Edge = std::pair<std::size_t, std::size_t>;

    static LinkClass hopf(int sign, int size);
    static LinkClass hyperbolic5();
    /// Normalizes: adjacent nodes of equal sign merge (+m with +n gives
    /// +(m+n-2)), size-2 nodes are absorbed, nodes are put in canonical order.
    /// A tree that collapses to one node becomes a Hopf class.
    static LinkClass tree(std::vector<HopfNode> nodes, std::vector<Edge> edges);

    Kind kind() const { return kind_; }
    const std::vector<HopfNode>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int components() const;

    LinkClass mirrored() const;
    std::string name() const;

    /// Triple sign predicted for components on nodes a, b, c: the sign of
    /// their median node.  Only meaningful for Hopf and tree classes.
    int median_sign(std::size_t a, std::size_t b, std::size_t c) const;

    bool operator==(const LinkClass& o) const { return name() == o.name(); }
    bool operator<(const LinkClass& o) const { return name() < o.name(); }

private:
    Kind kind_ = Kind::Hopf;
    std::vector<HopfNode> nodes_;
    std::vector<Edge> edges_;
};

/// Class of the torus sum along a component on node_a of a and a component
/// on node_b of b.
LinkClass tree_merge(const LinkClass& a, std::size_t node_a, const LinkClass& b, std::size_t node_b);

/// Sign of the 3-component sublink: send components idx[0], idx[1] to
/// span(e1,e2), span(e3,e4) by an orientation-preserving linear map and read
/// the sign of det A where the third plane is graph(A).  +1 is a +3 Hopf
/// link.  Throws DegenerateTriple if no rotation of roles gives a graph.
int triple_handedness(const GCLink& L, std::array<std::size_t, 3> idx);

/// lk(P,Q) lk(P,R) lk(Q,R); equal to triple_handedness.
int triple_linking_product(const GCLink& L, std::array<std::size_t, 3> idx);

/// Linear map sending components idx[0], idx[1], idx[2] to fibers of one
/// Hopf bundle: the first two go to span(e1,e2) and span(e3,e4), the third
/// to the graph of the identity (sign +, right-handed i-bundle) or of
/// diag(1,-1) (sign -, left-handed i-bundle).
struct Standardization {
    Mat4 map;
    int sign;
    HopfBundle bundle;
};
Standardization standardize(const GCLink& L, std::array<std::size_t, 3> idx);

/// Class predicted by the case tables for projected configurations with
/// three points and one or two circles.  Returns every class consistent with
/// the configuration; empty when the tables do not apply.
std::set<std::string> configuration_candidates(const Configuration& c, int sign);

struct Classification {
    LinkClass link_class;
    /// Node of the class carrying each component; empty for Hyperbolic5.
    std::vector<std::size_t> node_of;
    nlohmann::json evidence;
};

struct ClassifyOptions {
    /// Also run the configuration tables over triples until one decides and
    /// require agreement.
    bool cross_check = true;
};

/// Throws UnsupportedSize above 5 components and IndeterminateConfiguration
/// if the configuration tables contradict the triple signs.
Classification classify_detailed(const GCLink& L, const ClassifyOptions& opts = {});
LinkClass classify(const GCLink& L, const ClassifyOptions& opts = {});

struct ClassCensus {
    int n = 0;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::size_t rejected = 0;  // resampled non-transverse tuples
    std::size_t indeterminate = 0;
    std::map<std::string, std::size_t> classes;
};

/// n random pairwise-transverse planes per sample (Gaussian frames,
/// orthonormalized).  Sample k draws from a generator seeded by (seed, k), so
/// the result does not depend on `threads`.
ClassCensus census(int n, std::size_t samples, std::uint64_t seed, unsigned threads = 1,
                   const ClassifyOptions& opts = {});

/// The random link drawn for sample `index`.
GCLink census_sample(int n, std::uint64_t seed, std::size_t index, std::size_t* rejected = nullptr);

void to_json(nlohmann::json& j, const LinkClass& c);
void to_json(nlohmann::json& j, const ClassCensus& c);

}  // namespace gclink
