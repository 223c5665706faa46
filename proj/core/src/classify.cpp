#include "gclink/classify.hpp"

#include "gclink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace gclink {

namespace {

constexpr double kGraphTol = 1e-9;

std::string node_name(const HopfNode& n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%c%d", n.sign > 0 ? '+' : '-', n.size);
    return buf;
}

// Canonical node order: larger links first, then + before -.
std::pair<int, int> node_key(const HopfNode& n) { return {-n.size, -n.sign}; }

HopfNode normalized_node(HopfNode n) {
    if (n.size <= 2) n.sign = 1;
    return n;
}

std::vector<std::vector<std::size_t>> adjacency(std::size_t n, const std::vector<LinkClass::Edge>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

std::vector<std::size_t> tree_path(const std::vector<std::vector<std::size_t>>& adj, std::size_t from, std::size_t to) {
    std::vector<std::size_t> parent(adj.size(), adj.size());
    std::vector<std::size_t> queue{from};
    parent[from] = from;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::size_t next : adj[queue[head]]) {
            if (parent[next] == adj.size()) {
                parent[next] = queue[head];
                queue.push_back(next);
            }
        }
    }
    std::vector<std::size_t> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    return path;
}

void check_tree(const std::vector<HopfNode>& nodes, const std::vector<LinkClass::Edge>& edges) {
    if (nodes.empty()) throw InvalidParams("empty torus-sum tree");
    if (edges.size() + 1 != nodes.size()) throw InvalidParams("torus-sum graph is not a tree");
    const auto adj = adjacency(nodes.size(), edges);
    std::vector<bool> seen(nodes.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 0;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        ++count;
        for (std::size_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    if (count != nodes.size()) throw InvalidParams("torus-sum graph is not connected");
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        if (nodes[v].size < 2 && nodes.size() > 1) throw InvalidParams("torus sums need at least 2 components");
        if (static_cast<int>(adj[v].size()) > nodes[v].size) throw InvalidParams("node glued along too many components");
    }
}


}  // namespace

LinkClass LinkClass::hopf(int sign, int size) {
    if (size < 1) throw InvalidParams("Hopf link needs at least one component");
    LinkClass c;
    c.kind_ = Kind::Hopf;
    c.nodes_ = {normalized_node({sign > 0 ? 1 : -1, size})};
    return c;
}

LinkClass LinkClass::hyperbolic5() {
    LinkClass c;
    c.kind_ = Kind::Hyperbolic5;
    return c;
}

LinkClass LinkClass::tree(std::vector<HopfNode> nodes, std::vector<Edge> edges) {
    check_tree(nodes, edges);
    for (auto& n : nodes) n = normalized_node(n);

    bool changed = true;
    while (changed && nodes.size() > 1) {
        changed = false;
        auto adj = adjacency(nodes.size(), edges);
        // Remove node v, reconnecting its neighbors when it had two.
        auto remove = [&](std::size_t v, std::optional<Edge> bridge) {
            std::vector<Edge> kept;
            for (const auto& e : edges) {
                if (e.first != v && e.second != v) kept.push_back(e);
            }
            if (bridge) kept.push_back(*bridge);
            for (auto& e : kept) {
                if (e.first > v) --e.first;
                if (e.second > v) --e.second;
            }
            nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(v));
            edges = std::move(kept);
        };
        for (std::size_t v = 0; v < nodes.size() && !changed; ++v) {
            if (nodes[v].size != 2) continue;
            if (adj[v].size() == 1) {
                remove(v, std::nullopt);
            } else {
                remove(v, Edge{adj[v][0], adj[v][1]});
            }
            changed = true;
        }
        if (changed) continue;
        for (std::size_t e = 0; e < edges.size() && !changed; ++e) {
            const auto [a, b] = edges[e];
            if (nodes[a].sign != nodes[b].sign) continue;
            nodes[a].size += nodes[b].size - 2;
            edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(e));
            for (auto& ed : edges) {
                if (ed.first == b) ed.first = a;
                if (ed.second == b) ed.second = a;
            }
            remove(b, std::nullopt);
            changed = true;
        }
    }
    if (nodes.size() == 1) return hopf(nodes[0].sign, nodes[0].size);

    // Canonical labelling: the relabelling with the smallest encoding.
    std::vector<std::size_t> perm(nodes.size());
    std::iota(perm.begin(), perm.end(), 0);
    const auto before = [&](std::size_t x, std::size_t y) {
        return node_key(nodes[x]) < node_key(nodes[y]) || (node_key(nodes[x]) == node_key(nodes[y]) && x < y);
    };
    std::sort(perm.begin(), perm.end(), before);
    using Encoding = std::pair<std::vector<std::pair<int, int>>, std::vector<Edge>>;
    std::optional<Encoding> best;
    std::vector<std::size_t> best_perm;
    do {
        Encoding enc;
        for (std::size_t p : perm) enc.first.push_back(node_key(nodes[p]));
        if (!std::is_sorted(enc.first.begin(), enc.first.end())) continue;
        std::vector<std::size_t> pos(nodes.size());
        for (std::size_t k = 0; k < perm.size(); ++k) pos[perm[k]] = k;
        for (const auto& [a, b] : edges) enc.second.emplace_back(std::min(pos[a], pos[b]), std::max(pos[a], pos[b]));
        std::sort(enc.second.begin(), enc.second.end());
        if (!best || enc < *best) {
            best = enc;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end(), before));

    LinkClass c;
    c.kind_ = Kind::TorusSumTree;
    for (std::size_t p : best_perm) c.nodes_.push_back(nodes[p]);
    c.edges_ = best->second;
    return c;
}

int LinkClass::components() const {
    if (kind_ == Kind::Hyperbolic5) return 5;
    int total = 0;
    for (const auto& n : nodes_) total += n.size;
    return total - 2 * static_cast<int>(edges_.size());
}

LinkClass LinkClass::mirrored() const {
    if (kind_ == Kind::Hyperbolic5) return *this;
    if (kind_ == Kind::Hopf) return hopf(-nodes_[0].sign, nodes_[0].size);
    std::vector<HopfNode> flipped = nodes_;
    for (auto& n : flipped) n.sign = -n.sign;
    return tree(std::move(flipped), edges_);
}

std::string LinkClass::name() const {
    if (kind_ == Kind::Hyperbolic5) return "HYP5";
    if (kind_ == Kind::Hopf) return node_name(nodes_[0]);
    const auto adj = adjacency(nodes_.size(), edges_);
    const bool is_path = std::all_of(adj.begin(), adj.end(), [](const auto& a) { return a.size() <= 2; });
    std::string out = "T(";
    if (is_path) {
        std::vector<std::size_t> ends;
        for (std::size_t v = 0; v < adj.size(); ++v) {
            if (adj[v].size() == 1) ends.push_back(v);
        }
        std::vector<std::size_t> walk = tree_path(adj, ends[0], ends[1]);
        std::vector<std::size_t> back(walk.rbegin(), walk.rend());
        auto keys = [&](const std::vector<std::size_t>& w) {
            std::vector<std::pair<int, int>> k;
            for (std::size_t v : w) k.push_back(node_key(nodes_[v]));
            return k;
        };
        if (keys(back) < keys(walk)) walk = back;
        for (std::size_t k = 0; k < walk.size(); ++k) out += (k ? "," : "") + node_name(nodes_[walk[k]]);
    } else {
        for (std::size_t k = 0; k < nodes_.size(); ++k) out += (k ? "," : "") + node_name(nodes_[k]);
        out += ";";
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            out += (k ? "," : "") + std::to_string(edges_[k].first) + "-" + std::to_string(edges_[k].second);
        }
    }
    return out + ")";
}

int LinkClass::median_sign(std::size_t a, std::size_t b, std::size_t c) const {
    if (kind_ == Kind::Hyperbolic5) throw InvalidParams("the hyperbolic class has no tree structure");
    if (kind_ == Kind::Hopf) return nodes_[0].sign;
    const auto adj = adjacency(nodes_.size(), edges_);
    const auto ab = tree_path(adj, a, b);
    const auto bc = tree_path(adj, b, c);
    const auto ac = tree_path(adj, a, c);
    for (std::size_t v : ab) {
        if (std::find(bc.begin(), bc.end(), v) != bc.end() && std::find(ac.begin(), ac.end(), v) != ac.end()) {
            return nodes_[v].sign;
        }
    }
    throw InvalidParams("no median node");
}

LinkClass tree_merge(const LinkClass& a, std::size_t node_a, const LinkClass& b, std::size_t node_b) {
    if (a.kind() == LinkClass::Kind::Hyperbolic5 || b.kind() == LinkClass::Kind::Hyperbolic5) {
        throw InvalidParams("torus sums with the hyperbolic class are not tree classes");
    }
    if (node_a >= a.nodes().size() || node_b >= b.nodes().size()) throw InvalidParams("node index out of range");
    std::vector<HopfNode> nodes = a.nodes();
    nodes.insert(nodes.end(), b.nodes().begin(), b.nodes().end());
    std::vector<LinkClass::Edge> edges = a.edges();
    const std::size_t off = a.nodes().size();
    for (const auto& [x, y] : b.edges()) edges.emplace_back(x + off, y + off);
    edges.emplace_back(node_a, node_b + off);
    return LinkClass::tree(std::move(nodes), std::move(edges));
}

namespace {

struct GraphForm {
    Mat4 to_standard;  // sends the first two planes to span(e1,e2), span(e3,e4)
    Eigen::Matrix2d U;
    Eigen::Matrix2d V;
};

// Orientation-preserving T with T P = span(e1,e2), T Q = span(e3,e4); the
// third plane maps to the column span of [U; V].
std::optional<GraphForm> graph_form(const GreatCircle& p, const GreatCircle& q, const GreatCircle& r) {
    Mat4 m;
    m << p.v1(), p.v2(), q.v1(), q.v2();
    if (m.determinant() < 0) m.col(0) = -m.col(0);
    const Mat4 t = m.inverse();
    Eigen::Matrix<double, 4, 2> img;
    img << t * r.v1(), t * r.v2();
    GraphForm g{t, img.topRows<2>(), img.bottomRows<2>()};
    if (std::abs(g.U.determinant()) < kGraphTol) return std::nullopt;
    return g;
}

void check_triple(const GCLink& L, const std::array<std::size_t, 3>& idx) {
    for (std::size_t k = 0; k < 3; ++k) {
        if (idx[k] >= L.size()) throw InvalidParams("triple index out of range");
        if (idx[k] == idx[(k + 1) % 3]) throw InvalidParams("triple indices must be distinct");
    }
}

}  // namespace

int triple_handedness(const GCLink& L, std::array<std::size_t, 3> idx) {
    check_triple(L, idx);
    for (int rot = 0; rot < 3; ++rot) {
        const auto g = graph_form(L[idx[rot]], L[idx[(rot + 1) % 3]], L[idx[(rot + 2) % 3]]);
        if (!g) continue;
        // sign det A with A = V U^{-1}.
        return g->V.determinant() * g->U.determinant() > 0 ? 1 : -1;
    }
    throw DegenerateTriple("third plane is not a graph for any choice of roles");
}

int triple_linking_product(const GCLink& L, std::array<std::size_t, 3> idx) {
    check_triple(L, idx);
    return linking_number(L[idx[0]], L[idx[1]]) * linking_number(L[idx[0]], L[idx[2]]) *
           linking_number(L[idx[1]], L[idx[2]]);
}

Standardization standardize(const GCLink& L, std::array<std::size_t, 3> idx) {
    check_triple(L, idx);
    const auto g = graph_form(L[idx[0]], L[idx[1]], L[idx[2]]);
    if (!g) throw DegenerateTriple("third plane is not a graph over the first two");
    const Eigen::Matrix2d a = g->V * g->U.inverse();
    const int sign = a.determinant() > 0 ? 1 : -1;
    Eigen::Matrix2d b = a.inverse();
    if (sign < 0) b.row(1) *= -1.0;
    Mat4 fix = Mat4::Identity();
    fix.bottomRightCorner<2, 2>() = b;
    Standardization s;
    s.map = fix * g->to_standard;
    s.sign = sign;
    s.bundle = {PureUnit::i(), sign > 0 ? Handedness::Right : Handedness::Left};
    return s;
}

namespace {

std::string hopf_name(int sign, int size) { return LinkClass::hopf(sign, size).name(); }

std::string sum_name(int s) { return LinkClass::tree({{s, 4}, {-s, 3}}, {{0, 1}}).name(); }

std::string chain_name(int center) {
    return LinkClass::tree({{-center, 3}, {center, 3}, {-center, 3}}, {{0, 1}, {1, 2}}).name();
}

// Two disjoint circles: the side of each circle away from the other (its
// cap) and the region between them.
std::set<std::string> disjoint_candidates(int cap1, int cap2, int middle, int s) {
    if (cap1 > 0 && cap2 > 0) {
        if (middle == 1 && cap1 == 1 && cap2 == 1) return {chain_name(s), "HYP5"};
        return {};
    }
    // Shrink the circle with the empty cap to a point between the circles;
    // the other circle then separates four points.
    const int far = cap1 > 0 ? cap1 : cap2;
    const int near = middle + 1;
    const int small = std::min(far, near);
    if (small == 0) return {hopf_name(s, 5)};
    if (small == 1) return {sum_name(s)};
    return {chain_name(-s)};
}

}  // namespace

std::set<std::string> configuration_candidates(const Configuration& c, int s) {
    if (c.points.size() != 3) return {};
    const std::size_t np = c.points.size();
    if (c.circles.size() == 1) {
        const auto in = std::count(c.inside[0].begin(), c.inside[0].end(), true);
        if (in == 0 || in == static_cast<long>(np)) return {hopf_name(s, 4)};
        return {LinkClass::tree({{1, 3}, {-1, 3}}, {{0, 1}}).name()};
    }
    if (c.circles.size() != 2) return {};

    const SphereCircle& c1 = c.circles[0].circle;
    const SphereCircle& c2 = c.circles[1].circle;
    // Region counts: lens (both disks), crescents, exterior.
    int lens = 0, only1 = 0, only2 = 0, ext = 0;
    for (std::size_t p = 0; p < np; ++p) {
        const bool a = c.inside[0][p], b = c.inside[1][p];
        (a && b ? lens : a ? only1 : b ? only2 : ext)++;
    }
    const PairType type = c.pairs.at(0).type;
    if (type == PairType::Disjoint) {
        const bool c2_in_d1 = c1.contains(c2.at(0.0));
        const bool c1_in_d2 = c2.contains(c1.at(0.0));
        // Points of each circle's cap, i.e. the side not holding the other circle.
        int cap1 = 0, cap2 = 0;
        for (std::size_t p = 0; p < np; ++p) {
            cap1 += c.inside[0][p] != c2_in_d1;
            cap2 += c.inside[1][p] != c1_in_d2;
        }
        return disjoint_candidates(cap1, cap2, static_cast<int>(np) - cap1 - cap2, s);
    }
    // Collapse an empty collapsible bigon; the opposite region becomes the
    // middle and the two remaining regions become the caps.
    if (type == PairType::PullApart) {
        if (lens == 0) return disjoint_candidates(only1, only2, ext, s);
        if (ext == 0) return disjoint_candidates(only2, only1, lens, s);
    } else {
        if (only1 == 0) return disjoint_candidates(lens, ext, only2, s);
        if (only2 == 0) return disjoint_candidates(ext, lens, only1, s);
    }
    // Both collapsible bigons are occupied.
    const int occupied = (lens > 0) + (only1 > 0) + (only2 > 0) + (ext > 0);
    if (occupied == 3) return {chain_name(s), "HYP5"};
    return {};
}

namespace {

LinkClass class_from_count(int n, int positive) {
    if (n == 4) {
        if (positive == 4) return LinkClass::hopf(1, 4);
        if (positive == 0) return LinkClass::hopf(-1, 4);
        if (positive == 2) return LinkClass::tree({{1, 3}, {-1, 3}}, {{0, 1}});
    } else if (n == 5) {
        switch (positive) {
            case 10:
                return LinkClass::hopf(1, 5);
            case 0:
                return LinkClass::hopf(-1, 5);
            case 7:
                return LinkClass::tree({{1, 4}, {-1, 3}}, {{0, 1}});
            case 3:
                return LinkClass::tree({{-1, 4}, {1, 3}}, {{0, 1}});
            case 6:
                return LinkClass::tree({{1, 3}, {-1, 3}, {1, 3}}, {{0, 1}, {1, 2}});
            case 4:
                return LinkClass::tree({{-1, 3}, {1, 3}, {-1, 3}}, {{0, 1}, {1, 2}});
            case 5:
                return LinkClass::hyperbolic5();
            default:
                break;
        }
    }
    std::ostringstream msg;
    msg << n << "-component link with " << positive << " positive triples matches no class";
    throw IndeterminateConfiguration(msg.str());
}

// Components left on each node after gluing: size minus degree.
std::vector<int> node_capacity(const LinkClass& c) {
    std::vector<int> cap;
    for (const auto& n : c.nodes()) cap.push_back(n.size);
    for (const auto& [a, b] : c.edges()) {
        --cap[a];
        --cap[b];
    }
    return cap;
}

// Smallest assignment of components to nodes whose median signs reproduce
// every triple sign.
std::vector<std::size_t> assign_nodes(const LinkClass& c, std::size_t n,
                                      const std::vector<std::pair<std::array<std::size_t, 3>, int>>& triples) {
    const std::size_t k = c.nodes().size();
    if (k == 1) return std::vector<std::size_t>(n, 0);
    const std::vector<int> cap = node_capacity(c);
    std::vector<std::size_t> assign(n, 0);
    std::vector<int> used(k, 0);
    std::function<bool(std::size_t)> search = [&](std::size_t pos) -> bool {
        if (pos == n) {
            for (std::size_t v = 0; v < k; ++v) {
                if (used[v] != cap[v]) return false;
            }
            for (const auto& [t, s] : triples) {
                if (c.median_sign(assign[t[0]], assign[t[1]], assign[t[2]]) != s) return false;
            }
            return true;
        }
        for (std::size_t v = 0; v < k; ++v) {
            if (used[v] == cap[v]) continue;
            assign[pos] = v;
            ++used[v];
            if (search(pos + 1)) return true;
            --used[v];
        }
        return false;
    };
    if (!search(0)) throw IndeterminateConfiguration("triple signs are inconsistent with the class tree");
    return assign;
}

}  // namespace

Classification classify_detailed(const GCLink& L, const ClassifyOptions& opts) {
    const std::size_t n = L.size();
    if (n == 0 || n > 5) {
        std::ostringstream msg;
        msg << "classification is implemented for 1 to 5 components, got " << n;
        throw UnsupportedSize(msg.str());
    }
    Classification out;
    out.evidence = nlohmann::json::object();
    if (n <= 2) {
        out.link_class = LinkClass::hopf(1, static_cast<int>(n));
        out.node_of.assign(n, 0);
        out.evidence["method"] = n == 1 ? "single component" : "pairwise linking";
        return out;
    }

    std::vector<std::pair<std::array<std::size_t, 3>, int>> triples;
    int positive = 0;
    nlohmann::json tj = nlohmann::json::array();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t c = b + 1; c < n; ++c) {
                const int s = triple_handedness(L, {a, b, c});
                triples.push_back({{a, b, c}, s});
                positive += s > 0;
                tj.push_back({a, b, c, s});
            }
        }
    }
    out.link_class = n == 3 ? LinkClass::hopf(triples[0].second, 3) : class_from_count(static_cast<int>(n), positive);
    out.evidence["method"] = "triple handedness";
    out.evidence["positive_triples"] = positive;
    out.evidence["triples"] = std::move(tj);
    if (out.link_class.kind() != LinkClass::Kind::Hyperbolic5) {
        out.node_of = assign_nodes(out.link_class, n, triples);
        nlohmann::json nodes = nlohmann::json::array();
        for (std::size_t v = 0; v < out.link_class.nodes().size(); ++v) {
            const auto& node = out.link_class.nodes()[v];
            nlohmann::json members = nlohmann::json::array();
            for (std::size_t k = 0; k < n; ++k) {
                if (out.node_of[k] == v) members.push_back(k);
            }
            nodes.push_back({{"node", node_name(node)}, {"components", members}});
        }
        out.evidence["nodes"] = std::move(nodes);
    }

    out.evidence["configuration"] = nullptr;
    if (!opts.cross_check) return out;
    const std::string name = out.link_class.name();
    for (const auto& [t, s] : triples) {
        try {
            const Standardization st = standardize(L, t);
            std::vector<GreatCircle> comps;
            for (std::size_t k = 0; k < n; ++k) comps.push_back(L[k].transformed(st.map));
            // The standardized triple is exactly these fibers; snap away rounding.
            comps[t[0]] = GreatCircle(Vec4::Unit(0), Vec4::Unit(1));
            comps[t[1]] = GreatCircle(Vec4::Unit(2), Vec4::Unit(3));
            comps[t[2]] = GreatCircle::span(Vec4(1, 0, 1, 0), Vec4(0, 1, 0, s > 0 ? 1 : -1));
            const GCLink S(std::move(comps));
            const Configuration cfg = configuration(S, st.bundle, t);
            const std::set<std::string> cand = n == 3 ? std::set<std::string>{name} : configuration_candidates(cfg, s);
            if (cand.empty()) continue;
            if (!cand.count(name)) {
                std::ostringstream msg;
                msg << "configuration of triple (" << t[0] << "," << t[1] << "," << t[2] << ") allows";
                for (const auto& c : cand) msg << " " << c;
                msg << " but triple signs give " << name;
                throw IndeterminateConfiguration(msg.str());
            }
            out.evidence["configuration"] = cfg;
            out.evidence["standardized_triple"] = {t[0], t[1], t[2]};
            out.evidence["configuration_candidates"] = cand;
            break;
        } catch (const IndeterminateConfiguration&) {
            throw;
        } catch (const Error&) {
            // Degenerate standardization, tangent circles or a point on a
            // circle: try the next triple.
            continue;
        }
    }
    return out;
}

LinkClass classify(const GCLink& L, const ClassifyOptions& opts) { return classify_detailed(L, opts).link_class; }

GCLink census_sample(int n, std::uint64_t seed, std::size_t index, std::size_t* rejected) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    for (;;) {
        std::vector<GreatCircle> comps;
        for (int k = 0; k < n; ++k) {
            Vec4 u, v;
            for (int e = 0; e < 4; ++e) u[e] = gauss(rng);
            for (int e = 0; e < 4; ++e) v[e] = gauss(rng);
            comps.push_back(GreatCircle::span(u, v));
        }
        bool ok = true;
        for (std::size_t a = 0; a < comps.size() && ok; ++a) {
            for (std::size_t b = a + 1; b < comps.size() && ok; ++b) ok = transverse(comps[a], comps[b]);
        }
        if (ok) return GCLink(std::move(comps));
        if (rejected) ++*rejected;
    }
}

ClassCensus census(int n, std::size_t samples, std::uint64_t seed, unsigned threads, const ClassifyOptions& opts) {
    if (n < 1 || n > 5) throw UnsupportedSize("census supports 1 to 5 components");
    if (samples < 1) throw InvalidParams("census needs at least one sample");
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(samples)));

    std::vector<std::string> names(samples);
    std::vector<std::size_t> rejected(threads, 0);
    auto work = [&](unsigned w) {
        for (std::size_t k = w; k < samples; k += threads) {
            const GCLink L = census_sample(n, seed, k, &rejected[w]);
            try {
                names[k] = classify(L, opts).name();
            } catch (const IndeterminateConfiguration&) {
                names[k].clear();
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    ClassCensus out;
    out.n = n;
    out.seed = seed;
    out.samples = samples;
    out.rejected = std::accumulate(rejected.begin(), rejected.end(), std::size_t{0});
    for (const auto& name : names) {
        if (name.empty()) {
            ++out.indeterminate;
        } else {
            ++out.classes[name];
        }
    }
    return out;
}

void to_json(nlohmann::json& j, const LinkClass& c) {
    const char* kind = c.kind() == LinkClass::Kind::Hopf           ? "hopf"
                       : c.kind() == LinkClass::Kind::TorusSumTree ? "torus_sum_tree"
                                                                   : "hyperbolic";
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : c.nodes()) nodes.push_back({{"sign", n.sign}, {"size", n.size}});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : c.edges()) edges.push_back({a, b});
    j = {{"name", c.name()}, {"kind", kind}, {"components", c.components()}, {"nodes", nodes}, {"edges", edges}};
}

void to_json(nlohmann::json& j, const ClassCensus& c) {
    j = {{"n", c.n},
         {"seed", c.seed},
         {"samples", c.samples},
         {"rejected", c.rejected},
         {"indeterminate", c.indeterminate},
         {"distinct_classes", c.classes.size()},
         {"classes", c.classes}};
}

}  // namespace gclink
