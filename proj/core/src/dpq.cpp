#include "gclink/dpq.hpp"

#include "gclink/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gclink {

namespace {

int mod(long a, long m) { return static_cast<int>(((a % m) + m) % m); }

int inverse_mod(int a, int m) {
    for (int x = 1; x < m; ++x) {
        if (static_cast<long>(a) * x % m == 1) return x;
    }
    throw InvalidParams("no inverse");
}

void validate(long p, long q) {
    std::ostringstream msg;
    if (q < 3 || q % 2 == 0) {
        msg << "q must be odd and at least 3, got " << q;
        throw InvalidParams(msg.str());
    }
    if (p < 1) {
        msg << "p must be positive, got " << p;
        throw InvalidParams(msg.str());
    }
    if (std::gcd(p, q) != 1) {
        msg << p << "/" << q << " is not in lowest terms";
        throw InvalidParams(msg.str());
    }
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

double angle_of(const Eigen::Vector2d& v) { return std::atan2(v.y(), v.x()); }

double mod_2pi(double x) {
    const double r = std::fmod(x, 2.0 * M_PI);
    return r < 0 ? r + 2.0 * M_PI : r;
}

int sgn(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace

DpqParams DpqParams::exact(long p, long q) {
    validate(p, q);
    DpqParams out;
    out.p = mod(p, q);
    out.q = static_cast<int>(q);
    out.original_p = static_cast<int>(p);
    out.original_q = static_cast<int>(q);
    return out;
}

DpqParams DpqParams::make(long p, long q) {
    DpqParams out = exact(p, q);
    const int Q = out.q;
    if (2 * out.p < Q) return out;
    const int inv = inverse_mod(out.p, Q);
    if (2 * inv < Q) {
        out.p = inv;
    } else if (2 * (Q - out.p) < Q) {
        out.p = Q - out.p;
        out.mirrored = true;
    } else {
        out.p = Q - inv;
        out.mirrored = true;
    }
    return out;
}

std::string DpqParams::fraction() const { return std::to_string(p) + "/" + std::to_string(q); }

GCLink build(const DpqParams& params) {
    std::vector<GreatCircle> cs;
    cs.reserve(static_cast<std::size_t>(params.q));
    for (int n = 0; n < params.q; ++n) {
        const double a = 2.0 * M_PI * n / params.q;
        const double b = 2.0 * M_PI * mod(static_cast<long>(params.p) * n, params.q) / params.q;
        cs.emplace_back(Vec4(std::cos(a), std::sin(a), 0, 0), Vec4(0, 0, std::cos(b), std::sin(b)));
    }
    return GCLink(std::move(cs));
}

Mat4 phi(const DpqParams& params) {
    const double a = 2.0 * M_PI / params.q;
    const double b = 2.0 * M_PI * params.p / params.q;
    Mat4 m = Mat4::Zero();
    m.block<2, 2>(0, 0) << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    m.block<2, 2>(2, 2) << std::cos(b), -std::sin(b), std::sin(b), std::cos(b);
    return m;
}

AxisSchedule axis_schedule(const DpqParams& params) {
    const int q = params.q;
    AxisSchedule s;
    s.p = params.p;
    s.q = q;
    s.by_z.assign(static_cast<std::size_t>(q), -1);
    s.by_w.assign(static_cast<std::size_t>(q), -1);
    for (int n = 0; n < q; ++n) {
        const int z = mod(2L * n, 2L * q);
        const int w = mod(2L * params.p * n, 2L * q);
        s.z_pairs.push_back({z, (z + q) % (2 * q)});
        s.w_pairs.push_back({w, (w + q) % (2 * q)});
        s.z_label.push_back(z % q);
        s.w_label.push_back(w % q);
        s.by_z[static_cast<std::size_t>(z % q)] = n;
        s.by_w[static_cast<std::size_t>(w % q)] = n;
    }
    return s;
}

Eigen::Vector2d DiagramStrand::at(double s) const {
    s = s - 4.0 * std::floor(s / 4.0);
    const double r_end = end.norm();
    const double r_start = start.norm();
    if (s < 1.0) return start + s * (end - start);
    if (s < 2.0) return end / r_end * (r_end + (s - 1.0) * (outer_radius - r_end));
    if (s < 3.0) {
        const double a = arc_from + (s - 2.0) * arc_span;
        return outer_radius * Eigen::Vector2d(std::cos(a), std::sin(a));
    }
    return start / r_start * (outer_radius + (s - 3.0) * (r_start - outer_radius));
}

Eigen::Vector2d DiagramStrand::tangent(double s) const {
    s = s - 4.0 * std::floor(s / 4.0);
    if (s < 1.0) return end - start;
    if (s < 2.0) return end.normalized() * (outer_radius - end.norm());
    if (s < 3.0) {
        const double a = arc_from + (s - 2.0) * arc_span;
        return outer_radius * arc_span * Eigen::Vector2d(-std::sin(a), std::cos(a));
    }
    return start.normalized() * (start.norm() - outer_radius);
}

double DiagramStrand::speed(double s) const { return tangent(s).norm(); }

LinkDiagram standard_diagram(const DpqParams& params) {
    const int q = params.q;
    const AxisSchedule sched = axis_schedule(params);
    LinkDiagram d;
    d.params = params;
    d.strands.resize(static_cast<std::size_t>(q));
    d.gauss.resize(static_cast<std::size_t>(q));

    // Small chord offsets keep the q diameters from meeting at one point; the
    // golden-ratio term avoids three chords through a common point.
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const double scale = 0.4 * std::sin(M_PI / q) / q;
    for (int k = 0; k < q; ++k) {
        const int n = sched.by_z[static_cast<std::size_t>(k)];
        // The z-angle inside [0, pi) belongs to t = 0 when it is the one at
        // 2n, else to t = pi; the chord runs through it from w(t - pi/2) to
        // w(t + pi/2).
        const int sigma = sched.z_pairs[static_cast<std::size_t>(n)][0] < q ? 1 : -1;
        const double b = M_PI * sched.w_pairs[static_cast<std::size_t>(n)][0] / q;
        const Eigen::Vector2d e(std::cos(b), std::sin(b));
        const Eigen::Vector2d nrm(-e.y(), e.x());
        const double frac = k * golden - std::floor(k * golden);
        const double off = scale * (k - (q - 1) / 2.0 + 0.3 * frac);
        const double h = std::sqrt(1.0 - off * off);

        DiagramStrand& st = d.strands[static_cast<std::size_t>(n)];
        st.component = n;
        st.z_label = k;
        st.start = -sigma * h * e + off * nrm;
        st.end = sigma * h * e + off * nrm;
        st.outer_radius = 1.25 + 0.75 * k / (q - 1);
        st.arc_from = angle_of(st.end);
        st.arc_span = mod_2pi(angle_of(st.start) - st.arc_from);
    }

    auto add = [&](int over, int under, double over_s, double under_s, const Eigen::Vector2d& at) {
        const DiagramStrand& o = d.strands[static_cast<std::size_t>(over)];
        const DiagramStrand& u = d.strands[static_cast<std::size_t>(under)];
        DiagramCrossing c;
        c.over = over;
        c.under = under;
        c.sign = sgn(cross2(o.tangent(over_s), u.tangent(under_s)));
        c.at = at;
        c.over_s = over_s;
        c.under_s = under_s;
        d.crossings.push_back(c);
    };

    for (int j = 0; j < q; ++j) {
        for (int k = j + 1; k < q; ++k) {
            const int nj = sched.by_z[static_cast<std::size_t>(j)];
            const int nk = sched.by_z[static_cast<std::size_t>(k)];
            const DiagramStrand& sj = d.strands[static_cast<std::size_t>(nj)];
            const DiagramStrand& sk = d.strands[static_cast<std::size_t>(nk)];

            // Inner chords: the later chord is on top.
            const Eigen::Vector2d dj = sj.end - sj.start;
            const Eigen::Vector2d dk = sk.end - sk.start;
            const double den = cross2(dj, dk);
            const double a = cross2(sk.start - sj.start, dk) / den;
            const double b = cross2(sk.start - sj.start, dj) / den;
            if (!(a > 0 && a < 1 && b > 0 && b < 1)) throw std::logic_error("chords do not cross");
            add(nk, nj, b, a, sj.start + a * dj);

            // Outer loops: the loop of j, at the smaller radius, meets exactly
            // one radial segment of k and passes over it.
            const double rel_out = mod_2pi(angle_of(sk.end) - sj.arc_from);
            const double rel_in = mod_2pi(angle_of(sk.start) - sj.arc_from);
            const bool hits_out = rel_out < sj.arc_span;
            const bool hits_in = rel_in < sj.arc_span;
            if (hits_out == hits_in) throw std::logic_error("outer loops do not cross once");
            const double r = sj.outer_radius;
            const double t = (r - 1.0) / (sk.outer_radius - 1.0);
            const double s_k = hits_out ? 1.0 + t : 4.0 - t;
            const double s_j = 2.0 + (hits_out ? rel_out : rel_in) / sj.arc_span;
            add(nj, nk, s_j, s_k, sj.at(s_j));
        }
    }

    for (int n = 0; n < q; ++n) {
        std::vector<std::pair<double, GaussEntry>> seq;
        for (std::size_t c = 0; c < d.crossings.size(); ++c) {
            const DiagramCrossing& x = d.crossings[c];
            if (x.over == n) seq.push_back({x.over_s, {static_cast<int>(c), true, x.sign}});
            if (x.under == n) seq.push_back({x.under_s, {static_cast<int>(c), false, x.sign}});
        }
        std::sort(seq.begin(), seq.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        for (const auto& e : seq) d.gauss[static_cast<std::size_t>(n)].push_back(e.second);
    }
    return d;
}

std::vector<std::vector<int>> LinkDiagram::linking_matrix() const {
    const std::size_t n = strands.size();
    std::vector<std::vector<int>> twice(n, std::vector<int>(n, 0));
    for (const DiagramCrossing& c : crossings) {
        twice[static_cast<std::size_t>(c.over)][static_cast<std::size_t>(c.under)] += c.sign;
        twice[static_cast<std::size_t>(c.under)][static_cast<std::size_t>(c.over)] += c.sign;
    }
    for (auto& row : twice) {
        for (int& v : row) {
            if (v % 2 != 0) throw std::logic_error("odd signed crossing count");
            v /= 2;
        }
    }
    return twice;
}

std::string LinkDiagram::gauss_text() const {
    std::string out;
    for (std::size_t n = 0; n < gauss.size(); ++n) {
        out += std::to_string(n) + ":";
        for (std::size_t i = 0; i < gauss[n].size(); ++i) {
            const GaussEntry& e = gauss[n][i];
            out += i == 0 ? " " : ",";
            out += e.over ? 'O' : 'U';
            out += e.sign > 0 ? '+' : '-';
            out += std::to_string(e.crossing + 1);
        }
        out += '\n';
    }
    return out;
}

std::string render_svg(const LinkDiagram& d, const SvgOptions& opts) {
    const double extent = 2.1;
    const double sx = opts.width / (2.0 * extent);
    const double sy = opts.height / (2.0 * extent);
    const double scale = std::min(sx, sy);
    const double cx = opts.width / 2.0;
    const double cy = opts.height / 2.0;
    const int q = static_cast<int>(d.strands.size());

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opts.width) + "\" height=\"" +
           std::to_string(opts.height) + "\" viewBox=\"0 0 " + std::to_string(opts.width) + " " +
           std::to_string(opts.height) + "\">\n";
    out += "<title>D(" + d.params.fraction() + ") standard projection</title>\n";
    out += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(scale) +
           "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";

    for (int n = 0; n < q; ++n) {
        const DiagramStrand& st = d.strands[static_cast<std::size_t>(n)];
        const auto& seq = d.gauss[static_cast<std::size_t>(n)];
        std::vector<double> all_s;
        std::vector<double> under_s;
        for (const GaussEntry& e : seq) {
            const DiagramCrossing& c = d.crossings[static_cast<std::size_t>(e.crossing)];
            all_s.push_back(e.over ? c.over_s : c.under_s);
            if (!e.over) under_s.push_back(c.under_s);
        }

        // Gap half-widths in s, shrunk so neighbouring gaps never merge.
        std::vector<std::pair<double, double>> gaps;
        for (double s : under_s) {
            double room = opts.gap;
            for (double t : all_s) {
                if (t == s || std::floor(t) != std::floor(s)) continue;
                room = std::min(room, 0.4 * std::abs(t - s) * st.speed(s));
            }
            const double ds = room / st.speed(s);
            gaps.push_back({s - ds, s + ds});
        }
        std::sort(gaps.begin(), gaps.end());

        char colour[32];
        std::snprintf(colour, sizeof colour, "hsl(%d,70%%,40%%)", 360 * n / q);
        out += "<g id=\"component-" + std::to_string(n) + "\" stroke=\"" + colour + "\" stroke-width=\"" +
               fmt(opts.stroke_width) + "\" fill=\"none\" data-gaps=\"" + std::to_string(gaps.size()) + "\">\n";
        for (std::size_t g = 0; g < gaps.size(); ++g) {
            const double from = gaps[g].second;
            const double to = g + 1 < gaps.size() ? gaps[g + 1].first : gaps[0].first + 4.0;
            std::vector<double> ts{from};
            const double step = 1.0 / 64.0;
            for (double t = std::ceil(from / step) * step; t < to; t += step) {
                if (t > from) ts.push_back(t);
            }
            ts.push_back(to);
            out += "<polyline points=\"";
            for (std::size_t i = 0; i < ts.size(); ++i) {
                const Eigen::Vector2d p = st.at(ts[i]);
                if (i) out += ' ';
                out += fmt(cx + scale * p.x()) + "," + fmt(cy - scale * p.y());
            }
            out += "\"/>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

void to_json(nlohmann::json& j, const DpqParams& p) {
    j = {{"p", p.p},
         {"q", p.q},
         {"original", std::to_string(p.original_p) + "/" + std::to_string(p.original_q)},
         {"mirrored", p.mirrored}};
}

void to_json(nlohmann::json& j, const AxisSchedule& s) {
    j = {{"unit", "pi/q"}, {"p", s.p},           {"q", s.q},           {"z_pairs", s.z_pairs},
         {"w_pairs", s.w_pairs}, {"z_label", s.z_label}, {"w_label", s.w_label}, {"by_w", s.by_w}};
}

void to_json(nlohmann::json& j, const LinkDiagram& d) {
    auto vec = [](const Eigen::Vector2d& v) { return nlohmann::json::array({v.x(), v.y()}); };
    nlohmann::json strands = nlohmann::json::array();
    for (const DiagramStrand& s : d.strands) {
        strands.push_back({{"component", s.component},
                           {"z_label", s.z_label},
                           {"start", vec(s.start)},
                           {"end", vec(s.end)},
                           {"outer_radius", s.outer_radius},
                           {"arc_from", s.arc_from},
                           {"arc_span", s.arc_span}});
    }
    nlohmann::json crossings = nlohmann::json::array();
    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
        const DiagramCrossing& c = d.crossings[i];
        crossings.push_back(
            {{"label", i + 1}, {"over", c.over}, {"under", c.under}, {"sign", c.sign}, {"at", vec(c.at)}});
    }
    nlohmann::json gauss = nlohmann::json::array();
    for (const auto& seq : d.gauss) {
        nlohmann::json row = nlohmann::json::array();
        for (const GaussEntry& e : seq) {
            row.push_back(std::string(e.over ? "O" : "U") + (e.sign > 0 ? "+" : "-") + std::to_string(e.crossing + 1));
        }
        gauss.push_back(std::move(row));
    }
    j = {{"params", d.params},
         {"strands", strands},
         {"crossings", crossings},
         {"gauss", gauss},
         {"linking", d.linking_matrix()}};
}

}  // namespace gclink
