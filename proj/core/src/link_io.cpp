#include "gclink/link_io.hpp"

#include "gclink/errors.hpp"

#include <cmath>
#include <cstdio>
#include <string_view>

namespace gclink {

namespace {

Vec4 read_vec4(const nlohmann::json& v, std::size_t component) {
    const std::string where = "component " + std::to_string(component);
    if (!v.is_array() || v.size() != 4) throw ParseError(where + ": basis vectors need 4 entries");
    Vec4 out;
    for (int i = 0; i < 4; ++i) {
        if (!v[i].is_number()) throw ParseError(where + ": basis entries must be numbers");
        out[i] = v[i].get<double>();
    }
    return out;
}

void append_double(std::string& out, double x) {
    if (!std::isfinite(x)) {
        out += "null";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
    // Keep integral values typed as floats.
    if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) out += ".0";
}

void dump_into(std::string& out, const nlohmann::json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += nlohmann::json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump_into(out, it.value(), indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = true;
            for (const auto& e : j) flat = flat && !e.is_structured();
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat && indent >= 0 ? ", " : ",";
                first = false;
                if (!flat) newline(depth + 1);
                dump_into(out, e, indent, depth + 1);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case nlohmann::json::value_t::number_float:
            append_double(out, j.get<double>());
            return;
        default:
            out += j.dump();
    }
}

}  // namespace

nlohmann::json link_to_json(const GCLink& link) {
    nlohmann::json comps = nlohmann::json::array();
    for (const GreatCircle& c : link) {
        nlohmann::json basis = nlohmann::json::array();
        for (const Vec4* v : {&c.v1(), &c.v2()}) basis.push_back({(*v)[0], (*v)[1], (*v)[2], (*v)[3]});
        comps.push_back({{"basis", basis}});
    }
    return {{"components", comps}};
}

GCLink link_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("link JSON must be an object");
    const nlohmann::json* root = &j;
    if (!j.contains("components") && j.contains("link")) root = &j["link"];
    if (!root->is_object() || !root->contains("components")) throw ParseError("missing \"components\"");
    const nlohmann::json& comps = (*root)["components"];
    if (!comps.is_array()) throw ParseError("\"components\" must be an array");
    std::vector<GreatCircle> circles;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const nlohmann::json& c = comps[i];
        if (!c.is_object() || !c.contains("basis")) throw ParseError("component " + std::to_string(i) + ": missing \"basis\"");
        const nlohmann::json& b = c["basis"];
        if (!b.is_array() || b.size() != 2) throw ParseError("component " + std::to_string(i) + ": basis needs 2 vectors");
        circles.emplace_back(read_vec4(b[0], i), read_vec4(b[1], i));
    }
    return GCLink(std::move(circles));
}

GCLink parse_link(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    return link_from_json(j);
}

std::string dump_json(const nlohmann::json& j, int indent) {
    std::string out;
    dump_into(out, j, indent, 0);
    return out;
}

}  // namespace gclink
