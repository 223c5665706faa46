#include "cli.hpp"

#include "gclink/classify.hpp"
#include "gclink/dpq.hpp"
#include "gclink/errors.hpp"
#include "gclink/hopf.hpp"
#include "gclink/link_io.hpp"
#include "gclink/two_bridge.hpp"
#include "gclink/wedge_surface.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace gclink::cli {

namespace {

using nlohmann::json;

struct IoError : Error {
    explicit IoError(const std::string& what) : Error("IOError", what) {}
};

std::string read_input(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    buf << f.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << text;
    if (!f) throw IoError("write to '" + path + "' failed");
}

json header(const std::string& command) { return {{"schema", kSchema}, {"command", command}}; }

std::string emit(const json& j) { return dump_json(j) + "\n"; }

unsigned default_threads() {
    if (const char* env = std::getenv(kThreadsEnv)) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
    }
    return 1;
}

PureUnit parse_axis(const std::string& s) {
    if (s == "i") return PureUnit::i();
    if (s == "j") return PureUnit::j();
    if (s == "k") return PureUnit::k();
    std::vector<double> v;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ParseError("bad axis '" + s + "'");
        }
    }
    if (v.size() != 3 || Vec3(v[0], v[1], v[2]).norm() < 1e-12) throw ParseError("axis must be i, j, k or x,y,z");
    return PureUnit::normalize(Vec3(v[0], v[1], v[2]));
}

struct ClassifyArgs {
    std::string input = "-";
    std::string output = "-";
};

std::string do_classify(const ClassifyArgs& a, std::istream& in) {
    const GCLink link = parse_link(read_input(a.input, in));
    json j = header("classify");
    j["components"] = link.size();
    j["linking"] = link.linking_matrix();
    if (link.size() > 5) {
        // The class tables stop at five components; the link itself is valid.
        j["class"] = nullptr;
        j["detail"] = nullptr;
        j["evidence"] = nullptr;
        j["unsupported"] = {{"error", "UnsupportedSize"},
                            {"message", "classification covers at most 5 components"}};
        return emit(j);
    }
    const Classification c = classify_detailed(link);
    j["class"] = c.link_class.name();
    j["detail"] = c.link_class;
    j["evidence"] = c.evidence;
    j["node_of"] = c.node_of;
    j["unsupported"] = nullptr;
    return emit(j);
}

struct CensusArgs {
    int n = 3;
    std::size_t samples = 2000;
    unsigned long long seed = kDefaultSeed;
    unsigned threads = 1;
    std::string output = "-";
};

std::string do_census(const CensusArgs& a) {
    const ClassCensus c = census(a.n, a.samples, a.seed, a.threads);
    json j = header("census");
    j["seed"] = a.seed;
    j["census"] = c;
    return emit(j);
}

struct DpqArgs {
    long long p = 2;
    long long q = 5;
    bool exact = false;
    std::string format = "json";
    int width = 512;
    int height = 512;
    std::string output = "-";
};

std::string do_dpq(const DpqArgs& a) {
    const DpqParams params = a.exact ? DpqParams::exact(a.p, a.q) : DpqParams::make(a.p, a.q);
    const LinkDiagram d = standard_diagram(params);
    if (a.format == "gauss") return d.gauss_text();
    if (a.format == "svg") {
        SvgOptions o;
        o.width = a.width;
        o.height = a.height;
        return render_svg(d, o);
    }
    json j = header("dpq");
    j["params"] = params;
    j["schedule"] = axis_schedule(params);
    j["link"] = link_to_json(build(params));
    j["diagram"] = d;
    return emit(j);
}

struct ProjectArgs {
    std::string input = "-";
    std::string axis = "i";
    std::string handedness = "right";
    std::vector<std::size_t> fibers;
    std::string output = "-";
};

std::string do_project(const ProjectArgs& a, std::istream& in) {
    const GCLink link = parse_link(read_input(a.input, in));
    HopfBundle b;
    b.axis = parse_axis(a.axis);
    b.handedness = a.handedness == "left" ? Handedness::Left : Handedness::Right;
    for (std::size_t f : a.fibers) {
        if (f >= link.size()) throw InvalidParams("fiber index " + std::to_string(f) + " out of range");
    }
    json j = header("project");
    j["bundle"] = b;
    j["configuration"] = configuration(link, b, a.fibers);
    return emit(j);
}

struct SurfaceArgs {
    long long p = 1;
    long long q = 5;
    int start = 0;
    std::string output = "-";
};

std::string do_surface(const SurfaceArgs& a) {
    const DpqParams params = DpqParams::make(a.p, a.q);
    json j = header("surface");
    j["params"] = params;
    j["surface"] = surface_spec(params, a.start);
    if (4 * params.p < params.q) {
        j["census"] = wedge_census(params, a.start);
        j["coannular"] = coannular_slopes(params);
        j["census_skipped"] = nullptr;
    } else {
        j["census"] = nullptr;
        j["coannular"] = nullptr;
        j["census_skipped"] = {{"error", "RangeError"}, {"message", "the wedge census needs p/q < 1/4"}};
    }
    return emit(j);
}

struct TwoBridgeArgs {
    std::string a;
    std::string b;
    bool json_out = false;
    std::string output = "-";
};

Fraction parse_knot(const std::string& text) {
    const Fraction f = Fraction::parse(text);
    return Fraction::knot(f.p, f.q);
}

json expansion_json(const Fraction& f) {
    const std::int64_t p = ((f.p % f.q) + f.q) % f.q;
    if (p == 0) return nullptr;
    const EvenExpansion e = even_cf(Fraction::make(p, f.q));
    if (const auto* v = std::get_if<std::vector<std::int64_t>>(&e)) return *v;
    return nullptr;
}

std::string do_equiv(const TwoBridgeArgs& a) {
    const Fraction f1 = parse_knot(a.a), f2 = parse_knot(a.b);
    json j = header("twobridge equiv");
    j["a"] = f1;
    j["b"] = f2;
    j["equivalent"] = equivalent(f1, f2);
    j["representatives"] = representatives(f1);
    return emit(j);
}

std::string do_fibered(const TwoBridgeArgs& a) {
    const Fraction f = parse_knot(a.a);
    json j = header("twobridge fibered");
    j["fraction"] = f;
    j["fibered"] = fibered(f);
    j["even_cf"] = expansion_json(f);
    return emit(j);
}

std::string do_certify(const TwoBridgeArgs& a) {
    const Fraction f = parse_knot(a.a);
    const Slope s = Slope::parse(a.b);
    const Certificate c = certify_vhaken(f, s);
    if (a.json_out) {
        json j = header("twobridge certify");
        j["certificate"] = c;
        return emit(j);
    }
    std::string line = std::string(to_string(c.status));
    if (c.status == Certificate::Status::CertifiedModuloLambda) {
        line += " lifted=" + c.lifted->to_string() + " delta(+1/1)=" + std::to_string(*c.delta_plus) +
                " delta(-1/1)=" + std::to_string(*c.delta_minus) + " (modulo an unidentified finite slope set)";
    } else {
        line += " reason=" + c.reason;
    }
    return line + "\n";
}

void error_json(std::ostream& err, const std::string& code, const std::string& message) {
    err << json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Great circle links in S^3: classification, D_{p/q} diagrams, surfaces and two-bridge certificates",
                 "gclink"};
    app.require_subcommand(1);

    ClassifyArgs ca;
    auto* classify_cmd = app.add_subcommand("classify", "Classify a great circle link read as JSON");
    classify_cmd->add_option("--input,-i", ca.input, "Link JSON path, - for stdin")->capture_default_str();
    classify_cmd->add_option("--output,-o", ca.output, "Output path, - for stdout")->capture_default_str();

    CensusArgs cs;
    cs.threads = default_threads();
    auto* census_cmd = app.add_subcommand("census", "Classify random n-component links and count classes");
    census_cmd->add_option("--n", cs.n, "Components")->check(CLI::Range(2, 5))->capture_default_str();
    census_cmd->add_option("--samples", cs.samples, "Samples")->check(CLI::Range(1, 100000000))->capture_default_str();
    census_cmd->add_option("--seed", cs.seed, "RNG seed")->capture_default_str();
    census_cmd->add_option("--threads", cs.threads, std::string("Worker threads (default from ") + kThreadsEnv + ")")
        ->check(CLI::Range(1, 1024))
        ->capture_default_str();
    census_cmd->add_option("--output,-o", cs.output, "Output path, - for stdout")->capture_default_str();

    DpqArgs da;
    auto* dpq_cmd = app.add_subcommand("dpq", "Build D_{p/q} and its standard diagram");
    dpq_cmd->add_option("--p", da.p, "Numerator")->required();
    dpq_cmd->add_option("--q", da.q, "Odd denominator")->required()->check(CLI::Range(1LL, 100001LL));
    dpq_cmd->add_option("--out", da.format, "json, gauss or svg")
        ->check(CLI::IsMember({"json", "gauss", "svg"}))
        ->capture_default_str();
    dpq_cmd->add_flag("--exact", da.exact, "Keep p mod q instead of the normalized representative");
    dpq_cmd->add_option("--width", da.width, "SVG width")->check(CLI::Range(16, 16384))->capture_default_str();
    dpq_cmd->add_option("--height", da.height, "SVG height")->check(CLI::Range(16, 16384))->capture_default_str();
    dpq_cmd->add_option("--output,-o", da.output, "Output path, - for stdout")->capture_default_str();

    ProjectArgs pa;
    auto* project_cmd = app.add_subcommand("project", "Project a link along a Hopf fibration");
    project_cmd->add_option("--input,-i", pa.input, "Link JSON path, - for stdin")->capture_default_str();
    project_cmd->add_option("--axis", pa.axis, "i, j, k or x,y,z")->capture_default_str();
    project_cmd->add_option("--handedness", pa.handedness, "right or left")
        ->check(CLI::IsMember({"right", "left"}))
        ->capture_default_str();
    project_cmd->add_option("--fibers", pa.fibers, "Comma separated components that are fibers")->delimiter(',');
    project_cmd->add_option("--output,-o", pa.output, "Output path, - for stdout")->capture_default_str();

    SurfaceArgs sa;
    auto* surface_cmd = app.add_subcommand("surface", "Wedge surface, census and coannular slopes of D_{p/q}");
    surface_cmd->add_option("--p", sa.p, "Numerator")->required();
    surface_cmd->add_option("--q", sa.q, "Odd denominator")->required()->check(CLI::Range(1LL, 100001LL));
    surface_cmd->add_option("--start", sa.start, "First component of the surface")->capture_default_str();
    surface_cmd->add_option("--output,-o", sa.output, "Output path, - for stdout")->capture_default_str();

    TwoBridgeArgs ta;
    auto* tb_cmd = app.add_subcommand("twobridge", "Two-bridge knot arithmetic");
    tb_cmd->require_subcommand(1);
    auto* equiv_cmd = tb_cmd->add_subcommand("equiv", "Are K_{P1/Q1} and K_{P2/Q2} the same knot?");
    equiv_cmd->add_option("first", ta.a, "P1/Q1")->required();
    equiv_cmd->add_option("second", ta.b, "P2/Q2")->required();
    auto* fibered_cmd = tb_cmd->add_subcommand("fibered", "Is K_{P/Q} fibered?");
    fibered_cmd->add_option("fraction", ta.a, "P/Q")->required();
    auto* certify_cmd = tb_cmd->add_subcommand("certify", "Certify a virtually Haken filling M/L of K_{P/Q}");
    certify_cmd->add_option("fraction", ta.a, "P/Q")->required();
    certify_cmd->add_option("slope", ta.b, "M/L")->required();
    certify_cmd->add_flag("--json", ta.json_out, "Emit the full certificate as JSON");
    for (auto* c : {equiv_cmd, fibered_cmd, certify_cmd}) {
        c->add_option("--output,-o", ta.output, "Output path, - for stdout")->capture_default_str();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        error_json(err, "UsageError", e.what());
        return kUsageError;
    }

    try {
        if (*classify_cmd) write_output(ca.output, do_classify(ca, in), out);
        else if (*census_cmd) write_output(cs.output, do_census(cs), out);
        else if (*dpq_cmd) write_output(da.output, do_dpq(da), out);
        else if (*project_cmd) write_output(pa.output, do_project(pa, in), out);
        else if (*surface_cmd) write_output(sa.output, do_surface(sa), out);
        else if (*equiv_cmd) write_output(ta.output, do_equiv(ta), out);
        else if (*fibered_cmd) write_output(ta.output, do_fibered(ta), out);
        else if (*certify_cmd) write_output(ta.output, do_certify(ta), out);
    } catch (const Error& e) {
        error_json(err, e.code(), e.what());
        return kDomainError;
    } catch (const nlohmann::json::exception& e) {
        error_json(err, "ParseError", e.what());
        return kDomainError;
    } catch (const std::exception& e) {
        error_json(err, "InternalError", e.what());
        return kDomainError;
    }
    return kOk;
}

}  // namespace gclink::cli
