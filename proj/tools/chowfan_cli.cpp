#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chowfan/io.hpp"

namespace {

using namespace chowfan;

// ---- diagnostics -------------------------------------------------------------
// Data goes to stdout (or --out); everything here goes to stderr.  LOG_LEVEL is
// the only environment coupling: error < warn (default) < info < debug.

int log_threshold() {
    const char* env = std::getenv("LOG_LEVEL");
    const std::string v = env ? env : "warn";
    if (v == "error") return 0;
    if (v == "warn") return 1;
    if (v == "info") return 2;
    if (v == "debug") return 3;
    std::cerr << "[warn] unknown LOG_LEVEL \"" << v << "\"; using \"warn\"\n";
    return 1;
}

void log_at(int level, const char* tag, const std::string& msg) {
    static const int threshold = log_threshold();
    if (level <= threshold) std::cerr << "[" << tag << "] " << msg << "\n";
}

void log_error(const std::string& msg) { log_at(0, "error", msg); }
void log_warn(const std::string& msg) { log_at(1, "warn", msg); }
void log_info(const std::string& msg) { log_at(2, "info", msg); }
void log_debug(const std::string& msg) { log_at(3, "debug", msg); }

// Thrown when a command has already decided its exit code (and logged why).
struct CliExit {
    int code;
};

// ---- exit codes ---------------------------------------------------------------
// 0 ok, 1 invalid data, 2 parse error, 3 imprimitive direction without
// --allow-imprimitive, 4 non-simplicial anchor, 5 polytope not
// full-dimensional, 6 rendering needs rank 2.

int default_exit(errc code) { return code == errc::malformed_input ? 2 : 1; }
int polytope_exit(errc code) {
    return code == errc::not_full_dimensional ? 5 : default_exit(code);
}
int render_exit(errc code) { return code == errc::rank_mismatch ? 6 : default_exit(code); }

int guarded(int (*exit_of)(errc), const std::function<int()>& body) {
    try {
        return body();
    } catch (const CliExit& e) {
        return e.code;
    } catch (const error& e) {
        log_error(e.what());
        return exit_of(e.code());
    }
}

// ---- plumbing ------------------------------------------------------------------

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        log_error("cannot read \"" + path + "\"");
        throw CliExit{2};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) {
        log_error("cannot write \"" + path + "\"");
        throw CliExit{1};
    }
    log_info("wrote " + path);
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        fail(errc::malformed_input, e.what());
    }
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) parts.push_back(item);
    return parts;
}

LatticeVector parse_direction(const std::string& csv) {
    LatticeVector v;
    for (const auto& part : split_csv(csv)) v.push_back(int_from_json(Json(part)));
    if (v.empty()) fail(errc::malformed_input, "direction must list at least one coordinate");
    return v;
}

// The quotient lattice of a rank-1 fan has rank 0, so the empty string is a
// legitimate point there.
RationalVector parse_point(const std::string& csv) {
    RationalVector v;
    for (const auto& part : split_csv(csv)) v.push_back(rat_from_json(Json(part)));
    return v;
}

// Applies the primitivity policy: exit 3 unless --allow-imprimitive replaces
// the direction by its primitive part (with a warning and a report notice).
LatticeVector checked_direction(const std::string& csv, bool allow_imprimitive,
                                std::vector<std::string>& notices) {
    LatticeVector n0 = parse_direction(csv);
    if (is_zero(n0)) fail(errc::direction_zero, "direction must be nonzero");
    auto [prim, cont] = primitive_vector(n0);
    if (cont != 1) {
        if (!allow_imprimitive) {
            log_error("direction " + to_string(n0) + " is imprimitive (content " + cont.str() +
                      "); pass --allow-imprimitive to use its primitive part");
            throw CliExit{3};
        }
        log_warn("imprimitive direction " + to_string(n0) + " replaced by its primitive part " +
                 to_string(prim));
        notices.push_back("imprimitive direction " + to_string(n0) +
                          " replaced by its primitive part " + to_string(prim));
        n0 = prim;
    }
    return n0;
}

FanDocument load_fan(const std::string& path) {
    FanDocument doc = fan_from_json(parse_json(read_input(path)));
    log_info("fan" + (doc.name.empty() ? std::string() : " \"" + doc.name + "\"") + ": rank " +
             std::to_string(doc.fan.rank()) + ", " + std::to_string(doc.fan.rays().size()) +
             " rays, " + std::to_string(doc.fan.maximal_cones().size()) + " maximal cones");
    return doc;
}

// ---- commands --------------------------------------------------------------------

int cmd_validate(const std::string& path) {
    FanDocument doc = load_fan(path);
    const Fan& f = doc.fan;
    std::ostringstream out;
    if (!doc.name.empty()) out << "name: " << doc.name << "\n";
    out << "rank: " << f.rank() << "\n";
    out << "rays: " << f.rays().size() << "\n";
    out << "maximal cones: " << f.maximal_cones().size() << "\n";
    out << "complete: " << (f.is_complete() ? "true" : "false") << "\n";
    std::cout << out.str();
    return 0;
}

int cmd_quotient(const std::string& fan_path, const std::string& direction_csv,
                 bool allow_imprimitive, std::size_t samples, const std::string& out_path) {
    FanDocument doc = load_fan(fan_path);
    std::vector<std::string> notices;
    LatticeVector n0 = checked_direction(direction_csv, allow_imprimitive, notices);
    StrataReport report = enumerate_strata(doc.fan, n0, samples);
    log_info("quotient fan: " + std::to_string(report.quotient.maximal_cones().size()) +
             " maximal cones, " + std::to_string(report.entries.size()) + " strata");
    log_debug("samples per cone: " + std::to_string(report.samples_per_cone));
    if (report.non_simplicial_anchor) {
        log_warn("anchor cone is not simplicial; tangency table omitted");
        notices.push_back("anchor cone is not simplicial; tangency table omitted");
    }
    write_output(out_path, dump_json(report_to_json(doc.fan, doc.name, report, notices)));
    return report.non_simplicial_anchor ? 4 : 0;
}

int cmd_trace(const std::string& fan_path, const std::string& direction_csv,
              const std::string& point_csv, bool allow_imprimitive, const std::string& out_path) {
    FanDocument doc = load_fan(fan_path);
    std::vector<std::string> notices;
    LatticeVector n0 = checked_direction(direction_csv, allow_imprimitive, notices);
    RationalVector point = parse_point(point_csv);
    ChainLogMap chain = trace_chain(doc.fan, n0, point);
    log_info("chain type " + chain_type(chain));
    write_output(out_path, dump_json(trace_to_json(doc.fan, doc.name, point, chain, notices)));
    return 0;
}

int cmd_polytope(const std::string& path, const std::string& emit, const std::string& out_path) {
    PolytopeDocument doc = polytope_from_json(parse_json(read_input(path)));
    log_info("polytope" + (doc.name.empty() ? std::string() : " \"" + doc.name + "\"") +
             ": rank " + std::to_string(doc.polytope.rank()) + ", " +
             std::to_string(doc.polytope.vertices().size()) + " vertices");
    if (!doc.polytope.is_full_dimensional()) {
        fail(errc::not_full_dimensional, "polytope is not full-dimensional");
    }
    Json out;
    if (emit == "fan") {
        out = fan_to_json(normal_fan(doc.polytope), doc.name);
    } else if (emit == "monoid") {
        out = graded_monoid_to_json(cone_over_polytope_monoid(doc.polytope), doc.name);
    } else {
        out = charts_to_json(doc.polytope, doc.name);
    }
    write_output(out_path, dump_json(out));
    return 0;
}

int cmd_render(const std::string& report_path, const std::string& svg_path) {
    Json document = parse_json(read_input(report_path));
    write_output(svg_path, render_svg(document));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chow-quotient fans and tropical chain degenerations of toric varieties"};
    app.require_subcommand(1);

    std::string fan_path = "-";
    std::string polytope_path = "-";
    std::string report_path = "-";
    std::string out_path = "-";
    std::string svg_path = "-";
    std::string direction;
    std::string point;
    std::string emit = "fan";
    bool allow_imprimitive = false;
    std::size_t samples = 5;

    auto* validate = app.add_subcommand("validate", "Validate a fan document");
    validate->add_option("fan", fan_path, "Fan JSON (\"-\" for stdin)")->required();

    auto* quotient =
        app.add_subcommand("quotient", "Chow-quotient fan and stratum report for a direction");
    quotient->add_option("--fan", fan_path, "Fan JSON (\"-\" for stdin)")->required();
    quotient->add_option("--direction", direction, "Subtorus direction, comma-separated integers")
        ->required();
    quotient->add_flag("--allow-imprimitive", allow_imprimitive,
                       "Replace an imprimitive direction by its primitive part");
    quotient->add_option("--samples", samples, "Deterministic sample points per quotient cone");
    quotient->add_option("--out", out_path, "Report destination (\"-\" for stdout)");

    auto* trace = app.add_subcommand("trace", "Trace the chain degeneration over one point");
    trace->add_option("--fan", fan_path, "Fan JSON (\"-\" for stdin)")->required();
    trace->add_option("--direction", direction, "Subtorus direction, comma-separated integers")
        ->required();
    trace->add_option("--point", point, "Point of the quotient space, comma-separated rationals")
        ->required();
    trace->add_flag("--allow-imprimitive", allow_imprimitive,
                    "Replace an imprimitive direction by its primitive part");
    trace->add_option("--out", out_path, "Trace destination (\"-\" for stdout)");

    auto* polytope =
        app.add_subcommand("polytope", "Normal fan, graded monoid, or vertex charts of a polytope");
    polytope->add_option("--polytope", polytope_path, "Polytope JSON (\"-\" for stdin)")
        ->required();
    polytope->add_option("--emit", emit, "What to emit")
        ->check(CLI::IsMember({"fan", "monoid", "charts"}));
    polytope->add_option("--out", out_path, "Destination (\"-\" for stdout)");

    auto* render = app.add_subcommand("render", "Render a rank-2 report or trace as SVG");
    render->add_option("--report", report_path, "Report or trace JSON (\"-\" for stdin)")
        ->required();
    render->add_option("--svg", svg_path, "SVG destination (\"-\" for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::ostringstream msg;
        int code = app.exit(e, msg, msg);
        (void)code;
        log_error(msg.str());
        return 2;
    }

    if (validate->parsed()) {
        return guarded(default_exit, [&] { return cmd_validate(fan_path); });
    }
    if (quotient->parsed()) {
        return guarded(default_exit, [&] {
            return cmd_quotient(fan_path, direction, allow_imprimitive, samples, out_path);
        });
    }
    if (trace->parsed()) {
        return guarded(default_exit, [&] {
            return cmd_trace(fan_path, direction, point, allow_imprimitive, out_path);
        });
    }
    if (polytope->parsed()) {
        return guarded(polytope_exit, [&] { return cmd_polytope(polytope_path, emit, out_path); });
    }
    return guarded(render_exit, [&] { return cmd_render(report_path, svg_path); });
}
