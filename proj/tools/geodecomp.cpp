// geodecomp: geometric decomposition of C^1 vector fields with respect to a
// nondegenerate bilinear structure. Subcommands: decompose, check, flow,
// conjugacy. Specs are JSON files (see README); "-" reads stdin.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geodecomp/conjugacy.hpp"
#include "geodecomp/decomp.hpp"
#include "geodecomp/flow.hpp"
#include "geodecomp/io/reports_json.hpp"
#include "geodecomp/io/spec_json.hpp"
#include "geodecomp/poincare.hpp"
#include "geodecomp/polyfield.hpp"

namespace {

using namespace geodecomp;
using geodecomp::io::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSingular = 3;
constexpr int kExitNonFinite = 4;
constexpr int kExitOther = 1;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open output file '" + tmp + "'");
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot move output into place: " + path);
}

std::vector<Rational> parse_point(const std::string& text, int dimension) {
    std::vector<Rational> pt;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ',')) pt.push_back(parse_rational_or_decimal(item));
    if (static_cast<int>(pt.size()) != dimension)
        throw SpecParseError("point has " + std::to_string(pt.size()) + " coordinates, expected " +
                             std::to_string(dimension));
    return pt;
}

Vec to_vec(const std::vector<Rational>& pt) {
    Vec v;
    v.reserve(pt.size());
    for (const Rational& q : pt) v.push_back(to_double(q));
    return v;
}

QuadratureConfig make_quadrature(int nodes, double adaptive_tol) {
    if (adaptive_tol > 0) return QuadratureConfig::adaptive(adaptive_tol);
    return QuadratureConfig::gauss(nodes);
}

struct DecomposeOptions {
    std::string spec_path;
    std::string at_text;
    std::string side = "right";
    bool exact = false;
    int nodes = 32;
    double adaptive_tol = 0.0;
    std::string out_format = "json";
    std::string out_path;
};

std::string decomposition_csv(const PointDecomposition& d) {
    std::ostringstream os;
    os.precision(17);
    const int n = static_cast<int>(d.point.size());
    auto columns = [&](const std::string& base) {
        for (int i = 1; i <= n; ++i) os << ',' << base << i;
    };
    os << "H,H_star";
    columns("x");
    columns("grad_H_");
    columns("grad_H_star_");
    columns("u");
    columns("u_star");
    os << ",residual_right,residual_left\n";
    os << d.H << ',' << d.H_star;
    auto row = [&](const Vec& v) {
        for (double c : v) os << ',' << c;
    };
    row(d.point);
    row(d.grad_H);
    row(d.grad_H_star);
    row(d.u);
    row(d.u_star);
    os << ',' << d.residual_right << ',' << d.residual_left << '\n';
    return os.str();
}

int run_decompose(const DecomposeOptions& opt) {
    const io::SystemSpec spec = io::parse_spec_text(read_input(opt.spec_path));
    std::vector<Side> sides;
    if (opt.side == "right") sides = {Side::Right};
    else if (opt.side == "left") sides = {Side::Left};
    else if (opt.side == "both") sides = {Side::Right, Side::Left};
    else throw SpecParseError("--side must be right, left, or both");

    if (opt.exact) {
        const auto s = spec.structure_exact();
        const auto x = spec.field_exact();
        json out;
        out["schema_version"] = io::kSchemaVersion;
        out["mode"] = "exact";
        json decs = json::array();
        for (Side side : sides) {
            const ExactDecomposition d = decompose_exact(s, x, side);
            json dj = io::exact_decomposition_to_json(d, side == Side::Right ? "right" : "left");
            if (!opt.at_text.empty()) {
                const auto pt = parse_point(opt.at_text, spec.dimension);
                dj["at"] = opt.at_text;
                dj["potential_value"] = to_string(d.potential.eval(pt));
                json uv = json::array();
                for (const Poly& p : d.orthogonal.components) uv.push_back(to_string(p.eval(pt)));
                dj["orthogonal_value"] = std::move(uv);
            }
            decs.push_back(std::move(dj));
        }
        out["decompositions"] = std::move(decs);
        write_output(opt.out_path, out.dump(2));
        return kExitOk;
    }

    if (opt.at_text.empty()) throw SpecParseError("numeric decomposition needs --at");
    const auto s = spec.structure_numeric();
    const auto x = spec.field_numeric();
    const Vec p = to_vec(parse_point(opt.at_text, spec.dimension));
    const PointDecomposition d = decompose_at(s, x, p, make_quadrature(opt.nodes, opt.adaptive_tol));
    if (opt.out_format == "csv") {
        write_output(opt.out_path, decomposition_csv(d));
    } else {
        write_output(opt.out_path, io::point_decomposition_to_json(d).dump(2));
    }
    return kExitOk;
}

struct CheckOptions {
    std::string spec_path;
    std::string side = "right";
    int samples = 64;
    uint64_t seed = 0;
    bool exact = false;
    double threshold = 1e-8;
    std::string out_path;
};

SolvabilitySide parse_solvability_side(const std::string& s) {
    if (s == "left") return SolvabilitySide::Left;
    if (s == "right") return SolvabilitySide::Right;
    if (s == "symmetric") return SolvabilitySide::SymmetricUnified;
    if (s == "skew") return SolvabilitySide::SkewUnified;
    throw SpecParseError("--side must be left, right, symmetric, or skew");
}

int run_check(const CheckOptions& opt) {
    const io::SystemSpec spec = io::parse_spec_text(read_input(opt.spec_path));
    const SolvabilitySide side = parse_solvability_side(opt.side);
    SolvabilityReport report;
    if (opt.exact) {
        report = check_gradient_like(spec.structure_exact(), spec.field_exact(), side);
    } else {
        if (opt.samples <= 0) throw SpecParseError("--samples must be positive");
        report = check_gradient_like(spec.structure_numeric(), spec.field_numeric(), side, opt.samples,
                                     opt.seed, opt.threshold);
    }
    write_output(opt.out_path, io::solvability_to_json(report).dump(2));
    return kExitOk;
}

struct FlowOptions {
    std::string spec_path;
    std::string x0_text;
    double horizon = 10.0;
    std::string part = "full";
    std::string side = "right";
    std::string integral = "none";
    std::string scheme = "dp54";
    double rtol = 1e-10;
    double atol = 1e-12;
    double step = 1e-3;
    long max_steps = 2'000'000;
    int nodes = 32;
    std::string trace_csv;
    std::string out_path;
};

int run_flow(const FlowOptions& opt) {
    const io::SystemSpec spec = io::parse_spec_text(read_input(opt.spec_path));
    const auto s = spec.structure_numeric();
    NumericVectorField field = spec.field_numeric();
    const Side side = opt.side == "left" ? Side::Left : Side::Right;
    const QuadratureConfig quad = QuadratureConfig::gauss(opt.nodes);
    if (opt.part == "grad") field = gradient_part(s, std::move(field), quad, side);
    else if (opt.part == "rot") field = rotational_part(s, std::move(field), quad, side);
    else if (opt.part == "rot_binv") field = normalized_rotational_part(s, std::move(field), quad, side);
    else if (opt.part != "full") throw SpecParseError("--part must be full, grad, rot, or rot_binv");

    const Vec x0 = to_vec(parse_point(opt.x0_text, spec.dimension));
    IntegratorConfig cfg = opt.scheme == "rk4" ? IntegratorConfig::rk4(opt.step, opt.horizon)
                                               : IntegratorConfig::dp54(opt.rtol, opt.atol, opt.horizon);
    cfg.max_steps = opt.max_steps;

    const FlowTrace trace = integrate(field, x0, cfg);
    json out;
    out["schema_version"] = io::kSchemaVersion;
    out["steps_accepted"] = trace.stats.accepted;
    out["steps_rejected"] = trace.stats.rejected;
    out["min_step"] = trace.stats.min_step;
    out["max_step"] = trace.stats.max_step;
    out["final_time"] = trace.times.back();
    out["final_state"] = trace.states.back();

    if (opt.integral != "none") {
        ScalarField f;
        if (opt.integral == "norm2") {
            f = norm_squared(spec.dimension);
        } else if (opt.integral == "fb") {
            f.label = "fb";
            f.value = [s](const Vec& v) { return s.quadratic_form(v); };
        } else {
            throw SpecParseError("--integral must be norm2, fb, or none");
        }
        const double f0 = f.value(x0);
        double drift = 0.0;
        for (const Vec& state : trace.states) drift = std::max(drift, std::fabs(f.value(state) - f0));
        out["integral"] = {{"name", opt.integral}, {"initial", f0}, {"max_drift", drift}};
    }
    if (!opt.trace_csv.empty()) write_output(opt.trace_csv, io::trace_to_csv(trace));
    write_output(opt.out_path, out.dump(2));
    return kExitOk;
}

struct ConjugacyOptions {
    std::string spec1_path;
    std::string spec2_path;
    double box_radius = 5.0;
    int grid_points = 11;
    int trials = 32;
    double horizon = 50.0;
    double epsilon = 1e-3;
    uint64_t seed = 0;
    int nodes = 32;
    std::string out_path;
};

int run_conjugacy(const ConjugacyOptions& opt) {
    const io::SystemSpec spec1 = io::parse_spec_text(read_input(opt.spec1_path));
    const io::SystemSpec spec2 = io::parse_spec_text(read_input(opt.spec2_path));
    ConjugacyConfig cfg;
    cfg.box_radius = opt.box_radius;
    cfg.grid_points = opt.grid_points;
    cfg.trials = opt.trials;
    cfg.horizon = opt.horizon;
    cfg.epsilon = opt.epsilon;
    cfg.seed = opt.seed;
    cfg.quadrature = QuadratureConfig::gauss(opt.nodes);
    const PairReport report = compare_pair(spec1.structure_numeric(), spec1.field_numeric(),
                                           spec2.structure_numeric(), spec2.field_numeric(), cfg);
    write_output(opt.out_path, io::pair_to_json(report).dump(2));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric decomposition of vector fields"};
    app.require_subcommand(1);

    DecomposeOptions dec;
    auto* cmd_dec = app.add_subcommand("decompose", "split a field into gradient-like + orthogonal parts");
    cmd_dec->add_option("--spec", dec.spec_path, "system spec JSON file ('-' for stdin)")->required();
    cmd_dec->add_option("--at", dec.at_text, "evaluation point 'x1,x2,...' (rationals allowed)");
    cmd_dec->add_option("--side", dec.side, "right | left | both");
    cmd_dec->add_flag("--exact", dec.exact, "exact polynomial mode");
    cmd_dec->add_option("--nodes", dec.nodes, "Gauss-Legendre node count");
    cmd_dec->add_option("--adaptive", dec.adaptive_tol, "use adaptive Simpson with this tolerance");
    cmd_dec->add_option("--out", dec.out_format, "json | csv (numeric mode)");
    cmd_dec->add_option("--output", dec.out_path, "output file (default stdout)");

    CheckOptions chk;
    auto* cmd_chk = app.add_subcommand("check", "test whether the field is gradient-like (solvability)");
    cmd_chk->add_option("--spec", chk.spec_path, "system spec JSON file ('-' for stdin)")->required();
    cmd_chk->add_option("--side", chk.side, "left | right | symmetric | skew");
    cmd_chk->add_option("--samples", chk.samples, "sample point count (numeric mode)");
    cmd_chk->add_option("--seed", chk.seed, "sample sequence offset");
    cmd_chk->add_flag("--exact", chk.exact, "exact polynomial-identity mode");
    cmd_chk->add_option("--threshold", chk.threshold, "residual acceptance threshold (numeric mode)");
    cmd_chk->add_option("--output", chk.out_path, "output file (default stdout)");

    FlowOptions flw;
    auto* cmd_flw = app.add_subcommand("flow", "integrate the field (or a decomposition part)");
    cmd_flw->add_option("--spec", flw.spec_path, "system spec JSON file ('-' for stdin)")->required();
    cmd_flw->add_option("--x0", flw.x0_text, "initial point 'x1,x2,...'")->required();
    cmd_flw->add_option("--T", flw.horizon, "integration horizon");
    cmd_flw->add_option("--part", flw.part, "full | grad | rot | rot_binv");
    cmd_flw->add_option("--side", flw.side, "right | left (for decomposition parts)");
    cmd_flw->add_option("--integral", flw.integral, "first-integral drift to record: norm2 | fb | none");
    cmd_flw->add_option("--scheme", flw.scheme, "dp54 | rk4");
    cmd_flw->add_option("--rtol", flw.rtol, "DP54 relative tolerance");
    cmd_flw->add_option("--atol", flw.atol, "DP54 absolute tolerance");
    cmd_flw->add_option("--step", flw.step, "RK4 fixed step");
    cmd_flw->add_option("--max-steps", flw.max_steps, "step budget");
    cmd_flw->add_option("--nodes", flw.nodes, "Gauss-Legendre nodes for decomposition parts");
    cmd_flw->add_option("--trace-csv", flw.trace_csv, "write the trajectory CSV here");
    cmd_flw->add_option("--output", flw.out_path, "report file (default stdout)");

    ConjugacyOptions cnj;
    auto* cmd_cnj = app.add_subcommand("conjugacy", "verify conjugacy-criterion hypotheses for a pair");
    cmd_cnj->add_option("--spec1", cnj.spec1_path, "first system spec")->required();
    cmd_cnj->add_option("--spec2", cnj.spec2_path, "second system spec")->required();
    cmd_cnj->add_option("--box-R", cnj.box_radius, "equilibrium search box half-width");
    cmd_cnj->add_option("--grid-k", cnj.grid_points, "grid points per axis");
    cmd_cnj->add_option("--trials", cnj.trials, "attraction trial count");
    cmd_cnj->add_option("--T", cnj.horizon, "attraction trial horizon");
    cmd_cnj->add_option("--eps", cnj.epsilon, "attraction radius factor");
    cmd_cnj->add_option("--seed", cnj.seed, "trial RNG seed");
    cmd_cnj->add_option("--nodes", cnj.nodes, "Gauss-Legendre nodes for the decomposition");
    cmd_cnj->add_option("--output", cnj.out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*cmd_dec) return run_decompose(dec);
        if (*cmd_chk) return run_check(chk);
        if (*cmd_flw) return run_flow(flw);
        if (*cmd_cnj) return run_conjugacy(cnj);
        return kExitParse;
    } catch (const SpecParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const SingularGram& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSingular;
    } catch (const NonFiniteValue& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNonFinite;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOther;
    }
}
