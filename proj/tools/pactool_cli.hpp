#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pac/pac.hpp"

namespace pactool {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCertificate = 2;

inline constexpr double kPacTol = 1e-9;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// PAC_SEED overrides the default seed of 1.
inline std::uint64_t default_seed() {
    const char* env = std::getenv("PAC_SEED");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || env[0] == '-') throw UsageError(std::string("PAC_SEED is not an unsigned integer: ") + env);
    return v;
}

namespace detail {

struct Session {
    std::ostream& out;
    pac::RunManifest manifest;
    std::string manifest_path;

    void emit(const std::string& path, const std::string& text) {
        pac::write_text(path, text);
        manifest.outputs.push_back(path);
    }
};

inline std::string fixed(double v, int digits = 12) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// compute

inline int cmd_compute(Session& s, const std::string& in, const std::string& out_path, const std::string& svg_path) {
    const pac::Configuration c = pac::load_configuration(in);
    const pac::Region r = pac::union_of(c);
    const double p = pac::perimeter(r);
    const double a = pac::area(r);
    const double q = p / a;
    const bool ok = q <= 4.0 + kPacTol;

    s.out << "squares   " << c.size() << "\n"
          << "p         " << pac::format_real(p) << "\n"
          << "a         " << pac::format_real(a) << "\n"
          << "ratio     " << pac::format_real(q) << "\n"
          << "rings     " << r.shells.size() << " shell(s), " << r.holes.size() << " hole(s)\n"
          << "ratio <= 4: " << (ok ? "yes" : "NO") << "\n";

    if (!out_path.empty()) {
        pac::json segs = pac::json::array();
        for (const auto& seg : r.boundary_segments) {
            segs.push_back({{"a", {pac::json_real(seg.a.x), pac::json_real(seg.a.y)}},
                            {"b", {pac::json_real(seg.b.x), pac::json_real(seg.b.y)}},
                            {"owner", seg.owner}});
        }
        const pac::json report = {{"input", in},
                                  {"pass", ok},
                                  {"perimeter", pac::json_real(p)},
                                  {"area", pac::json_real(a)},
                                  {"ratio", pac::json_real(q)},
                                  {"shells", r.shells.size()},
                                  {"holes", r.holes.size()},
                                  {"boundary_segments", std::move(segs)}};
        s.emit(out_path, pac::dump(report));
    }
    if (!svg_path.empty()) s.emit(svg_path, pac::render_svg(r, c.label));
    return ok ? kExitOk : kExitCertificate;
}

// ---------------------------------------------------------------------------
// verify-oriented

inline int cmd_verify(Session& s, const std::string& in, const std::string& out_path) {
    const pac::Configuration c = pac::load_configuration(in);
    if (!pac::is_oriented(c)) throw UsageError(in + ": verify-oriented needs every theta = 0");

    const pac::StripCertificate strip = pac::strip_certificate(c);
    bool ok = strip.passes() && strip.perimeter <= 4.0 * strip.area + kPacTol;

    pac::json steps = pac::json::array();
    int bump_fail = 0;
    int strip_fail = 0;
    pac::Configuration prefix;
    prefix.oriented = true;
    prefix.squares.push_back(c.squares.front());
    for (std::size_t i = 1; i < c.size(); ++i) {
        const pac::UnitSquare& sq = c.squares[i];
        const pac::BumpStep bump = pac::bump_step(prefix, sq);
        pac::json step = {{"index", i}, {"bump", pac::to_json(bump)}, {"strips", nullptr}};
        if (!bump.passes()) ++bump_fail;
        const auto rects = pac::detail::overlap_rects(prefix, sq, pac::kCertTol);
        if (pac::detail::has_interior_overlap(rects, pac::kCertTol)) {
            const pac::StripClassification cls = pac::classify_boundary_strips(prefix, sq);
            const bool mirror = pac::mirror_property_holds(cls, sq);
            pac::json js = pac::to_json(cls);
            js["mirror_ok"] = mirror;
            if (!cls.passes() || !mirror) ++strip_fail;
            step["strips"] = std::move(js);
        }
        steps.push_back(std::move(step));
        prefix.squares.push_back(sq);
    }
    ok = ok && bump_fail == 0 && strip_fail == 0;

    s.out << "strip certificate   " << (strip.passes() ? "pass" : "FAIL") << "  averaged "
          << pac::format_real(strip.averaged_sum) << " <= area " << pac::format_real(strip.area) << "\n"
          << "ratio               " << pac::format_real(strip.perimeter / strip.area) << "\n"
          << "bump steps          " << (c.size() - 1 - bump_fail) << "/" << (c.size() - 1) << " pass\n"
          << "boundary strips     " << (strip_fail == 0 ? "pass" : "FAIL") << "\n"
          << "certificate         " << (ok ? "pass" : "FAIL") << "\n";

    if (!out_path.empty()) {
        const pac::json report = {{"input", in},
                                  {"certificate", ok ? "pass" : "fail"},
                                  {"ratio", pac::json_real(strip.perimeter / strip.area)},
                                  {"strip", pac::to_json(strip)},
                                  {"bump_failures", bump_fail},
                                  {"strip_failures", strip_fail},
                                  {"steps", std::move(steps)}};
        s.emit(out_path, pac::dump(report));
    }
    return ok ? kExitOk : kExitCertificate;
}

// ---------------------------------------------------------------------------
// bound

inline const std::vector<double>& default_bound_grid() {
    static const std::vector<double> grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
    return grid;
}

inline int cmd_bound(Session& s, std::vector<double> xs, double tol, bool with_exact, const std::string& out_path) {
    if (xs.empty()) xs = default_bound_grid();
    std::ostringstream csv;
    csv << "x,closed,numeric,abs_diff" << (with_exact ? ",exact" : "") << "\n";
    double worst = 0.0;
    for (double x : xs) {
        if (!(x >= 0.0 && x < 1.0)) throw UsageError("bound: x must lie in [0, 1), got " + pac::format_real(x));
        const pac::ThicknessProfile t = pac::thickness_profile(x, tol);
        worst = std::max(worst, t.closed_form_gap());
        csv << pac::format_real(x) << ',' << pac::format_real(t.closed_form) << ',' << pac::format_real(t.numeric) << ','
            << pac::format_real(t.closed_form_gap());
        if (with_exact) csv << ',' << pac::format_real(t.exact);
        csv << "\n";
    }
    const double b = pac::gyenes_bound();
    const bool agree = worst <= 1e-6;
    s.out << csv.str();
    s.out << "bound " << pac::format_real(b) << " <= " << pac::format_real(pac::kGyenesCeiling) << "\n";
    s.out << "closed form vs quadrature: max abs_diff " << pac::format_real(worst) << (agree ? " (agree)" : " (DISAGREE > 1e-6)")
          << "\n";
    if (!out_path.empty()) s.emit(out_path, csv.str());
    return agree ? kExitOk : kExitCertificate;
}

// ---------------------------------------------------------------------------
// search

inline int cmd_search(Session& s, const pac::SearchSettings& settings, const std::string& out_path,
                      const std::string& svg_path) {
    const pac::SearchReport r = pac::search(settings);
    const double bound = pac::gyenes_bound();
    const bool ok = r.best_ratio <= 4.0 + kPacTol && r.bound_violations == 0;

    s.out << "n " << settings.n_squares << (settings.oriented ? " oriented" : " free") << ", seed " << settings.seed << ", "
          << r.evals << " evaluations, " << settings.restarts << " restarts\n"
          << "best ratio          " << pac::format_real(r.best_ratio) << "\n"
          << "max evaluated ratio " << pac::format_real(r.max_evaluated_ratio) << " (general bound "
          << pac::format_real(bound) << ")\n"
          << "filter penalties    " << r.filter_prunes << "\n"
          << "geometry failures   " << r.geometry_failures << "\n"
          << "best passes filter  " << (r.best_passes_filter ? "yes" : "no") << "\n";
    if (!ok) s.out << "ratio above 4 found: see report\n";

    if (!out_path.empty()) s.emit(out_path, pac::dump(pac::to_json(r)));
    if (!svg_path.empty()) s.emit(svg_path, pac::render_svg(pac::union_of(r.best), r.best.label));
    return ok ? kExitOk : kExitCertificate;
}

// ---------------------------------------------------------------------------
// examples

struct ExampleRow {
    std::string name;
    std::string parameter;
    double expected = 0.0;
    double computed = 0.0;
    double tol = 0.0;
    bool at_most = false;  // computed <= expected + tol instead of |computed - expected| <= tol

    bool pass() const {
        if (!std::isfinite(computed)) return false;
        return at_most ? computed <= expected + tol : std::abs(computed - expected) <= tol;
    }
};

inline std::vector<ExampleRow> example_rows(std::uint64_t seed) {
    using namespace pac;
    const double r2 = std::sqrt(2.0);
    std::vector<ExampleRow> rows;
    auto eq = [&](std::string n, std::string p, double e, double c, double t) { rows.push_back({n, p, e, c, t, false}); };
    auto le = [&](std::string n, std::string p, double e, double c, double t) { rows.push_back({n, p, e, c, t, true}); };

    Configuration star = centered_family({0.0, kPi / 4.0});
    const Region star_r = union_of(star);
    double max_dev = 0.0;
    for (Point v : square_polygon(UnitSquare({3.0, 1.0}, 0.3))) max_dev = std::max(max_dev, std::abs(distance(v, {3.0, 1.0}) - r2 / 2.0));
    eq("square_polygon vertex radius", "c=(3,1) theta=0.3", 0.0, max_dev, 1e-12);
    eq("star area", "theta 0, pi/4", 4.0 - 2.0 * r2, area(star_r), 1e-9);
    eq("star perimeter", "theta 0, pi/4", 16.0 - 8.0 * r2, perimeter(star_r), 1e-9);
    eq("star boundary segments", "theta 0, pi/4", 16.0, static_cast<double>(star_r.boundary_segments.size()), 0.0);
    Configuration grid;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) grid.squares.emplace_back(Point{2.0 * i, 2.0 * j}, 0.0);
    }
    eq("ratio 3x3 disjoint grid", "9 squares", 4.0, ratio(grid), 1e-9);
    const AreaEstimate mc = monte_carlo_area(star, 1000000, seed);
    eq("monte carlo star area", "1e6 samples", 4.0 - 2.0 * r2, mc.estimate, 3.0 * mc.std_error);

    eq("l_star", "x=0.5 theta=pi/2", 1.0, square_chord(0.5, kHalfPi), 1e-12);
    eq("l_star", "x=0 theta=pi/4", r2, square_chord(0.0, kPi / 4.0), 1e-12);
    eq("l_star", "x=0.3 theta=3pi/2", 0.0, square_chord(0.3, 3.0 * kHalfPi), 0.0);
    eq("tau_star", "x=0 theta=pi/8", std::tan(kPi / 8.0), square_thickness(0.0, kPi / 8.0), 1e-12);
    eq("T_star closed", "x=0", 1.131972, thickness_integral_closed_form(0.0), 1e-6);
    for (double x : {0.25, 0.5, 0.9}) {
        const ThicknessProfile t = thickness_profile(x, 1e-9);
        eq("T_star closed vs numeric", "x=" + format_real(x), t.numeric, t.closed_form, 1e-6);
    }
    eq("gyenes bound", "2pi/(ln2/2+pi/4)", 5.550663, gyenes_bound(), 1e-6);
    le("gyenes bound ceiling", "<= 5.6", kGyenesCeiling, gyenes_bound(), 0.0);

    Configuration one;
    one.oriented = true;
    one.squares.emplace_back(Point{0.0, 0.0}, 0.0);
    eq("strip certificate averaged sum", "single square", 1.0, strip_certificate(one).averaged_sum, 1e-9);
    Configuration domino = one;
    domino.squares.emplace_back(Point{1.0, 0.0}, 0.0);
    eq("strip certificate averaged sum", "2x1 domino", 1.5, strip_certificate(domino).averaged_sum, 1e-9);
    eq("rectangle ratio", "w=0.5 h=1", 6.0, rectangle_ratio_check(0.5, 1.0), 1e-12);
    eq("rectangle ratio", "w=0.1 h=0.1", 40.0, rectangle_ratio_check(0.1, 0.1), 1e-9);
    const BumpStep corner = bump_step(one, UnitSquare({0.5, 0.5}, 0.0));
    eq("bump step ratio", "shift (0.5,0.5)", 8.0 / 3.0, corner.step_ratio().value_or(NAN), 1e-9);
    const BumpStep away = bump_step(one, UnitSquare({3.0, 0.0}, 0.0));
    eq("bump step ratio", "disjoint", 4.0, away.step_ratio().value_or(NAN), 1e-9);
    eq("strip bound", "h=1 v=1", 4.0, strip_bound(1.0, 1.0), 1e-12);
    eq("strip bound", "h=1 v=0", 2.0, strip_bound(1.0, 0.0), 1e-12);
    eq("strip bound", "h=0.5 v=0.5", 8.0 / 3.0, strip_bound(0.5, 0.5), 1e-12);

    const ClippedSquarePair clip = clipped_square_pair(0.1);
    eq("clipped square E1 ratio", "x=0.1", 3.961227, clip.e1_ratio, 1e-6);
    eq("clipped square union ratio", "x=0.1", 4.0, clip.union_ratio, 1e-9);
    eq("corner triangle dp/da", "b=0.1", 11.715729, corner_triangle_delta(0.1), 1e-6);
    eq("corner triangle dp/da", "b=0.01", 117.157288, corner_triangle_delta(0.01), 1e-6);
    eq("centered family ratio", "theta 0, pi/4", 4.0, ratio(star), 1e-9);

    Configuration offset = one;
    offset.squares.emplace_back(Point{0.5, 0.0}, 0.0);
    eq("overlap alpha", "offset (0.5,0)", 0.5, overlap_profile(offset).shared[0], 1e-9);
    const FilterResult f = optimality_filter(offset);
    eq("filter witness", "offset (0.5,0)", 0.0, f.witness ? static_cast<double>(*f.witness) : NAN, 0.0);
    eq("isoperimetric removal bound", "alpha=0", 4.0, isoperimetric_removal_bound(0.0), 1e-12);
    eq("isoperimetric removal bound", "alpha=pi/4", 4.0, isoperimetric_removal_bound(kPi / 4.0), 1e-9);
    eq("isoperimetric removal bound", "alpha=0.3", 2.941, isoperimetric_removal_bound(0.3), 1e-3);
    eq("circle union ratio", "1 circle k=1024", 2.0000094, circle_union_check({{0.0, 0.0}}, 1024).ratio, 1e-7);
    le("circle union ratio", "2 circles k=1024", 2.00001, circle_union_check({{0.0, 0.0}, {0.3, 0.1}}, 1024).ratio, 0.0);
    return rows;
}

inline int cmd_examples(Session& s, std::uint64_t seed, const std::string& out_path) {
    const std::vector<ExampleRow> rows = example_rows(seed);
    int failed = 0;
    s.out << std::left << std::setw(32) << "name" << std::setw(20) << "parameter" << std::setw(18) << "expected" << std::setw(18)
          << "computed"
          << "pass\n";
    pac::json report = pac::json::array();
    for (const auto& r : rows) {
        const bool ok = r.pass();
        if (!ok) ++failed;
        const std::string expected = (r.at_most ? "<= " : "") + pac::format_real(r.expected);
        s.out << std::left << std::setw(32) << r.name << std::setw(20) << r.parameter << std::setw(18) << expected << std::setw(18)
              << pac::format_real(r.computed) << (ok ? "yes" : "NO") << "\n";
        report.push_back({{"name", r.name},
                          {"parameter", r.parameter},
                          {"expected", pac::json_real(r.expected)},
                          {"computed", pac::json_real(r.computed)},
                          {"tolerance", pac::json_real(r.tol)},
                          {"comparison", r.at_most ? "at_most" : "equal"},
                          {"pass", ok}});
    }
    s.out << rows.size() - failed << "/" << rows.size() << " examples pass\n";
    if (!out_path.empty()) s.emit(out_path, pac::dump(report));
    return failed == 0 ? kExitOk : kExitCertificate;
}

// ---------------------------------------------------------------------------
// oracle

inline int cmd_oracle(Session& s, const std::string& in, long samples, std::uint64_t seed, const std::string& out_path) {
    if (samples < 1) throw UsageError("oracle: --samples must be >= 1");
    const pac::Configuration c = pac::load_configuration(in);
    const double exact = pac::area(pac::union_of(c));
    const pac::AreaEstimate mc = pac::monte_carlo_area(c, samples, seed);
    const double z = mc.std_error > 0.0 ? std::abs(mc.estimate - exact) / mc.std_error : (mc.estimate == exact ? 0.0 : INFINITY);
    const bool ok = z <= 3.0;
    s.out << "exact area   " << pac::format_real(exact) << "\n"
          << "monte carlo  " << pac::format_real(mc.estimate) << " +- " << pac::format_real(mc.std_error) << " (" << samples
          << " samples)\n"
          << "z            " << fixed(z, 4) << (ok ? "  within 3 sigma" : "  OUTSIDE 3 sigma") << "\n";
    if (!out_path.empty()) {
        const pac::json report = {{"input", in},
                                  {"pass", ok},
                                  {"exact_area", pac::json_real(exact)},
                                  {"estimate", pac::json_real(mc.estimate)},
                                  {"std_error", pac::json_real(mc.std_error)},
                                  {"samples", mc.samples},
                                  {"hits", mc.hits},
                                  {"seed", seed},
                                  {"z", pac::json_real(z)}};
        s.emit(out_path, pac::dump(report));
    }
    return ok ? kExitOk : kExitCertificate;
}

// ---------------------------------------------------------------------------
// render

inline int cmd_render(Session& s, const std::string& in, const std::string& svg_path) {
    const pac::Configuration c = pac::load_configuration(in);
    const pac::Region r = pac::union_of(c);
    s.emit(svg_path, pac::render_svg(r, c.label));
    s.out << "wrote " << svg_path << " (" << r.shells.size() << " shell(s), " << r.holes.size() << " hole(s))\n";
    return kExitOk;
}

}  // namespace detail

/// Entry point; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Perimeter-to-area ratios of unions of unit squares", "pactool"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PAC_VERSION);

    std::string manifest_path;
    std::string in;
    std::string out_path;
    std::string svg_path;
    std::string seed_text;
    auto add_manifest = [&](CLI::App* sub) { sub->add_option("--manifest", manifest_path, "Write a run manifest (JSON)"); };
    auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", seed_text, "RNG seed (default: $PAC_SEED or 1)"); };

    auto* compute = app.add_subcommand("compute", "Perimeter, area and ratio of a configuration");
    compute->add_option("--in", in, "Configuration JSON")->required();
    compute->add_option("--out", out_path, "Report JSON");
    compute->add_option("--svg", svg_path, "Render the union");
    add_manifest(compute);

    auto* verify = app.add_subcommand("verify-oriented", "Strip, bump and boundary-strip certificates");
    verify->add_option("--in", in, "Oriented configuration JSON")->required();
    verify->add_option("--out", out_path, "Report JSON");
    add_manifest(verify);

    std::vector<double> xs;
    double tol = 1e-9;
    bool with_exact = false;
    auto* bound = app.add_subcommand("bound", "Thickness integral table and the general bound");
    bound->add_option("--x", xs, "Boundary parameter(s) in [0, 1)");
    bound->add_option("--tol", tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
    bound->add_flag("--with-exact", with_exact, "Add a column with the exact integral");
    bound->add_option("--out", out_path, "CSV table");
    add_manifest(bound);

    pac::SearchSettings settings;
    std::string filter = "on";
    auto* search = app.add_subcommand("search", "Search for configurations with a large ratio");
    search->add_option("--n", settings.n_squares, "Number of squares")->check(CLI::Range(2, 1000));
    search->add_flag("--oriented", settings.oriented, "Keep every square axis-aligned");
    search->add_option("--box", settings.box, "Half-width of the centre box")->check(CLI::PositiveNumber);
    add_seed(search);
    search->add_option("--max-evals", settings.max_evals, "Evaluation budget over all restarts")->check(CLI::PositiveNumber);
    search->add_option("--restarts", settings.restarts, "Independent restarts")->check(CLI::PositiveNumber);
    search->add_option("--filter", filter, "Overlap filter penalty")->check(CLI::IsMember({"on", "off"}));
    search->add_option("--threads", settings.threads, "Worker threads")->check(CLI::PositiveNumber);
    search->add_option("--out", out_path, "Report JSON");
    search->add_option("--svg", svg_path, "Render the best configuration");
    add_manifest(search);

    auto* examples = app.add_subcommand("examples", "Recompute the named examples");
    add_seed(examples);
    examples->add_option("--out", out_path, "Report JSON");
    add_manifest(examples);

    long samples = 1000000;
    auto* oracle = app.add_subcommand("oracle", "Monte Carlo area against the exact union area");
    oracle->add_option("--in", in, "Configuration JSON")->required();
    oracle->add_option("--samples", samples, "Sample count");
    add_seed(oracle);
    oracle->add_option("--out", out_path, "Report JSON");
    add_manifest(oracle);

    auto* render = app.add_subcommand("render", "Write the union as SVG");
    render->add_option("--in", in, "Configuration JSON")->required();
    render->add_option("--svg,--out", svg_path, "SVG output")->required();
    add_manifest(render);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    detail::Session session{out, {}, manifest_path};
    session.manifest.subcommand = sub->get_name();
    session.manifest.version = PAC_VERSION;
    if (!in.empty()) session.manifest.inputs.push_back(in);
    const auto t0 = std::chrono::steady_clock::now();

    int code = kExitOk;
    try {
        std::uint64_t seed = default_seed();
        if (!seed_text.empty()) {
            try {
                std::size_t pos = 0;
                if (seed_text[0] == '-') throw std::invalid_argument("negative");
                seed = std::stoull(seed_text, &pos);
                if (pos != seed_text.size()) throw std::invalid_argument("trailing");
            } catch (const std::logic_error&) {
                throw UsageError("--seed is not an unsigned integer: " + seed_text);
            }
        }
        session.manifest.seed = seed;

        if (sub == compute) {
            code = detail::cmd_compute(session, in, out_path, svg_path);
        } else if (sub == verify) {
            code = detail::cmd_verify(session, in, out_path);
        } else if (sub == bound) {
            code = detail::cmd_bound(session, xs, tol, with_exact, out_path);
        } else if (sub == search) {
            settings.seed = seed;
            settings.filter_enabled = filter == "on";
            pac::validate(settings);
            code = detail::cmd_search(session, settings, out_path, svg_path);
        } else if (sub == examples) {
            code = detail::cmd_examples(session, seed, out_path);
        } else if (sub == oracle) {
            code = detail::cmd_oracle(session, in, samples, seed, out_path);
        } else {
            code = detail::cmd_render(session, in, svg_path);
        }
    } catch (const pac::ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pac::GeometryError& e) {
        err << "geometry error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (!manifest_path.empty()) {
        session.manifest.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        try {
            pac::write_text(manifest_path, pac::dump(pac::to_json(session.manifest)));
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    return code;
}

}  // namespace pactool
