// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pac/pac.hpp"

using namespace pac;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double time_limit_s;  // 0: no explicit limit
    std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Configuration random_oriented(std::mt19937_64& rng, int n, double box, bool snap) {
    std::uniform_real_distribution<double> u(0.0, box);
    Configuration c;
    c.oriented = true;
    for (int i = 0; i < n; ++i) {
        double x = u(rng);
        double y = u(rng);
        if (snap) {
            x = std::round(4.0 * x) / 4.0;
            y = std::round(4.0 * y) / 4.0;
        }
        c.squares.emplace_back(Point{x, y}, 0.0);
    }
    return c;
}

Outcome gyenes_reproduction() {
    const double b = gyenes_bound();
    const double formula = 2.0 * kPi / (0.5 * std::log(2.0) + kPi / 4.0);
    const bool identity = std::abs(b - formula) <= 1e-12;
    const bool literal = std::abs(b - 5.550663) <= 1e-6;
    const bool ceiling = b <= 5.6;
    std::ostringstream os;
    os << "bound=" << format_real(b) << " formula " << (identity ? "ok" : "MISMATCH") << ", |b-5.550663|="
       << format_real(std::abs(b - 5.550663)) << (literal ? " <= 1e-6" : " > 1e-6") << ", <=5.6 " << (ceiling ? "ok" : "FAIL");
    return {identity && literal && ceiling, os.str()};
}

Outcome thickness_agreement() {
    const std::vector<double> grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
    double worst = 0.0;
    double worst_x = 0.0;
    bool monotone = true;
    double prev = -INFINITY;
    for (double x : grid) {
        const double closed = thickness_integral_closed_form(x);
        const double numeric = thickness_integral_numeric(x, 1e-9).value;
        if (std::abs(closed - numeric) > worst) {
            worst = std::abs(closed - numeric);
            worst_x = x;
        }
        if (closed < prev) monotone = false;
        prev = closed;
    }
    std::ostringstream os;
    os << "max |closed-numeric|=" << format_real(worst) << " at x=" << format_real(worst_x) << (worst <= 1e-6 ? " <= 1e-6" : " > 1e-6")
       << ", nondecreasing " << (monotone ? "ok" : "FAIL");
    return {worst <= 1e-6 && monotone, os.str()};
}

Outcome oriented_theorem() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> n(2, 20);
    int bad_ratio = 0;
    int bad_strip = 0;
    double max_ratio = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const Configuration c = random_oriented(rng, n(rng), 5.0, t % 2 == 0);
        const StripCertificate cert = strip_certificate(c);
        const double r = cert.perimeter / cert.area;
        max_ratio = std::max(max_ratio, r);
        if (r > 4.0 + 1e-9) ++bad_ratio;
        if (!cert.passes()) ++bad_strip;
    }
    std::ostringstream os;
    os << "1000 configs, max ratio " << format_real(max_ratio) << ", ratio violations " << bad_ratio << ", strip failures "
       << bad_strip;
    return {bad_ratio == 0 && bad_strip == 0, os.str()};
}

Outcome incremental_certificates() {
    std::mt19937_64 rng(4048);
    std::uniform_int_distribution<int> n(1, 15);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    int ratio_fail = 0;
    int covered_fail = 0;
    int strip_fail = 0;
    int with_overlap = 0;
    int covered_steps = 0;
    double max_step = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const bool snap = t % 2 == 0;
        const Configuration base = random_oriented(rng, n(rng), 4.0, snap);
        double x = u(rng);
        double y = u(rng);
        if (snap) {
            x = std::round(4.0 * x) / 4.0;
            y = std::round(4.0 * y) / 4.0;
        }
        const UnitSquare s({x, y}, 0.0);
        const BumpStep step = bump_step(base, s);
        if (step.delta_a > kCertTol) {
            const double r = step.delta_p / step.delta_a;
            max_step = std::max(max_step, r);
            if (r > 4.0 + 1e-9) ++ratio_fail;
        } else {
            ++covered_steps;
            if (step.delta_p > 1e-9) ++covered_fail;
        }
        if (detail::has_interior_overlap(detail::overlap_rects(base, s, kCertTol), kCertTol)) {
            ++with_overlap;
            const StripClassification cls = classify_boundary_strips(base, s);
            if (!(cls.delta_p <= 2.0 * (cls.h + cls.v) + 1e-9 && cls.delta_a >= cls.h + cls.v - cls.h * cls.v - 1e-9)) ++strip_fail;
        }
    }
    std::ostringstream os;
    os << "1000 steps, max dp/da " << format_real(max_step) << ", ratio failures " << ratio_fail << ", covered steps "
       << covered_steps << " (dp>0: " << covered_fail << "), strip checks " << with_overlap << " (failures " << strip_fail << ")";
    return {ratio_fail == 0 && covered_fail == 0 && strip_fail == 0, os.str()};
}

Outcome centered_theorem() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> t(0.0, kHalfPi);
    std::uniform_int_distribution<int> n(1, 10);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        std::vector<double> thetas(static_cast<std::size_t>(n(rng)));
        for (double& v : thetas) v = t(rng);
        worst = std::max(worst, std::abs(ratio(centered_family(thetas)) - 4.0));
    }
    return {worst <= 1e-9, "100 families, max |ratio-4| " + format_real(worst)};
}

Outcome star_closed_form() {
    const Configuration star = centered_family({0.0, kPi / 4.0});
    const Region r = union_of(star);
    const double a = area(r);
    const double p = perimeter(r);
    const double ea = 4.0 - 2.0 * std::sqrt(2.0);
    const double ep = 16.0 - 8.0 * std::sqrt(2.0);
    const AreaEstimate mc = monte_carlo_area(star, 1000000, 6);
    const double z = std::abs(mc.estimate - ea) / mc.std_error;
    const bool ok = std::abs(a - ea) <= 1e-9 && std::abs(p - ep) <= 1e-9 && z <= 3.0;
    std::ostringstream os;
    os << "area err " << format_real(std::abs(a - ea)) << ", perimeter err " << format_real(std::abs(p - ep)) << ", monte carlo z "
       << fmt("%.3f", z);
    return {ok, os.str()};
}

Outcome corner_triangle_example() {
    double worst = 0.0;
    for (double b : {0.1, 0.01}) {
        worst = std::max(worst, std::abs(corner_triangle_delta(b) - (4.0 - 2.0 * std::sqrt(2.0)) / b));
    }
    return {worst <= 1e-6, "b in {0.1, 0.01}, max err " + format_real(worst)};
}

Outcome clipped_square_example() {
    const ClippedSquarePair p = clipped_square_pair(0.1);
    const bool ok = std::abs(p.e1_ratio - 3.961227) <= 1e-6 && p.e1_ratio < 4.0 && std::abs(p.union_ratio - 4.0) <= 1e-9;
    return {ok, "E1 ratio " + format_real(p.e1_ratio) + ", union ratio " + format_real(p.union_ratio)};
}

Outcome isoperimetric() {
    double max_v = 0.0;
    for (int i = 0; i < 1000; ++i) max_v = std::max(max_v, isoperimetric_removal_bound(kPi / 4.0 * i / 999.0));
    const double e0 = std::abs(isoperimetric_removal_bound(0.0) - 4.0);
    const double e1 = std::abs(isoperimetric_removal_bound(kPi / 4.0) - 4.0);
    const bool ok = max_v <= 4.0 + 1e-12 && e0 <= 1e-12 && e1 <= 1e-12;
    return {ok, "max " + format_real(max_v) + ", endpoint errors " + format_real(e0) + ", " + format_real(e1)};
}

Outcome circles() {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    const double bound = 2.0 / std::cos(kPi / 1024.0);
    double max_r = 0.0;
    int trials = 0;
    for (int t = 0; t < 15; ++t) {
        std::vector<Point> centers;
        for (int i = 0; i < 1 + t % 5; ++i) centers.push_back({u(rng), u(rng)});
        max_r = std::max(max_r, circle_union_check(centers, 1024).ratio);
        ++trials;
    }
    return {max_r <= bound + 1e-9, std::to_string(trials) + " unions of 1-5 circles, max ratio " + format_real(max_r) + " vs " +
                                       format_real(bound)};
}

Outcome search_sanity() {
    const double bound = gyenes_bound();
    const int threads = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    bool ok = true;
    std::ostringstream os;
    for (int n : {2, 3}) {
        SearchSettings s;
        s.n_squares = n;
        s.seed = 1;
        s.max_evals = 100000;
        s.restarts = 4;
        s.threads = threads;
        const SearchReport a = search(s);
        s.threads = 1;
        const SearchReport b = search(s);
        const bool same = dump(to_json(a)) == dump(to_json(b));
        const bool best_ok = a.best_ratio <= 4.0 + 1e-6;
        const bool evaluated_ok = a.bound_violations == 0 && a.max_evaluated_ratio <= bound + 1e-9;
        ok = ok && same && best_ok && evaluated_ok;
        os << "n=" << n << ": best " << format_real(a.best_ratio) << ", evals " << a.evals << ", max evaluated "
           << format_real(a.max_evaluated_ratio) << ", deterministic " << (same ? "yes" : "NO") << "; ";
    }
    return {ok, os.str()};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "general bound 2pi/(ln2/2+pi/4) = 5.550663 and <= 5.6", 0.0, gyenes_reproduction},
        {2, "thickness integral closed form vs quadrature", 1.0, thickness_agreement},
        {3, "oriented configurations: ratio <= 4 and strip certificate", 60.0, oriented_theorem},
        {4, "incremental bump and boundary-strip certificates", 60.0, incremental_certificates},
        {5, "centered squares have ratio 4", 0.0, centered_theorem},
        {6, "star closed form and Monte Carlo", 0.0, star_closed_form},
        {7, "corner triangle dp/da = (4-2sqrt2)/b", 0.0, corner_triangle_example},
        {8, "clipped square example", 0.0, clipped_square_example},
        {9, "isoperimetric removal bound <= 4", 0.0, isoperimetric},
        {10, "unions of unit circles (1024-gons)", 0.0, circles},
        {11, "search sanity, n in {2,3}, 1e5 evaluations", 300.0, search_sanity},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass;
        std::string timing = fmt("%.2fs", secs);
        if (c.time_limit_s > 0.0 && secs > c.time_limit_s) {
            pass = false;
            timing += " over " + fmt("%.0fs", c.time_limit_s) + " limit";
        }
        if (!pass) ++failed;
        std::printf("[%s] %2d %s | %s | %s\n", pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
