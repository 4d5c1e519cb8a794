#pragma once

// Counterexample hunt: maximize perimeter/area over n unit squares.
//
// Square 0 is pinned at the origin with angle 0; the remaining squares carry
// (cx, cy[, theta]) parameters with centres clamped to [-box, box]. Each
// restart runs geometric-cooling simulated annealing on 80% of its budget
// and spends the rest on a Nelder-Mead polish of its best point. With the
// filter on, the annealing objective is ratio - w * sum max(0, pi/4 - alpha_i)
// and every evaluation failing the optimality filter is counted; the report's
// best configuration is the highest raw ratio seen and is hard-checked
// against the filter afterwards.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "pac/bounds.hpp"
#include "pac/explore.hpp"
#include "pac/geometry.hpp"
#include "pac/union.hpp"

namespace pac {

struct SearchSettings {
    int n_squares = 3;
    bool oriented = false;
    double box = 2.0;
    std::uint64_t seed = 1;
    long max_evals = 100000;  // total over all restarts
    int restarts = 4;
    bool filter_enabled = true;
    int threads = 1;
    double penalty_weight = 1.0;
};

inline void validate(const SearchSettings& s) {
    if (s.n_squares < 2) throw std::invalid_argument("search: n_squares must be >= 2");
    if (!(s.box > 0.0)) throw std::invalid_argument("search: box must be positive");
    if (s.max_evals < 1) throw std::invalid_argument("search: max_evals must be >= 1");
    if (s.restarts < 1) throw std::invalid_argument("search: restarts must be >= 1");
    if (s.threads < 1) throw std::invalid_argument("search: threads must be >= 1");
    if (s.max_evals < s.restarts) throw std::invalid_argument("search: max_evals must cover every restart");
}

struct SearchReport {
    SearchSettings settings;
    Configuration best;
    double best_ratio = 0.0;
    long evals = 0;
    long filter_prunes = 0;
    long geometry_failures = 0;
    long bound_violations = 0;  // evaluations above the general 5.55 bound
    double max_evaluated_ratio = 0.0;
    bool best_passes_filter = false;
    std::optional<std::size_t> filter_witness;
    std::vector<std::pair<long, double>> history;  // (evaluation index, new best ratio)
    std::vector<double> restart_best;
};

/// Nelder-Mead maximization. `f` is called at most `max_evals` times.
inline std::pair<std::vector<double>, double> nelder_mead_maximize(const std::function<double(const std::vector<double>&)>& f,
                                                                   std::vector<double> x0, double step, long max_evals,
                                                                   double size_tol = 1e-12) {
    const std::size_t dim = x0.size();
    std::vector<std::vector<double>> simplex(dim + 1, x0);
    std::vector<double> value(dim + 1);
    long used = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++used;
        return f(x);
    };
    if (max_evals < 1 || dim == 0) return {x0, -std::numeric_limits<double>::infinity()};
    value[0] = eval(simplex[0]);
    for (std::size_t i = 0; i < dim && used < max_evals; ++i) {
        simplex[i + 1][i] += step;
        value[i + 1] = eval(simplex[i + 1]);
    }
    if (used < static_cast<long>(dim + 1)) {
        const auto best = std::max_element(value.begin(), value.begin() + used) - value.begin();
        return {simplex[static_cast<std::size_t>(best)], value[static_cast<std::size_t>(best)]};
    }

    std::vector<std::size_t> order(dim + 1);
    while (used < max_evals) {
        for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] > value[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[dim - 1];

        double size = 0.0;
        for (std::size_t i = 0; i <= dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
        }
        if (size < size_tol) break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k] / static_cast<double>(dim);
        }
        auto along = [&](double t) {
            std::vector<double> x(dim);
            for (std::size_t k = 0; k < dim; ++k) x[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
            return x;
        };

        const auto xr = along(-1.0);
        const double fr = eval(xr);
        if (fr > value[best] && used < max_evals) {
            const auto xe = along(-2.0);
            const double fe = eval(xe);
            if (fe > fr) {
                simplex[worst] = xe;
                value[worst] = fe;
            } else {
                simplex[worst] = xr;
                value[worst] = fr;
            }
        } else if (fr > value[second]) {
            simplex[worst] = xr;
            value[worst] = fr;
        } else if (used < max_evals) {
            const bool outside = fr > value[worst];
            const auto xc = along(outside ? -0.5 : 0.5);
            const double fc = eval(xc);
            if (fc > std::max(fr, value[worst])) {
                simplex[worst] = xc;
                value[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= dim && used < max_evals; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < dim; ++k) simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
                    value[i] = eval(simplex[i]);
                }
            }
        }
    }
    const auto best = static_cast<std::size_t>(std::max_element(value.begin(), value.end()) - value.begin());
    return {simplex[best], value[best]};
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t restart_seed(std::uint64_t seed, int restart) {
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(restart) + 1));
}

struct RestartResult {
    std::vector<double> best_params;
    double best_ratio = -std::numeric_limits<double>::infinity();
    long evals = 0;
    long prunes = 0;
    long failures = 0;
    long bound_violations = 0;
    double max_ratio = 0.0;
    std::vector<std::pair<long, double>> history;
};

class SearchProblem {
public:
    explicit SearchProblem(const SearchSettings& s) : s_(s), per_square_(s.oriented ? 2 : 3), bound_(gyenes_bound()) {}

    std::size_t dimension() const { return static_cast<std::size_t>((s_.n_squares - 1) * per_square_); }
    int per_square() const { return per_square_; }

    void clamp(std::vector<double>& p) const {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (static_cast<int>(i % per_square_) < 2) p[i] = std::clamp(p[i], -s_.box, s_.box);
        }
    }

    Configuration configuration(const std::vector<double>& raw) const {
        std::vector<double> p = raw;
        clamp(p);
        Configuration c;
        c.oriented = s_.oriented;
        c.label = "search";
        c.squares.emplace_back(Point{0.0, 0.0}, 0.0);
        for (int j = 0; j + 1 < s_.n_squares; ++j) {
            const std::size_t o = static_cast<std::size_t>(j * per_square_);
            c.squares.emplace_back(Point{p[o], p[o + 1]}, s_.oriented ? 0.0 : p[o + 2]);
        }
        return c;
    }

    /// Evaluates one parameter vector, updating the restart's counters.
    double objective(const std::vector<double>& p, RestartResult& r) const {
        ++r.evals;
        const Configuration c = configuration(p);
        double value;
        double rat;
        try {
            const Region whole = union_of(c);
            const double whole_area = area(whole);
            rat = ratio(whole);
            value = rat;
            if (s_.filter_enabled) {
                double deficit = 0.0;
                bool pruned = false;
                for (std::size_t i = 0; i < c.size(); ++i) {
                    const double alpha = std::clamp(1.0 - whole_area + area(union_of(without(c, i))), 0.0, 1.0);
                    if (!(alpha > kOptimalShareThreshold)) pruned = true;
                    deficit += std::max(0.0, kOptimalShareThreshold - alpha);
                }
                if (pruned) ++r.prunes;
                value -= s_.penalty_weight * deficit;
            }
        } catch (const GeometryError&) {
            ++r.failures;
            return -std::numeric_limits<double>::infinity();
        }
        r.max_ratio = std::max(r.max_ratio, rat);
        if (rat > bound_ + 1e-9) ++r.bound_violations;
        if (rat > r.best_ratio) {
            r.best_ratio = rat;
            r.best_params = p;
            clamp(r.best_params);
            r.history.emplace_back(r.evals - 1, rat);
        }
        return value;
    }

    RestartResult run_restart(int restart, long budget) const {
        RestartResult r;
        std::mt19937_64 rng(restart_seed(s_.seed, restart));
        std::uniform_real_distribution<double> centre(-s_.box, s_.box);
        std::uniform_real_distribution<double> angle(0.0, kHalfPi);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_int_distribution<int> pick(0, s_.n_squares - 2);

        std::vector<double> cur(dimension());
        for (std::size_t i = 0; i < cur.size(); ++i) {
            cur[i] = static_cast<int>(i % per_square_) < 2 ? centre(rng) : angle(rng);
        }
        double cur_val = objective(cur, r);
        std::vector<double> best = cur;
        double best_val = cur_val;

        const long anneal_steps = std::max(0L, static_cast<long>(0.8 * static_cast<double>(budget)) - 1);
        constexpr double t_start = 0.1;
        constexpr double t_end = 1e-5;
        const double sigma0 = std::min(0.5, s_.box);
        for (long k = 0; k < anneal_steps; ++k) {
            const double frac = anneal_steps > 1 ? static_cast<double>(k) / static_cast<double>(anneal_steps - 1) : 1.0;
            const double temp = t_start * std::pow(t_end / t_start, frac);
            const double sigma = std::max(1e-5, sigma0 * std::sqrt(temp / t_start));
            std::vector<double> cand = cur;
            const std::size_t o = static_cast<std::size_t>(pick(rng) * per_square_);
            for (int d = 0; d < per_square_; ++d) cand[o + static_cast<std::size_t>(d)] += sigma * gauss(rng);
            clamp(cand);
            const double val = objective(cand, r);
            const double u = unit(rng);
            if (val >= cur_val || u < std::exp((val - cur_val) / temp)) {
                cur = std::move(cand);
                cur_val = val;
                if (cur_val > best_val) {
                    best_val = cur_val;
                    best = cur;
                }
            }
        }

        const long remaining = budget - r.evals;
        if (remaining > 0) {
            auto f = [&](const std::vector<double>& p) { return objective(p, r); };
            nelder_mead_maximize(f, best, 0.05, remaining);
        }
        return r;
    }

private:
    SearchSettings s_;
    int per_square_;
    double bound_;
};

}  // namespace detail

/// Deterministic for a fixed seed; restarts may run on several threads and
/// the merged report is identical to sequential execution.
inline SearchReport search(const SearchSettings& settings) {
    validate(settings);
    const detail::SearchProblem problem(settings);
    const int restarts = settings.restarts;
    std::vector<long> budgets(static_cast<std::size_t>(restarts), settings.max_evals / restarts);
    budgets[0] += settings.max_evals % restarts;

    std::vector<detail::RestartResult> results(static_cast<std::size_t>(restarts));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int r = next++; r < restarts; r = next++) {
            results[static_cast<std::size_t>(r)] = problem.run_restart(r, budgets[static_cast<std::size_t>(r)]);
        }
    };
    const int threads = std::min(settings.threads, restarts);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    SearchReport report;
    report.settings = settings;
    long offset = 0;
    double running = -std::numeric_limits<double>::infinity();
    std::optional<std::size_t> best_restart;
    for (std::size_t r = 0; r < results.size(); ++r) {
        const auto& res = results[r];
        report.evals += res.evals;
        report.filter_prunes += res.prunes;
        report.geometry_failures += res.failures;
        report.bound_violations += res.bound_violations;
        report.max_evaluated_ratio = std::max(report.max_evaluated_ratio, res.max_ratio);
        report.restart_best.push_back(res.best_ratio);
        for (const auto& [idx, value] : res.history) {
            if (value > running) {
                running = value;
                report.history.emplace_back(offset + idx, value);
                best_restart = r;
            }
        }
        offset += res.evals;
    }
    if (!best_restart) throw GeometryError("search: every evaluation failed");
    report.best = problem.configuration(results[*best_restart].best_params);
    report.best.label = "search best";
    report.best_ratio = ratio(report.best);
    const FilterResult filter = optimality_filter(report.best);
    report.best_passes_filter = filter.passes;
    report.filter_witness = filter.witness;
    return report;
}

}  // namespace pac
