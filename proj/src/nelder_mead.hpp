#pragma once

// Derivative-free downhill simplex minimizer used by the scheme search.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace ionstore::detail {

struct SimplexOptions {
    int max_iterations = 4000;
    double x_tol = 1e-12;
    double f_tol = 1e-16;
};

struct SimplexResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    long evaluations = 0;
};

/// Minimizes f starting from x0 with initial edge lengths `steps`. `on_iteration`
/// is called after every iteration with the current best point and value.
inline SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
    const std::vector<double>& steps, const SimplexOptions& opt,
    const std::function<void(const std::vector<double>&, double)>& on_iteration = {}) {
    const std::size_t n = x0.size();
    SimplexResult out;
    if (n == 0) {
        out.x = x0;
        out.f = f(x0);
        out.evaluations = 1;
        return out;
    }

    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += steps[i];
    for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);
    out.evaluations = static_cast<long>(n + 1);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);

    const auto along = [&](double t, std::vector<double>& dst, std::size_t worst) {
        for (std::size_t k = 0; k < n; ++k) dst[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
    };

    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];

        double size = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                size = std::max(size, std::abs(pts[i][k] - pts[best][k]));
        if (size < opt.x_tol && vals[worst] - vals[best] <= opt.f_tol) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / double(n);
        }

        along(-1.0, trial, worst);
        const double fr = f(trial);
        ++out.evaluations;
        if (fr < vals[best]) {
            along(-2.0, trial2, worst);
            const double fe = f(trial2);
            ++out.evaluations;
            if (fe < fr) {
                pts[worst] = trial2;
                vals[worst] = fe;
            } else {
                pts[worst] = trial;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = trial;
            vals[worst] = fr;
        } else {
            const bool outside = fr < vals[worst];
            along(outside ? -0.5 : 0.5, trial2, worst);
            const double fc = f(trial2);
            ++out.evaluations;
            if (fc < (outside ? fr : vals[worst])) {
                pts[worst] = trial2;
                vals[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < n; ++k)
                        pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
                    vals[i] = f(pts[i]);
                    ++out.evaluations;
                }
            }
        }
        if (on_iteration) {
            const auto b = std::min_element(vals.begin(), vals.end()) - vals.begin();
            on_iteration(pts[b], vals[b]);
        }
    }

    const auto b = std::min_element(vals.begin(), vals.end()) - vals.begin();
    out.x = pts[b];
    out.f = vals[b];
    out.iterations = it;
    return out;
}

}  // namespace ionstore::detail
