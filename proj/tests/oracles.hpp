#pragma once

// Test-only reference computations. Nothing here calls into the library:
// these are the brute-force answers the library is checked against.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Gaussian elimination with partial pivoting. nullopt when singular.
inline std::optional<Vec> solve_square(Mat a, Vec b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < 1e-11) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

// a . x (sense) b, sense -1 for <=, 0 for =, +1 for >=.
struct Row {
    Vec a;
    int sense = -1;
    double b = 0.0;
};

inline bool satisfies(const Row& r, const Vec& x, double tol) {
    const double lhs = dot(r.a, x);
    if (r.sense < 0) return lhs <= r.b + tol;
    if (r.sense > 0) return lhs >= r.b - tol;
    return std::fabs(lhs - r.b) <= tol;
}

struct VertexResult {
    bool feasible = false;
    double best = -std::numeric_limits<double>::infinity();
    Vec argbest;
};

// Maximizes c . x over {x >= 0, rows} by visiting every basic point: each
// choice of n tight constraints among rows and the bounds x_j = 0. A
// non-empty region in the non-negative orthant always has such a vertex, so
// the feasibility verdict is exact; the optimum is exact when bounded.
inline VertexResult vertex_lp(const Vec& c, const std::vector<Row>& rows, std::size_t n, double tol = 1e-9) {
    std::vector<Row> all = rows;
    for (std::size_t j = 0; j < n; ++j) {
        Row bound;
        bound.a.assign(n, 0.0);
        bound.a[j] = 1.0;
        bound.sense = 1;
        all.push_back(bound);
    }
    VertexResult res;
    const std::size_t total = all.size();
    if (n == 0) {
        res.feasible = std::all_of(rows.begin(), rows.end(), [](const Row& r) { return satisfies(r, {}, 1e-9); });
        if (res.feasible) res.best = 0.0;
        return res;
    }
    std::vector<std::size_t> pick(n);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t depth, std::size_t start) {
        if (depth == n) {
            Mat a;
            Vec b;
            for (std::size_t i : pick) {
                a.push_back(all[i].a);
                b.push_back(all[i].b);
            }
            const auto x = solve_square(a, b);
            if (!x) return;
            for (std::size_t j = 0; j < n; ++j)
                if ((*x)[j] < -tol) return;
            const double scale = 1.0 + std::max(std::fabs(*std::max_element(x->begin(), x->end())),
                                                std::fabs(*std::min_element(x->begin(), x->end())));
            for (const auto& r : rows)
                if (!satisfies(r, *x, tol * scale)) return;
            res.feasible = true;
            const double v = dot(c, *x);
            if (v > res.best) {
                res.best = v;
                res.argbest = *x;
            }
            return;
        }
        for (std::size_t i = start; i + (n - depth) <= total; ++i) {
            pick[depth] = i;
            choose(depth + 1, i + 1);
        }
    };
    choose(0, 0);
    return res;
}

// Is there lambda >= 0 with sum_i lambda_i U[i] <= target componentwise?
inline bool cone_accepts(const Mat& generators, const Vec& target, double tol = 1e-9) {
    if (std::all_of(target.begin(), target.end(), [&](double v) { return v >= -tol; })) return true;
    const std::size_t k = generators.size();
    std::vector<Row> rows;
    for (std::size_t s = 0; s < target.size(); ++s) {
        Row r;
        for (std::size_t i = 0; i < k; ++i) r.a.push_back(generators[i][s]);
        r.sense = -1;
        r.b = target[s];
        rows.push_back(r);
    }
    return vertex_lp(Vec(k, 0.0), rows, k, tol).feasible;
}

// Same question by scanning lambda over a box grid.
inline bool grid_lambda_accepts(const Mat& generators, const Vec& target, double lambda_max, double step,
                                double tol = 1e-9) {
    const std::size_t k = generators.size();
    const auto steps = static_cast<std::size_t>(std::llround(lambda_max / step));
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
        bool ok = true;
        for (std::size_t s = 0; s < target.size() && ok; ++s) {
            double v = 0.0;
            for (std::size_t i = 0; i < k; ++i) v += static_cast<double>(idx[i]) * step * generators[i][s];
            ok = v <= target[s] + tol;
        }
        if (ok) return true;
        std::size_t pos = 0;
        while (pos < k && ++idx[pos] > steps) idx[pos++] = 0;
        if (pos == k) return false;
    }
}

// Visits every point of {w >= 0, sum w = 1} whose coordinates are multiples
// of 1/divisions.
inline void simplex_grid(std::size_t m, std::size_t divisions, const std::function<void(const Vec&)>& visit) {
    Vec w(m, 0.0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i + 1 == m) {
            w[i] = static_cast<double>(left) / static_cast<double>(divisions);
            visit(w);
            return;
        }
        for (std::size_t q = 0; q <= left; ++q) {
            w[i] = static_cast<double>(q) / static_cast<double>(divisions);
            rec(i + 1, left - q);
        }
    };
    if (m > 0) rec(0, divisions);
}

// A Farkas certificate that target is NOT in cone(generators) + orthant:
// w >= 0 with w . U[i] >= 0 for all i and w . target < 0.
inline std::optional<Vec> farkas_separator(const Mat& generators, const Vec& target, std::size_t divisions) {
    std::optional<Vec> found;
    simplex_grid(target.size(), divisions, [&](const Vec& w) {
        if (found) return;
        if (dot(w, target) >= -1e-12) return;
        for (const auto& g : generators)
            if (dot(w, g) < 0.0) return;
        found = w;
    });
    return found;
}

// Closed-form utilities, written out independently of the library.
inline double u_linear(double x) { return x; }
inline double u_log_shift(double x) { return std::log1p(x); }
inline double u_sqrt(double x) { return std::sqrt(x); }
inline double u_power(double alpha, double x) { return (std::pow(x, 1.0 - alpha) - alpha) / (1.0 - alpha); }
inline double u_power_wealth(double alpha, double wealth, double x) {
    return u_power(alpha, wealth + x) - u_power(alpha, wealth);
}

// Discount factors, also written out independently.
inline double d_exponential(double r, double t) { return std::exp(-r * t); }
inline double d_hyperbolic(double k, double t) { return 1.0 / (1.0 + k * t); }
inline double d_quasi(double beta, double delta, double t) { return t == 0.0 ? 1.0 : beta * std::pow(delta, t); }
inline double d_genhyp(double k, double p, double t) { return std::pow(1.0 + k * t, -p); }
inline double d_scale(double base_factor, double log_base, double x) {
    return std::pow(base_factor, std::log(log_base) / std::log(x));
}

} // namespace oracle
