#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "geodecomp/errors.hpp"
#include "geodecomp/fields.hpp"

namespace geodecomp {

struct QuadratureConfig {
    enum class Scheme { GaussLegendre, AdaptiveSimpson };
    Scheme scheme = Scheme::GaussLegendre;
    int nodes = 32;      // Gauss-Legendre point count (>= 2)
    double tol = 1e-12;  // adaptive Simpson absolute tolerance (> 0)

    static QuadratureConfig gauss(int k) {
        QuadratureConfig q;
        q.scheme = Scheme::GaussLegendre;
        q.nodes = k;
        return q;
    }
    static QuadratureConfig adaptive(double tol) {
        QuadratureConfig q;
        q.scheme = Scheme::AdaptiveSimpson;
        q.tol = tol;
        return q;
    }

    void validate() const {
        if (scheme == Scheme::GaussLegendre && nodes < 2) throw Error("Gauss-Legendre needs at least 2 nodes");
        if (scheme == Scheme::AdaptiveSimpson && !(tol > 0)) throw Error("adaptive tolerance must be positive");
    }
};

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Nodes/weights of the k-point Gauss-Legendre rule, by Newton iteration on
/// the Legendre recurrence. Cached per k; exact for polynomial degree 2k-1.
inline const GaussLegendreRule& gauss_legendre_rule(int k) {
    if (k < 2) throw Error("Gauss-Legendre needs at least 2 nodes");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;

    GaussLegendreRule rule;
    rule.nodes.resize(k);
    rule.weights.resize(k);
    const int half = (k + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[k - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[k - 1 - i] = w;
    }
    auto [pos, _] = cache.emplace(k, std::move(rule));
    return pos->second;
}

namespace detail {

inline void check_finite(const Vec& v) {
    if (!all_finite(v)) throw NonFiniteValue("integrand evaluated to NaN/Inf");
}

constexpr int kMaxSimpsonDepth = 48;

// One level of adaptive Simpson on a vector integrand; errors compared in
// the max norm, with the classic |S2 - S1| / 15 estimate.
inline Vec simpson_recurse(const std::function<Vec(double)>& f, double a, double b, const Vec& fa, const Vec& fm,
                           const Vec& fb, const Vec& whole, double tol, int depth) {
    if (depth > kMaxSimpsonDepth) throw QuadratureNonconvergence("adaptive Simpson exceeded depth limit");
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    Vec flm = f(lm), frm = f(rm);
    check_finite(flm);
    check_finite(frm);
    const size_t n = fa.size();
    Vec left(n), right(n);
    const double h6 = (b - a) / 12.0;
    for (size_t i = 0; i < n; ++i) {
        left[i] = h6 * (fa[i] + 4.0 * flm[i] + fm[i]);
        right[i] = h6 * (fm[i] + 4.0 * frm[i] + fb[i]);
    }
    double err = 0.0;
    for (size_t i = 0; i < n; ++i) err = std::max(err, std::fabs(left[i] + right[i] - whole[i]));
    if (err <= 15.0 * tol) {
        Vec r(n);
        for (size_t i = 0; i < n; ++i) r[i] = left[i] + right[i] + (left[i] + right[i] - whole[i]) / 15.0;
        return r;
    }
    Vec rl = simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
    Vec rr = simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    for (size_t i = 0; i < n; ++i) rl[i] += rr[i];
    return rl;
}

}  // namespace detail

/// Integral over [0, 1] of a vector-valued integrand.
inline Vec integrate_01(const std::function<Vec(double)>& f, int size, const QuadratureConfig& cfg) {
    cfg.validate();
    if (cfg.scheme == QuadratureConfig::Scheme::GaussLegendre) {
        const auto& rule = gauss_legendre_rule(cfg.nodes);
        Vec acc(size, 0.0);
        for (int i = 0; i < cfg.nodes; ++i) {
            const double t = 0.5 * (rule.nodes[i] + 1.0);
            Vec v = f(t);
            detail::check_finite(v);
            const double w = 0.5 * rule.weights[i];
            for (int j = 0; j < size; ++j) acc[j] += w * v[j];
        }
        return acc;
    }
    Vec fa = f(0.0), fm = f(0.5), fb = f(1.0);
    detail::check_finite(fa);
    detail::check_finite(fm);
    detail::check_finite(fb);
    Vec whole(size);
    for (int i = 0; i < size; ++i) whole[i] = (fa[i] + 4.0 * fm[i] + fb[i]) / 6.0;
    return detail::simpson_recurse(f, 0.0, 1.0, fa, fm, fb, whole, cfg.tol, 0);
}

/// Integral over [0, 1] of a scalar integrand.
inline double integrate_01(const std::function<double(double)>& f, const QuadratureConfig& cfg) {
    auto wrapped = [&f](double t) -> Vec { return {f(t)}; };
    return integrate_01(wrapped, 1, cfg)[0];
}

}  // namespace geodecomp
