#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "geodecomp/errors.hpp"
#include "geodecomp/fields.hpp"

namespace geodecomp {

struct IntegratorConfig {
    enum class Scheme { RK4, DP54 };
    Scheme scheme = Scheme::DP54;
    double horizon = 1.0;       // integrate over [0, T]
    double step = 1e-3;         // RK4 fixed step
    double rtol = 1e-10;        // DP54 relative tolerance
    double atol = 1e-12;        // DP54 absolute tolerance
    long max_steps = 2'000'000;
    double blowup_norm = 1e8;   // treat the field as effectively incomplete past this

    static IntegratorConfig rk4(double h, double T) {
        IntegratorConfig c;
        c.scheme = Scheme::RK4;
        c.step = h;
        c.horizon = T;
        return c;
    }
    static IntegratorConfig dp54(double rtol, double atol, double T) {
        IntegratorConfig c;
        c.scheme = Scheme::DP54;
        c.rtol = rtol;
        c.atol = atol;
        c.horizon = T;
        return c;
    }

    void validate() const {
        if (!(horizon > 0)) throw Error("integration horizon must be positive");
        if (scheme == Scheme::RK4 && !(step > 0)) throw Error("RK4 step must be positive");
        if (scheme == Scheme::DP54 && (!(rtol > 0) || !(atol > 0))) throw Error("DP54 tolerances must be positive");
        if (max_steps <= 0) throw Error("max_steps must be positive");
    }
};

struct StepStats {
    long accepted = 0;
    long rejected = 0;
    double min_step = std::numeric_limits<double>::infinity();
    double max_step = 0.0;
};

/// Trajectory sampled at accepted steps; times strictly increasing, t0 = 0.
struct FlowTrace {
    std::vector<double> times;
    std::vector<Vec> states;
    StepStats stats;
};

namespace detail {

inline void note_step(StepStats& st, double h) {
    ++st.accepted;
    st.min_step = std::min(st.min_step, h);
    st.max_step = std::max(st.max_step, h);
}

inline void check_state(const Vec& y, double bound) {
    if (!all_finite(y) || norm_inf(y) > bound)
        throw BlowUp("trajectory norm exceeded the blow-up bound");
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace detail

/// Integrates dx/dt = X(x), x(0) = x0, over [0, T]. Throws BlowUp when the
/// state leaves the configured norm bound and MaxStepsExceeded when the step
/// budget runs out.
inline FlowTrace integrate(const NumericVectorField& x, const Vec& x0, const IntegratorConfig& cfg) {
    cfg.validate();
    if (static_cast<int>(x0.size()) != x.dimension) throw DimensionMismatch("initial state length mismatch");
    const int n = x.dimension;
    FlowTrace tr;
    tr.times.push_back(0.0);
    tr.states.push_back(x0);
    detail::check_state(x0, cfg.blowup_norm);

    if (cfg.scheme == IntegratorConfig::Scheme::RK4) {
        const long steps = std::max<long>(1, static_cast<long>(std::ceil(cfg.horizon / cfg.step)));
        if (steps > cfg.max_steps) throw MaxStepsExceeded("RK4 step count exceeds max_steps");
        const double h = cfg.horizon / static_cast<double>(steps);
        Vec y = x0, k1, k2, k3, k4, tmp(n);
        double t = 0.0;
        for (long s = 0; s < steps; ++s) {
            k1 = x(y);
            for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
            k2 = x(tmp);
            for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
            k3 = x(tmp);
            for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
            k4 = x(tmp);
            for (int i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            t = (s + 1 == steps) ? cfg.horizon : t + h;
            detail::check_state(y, cfg.blowup_norm);
            detail::note_step(tr.stats, h);
            tr.times.push_back(t);
            tr.states.push_back(y);
        }
        return tr;
    }

    // DP54 with FSAL and a standard PI-free step controller.
    Vec y = x0;
    Vec k1 = x(y), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    double t = 0.0;
    double h = cfg.horizon / 100.0;  // initial guess; the controller adapts fast
    const double hmin = cfg.horizon * 1e-14;
    while (t < cfg.horizon) {
        if (tr.stats.accepted + tr.stats.rejected >= cfg.max_steps)
            throw MaxStepsExceeded("DP54 exceeded max_steps");
        h = std::min(h, cfg.horizon - t);
        using namespace detail;
        for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a21 * k1[i]);
        k2 = x(ytmp);
        for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = x(ytmp);
        for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = x(ytmp);
        for (int i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = x(ytmp);
        for (int i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = x(ytmp);
        for (int i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = x(ynew);

        double err = 0.0;
        bool finite = all_finite(ynew);
        if (finite) {
            for (int i = 0; i < n; ++i) {
                const double ei =
                    h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double sc = cfg.atol + cfg.rtol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
                err += (ei / sc) * (ei / sc);
            }
            err = std::sqrt(err / n);
        } else {
            err = std::numeric_limits<double>::infinity();
        }

        if (err <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;  // FSAL
            detail::check_state(y, cfg.blowup_norm);
            detail::note_step(tr.stats, h);
            tr.times.push_back(std::min(t, cfg.horizon));
            tr.states.push_back(y);
            const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= factor;
        } else {
            ++tr.stats.rejected;
            const double factor = std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0) : 0.1;
            h *= factor;
            if (h < hmin) throw Error("DP54 step size underflow");
        }
    }
    return tr;
}

/// Maximum absolute drift of the observable F over the trajectory of X
/// started at x0 (F evaluated at accepted steps).
inline double first_integral_drift(const NumericVectorField& x, const ScalarField& f, const Vec& x0,
                                   const IntegratorConfig& cfg) {
    const FlowTrace tr = integrate(x, x0, cfg);
    const double f0 = f.value(x0);
    double drift = 0.0;
    for (const Vec& state : tr.states) drift = std::max(drift, std::fabs(f.value(state) - f0));
    return drift;
}

/// Lie derivative of F along X at a point: <X(x), grad F(x)>.
inline double lie_derivative(const NumericVectorField& x, const ScalarField& f, const Vec& p) {
    return dot(x(p), f.gradient(p));
}

}  // namespace geodecomp
