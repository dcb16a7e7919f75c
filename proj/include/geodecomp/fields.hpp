#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "geodecomp/errors.hpp"
#include "geodecomp/matrix.hpp"

namespace geodecomp {

using Vec = std::vector<double>;
using Mat = Matrix<double>;

/// A C^1 vector field on R^n as a black-box evaluator. `jacobian` may be
/// empty, in which case callers fall back to central finite differences.
/// Evaluators must be pure; they may be called concurrently.
struct NumericVectorField {
    int dimension = 0;
    std::function<Vec(const Vec&)> eval;
    std::function<Mat(const Vec&)> jacobian;
    std::string label;

    Vec operator()(const Vec& x) const {
        if (static_cast<int>(x.size()) != dimension) throw DimensionMismatch("field evaluation point length mismatch");
        Vec y = eval(x);
        if (static_cast<int>(y.size()) != dimension) throw DimensionMismatch("field evaluator returned wrong length");
        return y;
    }

    bool has_jacobian() const { return static_cast<bool>(jacobian); }

    Mat jacobian_or_fd(const Vec& x) const;
};

/// Central-difference Jacobian with a fixed step h; column i is
/// (X(x + h e_i) - X(x - h e_i)) / (2h).
inline Mat fd_jacobian(const NumericVectorField& f, const Vec& x, double h) {
    if (!(h > 0)) throw Error("finite-difference step must be positive");
    const int n = f.dimension;
    if (static_cast<int>(x.size()) != n) throw DimensionMismatch("finite-difference point length mismatch");
    Mat j(n, n);
    Vec xp = x, xm = x;
    for (int i = 0; i < n; ++i) {
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        const Vec fp = f(xp), fm = f(xm);
        if (!all_finite(fp) || !all_finite(fm)) throw NonFiniteValue("field evaluated to NaN/Inf in finite difference");
        for (int r = 0; r < n; ++r) j(r, i) = (fp[r] - fm[r]) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    return j;
}

/// Central differences with the default per-coordinate step 1e-6 * max(1, |x_i|).
inline Mat fd_jacobian(const NumericVectorField& f, const Vec& x) {
    const int n = f.dimension;
    if (static_cast<int>(x.size()) != n) throw DimensionMismatch("finite-difference point length mismatch");
    Mat j(n, n);
    Vec xp = x, xm = x;
    for (int i = 0; i < n; ++i) {
        const double h = 1e-6 * std::max(1.0, std::fabs(x[i]));
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        const Vec fp = f(xp), fm = f(xm);
        if (!all_finite(fp) || !all_finite(fm)) throw NonFiniteValue("field evaluated to NaN/Inf in finite difference");
        for (int r = 0; r < n; ++r) j(r, i) = (fp[r] - fm[r]) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    return j;
}

inline Mat NumericVectorField::jacobian_or_fd(const Vec& x) const {
    if (jacobian) return jacobian(x);
    return fd_jacobian(*this, x);
}

/// Lotka-Volterra predator-prey field on R^2:
/// X(x,y) = (a x - b x y, d x y - g y), with its analytic Jacobian.
inline NumericVectorField lotka_volterra(double a, double b, double g, double d) {
    NumericVectorField f;
    f.dimension = 2;
    f.label = "lotka_volterra";
    f.eval = [=](const Vec& v) -> Vec {
        const double x = v[0], y = v[1];
        return {a * x - b * x * y, d * x * y - g * y};
    };
    f.jacobian = [=](const Vec& v) -> Mat {
        const double x = v[0], y = v[1];
        Mat j(2, 2);
        j(0, 0) = a - b * y;
        j(0, 1) = -b * x;
        j(1, 0) = d * y;
        j(1, 1) = d * x - g;
        return j;
    };
    return f;
}

/// Rikitake two-disc dynamo field on R^3:
/// X(x,y,z) = (-mu x + y z, -mu y + x (z - a), 1 - x y).
inline NumericVectorField rikitake(double mu, double a) {
    NumericVectorField f;
    f.dimension = 3;
    f.label = "rikitake";
    f.eval = [=](const Vec& v) -> Vec {
        const double x = v[0], y = v[1], z = v[2];
        return {-mu * x + y * z, -mu * y + x * (z - a), 1.0 - x * y};
    };
    f.jacobian = [=](const Vec& v) -> Mat {
        const double x = v[0], y = v[1], z = v[2];
        Mat j(3, 3);
        j(0, 0) = -mu; j(0, 1) = z;   j(0, 2) = y;
        j(1, 0) = z - a; j(1, 1) = -mu; j(1, 2) = x;
        j(2, 0) = -y; j(2, 1) = -x;  j(2, 2) = 0.0;
        return j;
    };
    return f;
}

/// X(x) = A x.
inline NumericVectorField linear_field(Mat a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("linear field needs a square matrix");
    NumericVectorField f;
    f.dimension = a.rows();
    f.label = "linear";
    f.eval = [a](const Vec& x) -> Vec { return a * x; };
    f.jacobian = [a](const Vec&) -> Mat { return a; };
    return f;
}

inline NumericVectorField zero_field(int n) {
    NumericVectorField f;
    f.dimension = n;
    f.label = "zero";
    f.eval = [n](const Vec&) -> Vec { return Vec(n, 0.0); };
    f.jacobian = [n](const Vec&) -> Mat { return Mat(n, n); };
    return f;
}

/// A scalar observable together with its gradient (used for Lie derivatives
/// and first-integral drift checks).
struct ScalarField {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::string label;
};

/// N(x) = |x|^2 with gradient 2x.
inline ScalarField norm_squared(int n) {
    ScalarField f;
    f.label = "norm2";
    f.value = [](const Vec& x) {
        double s = 0;
        for (double v : x) s += v * v;
        return s;
    };
    f.gradient = [n](const Vec& x) {
        Vec g(n);
        for (int i = 0; i < n; ++i) g[i] = 2.0 * x[i];
        return g;
    };
    return f;
}

}  // namespace geodecomp
