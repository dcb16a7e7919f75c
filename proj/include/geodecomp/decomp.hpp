#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "geodecomp/fields.hpp"
#include "geodecomp/geometry.hpp"
#include "geodecomp/quadrature.hpp"

namespace geodecomp {

/// Decomposition data of a black-box field at one point.
struct PointDecomposition {
    Vec point;
    double H = 0.0;
    double H_star = 0.0;
    Vec grad_H;        // gradient of the right potential at `point`
    Vec grad_H_star;   // gradient of the left potential at `point`
    Vec u;             // X(x) - B grad H,  b(x, u) = 0
    Vec u_star;        // X(x) - B* grad H*,  b(u*, x) = 0
    double residual_right = 0.0;  // |b(x, u(x))|
    double residual_left = 0.0;   // |b(u*(x), x)|
};

namespace detail {

inline void check_point(const GeometricStructure<double>& s, const NumericVectorField& x, const Vec& p) {
    if (s.dimension() != x.dimension) throw DimensionMismatch("structure/field dimension mismatch");
    if (static_cast<int>(p.size()) != s.dimension()) throw DimensionMismatch("point length mismatch");
}

inline bool is_origin(const Vec& p) {
    for (double v : p)
        if (v != 0.0) return false;
    return true;
}

}  // namespace detail

/// Potential value by quadrature of the smooth form of the ray integral:
/// H(x) = Int_0^1 b(x, X(t x)) dt (right) or Int_0^1 b(X(t x), x) dt (left).
inline double eval_H(const GeometricStructure<double>& s, const NumericVectorField& x, const Vec& p,
                     const QuadratureConfig& cfg = {}, Side side = Side::Right) {
    detail::check_point(s, x, p);
    if (detail::is_origin(p)) return 0.0;
    const int n = s.dimension();
    // gw = G^T x (right) or G x (left), so the integrand is gw . X(t x).
    Vec gw(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            gw[j] += (side == Side::Right ? s.gram()(i, j) : s.gram()(j, i)) * p[i];
    auto integrand = [&](double t) {
        Vec scaled(n);
        for (int i = 0; i < n; ++i) scaled[i] = t * p[i];
        return dot(gw, x(scaled));
    };
    return integrate_01(integrand, cfg);
}

/// Gradient of the potential by quadrature of the differentiated integrand
/// (needs the Jacobian; falls back to finite differences):
///   right: grad H(x)  = Int_0^1 [ G X(tx)   + t DX(tx)^T G^T x ] dt
///   left:  grad H*(x) = Int_0^1 [ G^T X(tx) + t DX(tx)^T G  x ] dt
inline Vec eval_grad_H(const GeometricStructure<double>& s, const NumericVectorField& x, const Vec& p,
                       const QuadratureConfig& cfg = {}, Side side = Side::Right) {
    detail::check_point(s, x, p);
    const int n = s.dimension();
    const Mat& g = s.gram();
    const Mat gt = g.transposed();
    const Mat& left_factor = side == Side::Right ? g : gt;    // multiplies X(tx)
    const Vec w = (side == Side::Right ? gt : g) * p;         // DX^T picks this up
    auto integrand = [&](double t) {
        Vec scaled(n);
        for (int i = 0; i < n; ++i) scaled[i] = t * p[i];
        Vec v = left_factor * x(scaled);
        const Mat jt = x.jacobian_or_fd(scaled).transposed();
        const Vec jw = jt * w;
        for (int i = 0; i < n; ++i) v[i] += t * jw[i];
        return v;
    };
    return integrate_01(integrand, n, cfg);
}

/// Full pointwise decomposition: both potentials, their gradients, the
/// orthogonal parts u = X - B grad H and u* = X - B* grad H*, and the
/// orthogonality residuals |b(x,u)|, |b(u*,x)|.
inline PointDecomposition decompose_at(const GeometricStructure<double>& s, const NumericVectorField& x,
                                       const Vec& p, const QuadratureConfig& cfg = {}) {
    detail::check_point(s, x, p);
    const int n = s.dimension();
    PointDecomposition d;
    d.point = p;
    const Vec xp = x(p);
    if (detail::is_origin(p)) {
        // The ray degenerates: H = H* = 0, grad H = G X(0), grad H* = G^T X(0),
        // and the orthogonal parts vanish since B grad H(0) = X(0).
        d.grad_H = s.gram() * xp;
        d.grad_H_star = s.gram().transposed() * xp;
        d.u = Vec(n, 0.0);
        d.u_star = Vec(n, 0.0);
        return d;
    }
    d.H = eval_H(s, x, p, cfg, Side::Right);
    d.H_star = eval_H(s, x, p, cfg, Side::Left);
    d.grad_H = eval_grad_H(s, x, p, cfg, Side::Right);
    d.grad_H_star = eval_grad_H(s, x, p, cfg, Side::Left);
    const Vec bg = s.b_matrix() * d.grad_H;
    const Vec bsg = s.b_star() * d.grad_H_star;
    d.u.resize(n);
    d.u_star.resize(n);
    for (int i = 0; i < n; ++i) {
        d.u[i] = xp[i] - bg[i];
        d.u_star[i] = xp[i] - bsg[i];
    }
    d.residual_right = std::fabs(s.eval_b(p, d.u));
    d.residual_left = std::fabs(s.eval_b(d.u_star, p));
    return d;
}

/// The gradient-like part x -> B grad H(x) (right) or B* grad H*(x) (left)
/// as a field of its own.
inline NumericVectorField gradient_part(const GeometricStructure<double>& s, NumericVectorField x,
                                        const QuadratureConfig& cfg = {}, Side side = Side::Right) {
    if (s.dimension() != x.dimension) throw DimensionMismatch("structure/field dimension mismatch");
    NumericVectorField f;
    f.dimension = s.dimension();
    f.label = x.label + (side == Side::Right ? ".grad" : ".grad_left");
    const Mat m = side == Side::Right ? s.b_matrix() : s.b_star();
    f.eval = [s, x = std::move(x), cfg, side, m](const Vec& p) {
        if (detail::is_origin(p)) return x(p);
        return m * eval_grad_H(s, x, p, cfg, side);
    };
    return f;
}

/// The orthogonal (rotational) part u = X - B grad H (right) or u* (left).
inline NumericVectorField rotational_part(const GeometricStructure<double>& s, NumericVectorField x,
                                          const QuadratureConfig& cfg = {}, Side side = Side::Right) {
    if (s.dimension() != x.dimension) throw DimensionMismatch("structure/field dimension mismatch");
    NumericVectorField f;
    const int n = s.dimension();
    f.dimension = n;
    f.label = x.label + (side == Side::Right ? ".rot" : ".rot_left");
    const Mat m = side == Side::Right ? s.b_matrix() : s.b_star();
    f.eval = [s, x = std::move(x), cfg, side, m, n](const Vec& p) {
        const Vec xp = x(p);
        if (detail::is_origin(p)) return Vec(n, 0.0);
        const Vec mg = m * eval_grad_H(s, x, p, cfg, side);
        Vec u(n);
        for (int i = 0; i < n; ++i) u[i] = xp[i] - mg[i];
        return u;
    };
    return f;
}

/// B^-1 u (right) or (B*)^-1 u* (left): the sphere-preserving companion of
/// the orthogonal part (|x|^2 is its first integral).
inline NumericVectorField normalized_rotational_part(const GeometricStructure<double>& s, NumericVectorField x,
                                                     const QuadratureConfig& cfg = {}, Side side = Side::Right) {
    NumericVectorField rot = rotational_part(s, std::move(x), cfg, side);
    const Mat m = side == Side::Right ? s.gram() : s.gram().transposed();  // B^-1 = G, (B*)^-1 = G^T
    NumericVectorField f;
    f.dimension = rot.dimension;
    f.label = rot.label + ".binv";
    f.eval = [rot = std::move(rot), m](const Vec& p) { return m * rot(p); };
    return f;
}

/// The five equal expressions of the Lie derivative of F along its own
/// gradient-like fields, evaluated independently.
struct LieDerivativeIdentity {
    double lie_right;        // < B grad F, grad F >, the Lie derivative along the right field
    double lie_left;         // < B* grad F, grad F >
    double b_right;          // b(B grad F, B grad F)
    double b_left;           // b(B* grad F, B* grad F)
    double quadratic_form;   // (grad F)^T B grad F
    double max_residual;     // max pairwise deviation
};

inline LieDerivativeIdentity lie_derivative_identity_check(const GeometricStructure<double>& s,
                                                           const ScalarField& f, const Vec& p) {
    const Vec g = f.gradient(p);
    if (static_cast<int>(g.size()) != s.dimension()) throw DimensionMismatch("gradient length mismatch");
    const Vec right = s.b_matrix() * g;
    const Vec left = s.b_star() * g;
    LieDerivativeIdentity r{};
    r.lie_right = dot(right, g);
    r.lie_left = dot(left, g);
    r.b_right = s.eval_b(right, right);
    r.b_left = s.eval_b(left, left);
    r.quadratic_form = dot(g, s.b_matrix() * g);
    const double vals[5] = {r.lie_right, r.lie_left, r.b_right, r.b_left, r.quadratic_form};
    r.max_residual = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) r.max_residual = std::max(r.max_residual, std::fabs(vals[i] - vals[j]));
    return r;
}

}  // namespace geodecomp
