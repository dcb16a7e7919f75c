#pragma once

#include <string>
#include <utility>
#include <vector>

#include "geodecomp/fields.hpp"
#include "geodecomp/geometry.hpp"
#include "geodecomp/poly.hpp"

namespace geodecomp {

/// A polynomial vector field on R^n with exact rational coefficients.
struct PolyVectorField {
    int dimension = 0;
    std::vector<Poly> components;

    PolyVectorField() = default;
    explicit PolyVectorField(int n) : dimension(n), components(n, Poly(n)) {}
    PolyVectorField(int n, std::vector<Poly> comps) : dimension(n), components(std::move(comps)) {
        if (static_cast<int>(components.size()) != n) throw DimensionMismatch("component count mismatch");
        for (const auto& p : components)
            if (p.dimension() != n) throw DimensionMismatch("component variable count mismatch");
    }

    bool is_zero() const {
        for (const auto& p : components)
            if (!p.is_zero()) return false;
        return true;
    }

    /// Entry (i, j) is d X_i / d x_j.
    std::vector<std::vector<Poly>> jacobian() const {
        std::vector<std::vector<Poly>> j(dimension);
        for (int i = 0; i < dimension; ++i) {
            j[i].reserve(dimension);
            for (int k = 0; k < dimension; ++k) j[i].push_back(components[i].partial(k));
        }
        return j;
    }

    std::vector<Rational> eval(const std::vector<Rational>& x) const {
        std::vector<Rational> r;
        r.reserve(dimension);
        for (const auto& p : components) r.push_back(p.eval(x));
        return r;
    }

    Vec eval(const Vec& x) const {
        Vec r;
        r.reserve(dimension);
        for (const auto& p : components) r.push_back(p.eval(x));
        return r;
    }

    friend PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
        if (a.dimension != b.dimension) throw DimensionMismatch("field dimension mismatch");
        PolyVectorField r(a.dimension);
        for (int i = 0; i < a.dimension; ++i) r.components[i] = a.components[i] + b.components[i];
        return r;
    }

    friend PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b) {
        if (a.dimension != b.dimension) throw DimensionMismatch("field dimension mismatch");
        PolyVectorField r(a.dimension);
        for (int i = 0; i < a.dimension; ++i) r.components[i] = a.components[i] - b.components[i];
        return r;
    }

    bool operator==(const PolyVectorField& o) const {
        return dimension == o.dimension && components == o.components;
    }
    bool operator!=(const PolyVectorField& o) const { return !(*this == o); }
};

/// M v for a rational matrix and a polynomial vector.
inline std::vector<Poly> apply_matrix(const Matrix<Rational>& m, const std::vector<Poly>& v) {
    if (m.cols() != static_cast<int>(v.size())) throw DimensionMismatch("matrix-polynomial product mismatch");
    const int n = v.empty() ? 0 : v[0].dimension();
    std::vector<Poly> r(m.rows(), Poly(n));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (m(i, j) == 0) continue;
            r[i] += v[j].scaled(m(i, j));
        }
    return r;
}

/// sigma(x) = b(x, X(x)) = x^T G X(x), as an exact polynomial.
inline Poly sigma_right(const GeometricStructure<Rational>& s, const PolyVectorField& x) {
    if (s.dimension() != x.dimension) throw DimensionMismatch("structure/field dimension mismatch");
    const int n = s.dimension();
    std::vector<Poly> gx = apply_matrix(s.gram(), x.components);
    Poly r(n);
    for (int i = 0; i < n; ++i) r += Poly::variable(n, i) * gx[i];
    return r;
}

/// sigma*(x) = b(X(x), x) = X(x)^T G x.
inline Poly sigma_left(const GeometricStructure<Rational>& s, const PolyVectorField& x) {
    if (s.dimension() != x.dimension) throw DimensionMismatch("structure/field dimension mismatch");
    const int n = s.dimension();
    std::vector<Poly> vars;
    vars.reserve(n);
    for (int i = 0; i < n; ++i) vars.push_back(Poly::variable(n, i));
    std::vector<Poly> gx = apply_matrix(s.gram(), vars);
    Poly r(n);
    for (int i = 0; i < n; ++i) r += x.components[i] * gx[i];
    return r;
}

/// The gradient-like field of a potential: B grad F (right) or B* grad F (left).
inline PolyVectorField poly_gradient_like(const GeometricStructure<Rational>& s, const Poly& f, Side side) {
    if (s.dimension() != f.dimension()) throw DimensionMismatch("structure/potential dimension mismatch");
    const Matrix<Rational>& m = side == Side::Right ? s.b_matrix() : s.b_star();
    return PolyVectorField(s.dimension(), apply_matrix(m, f.gradient()));
}

struct ExactDecomposition {
    Poly potential;                // H (right) or H* (left); vanishes at 0
    PolyVectorField orthogonal;    // u (right) or u* (left)
};

/// The unique global splitting X = grad-like(potential) + orthogonal with
/// potential(0) = 0 and b(x, u(x)) = 0 (right) resp. b(u*(x), x) = 0 (left),
/// computed exactly: potential is the ray integral of sigma (resp. sigma*).
inline ExactDecomposition decompose_exact(const GeometricStructure<Rational>& s, const PolyVectorField& x,
                                          Side side = Side::Right) {
    const Poly sigma = side == Side::Right ? sigma_right(s, x) : sigma_left(s, x);
    Poly h = ray_integral(sigma);
    PolyVectorField u = x - poly_gradient_like(s, h, side);
    return {std::move(h), std::move(u)};
}

/// The exact discrepancy H* - H = 2 Int_0^1 A_b(X(t x), x) dt, where A_b is
/// the skew part of b. Zero when b is symmetric; -2H when b is skew.
inline Poly hstar_minus_h(const GeometricStructure<Rational>& s, const PolyVectorField& x) {
    if (s.dimension() != x.dimension) throw DimensionMismatch("structure/field dimension mismatch");
    // A_b(X, x) = 1/2 (sigma*(x) - sigma(x)) pointwise, so reuse the sigmas.
    Poly pairing = (sigma_left(s, x) - sigma_right(s, x)).scaled(Rational(1, 2));
    return ray_integral(pairing).scaled(Rational(2));
}

// ---- the named polynomial systems, exact ----

inline PolyVectorField lotka_volterra_poly(const Rational& a, const Rational& b, const Rational& g,
                                           const Rational& d) {
    const int n = 2;
    const Poly x = Poly::variable(n, 0), y = Poly::variable(n, 1);
    return PolyVectorField(n, {x.scaled(a) - (x * y).scaled(b), (x * y).scaled(d) - y.scaled(g)});
}

inline PolyVectorField rikitake_poly(const Rational& mu, const Rational& a) {
    const int n = 3;
    const Poly x = Poly::variable(n, 0), y = Poly::variable(n, 1), z = Poly::variable(n, 2);
    const Poly one = Poly::constant(n, 1);
    return PolyVectorField(n, {
        x.scaled(-mu) + y * z,
        y.scaled(-mu) + x * z - x.scaled(a),
        one - x * y,
    });
}

inline PolyVectorField linear_poly(const Matrix<Rational>& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("linear field needs a square matrix");
    const int n = a.rows();
    std::vector<Poly> vars;
    vars.reserve(n);
    for (int i = 0; i < n; ++i) vars.push_back(Poly::variable(n, i));
    return PolyVectorField(n, apply_matrix(a, vars));
}

/// Double-precision view of an exact field; the Jacobian is the exact one
/// evaluated in double.
inline NumericVectorField to_numeric(const PolyVectorField& x, std::string label = "poly") {
    NumericVectorField f;
    f.dimension = x.dimension;
    f.label = std::move(label);
    f.eval = [x](const Vec& p) { return x.eval(p); };
    auto jac = x.jacobian();
    const int n = x.dimension;
    f.jacobian = [jac, n](const Vec& p) {
        Mat j(n, n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) j(i, k) = jac[i][k].eval(p);
        return j;
    };
    return f;
}

/// Double-precision structure with the same gram matrix as an exact one.
inline GeometricStructure<double> to_numeric(const GeometricStructure<Rational>& s) {
    const int n = s.dimension();
    Matrix<double> g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = to_double(s.gram()(i, j));
    return GeometricStructure<double>::custom(std::move(g));
}

}  // namespace geodecomp
