#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "geodecomp/decomp.hpp"
#include "geodecomp/fields.hpp"
#include "geodecomp/geometry.hpp"
#include "geodecomp/polyfield.hpp"

namespace geodecomp {

/// Which solvability condition to test. The unified variants require a
/// symmetric resp. skew-symmetric structure and are the classical
/// gradient / Hamiltonian characterizations.
enum class SolvabilitySide { Left, Right, SymmetricUnified, SkewUnified };

inline const char* side_name(SolvabilitySide s) {
    switch (s) {
        case SolvabilitySide::Left: return "left";
        case SolvabilitySide::Right: return "right";
        case SolvabilitySide::SymmetricUnified: return "symmetric_unified";
        case SolvabilitySide::SkewUnified: return "skew_unified";
    }
    return "?";
}

struct SolvabilityReport {
    SolvabilitySide side = SolvabilitySide::Right;
    bool verdict = false;
    double max_residual = 0.0;
    bool exact_mode = false;       // polynomial-identity mode (global, exact)
    std::vector<Vec> sample_points;
    Vec worst_point;               // point realizing max_residual (numeric mode)
    double threshold = 0.0;
};

namespace detail {

// Residual matrix of the pointwise solvability identity:
//   left:  J^T G   - G^T J          (DX left (b,B)-symmetric)
//   right: J^T G^T - G J            (DX right (b,B)-symmetric)
//   skew:  J^T G   + G J            (DX in the skew-adjoint algebra)
// For symmetric G the left and right tests coincide.
template <class M, class G>
M solvability_residual(const M& jt, const G& g, const G& gt, SolvabilitySide side) {
    switch (side) {
        case SolvabilitySide::Left: return jt * g - gt * jt.transposed();
        case SolvabilitySide::Right: return jt * gt - g * jt.transposed();
        case SolvabilitySide::SymmetricUnified: return jt * g - g * jt.transposed();
        case SolvabilitySide::SkewUnified: return jt * g + g * jt.transposed();
    }
    throw Error("unreachable");
}

}  // namespace detail

/// Deterministic quasi-random sample points in [-1, 1]^n (Halton sequence,
/// offset by `seed`).
inline std::vector<Vec> solvability_samples(int n, int count, uint64_t seed = 0) {
    static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    if (n > 10) throw DimensionMismatch("sample generator supports n <= 10");
    std::vector<Vec> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        Vec p(n);
        for (int d = 0; d < n; ++d) {
            const int base = primes[d];
            double value = 0.0, f = 1.0 / base;
            uint64_t i = seed + 1 + static_cast<uint64_t>(k);
            while (i > 0) {
                value += f * static_cast<double>(i % base);
                i /= base;
                f /= base;
            }
            p[d] = 2.0 * value - 1.0;
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

inline void require_side_compatible(bool symmetric, bool skew, SolvabilitySide side) {
    if (side == SolvabilitySide::SymmetricUnified && !symmetric)
        throw Error("symmetric_unified solvability test requires a symmetric structure");
    if (side == SolvabilitySide::SkewUnified && !skew)
        throw Error("skew_unified solvability test requires a skew-symmetric structure");
}

/// Numeric (sample-based) solvability check: is X a gradient-like field for
/// the given side? A failure certificate is exact (one bad point); a success
/// verdict is statistical over the samples.
inline SolvabilityReport check_gradient_like(const GeometricStructure<double>& s, const NumericVectorField& x,
                                             SolvabilitySide side, std::vector<Vec> samples,
                                             double threshold = 1e-8) {
    if (s.dimension() != x.dimension) throw DimensionMismatch("structure/field dimension mismatch");
    if (samples.empty()) throw Error("numeric solvability check needs at least one sample point");
    require_side_compatible(s.is_symmetric_form(), s.is_skew_form(), side);
    SolvabilityReport r;
    r.side = side;
    r.threshold = threshold;
    const Mat& g = s.gram();
    const Mat gt = g.transposed();
    for (const Vec& p : samples) {
        const Mat jt = x.jacobian_or_fd(p).transposed();
        const double res = max_abs(detail::solvability_residual(jt, g, gt, side));
        if (res >= r.max_residual) {
            r.max_residual = res;
            r.worst_point = p;
        }
    }
    r.sample_points = std::move(samples);
    r.verdict = r.max_residual <= threshold;
    return r;
}

inline SolvabilityReport check_gradient_like(const GeometricStructure<double>& s, const NumericVectorField& x,
                                             SolvabilitySide side, int sample_count = 64, uint64_t seed = 0,
                                             double threshold = 1e-8) {
    return check_gradient_like(s, x, side, solvability_samples(s.dimension(), sample_count, seed), threshold);
}

namespace detail {

// Minimal polynomial-matrix algebra for the exact solvability identity.
struct PolyMatrix {
    int n = 0;
    std::vector<std::vector<Poly>> m;

    static PolyMatrix from_jacobian_transposed(const PolyVectorField& x) {
        PolyMatrix r;
        r.n = x.dimension;
        r.m.assign(r.n, std::vector<Poly>(r.n, Poly(r.n)));
        for (int i = 0; i < r.n; ++i)
            for (int j = 0; j < r.n; ++j) r.m[i][j] = x.components[j].partial(i);
        return r;
    }

    PolyMatrix transposed() const {
        PolyMatrix r;
        r.n = n;
        r.m.assign(n, std::vector<Poly>(n, Poly(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    // this * scalar-matrix
    PolyMatrix operator*(const Matrix<Rational>& g) const {
        PolyMatrix r;
        r.n = n;
        r.m.assign(n, std::vector<Poly>(n, Poly(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (g(k, j) != 0) r.m[i][j] += m[i][k].scaled(g(k, j));
        return r;
    }

    PolyMatrix operator-(const PolyMatrix& o) const {
        PolyMatrix r;
        r.n = n;
        r.m.assign(n, std::vector<Poly>(n, Poly(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
        return r;
    }

    PolyMatrix operator+(const PolyMatrix& o) const {
        PolyMatrix r;
        r.n = n;
        r.m.assign(n, std::vector<Poly>(n, Poly(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
        return r;
    }

    bool is_zero() const {
        for (const auto& row : m)
            for (const auto& p : row)
                if (!p.is_zero()) return false;
        return true;
    }

    double max_abs_coefficient() const {
        Rational best(0);
        for (const auto& row : m)
            for (const auto& p : row)
                for (const auto& [e, c] : p.terms()) {
                    Rational a = abs_value(c);
                    if (a > best) best = a;
                }
        return to_double(best);
    }
};

inline PolyMatrix scalar_times(const Matrix<Rational>& g, const PolyMatrix& p) {
    PolyMatrix r;
    r.n = p.n;
    r.m.assign(r.n, std::vector<Poly>(r.n, Poly(r.n)));
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j)
            for (int k = 0; k < r.n; ++k)
                if (g(i, k) != 0) r.m[i][j] += p.m[k][j].scaled(g(i, k));
    return r;
}

}  // namespace detail

/// Exact global solvability check for polynomial fields: the identity is
/// decided as a polynomial-matrix identity, so the verdict holds on all of
/// R^n and the residual is exactly zero on success.
inline SolvabilityReport check_gradient_like(const GeometricStructure<Rational>& s, const PolyVectorField& x,
                                             SolvabilitySide side) {
    if (s.dimension() != x.dimension) throw DimensionMismatch("structure/field dimension mismatch");
    require_side_compatible(s.is_symmetric_form(), s.is_skew_form(), side);
    const auto jt = detail::PolyMatrix::from_jacobian_transposed(x);
    const auto j = jt.transposed();
    const Matrix<Rational>& g = s.gram();
    const Matrix<Rational> gt = g.transposed();
    detail::PolyMatrix residual;
    switch (side) {
        case SolvabilitySide::Left: residual = jt * g - detail::scalar_times(gt, j); break;
        case SolvabilitySide::Right: residual = jt * gt - detail::scalar_times(g, j); break;
        case SolvabilitySide::SymmetricUnified: residual = jt * g - detail::scalar_times(g, j); break;
        case SolvabilitySide::SkewUnified: residual = jt * g + detail::scalar_times(g, j); break;
    }
    SolvabilityReport r;
    r.side = side;
    r.exact_mode = true;
    r.threshold = 0.0;
    r.verdict = residual.is_zero();
    r.max_residual = r.verdict ? 0.0 : residual.max_abs_coefficient();
    return r;
}

/// Potential reconstruction per the global Poincare lemma:
///   left:  H(x) = Int_0^1 b(X(tx), x) dt
///   right: H(x) = Int_0^1 b(x, X(tx)) dt
/// normalized by H(0) = 0. When X is not gradient-like this still evaluates
/// and returns the corresponding decomposition potential.
inline double reconstruct_potential(const GeometricStructure<double>& s, const NumericVectorField& x,
                                    Side side, const Vec& p, const QuadratureConfig& cfg = {}) {
    return eval_H(s, x, p, cfg, side);
}

/// Exact polynomial potential reconstruction (the ray integral of the
/// appropriate pairing).
inline Poly reconstruct_potential(const GeometricStructure<Rational>& s, const PolyVectorField& x, Side side) {
    return ray_integral(side == Side::Right ? sigma_right(s, x) : sigma_left(s, x));
}

}  // namespace geodecomp
