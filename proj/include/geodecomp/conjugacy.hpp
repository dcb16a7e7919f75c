#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "geodecomp/decomp.hpp"
#include "geodecomp/flow.hpp"
#include "geodecomp/geometry.hpp"
#include "geodecomp/parallel.hpp"

namespace geodecomp {

enum class AttractionVerdict { Attracting, Repelling, Inconclusive };

inline const char* attraction_name(AttractionVerdict v) {
    switch (v) {
        case AttractionVerdict::Attracting: return "attracting";
        case AttractionVerdict::Repelling: return "repelling";
        case AttractionVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// Sampled verification of the conjugacy-criterion hypotheses for one
/// (structure, field) pair. All verdicts over the box/sphere are sampled,
/// not certified: a grid plus Newton refinement for equilibria, and finitely
/// many trajectories for attraction.
struct HypothesisReport {
    bool structure_admissible = false;           // b symmetric positive definite
    std::string structure_rationale;             // why not, when rejected
    bool origin_is_equilibrium = false;          // of the gradient part
    double origin_residual = 0.0;                // |grad-like part at 0|
    bool unique_equilibrium_in_box = false;
    int equilibria_found = 0;
    std::vector<Vec> equilibria;                 // deduplicated, up to a cap
    AttractionVerdict attraction = AttractionVerdict::Inconclusive;
    int trials_attracted = 0;
    int trials_repelled = 0;
    int trials_total = 0;
    bool criterion_applicable = false;
};

struct ConjugacyConfig {
    double box_radius = 5.0;
    int grid_points = 11;   // per axis
    int trials = 32;
    double horizon = 50.0;
    double epsilon = 1e-3;  // attraction: |x(T)| < epsilon * R
    uint64_t seed = 0;
    QuadratureConfig quadrature{};
    double equilibrium_tol = 1e-8;
};

namespace detail {

inline std::string admissibility_rationale(const GeometricStructure<double>& s) {
    if (s.is_skew_form())
        return "structure is skew-symmetric, not an inner product: the gradient-like part is a "
               "Hamiltonian vector field, so the origin cannot be an asymptotically stable "
               "(globally attracting or repelling) equilibrium of it";
    if (s.is_symmetric_form())
        return "structure is symmetric but indefinite (signature (" + std::to_string(s.signature().first) +
               "," + std::to_string(s.signature().second) +
               ")), not an inner product: the flow of the gradient-like part restricted to a level "
               "set need not provide a diffeomorphism onto R^n minus the origin";
    return "structure is not symmetric, hence not an inner product; the criterion requires one";
}

// Newton refinement of a root of `field` from `start`, with FD Jacobians.
// Returns true when it lands on a point with small residual inside the box.
inline bool refine_equilibrium(const NumericVectorField& field, Vec& start, double box_radius, double tol) {
    const int n = field.dimension;
    Vec x = start;
    for (int iter = 0; iter < 25; ++iter) {
        Vec fx;
        try {
            fx = field(x);
        } catch (const Error&) {
            return false;
        }
        if (norm_inf(fx) <= tol) {
            start = x;
            return true;
        }
        Mat j;
        try {
            j = fd_jacobian(field, x);
        } catch (const Error&) {
            return false;
        }
        Vec step;
        try {
            step = solve(j, fx);
        } catch (const Error&) {
            return false;  // singular Jacobian: abandon this start
        }
        for (int i = 0; i < n; ++i) x[i] -= step[i];
        if (!all_finite(x) || norm_inf(x) > 2.0 * box_radius + 1.0) return false;
        if (norm_inf(step) < 1e-14 * std::max(1.0, norm_inf(x))) {
            Vec r = field(x);
            if (norm_inf(r) <= tol) {
                start = x;
                return true;
            }
            return false;
        }
    }
    Vec r = field(x);
    if (norm_inf(r) <= tol) {
        start = x;
        return true;
    }
    return false;
}

inline Vec random_sphere_point(int n, double radius, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec p(n);
    double norm = 0.0;
    do {
        for (int i = 0; i < n; ++i) p[i] = gauss(rng);
        norm = norm2(p);
    } while (norm < 1e-12);
    for (int i = 0; i < n; ++i) p[i] *= radius / norm;
    return p;
}

// True iff every trajectory of `field` started on the sphere of the given
// radius ends within epsilon * radius of the origin at time T.
inline bool all_trials_attracted(const NumericVectorField& field, const ConjugacyConfig& cfg, int& attracted) {
    std::vector<int> result(cfg.trials, 0);
    parallel_for(0, cfg.trials, [&](int trial) {
        const Vec start = random_sphere_point(field.dimension, cfg.box_radius,
                                              cfg.seed * 0x9e3779b97f4a7c15ULL + 0x2545F4914F6CDD1DULL + trial);
        IntegratorConfig icfg = IntegratorConfig::dp54(1e-8, 1e-10, cfg.horizon);
        icfg.max_steps = 400'000;
        try {
            const FlowTrace tr = integrate(field, start, icfg);
            if (norm2(tr.states.back()) < cfg.epsilon * cfg.box_radius) result[trial] = 1;
        } catch (const Error&) {
            // blow-up / step failure: certainly not attracted
        }
    });
    attracted = 0;
    for (int r : result) attracted += r;
    return attracted == cfg.trials;
}

}  // namespace detail

/// Decomposes X with respect to s, isolates the gradient-like part, and
/// verifies the criterion hypotheses: admissible structure, origin the unique
/// equilibrium of the gradient part in the box, and sampled global
/// attraction/repulsion.
inline HypothesisReport verify_hypotheses(const GeometricStructure<double>& s, const NumericVectorField& x,
                                          const ConjugacyConfig& cfg = {}) {
    if (s.dimension() != x.dimension) throw DimensionMismatch("structure/field dimension mismatch");
    const int n = s.dimension();
    HypothesisReport rep;
    rep.trials_total = cfg.trials;
    rep.structure_admissible = s.kind() == StructureKind::Euclidean;
    if (!rep.structure_admissible) {
        rep.structure_rationale = detail::admissibility_rationale(s);
        return rep;
    }

    const NumericVectorField grad = gradient_part(s, x, cfg.quadrature);

    const Vec at_origin = grad(Vec(n, 0.0));
    rep.origin_residual = norm_inf(at_origin);
    rep.origin_is_equilibrium = rep.origin_residual <= cfg.equilibrium_tol;

    // Grid scan with Newton refinement.
    const int k = std::max(2, cfg.grid_points);
    long total = 1;
    for (int i = 0; i < n; ++i) total *= k;
    std::vector<Vec> roots(total);
    std::vector<char> found(total, 0);
    parallel_for(0, static_cast<int>(total), [&](int idx) {
        Vec p(n);
        long rem = idx;
        for (int d = 0; d < n; ++d) {
            const int cell = static_cast<int>(rem % k);
            rem /= k;
            p[d] = -cfg.box_radius + 2.0 * cfg.box_radius * cell / (k - 1);
        }
        if (detail::refine_equilibrium(grad, p, cfg.box_radius, cfg.equilibrium_tol)) {
            bool inside = true;
            for (int d = 0; d < n; ++d)
                if (std::fabs(p[d]) > cfg.box_radius * (1.0 + 1e-9)) inside = false;
            if (inside) {
                roots[idx] = std::move(p);
                found[idx] = 1;
            }
        }
    });
    const double dedup_tol = 1e-5 * std::max(1.0, cfg.box_radius);
    std::vector<Vec> distinct;
    for (long i = 0; i < total; ++i) {
        if (!found[i]) continue;
        bool duplicate = false;
        for (const Vec& q : distinct) {
            double diff = 0.0;
            for (int d = 0; d < n; ++d) diff = std::max(diff, std::fabs(roots[i][d] - q[d]));
            if (diff <= dedup_tol) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) distinct.push_back(roots[i]);
    }
    rep.equilibria_found = static_cast<int>(distinct.size());
    const size_t kept = std::min<size_t>(distinct.size(), 8);
    rep.equilibria.assign(distinct.begin(), distinct.begin() + kept);
    rep.unique_equilibrium_in_box =
        distinct.size() == 1 && norm_inf(distinct[0]) <= dedup_tol;

    // Attraction/repulsion by forward resp. time-reversed trajectories.
    if (detail::all_trials_attracted(grad, cfg, rep.trials_attracted)) {
        rep.attraction = AttractionVerdict::Attracting;
    } else {
        NumericVectorField reversed;
        reversed.dimension = n;
        reversed.label = grad.label + ".reversed";
        reversed.eval = [grad](const Vec& p) {
            Vec v = grad(p);
            for (double& c : v) c = -c;
            return v;
        };
        if (detail::all_trials_attracted(reversed, cfg, rep.trials_repelled))
            rep.attraction = AttractionVerdict::Repelling;
        else
            rep.attraction = AttractionVerdict::Inconclusive;
    }

    rep.criterion_applicable = rep.structure_admissible && rep.origin_is_equilibrium &&
                               rep.unique_equilibrium_in_box &&
                               rep.attraction != AttractionVerdict::Inconclusive;
    return rep;
}

/// Pair comparison: both hypothesis reports, the extracted rotational parts
/// (for external conjugacy analysis), and sphere-restricted traces of B^-1 u
/// for side-by-side inspection. Does not decide conjugacy of the rotational
/// parts.
struct PairReport {
    HypothesisReport first;
    HypothesisReport second;
    bool reduction_valid = false;
    NumericVectorField rotational_first;
    NumericVectorField rotational_second;
    std::vector<FlowTrace> sphere_traces_first;
    std::vector<FlowTrace> sphere_traces_second;
};

inline PairReport compare_pair(const GeometricStructure<double>& s1, const NumericVectorField& x1,
                               const GeometricStructure<double>& s2, const NumericVectorField& x2,
                               const ConjugacyConfig& cfg = {}) {
    PairReport pr;
    pr.first = verify_hypotheses(s1, x1, cfg);
    pr.second = verify_hypotheses(s2, x2, cfg);
    pr.reduction_valid = pr.first.criterion_applicable && pr.second.criterion_applicable &&
                         pr.first.attraction == pr.second.attraction;
    pr.rotational_first = rotational_part(s1, x1, cfg.quadrature);
    pr.rotational_second = rotational_part(s2, x2, cfg.quadrature);

    auto traces = [&cfg](const GeometricStructure<double>& s, const NumericVectorField& x) {
        const NumericVectorField sphere_field = normalized_rotational_part(s, x, cfg.quadrature);
        const int count = std::min(cfg.trials, 8);
        std::vector<FlowTrace> out(count);
        parallel_for(0, count, [&](int i) {
            const Vec start =
                detail::random_sphere_point(s.dimension(), 1.0, cfg.seed * 0x9e3779b97f4a7c15ULL + 77 + i);
            IntegratorConfig icfg = IntegratorConfig::dp54(1e-10, 1e-12, 10.0);
            out[i] = integrate(sphere_field, start, icfg);
        });
        return out;
    };
    if (pr.first.structure_admissible) pr.sphere_traces_first = traces(s1, x1);
    if (pr.second.structure_admissible) pr.sphere_traces_second = traces(s2, x2);
    return pr;
}

}  // namespace geodecomp
