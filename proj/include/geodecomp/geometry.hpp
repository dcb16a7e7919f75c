#pragma once

#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "geodecomp/errors.hpp"
#include "geodecomp/matrix.hpp"

namespace geodecomp {

/// Which of the two one-sided decompositions / gradient-like operators is meant.
enum class Side { Right, Left };

enum class StructureKind {
    Euclidean,        // symmetric positive definite
    Symplectic,       // the canonical skew form J_n
    Minkowski,        // symmetric with signature (p,q), p,q >= 1
    CustomSymmetric,  // symmetric negative definite
    CustomSkew,       // skew-symmetric, not the canonical J_n
    CustomGeneral,    // neither symmetric nor skew-symmetric
};

inline const char* kind_name(StructureKind k) {
    switch (k) {
        case StructureKind::Euclidean: return "euclidean";
        case StructureKind::Symplectic: return "symplectic";
        case StructureKind::Minkowski: return "minkowski";
        case StructureKind::CustomSymmetric: return "custom_symmetric";
        case StructureKind::CustomSkew: return "custom_skew";
        case StructureKind::CustomGeneral: return "custom_general";
    }
    return "?";
}

/// Verdict of a graded membership test: the boolean is `residual <= threshold`
/// (exact zero in rational mode).
template <class T>
struct MembershipResult {
    bool ok;
    T residual;
};

/// Split of the gram matrix into its symmetric and skew parts,
/// S_b = (G + G^T)/2 and A_b = (G - G^T)/2; A_b represents the
/// antisymmetrized pairing (b(x,y) - b(y,x))/2.
template <class T>
struct BilinearDecomposition {
    Matrix<T> symmetric_part;
    Matrix<T> skew_part;
};

/// A nondegenerate bilinear form b(x,y) = x^T G y on R^n, together with the
/// companion map B = G^-1 (so <x,y> = b(x,By)) and its adjoint B* = B^T.
///
/// Immutable after construction; all derived matrices are computed eagerly.
template <class T>
class GeometricStructure {
public:
    static constexpr bool is_exact = !std::is_floating_point_v<T>;

    static GeometricStructure euclidean(int n) {
        require_positive_dimension(n);
        return GeometricStructure(Matrix<T>::identity(n));
    }

    /// Canonical symplectic form J_n = [[0, I], [-I, 0]] (n even).
    static GeometricStructure symplectic(int n) {
        require_positive_dimension(n);
        if (n % 2 != 0) throw OddSymplecticDimension("symplectic structure requires even dimension");
        const int m = n / 2;
        Matrix<T> g(n, n);
        for (int i = 0; i < m; ++i) {
            g(i, m + i) = T(1);
            g(m + i, i) = T(-1);
        }
        return GeometricStructure(std::move(g));
    }

    /// Canonical Minkowski form diag(1, ..., 1, -1).
    static GeometricStructure minkowski(int n) {
        require_positive_dimension(n);
        Matrix<T> g = Matrix<T>::identity(n);
        g(n - 1, n - 1) = T(-1);
        return GeometricStructure(std::move(g));
    }

    static GeometricStructure custom(Matrix<T> gram) {
        if (gram.rows() != gram.cols() || gram.rows() == 0)
            throw DimensionMismatch("gram matrix must be square and nonempty");
        return GeometricStructure(std::move(gram));
    }

    int dimension() const { return n_; }
    const Matrix<T>& gram() const { return gram_; }
    const Matrix<T>& b_matrix() const { return b_; }
    const Matrix<T>& b_star() const { return b_star_; }
    StructureKind kind() const { return kind_; }

    bool is_symmetric_form() const { return symmetric_; }
    bool is_skew_form() const { return skew_; }
    /// Signature (p, q) of a symmetric form; (0, 0) otherwise.
    std::pair<int, int> signature() const { return {sig_pos_, sig_neg_}; }

    /// b(x, y) = x^T G y.
    T eval_b(const std::vector<T>& x, const std::vector<T>& y) const {
        check_vector(x);
        check_vector(y);
        T r(0);
        for (int i = 0; i < n_; ++i) {
            if (x[i] == T(0)) continue;
            T row(0);
            for (int j = 0; j < n_; ++j) row += gram_(i, j) * y[j];
            r += x[i] * row;
        }
        return r;
    }

    /// The quadratic form F_b(x) = b(x, x).
    T quadratic_form(const std::vector<T>& x) const { return eval_b(x, x); }

    BilinearDecomposition<T> bilinear_decomposition() const {
        const Matrix<T> gt = gram_.transposed();
        const T half = T(1) / T(2);
        return {(gram_ + gt).scaled(half), (gram_ - gt).scaled(half)};
    }

    /// True iff B B* = B* B, equivalently (B*)* = B.
    bool is_b_normal() const {
        const T residual = max_abs_diff(b_ * b_star_, b_star_ * b_);
        if constexpr (is_exact)
            return residual == T(0);
        else
            return residual <= T(1e-12) * std::max(1.0, max_abs(b_) * max_abs(b_));
    }

    /// Left (b,B)-symmetry of a linear map A: b(Au, v) = b(B*B^-1 u, Av) for
    /// all u, v, i.e. the matrix identity A^T G = G^T A.
    MembershipResult<T> is_left_bB_symmetric(const Matrix<T>& a) const {
        check_square(a);
        const T residual = max_abs_diff(a.transposed() * gram_, gram_.transposed() * a);
        return {accept(residual), residual};
    }

    /// Right (b,B)-symmetry: b(Au, B(B*)^-1 v) = b(u, Av) for all u, v,
    /// i.e. A^T G^T = G A.
    MembershipResult<T> is_right_bB_symmetric(const Matrix<T>& a) const {
        check_square(a);
        const T residual = max_abs_diff(a.transposed() * gram_.transposed(), gram_ * a);
        return {accept(residual), residual};
    }

    /// [A,A']^L = A K A' - A' K A with kernel K = B (B*)^-1 = G^-1 G^T.
    Matrix<T> bracket_left(const Matrix<T>& a, const Matrix<T>& b) const {
        check_square(a);
        check_square(b);
        const Matrix<T> k = b_ * gram_.transposed();
        return a * k * b - b * k * a;
    }

    /// [A,A']^R = A K A' - A' K A with kernel K = B* B^-1 = (G^T)^-1 G.
    Matrix<T> bracket_right(const Matrix<T>& a, const Matrix<T>& b) const {
        check_square(a);
        check_square(b);
        const Matrix<T> k = b_star_ * gram_;
        return a * k * b - b * k * a;
    }

    static Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
        if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
            throw DimensionMismatch("commutator needs square matrices of equal size");
        return a * b - b * a;
    }

private:
    explicit GeometricStructure(Matrix<T> gram) : n_(gram.rows()), gram_(std::move(gram)) {
        if constexpr (is_exact) {
            Matrix<T> work = gram_, inv;
            T det;
            if (!detail::gauss_jordan(work, inv, det))
                throw SingularGram("gram matrix is singular");
            b_ = std::move(inv);
        } else {
            if (rcond_1norm(gram_) < 1e-12)
                throw SingularGram("gram matrix is singular or too ill-conditioned (rcond < 1e-12)");
            b_ = inverse(gram_);
        }
        b_star_ = b_.transposed();
        classify();
    }

    static void require_positive_dimension(int n) {
        if (n <= 0) throw DimensionMismatch("dimension must be positive");
    }

    void check_vector(const std::vector<T>& v) const {
        if (static_cast<int>(v.size()) != n_) throw DimensionMismatch("vector length does not match structure dimension");
    }

    void check_square(const Matrix<T>& a) const {
        if (a.rows() != n_ || a.cols() != n_) throw DimensionMismatch("matrix does not match structure dimension");
    }

    bool accept(const T& residual) const {
        if constexpr (is_exact)
            return residual == T(0);
        else
            return residual <= kMembershipTol;
    }

    void classify() {
        const Matrix<T> gt = gram_.transposed();
        if constexpr (is_exact) {
            symmetric_ = (gram_ == gt);
            skew_ = (gram_ == -gt);
        } else {
            const double scale = std::max(1.0, max_abs(gram_));
            symmetric_ = max_abs_diff(gram_, gt) <= 1e-12 * scale;
            skew_ = max_abs_diff(gram_, -gt) <= 1e-12 * scale;
        }
        if (symmetric_) {
            compute_signature();
            if (sig_neg_ == 0)
                kind_ = StructureKind::Euclidean;
            else if (sig_pos_ == 0)
                kind_ = StructureKind::CustomSymmetric;
            else
                kind_ = StructureKind::Minkowski;
        } else if (skew_) {
            kind_ = is_canonical_symplectic() ? StructureKind::Symplectic : StructureKind::CustomSkew;
        } else {
            kind_ = StructureKind::CustomGeneral;
        }
    }

    void compute_signature() {
        if constexpr (is_exact) {
            auto [p, q] = congruence_signature(gram_);
            sig_pos_ = p;
            sig_neg_ = q;
        } else {
            const auto eig = symmetric_eigenvalues(gram_);
            sig_pos_ = sig_neg_ = 0;
            for (double lambda : eig) {
                if (std::fabs(lambda) < 1e-10)
                    throw SingularGram("symmetric gram matrix has a near-zero eigenvalue");
                (lambda > 0 ? sig_pos_ : sig_neg_)++;
            }
        }
    }

    bool is_canonical_symplectic() const {
        if (n_ % 2 != 0) return false;
        const int m = n_ / 2;
        Matrix<T> j(n_, n_);
        for (int i = 0; i < m; ++i) {
            j(i, m + i) = T(1);
            j(m + i, i) = T(-1);
        }
        if constexpr (is_exact)
            return gram_ == j;
        else
            return max_abs_diff(gram_, j) <= 1e-12;
    }

    static constexpr double kMembershipTol = 1e-10;

    int n_;
    Matrix<T> gram_, b_, b_star_;
    StructureKind kind_ = StructureKind::CustomGeneral;
    bool symmetric_ = false;
    bool skew_ = false;
    int sig_pos_ = 0;
    int sig_neg_ = 0;
};

}  // namespace geodecomp
