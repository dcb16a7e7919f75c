#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "geodecomp/errors.hpp"

namespace geodecomp {

template <class T>
T abs_value(const T& v) {
    return v < T(0) ? T(-v) : v;
}

/// Dense row-major matrix over an arbitrary field scalar (double or Rational).
/// Dimensions here are tiny (n is the ambient dimension of the vector field),
/// so everything is plain O(n^3) Gauss-Jordan.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, T(0)) {
        if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix transposed() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw DimensionMismatch("matrix product dimension mismatch");
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    std::vector<T> operator*(const std::vector<T>& v) const {
        if (cols_ != static_cast<int>(v.size())) throw DimensionMismatch("matrix-vector dimension mismatch");
        std::vector<T> r(rows_, T(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& v : r.data_) v = -v;
        return r;
    }

    Matrix scaled(const T& s) const {
        Matrix r = *this;
        for (auto& v : r.data_) v *= s;
        return r;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

template <class T>
T max_abs(const Matrix<T>& m) {
    T r(0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            T a = abs_value(m(i, j));
            if (a > r) r = a;
        }
    return r;
}

template <class T>
T max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
    return max_abs(a - b);
}

template <class T>
T one_norm(const Matrix<T>& m) {
    T best(0);
    for (int j = 0; j < m.cols(); ++j) {
        T col(0);
        for (int i = 0; i < m.rows(); ++i) col += abs_value(m(i, j));
        if (col > best) best = col;
    }
    return best;
}

namespace detail {

// Gauss-Jordan with partial (max-|pivot|) pivoting. Returns false if a pivot
// column is exactly zero; `det` accumulates the determinant either way.
template <class T>
bool gauss_jordan(Matrix<T>& a, Matrix<T>& inv, T& det) {
    const int n = a.rows();
    inv = Matrix<T>::identity(n);
    det = T(1);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        T best = abs_value(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            T cand = abs_value(a(i, k));
            if (cand > best) {
                best = cand;
                piv = i;
            }
        }
        if (best == T(0)) {
            det = T(0);
            return false;
        }
        if (piv != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(k, j), a(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
            det = -det;
        }
        const T p = a(k, k);
        det *= p;
        for (int j = 0; j < n; ++j) {
            a(k, j) /= p;
            inv(k, j) /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const T f = a(i, k);
            if (f == T(0)) continue;
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return true;
}

}  // namespace detail

template <class T>
T determinant(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
    Matrix<T> a = m, inv;
    T det;
    detail::gauss_jordan(a, inv, det);
    return det;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
    Matrix<T> a = m, inv;
    T det;
    if (!detail::gauss_jordan(a, inv, det)) throw SingularGram("matrix is singular");
    return inv;
}

/// Solves A x = rhs (square A). Throws SingularGram on exact singularity.
template <class T>
std::vector<T> solve(const Matrix<T>& m, const std::vector<T>& rhs) {
    return inverse(m) * rhs;
}

/// Reciprocal 1-norm condition number, 1 / (|A| |A^-1|); 0 when singular.
inline double rcond_1norm(const Matrix<double>& m) {
    Matrix<double> a = m, inv;
    double det;
    if (!detail::gauss_jordan(a, inv, det)) return 0.0;
    const double c = one_norm(m) * one_norm(inv);
    if (!(c > 0.0) || !std::isfinite(c)) return 0.0;
    return 1.0 / c;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(Matrix<double> a) {
    const int n = a.rows();
    if (n != a.cols()) throw DimensionMismatch("eigenvalues of non-square matrix");
    const double scale = std::max(1.0, max_abs(a));
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off = std::max(off, std::fabs(a(i, j)));
        if (off <= 1e-15 * scale) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(a(p, q)) <= 1e-18 * scale) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a(i, i);
    return eig;
}

/// Signature (#positive, #negative pivots) of a nonsingular symmetric matrix
/// by exact congruence diagonalization (Lagrange reduction). Field-generic;
/// meant for exact scalars.
template <class T>
std::pair<int, int> congruence_signature(Matrix<T> s) {
    const int n = s.rows();
    int pos = 0, neg = 0;
    for (int k = 0; k < n; ++k) {
        if (s(k, k) == T(0)) {
            int j = -1;
            for (int i = k + 1; i < n; ++i)
                if (s(i, i) != T(0)) {
                    j = i;
                    break;
                }
            if (j >= 0) {
                for (int c = 0; c < n; ++c) std::swap(s(k, c), s(j, c));
                for (int r = 0; r < n; ++r) std::swap(s(r, k), s(r, j));
            } else {
                for (int i = k + 1; i < n; ++i)
                    if (s(k, i) != T(0)) {
                        j = i;
                        break;
                    }
                if (j < 0) throw SingularGram("symmetric matrix is singular");
                for (int c = 0; c < n; ++c) s(k, c) += s(j, c);
                for (int r = 0; r < n; ++r) s(r, k) += s(r, j);
            }
        }
        const T piv = s(k, k);
        if (piv > T(0)) ++pos; else ++neg;
        // Schur complement; the row op already zeroes column k below the
        // pivot and keeps the trailing block symmetric.
        for (int i = k + 1; i < n; ++i) {
            if (s(i, k) == T(0)) continue;
            const T f = s(i, k) / piv;
            for (int j = k; j < n; ++j) s(i, j) -= f * s(k, j);
        }
    }
    return {pos, neg};
}

// ---- small vector helpers ----

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot-product dimension mismatch");
    T r(0);
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

template <class T>
T norm_inf(const std::vector<T>& v) {
    T r(0);
    for (const auto& x : v) {
        T a = abs_value(x);
        if (a > r) r = a;
    }
    return r;
}

inline double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace geodecomp
