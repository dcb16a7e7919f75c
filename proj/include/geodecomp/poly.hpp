#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "geodecomp/errors.hpp"
#include "geodecomp/rational.hpp"

namespace geodecomp {

/// Hard cap on total degree; guards against accidental blowup in products.
inline constexpr uint32_t kMaxTotalDegree = 64;

using Exponents = std::vector<uint32_t>;

inline uint32_t total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), uint32_t{0});
}

/// Graded lexicographic term order: compare total degree first, then the
/// exponent tuples lexicographically.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        const uint32_t da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept in canonical (grlex) order with no explicit zeros, so
/// structural equality is mathematical equality.
class Poly {
public:
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    explicit Poly(int dimension = 0) : n_(dimension) {
        if (dimension < 0) throw DimensionMismatch("polynomial dimension must be nonnegative");
    }

    static Poly constant(int dimension, Rational c) {
        Poly p(dimension);
        p.add_term(Exponents(dimension, 0), std::move(c));
        return p;
    }

    /// x_i (0-based index).
    static Poly variable(int dimension, int i) {
        if (i < 0 || i >= dimension) throw DimensionMismatch("variable index out of range");
        Poly p(dimension);
        Exponents e(dimension, 0);
        e[i] = 1;
        p.add_term(std::move(e), Rational(1));
        return p;
    }

    int dimension() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    uint32_t degree() const {
        return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
    }

    void add_term(Exponents e, Rational c) {
        if (static_cast<int>(e.size()) != n_) throw DimensionMismatch("exponent tuple length mismatch");
        if (total_degree(e) > kMaxTotalDegree) throw DegreeLimitExceeded("term exceeds maximum total degree");
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    Poly& operator-=(const Poly& o) {
        check_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    Poly operator-() const {
        Poly r(n_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    Poly scaled(const Rational& s) const {
        Poly r(n_);
        if (s == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_dim(b);
        Poly r(a.n_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.n_);
                for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }

    /// d/dx_i.
    Poly partial(int i) const {
        if (i < 0 || i >= n_) throw DimensionMismatch("partial index out of range");
        Poly r(n_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents d = e;
            d[i] -= 1;
            r.add_term(std::move(d), c * Rational(e[i]));
        }
        return r;
    }

    std::vector<Poly> gradient() const {
        std::vector<Poly> g;
        g.reserve(n_);
        for (int i = 0; i < n_; ++i) g.push_back(partial(i));
        return g;
    }

    Rational eval(const std::vector<Rational>& x) const {
        if (static_cast<int>(x.size()) != n_) throw DimensionMismatch("evaluation point length mismatch");
        Rational r(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < n_; ++i)
                for (uint32_t k = 0; k < e[i]; ++k) t *= x[i];
            r += t;
        }
        return r;
    }

    double eval(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != n_) throw DimensionMismatch("evaluation point length mismatch");
        double r = 0.0;
        for (const auto& [e, c] : terms_) {
            double t = to_double(c);
            for (int i = 0; i < n_; ++i)
                for (uint32_t k = 0; k < e[i]; ++k) t *= x[i];
            r += t;
        }
        return r;
    }

    bool operator==(const Poly& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Canonical text form, leading (highest grlex) term first, e.g.
    /// "1/2 * x1^2 - 1/3 * x1 x2". The zero polynomial prints as "0".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rational c = it->second;
            if (first) {
                first = false;
                if (c < 0) {
                    os << '-';
                    c = -c;
                }
            } else {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            const bool has_vars = total_degree(it->first) > 0;
            if (!has_vars || c != 1) {
                os << to_string(c);
                if (has_vars) os << " * ";
            }
            bool first_var = true;
            for (int i = 0; i < n_; ++i) {
                if (it->first[i] == 0) continue;
                if (!first_var) os << ' ';
                first_var = false;
                os << 'x' << (i + 1);
                if (it->first[i] > 1) os << '^' << it->first[i];
            }
        }
        return os.str();
    }

private:
    void check_dim(const Poly& o) const {
        if (n_ != o.n_) throw DimensionMismatch("polynomial dimension mismatch");
    }

    int n_;
    TermMap terms_;
};

/// The ray integral q(x) = Int_0^1 p(t x) / t dt, defined when p(0) = 0:
/// each homogeneous degree-k part of p is divided by k.
inline Poly ray_integral(const Poly& p) {
    Poly r(p.dimension());
    for (const auto& [e, c] : p.terms()) {
        const uint32_t k = total_degree(e);
        if (k == 0) throw NonzeroConstantTerm("ray integral requires a vanishing constant term");
        r.add_term(e, c / Rational(k));
    }
    return r;
}

}  // namespace geodecomp
