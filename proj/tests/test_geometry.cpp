#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "geodecomp/geometry.hpp"
#include "geodecomp/rational.hpp"
#include "support/generators.hpp"

using namespace geodecomp;
using testgen::Rng;

namespace {

// brute-force 2x2 inverse, independent of the library's elimination
Matrix<double> inverse2x2(const Matrix<double>& m) {
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Matrix<double> r(2, 2);
    r(0, 0) = m(1, 1) / det;
    r(0, 1) = -m(0, 1) / det;
    r(1, 0) = -m(1, 0) / det;
    r(1, 1) = m(0, 0) / det;
    return r;
}

Matrix<double> mat2(double a, double b, double c, double d) {
    Matrix<double> m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

GeometricStructure<double> random_general_structure(int n, Rng& rng) {
    for (;;) {
        Matrix<double> g = testgen::random_double_matrix(n, rng);
        if (rcond_1norm(g) < 1e-3) continue;
        return GeometricStructure<double>::custom(g);
    }
}

}  // namespace

TEST_CASE("canonical factories", "[geometry]") {
    SECTION("euclidean: identity everywhere") {
        const auto s = GeometricStructure<double>::euclidean(3);
        CHECK(s.gram() == Matrix<double>::identity(3));
        CHECK(s.b_matrix() == Matrix<double>::identity(3));
        CHECK(s.b_star() == Matrix<double>::identity(3));
        CHECK(s.kind() == StructureKind::Euclidean);
    }
    SECTION("symplectic(2): B is the brute-force inverse of J") {
        const auto s = GeometricStructure<double>::symplectic(2);
        CHECK(s.gram() == mat2(0, 1, -1, 0));
        CHECK(max_abs_diff(s.b_matrix(), inverse2x2(s.gram())) == 0.0);
        CHECK(s.b_matrix() == mat2(0, -1, 1, 0));
        CHECK(s.b_star() == s.gram());  // B^T = J
        CHECK(s.kind() == StructureKind::Symplectic);
    }
    SECTION("minkowski(3): E squares to I, so B = B* = E") {
        const auto s = GeometricStructure<double>::minkowski(3);
        Matrix<double> e = Matrix<double>::identity(3);
        e(2, 2) = -1;
        CHECK(s.gram() == e);
        CHECK(s.b_matrix() == e);
        CHECK(s.b_star() == e);
        CHECK(s.kind() == StructureKind::Minkowski);
        CHECK(s.signature() == std::pair<int, int>{2, 1});
    }
    SECTION("custom upper-triangular") {
        const auto s = GeometricStructure<double>::custom(mat2(1, 1, 0, 1));
        CHECK(max_abs_diff(s.b_matrix(), mat2(1, -1, 0, 1)) < 1e-15);
        CHECK(max_abs_diff(s.b_star(), mat2(1, 0, -1, 1)) < 1e-15);
        CHECK(s.kind() == StructureKind::CustomGeneral);
    }
}

TEST_CASE("construction rejects degenerate input", "[geometry]") {
    CHECK_THROWS_AS(GeometricStructure<double>::custom(mat2(1, 2, 2, 4)), SingularGram);
    CHECK_THROWS_AS(GeometricStructure<double>::symplectic(3), OddSymplecticDimension);
    CHECK_THROWS_AS(GeometricStructure<Rational>::custom([] {
                        Matrix<Rational> m(2, 2);
                        m(0, 0) = 1;
                        m(0, 1) = 2;
                        m(1, 0) = 2;
                        m(1, 1) = 4;
                        return m;
                    }()),
                    SingularGram);
    // near-singular floating gram: rcond below 1e-12
    CHECK_THROWS_AS(GeometricStructure<double>::custom(mat2(1, 1, 1, 1 + 1e-14)), SingularGram);
}

TEST_CASE("structure invariants on random grams", "[geometry]") {
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const auto s = random_general_structure(n, rng);
        CHECK(max_abs_diff(s.gram() * s.b_matrix(), Matrix<double>::identity(n)) < 1e-12);
        CHECK(s.b_star() == s.b_matrix().transposed());
    }
    // exact mode: identities hold exactly
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const auto s = GeometricStructure<Rational>::custom(testgen::random_invertible_matrix(n, rng));
        CHECK(s.gram() * s.b_matrix() == Matrix<Rational>::identity(n));
        CHECK(s.b_star() == s.b_matrix().transposed());
    }
}

TEST_CASE("kind classification by symmetry and signature", "[geometry]") {
    Rng rng(7);
    const auto spd = GeometricStructure<Rational>::custom(testgen::random_spd(3, rng));
    CHECK(spd.kind() == StructureKind::Euclidean);

    const auto nd = GeometricStructure<Rational>::custom(testgen::random_spd(3, rng).scaled(Rational(-1)));
    CHECK(nd.kind() == StructureKind::CustomSymmetric);
    CHECK(nd.signature() == std::pair<int, int>{0, 3});

    const auto skew = GeometricStructure<double>::custom(mat2(0, 2, -2, 0));
    CHECK(skew.kind() == StructureKind::CustomSkew);
    CHECK(skew.is_skew_form());

    const auto mink = GeometricStructure<double>::minkowski(4);
    CHECK(mink.signature() == std::pair<int, int>{3, 1});

    // exact signature of an indefinite symmetric gram with zero diagonal
    Matrix<Rational> z(2, 2);
    z(0, 1) = 1;
    z(1, 0) = 1;
    const auto hyper = GeometricStructure<Rational>::custom(z);
    CHECK(hyper.kind() == StructureKind::Minkowski);
    CHECK(hyper.signature() == std::pair<int, int>{1, 1});
}

TEST_CASE("eval_b", "[geometry]") {
    const auto e2 = GeometricStructure<double>::euclidean(2);
    CHECK(e2.eval_b({1, 2}, {3, 4}) == 11.0);

    const auto sp = GeometricStructure<double>::symplectic(2);
    CHECK(sp.eval_b({1, 0}, {0, 1}) == 1.0);
    CHECK(sp.eval_b({0, 1}, {1, 0}) == -1.0);

    const auto mk = GeometricStructure<double>::minkowski(2);
    CHECK(mk.eval_b({1, 1}, {1, 1}) == 0.0);  // null vector

    CHECK_THROWS_AS(e2.eval_b({1, 2, 3}, {1, 2}), DimensionMismatch);
}

TEST_CASE("bilinearity of eval_b", "[geometry]") {
    Rng rng(11);
    const auto s = random_general_structure(3, rng);
    const auto x = testgen::random_point(3, rng), y = testgen::random_point(3, rng),
               z = testgen::random_point(3, rng);
    const double a = 0.7, b = -1.3;
    Vec ax_by(3);
    for (int i = 0; i < 3; ++i) ax_by[i] = a * x[i] + b * y[i];
    CHECK(s.eval_b(ax_by, z) == Catch::Approx(a * s.eval_b(x, z) + b * s.eval_b(y, z)).margin(1e-12));
    CHECK(s.eval_b(z, ax_by) == Catch::Approx(a * s.eval_b(z, x) + b * s.eval_b(z, y)).margin(1e-12));
}

TEST_CASE("bilinear decomposition into symmetric and skew parts", "[geometry]") {
    Rng rng(8);
    const auto s = GeometricStructure<Rational>::custom(testgen::random_invertible_matrix(3, rng));
    const auto [sym, skew] = s.bilinear_decomposition();
    CHECK(sym + skew == s.gram());            // exact reassembly
    CHECK(sym == sym.transposed());
    CHECK(skew == -skew.transposed());
    // A_b evaluates the antisymmetrized pairing (b(x,y) - b(y,x))/2
    for (int i = 0; i < 10; ++i) {
        const auto x = testgen::random_rational_point(3, rng), y = testgen::random_rational_point(3, rng);
        const Rational direct = (s.eval_b(x, y) - s.eval_b(y, x)) / 2;
        Rational via_matrix(0);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) via_matrix += x[r] * skew(r, c) * y[c];
        CHECK(direct == via_matrix);
    }
}

TEST_CASE("b-normality", "[geometry]") {
    CHECK(GeometricStructure<double>::euclidean(4).is_b_normal());
    CHECK(GeometricStructure<double>::symplectic(2).is_b_normal());

    // brute-force check for the upper-triangular example: B B^T != B^T B
    const auto s = GeometricStructure<double>::custom(mat2(1, 1, 0, 1));
    const Matrix<double> bbt = s.b_matrix() * s.b_star();
    const Matrix<double> btb = s.b_star() * s.b_matrix();
    REQUIRE(max_abs_diff(bbt, btb) > 0.5);
    CHECK_FALSE(s.is_b_normal());
}

TEST_CASE("left and right (b,B)-symmetry", "[geometry]") {
    const auto e2 = GeometricStructure<double>::euclidean(2);
    SECTION("euclidean accepts symmetric, rejects skew with residual 2") {
        auto [ok_sym, r_sym] = e2.is_left_bB_symmetric(mat2(2, 5, 5, -1));
        CHECK(ok_sym);
        CHECK(r_sym == 0.0);
        auto [ok_skew, r_skew] = e2.is_left_bB_symmetric(mat2(0, 1, -1, 0));
        CHECK_FALSE(ok_skew);
        CHECK(r_skew == 2.0);
        CHECK(e2.is_right_bB_symmetric(mat2(2, 5, 5, -1)).ok);
    }
    SECTION("identity is not in the symplectic symmetry set") {
        const auto sp = GeometricStructure<double>::symplectic(2);
        auto [ok, res] = sp.is_left_bB_symmetric(Matrix<double>::identity(2));
        CHECK_FALSE(ok);
        CHECK(res == 2.0);  // A^T G - G^T A = 2G
    }
    SECTION("symmetric gram: left and right verdicts agree") {
        Rng rng(3);
        Matrix<double> g = testgen::random_double_matrix(3, rng);
        g = g + g.transposed() + Matrix<double>::identity(3).scaled(4.0);
        const auto s = GeometricStructure<double>::custom(g);
        REQUIRE(s.is_symmetric_form());
        for (int i = 0; i < 20; ++i) {
            const Matrix<double> a = testgen::random_double_matrix(3, rng);
            const auto l = s.is_left_bB_symmetric(a);
            const auto r = s.is_right_bB_symmetric(a);
            CHECK(l.ok == r.ok);
            CHECK(l.residual == Catch::Approx(r.residual).margin(1e-13));
        }
    }
    SECTION("skew gram: verdict is the skew-adjoint condition A^T G + G A = 0") {
        Rng rng(4);
        const auto sp = GeometricStructure<double>::symplectic(4);
        for (int i = 0; i < 20; ++i) {
            const Matrix<double> a = testgen::random_double_matrix(4, rng);
            const double res = max_abs(a.transposed() * sp.gram() + sp.gram() * a);
            CHECK(sp.is_right_bB_symmetric(a).ok == (res <= 1e-10));
            CHECK(sp.is_left_bB_symmetric(a).ok == (res <= 1e-10));
        }
        // a genuine member: A = G^-1 S with S symmetric
        const Matrix<double> m = testgen::random_double_matrix(4, rng);
        const Matrix<double> member = inverse(sp.gram()) * (m + m.transposed());
        CHECK(sp.is_right_bB_symmetric(member).ok);
    }
    CHECK_THROWS_AS(e2.is_left_bB_symmetric(Matrix<double>::identity(3)), DimensionMismatch);
}

TEST_CASE("brackets", "[geometry]") {
    Rng rng(5);
    SECTION("symmetric gram: both brackets collapse to the commutator") {
        Matrix<double> g = testgen::random_double_matrix(3, rng);
        g = g + g.transposed() + Matrix<double>::identity(3).scaled(4.0);
        const auto s = GeometricStructure<double>::custom(g);
        for (int i = 0; i < 10; ++i) {
            const auto a = testgen::random_double_matrix(3, rng), b = testgen::random_double_matrix(3, rng);
            const auto c = GeometricStructure<double>::commutator(a, b);
            CHECK(max_abs_diff(s.bracket_left(a, b), c) < 1e-12);
            CHECK(max_abs_diff(s.bracket_right(a, b), c) < 1e-12);
        }
    }
    SECTION("skew gram: both brackets are minus the commutator") {
        const auto s = GeometricStructure<double>::symplectic(4);
        for (int i = 0; i < 10; ++i) {
            const auto a = testgen::random_double_matrix(4, rng), b = testgen::random_double_matrix(4, rng);
            const auto c = GeometricStructure<double>::commutator(a, b);
            CHECK(max_abs_diff(s.bracket_left(a, b), -c) < 1e-12);
            CHECK(max_abs_diff(s.bracket_right(a, b), -c) < 1e-12);
        }
    }
    SECTION("antisymmetry: [A, A] = 0") {
        const auto s = random_general_structure(3, rng);
        const auto a = testgen::random_double_matrix(3, rng);
        CHECK(max_abs(s.bracket_left(a, a)) < 1e-14);
        CHECK(max_abs(s.bracket_right(a, a)) < 1e-14);
    }
    SECTION("Jacobi identity for all three brackets") {
        const auto s = random_general_structure(3, rng);
        auto jacobi = [](auto&& br, const Matrix<double>& a, const Matrix<double>& b, const Matrix<double>& c) {
            return br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b));
        };
        for (int i = 0; i < 10; ++i) {
            const auto a = testgen::random_double_matrix(3, rng), b = testgen::random_double_matrix(3, rng),
                       c = testgen::random_double_matrix(3, rng);
            auto left = [&s](const Matrix<double>& p, const Matrix<double>& q) { return s.bracket_left(p, q); };
            auto right = [&s](const Matrix<double>& p, const Matrix<double>& q) { return s.bracket_right(p, q); };
            auto comm = [](const Matrix<double>& p, const Matrix<double>& q) {
                return GeometricStructure<double>::commutator(p, q);
            };
            CHECK(max_abs(jacobi(left, a, b, c)) < 1e-10);
            CHECK(max_abs(jacobi(right, a, b, c)) < 1e-10);
            CHECK(max_abs(jacobi(comm, a, b, c)) < 1e-10);
        }
    }
}

TEST_CASE("bracket compatibility with the symmetry sets", "[geometry]") {
    Rng rng(9);
    SECTION("left members: (bracket_left)^T G = -G^T [A,A']") {
        const auto s = random_general_structure(3, rng);
        const Matrix<double> gt_inv = inverse(s.gram().transposed());
        for (int i = 0; i < 10; ++i) {
            // A = (G^T)^-1 S with S symmetric is left (b,B)-symmetric
            auto m1 = testgen::random_double_matrix(3, rng), m2 = testgen::random_double_matrix(3, rng);
            const Matrix<double> a = gt_inv * (m1 + m1.transposed());
            const Matrix<double> b = gt_inv * (m2 + m2.transposed());
            REQUIRE(s.is_left_bB_symmetric(a).residual < 1e-12);
            REQUIRE(s.is_left_bB_symmetric(b).residual < 1e-12);
            const Matrix<double> lhs = s.bracket_left(a, b).transposed() * s.gram();
            const Matrix<double> rhs = -(s.gram().transposed() * GeometricStructure<double>::commutator(a, b));
            CHECK(max_abs_diff(lhs, rhs) < 1e-10);
        }
    }
    SECTION("right members: [A,A']^T G^T + G bracket_right = 0") {
        const auto s = random_general_structure(3, rng);
        const Matrix<double> g_inv = s.b_matrix();
        for (int i = 0; i < 10; ++i) {
            auto m1 = testgen::random_double_matrix(3, rng), m2 = testgen::random_double_matrix(3, rng);
            const Matrix<double> a = g_inv * (m1 + m1.transposed());
            const Matrix<double> b = g_inv * (m2 + m2.transposed());
            REQUIRE(s.is_right_bB_symmetric(a).residual < 1e-12);
            REQUIRE(s.is_right_bB_symmetric(b).residual < 1e-12);
            const Matrix<double> lhs =
                GeometricStructure<double>::commutator(a, b).transposed() * s.gram().transposed();
            const Matrix<double> rhs = s.gram() * s.bracket_right(a, b);
            CHECK(max_abs(lhs + rhs) < 1e-10);
        }
    }
    SECTION("skew gram: the accepted set is closed under the commutator") {
        const auto s = GeometricStructure<double>::custom(mat2(0, 2, -2, 0));
        Rng local(13);
        for (int i = 0; i < 10; ++i) {
            auto m1 = testgen::random_double_matrix(2, local), m2 = testgen::random_double_matrix(2, local);
            const Matrix<double> a = s.b_matrix() * (m1 + m1.transposed());
            const Matrix<double> b = s.b_matrix() * (m2 + m2.transposed());
            REQUIRE(s.is_left_bB_symmetric(a).ok);
            REQUIRE(s.is_left_bB_symmetric(b).ok);
            CHECK(s.is_left_bB_symmetric(GeometricStructure<double>::commutator(a, b)).ok);
        }
    }
}
