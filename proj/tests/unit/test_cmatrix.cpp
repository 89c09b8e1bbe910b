#include "doctest.h"

#include "surflift/cmatrix.hpp"
#include "surflift/error.hpp"

#include <random>

using namespace surflift;

namespace {

CMatrix random_matrix(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    CMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = cplx(nd(rng), nd(rng));
    return m;
}

} // namespace

TEST_CASE("matrix basics") {
    CMatrix I = CMatrix::identity(3);
    CHECK(I.is_identity(0.0));
    CHECK(I.is_unitary(1e-15));
    CHECK(I.trace() == cplx(3.0));

    CMatrix A = CMatrix::from({{cplx(1, 2), cplx(0, -1)}, {cplx(3, 0), cplx(0, 1)}});
    CHECK((A * CMatrix::identity(2) - A).max_abs() == 0.0);
    CHECK(A.adjoint().at(0, 1) == cplx(3, 0));
    CHECK(A.adjoint().at(1, 0) == cplx(0, 1));
    CHECK(A.trace() == cplx(1, 3));
    CHECK(A.scaled(cplx(0, 1)).at(0, 0) == cplx(-2, 1));
    CHECK(doctest::Approx((A - A).norm_fro()) == 0.0);
    CHECK_THROWS_AS(CMatrix::from({{cplx(1)}, {cplx(2)}}), ValidationError);
}

TEST_CASE("scalar detection") {
    CMatrix S = CMatrix::identity(4).scaled(cplx(2, -1));
    cplx v;
    CHECK(S.is_scalar(1e-12, &v));
    CHECK(std::abs(v - cplx(2, -1)) < 1e-12);
    S.at(2, 3) = 1e-3;
    CHECK_FALSE(S.is_scalar(1e-6));
}

TEST_CASE("inverse round trips and rejects singular input") {
    std::mt19937_64 rng(42);
    for (int n : {1, 2, 5, 9}) {
        CMatrix A = random_matrix(n, rng) + CMatrix::identity(n).scaled(4.0);
        CMatrix B = A.inverse();
        CHECK((A * B - CMatrix::identity(n)).max_abs() < 1e-10);
        CHECK((B * A - CMatrix::identity(n)).max_abs() < 1e-10);
    }
    CMatrix sing(2);
    sing.at(0, 0) = 1;
    sing.at(0, 1) = 2;
    sing.at(1, 0) = 2;
    sing.at(1, 1) = 4;
    CHECK_THROWS_AS(sing.inverse(), NumericalError);
}

TEST_CASE("hermitian eigendecomposition: known 2x2") {
    /* [[2, i], [-i, 2]] has eigenvalues 1 and 3. */
    CMatrix A = CMatrix::from({{cplx(2, 0), cplx(0, 1)}, {cplx(0, -1), cplx(2, 0)}});
    std::vector<double> w;
    CMatrix V;
    eig_hermitian(A, w, V);
    CHECK(w[0] == doctest::Approx(1.0));
    CHECK(w[1] == doctest::Approx(3.0));
    CHECK(V.is_unitary(1e-12));
    /* A V = V diag(w) */
    CMatrix D(2);
    D.at(0, 0) = w[0];
    D.at(1, 1) = w[1];
    CHECK((A * V - V * D).max_abs() < 1e-12);
}

TEST_CASE("hermitian eigendecomposition: random reconstruction") {
    std::mt19937_64 rng(7);
    for (int n : {3, 8, 16, 33}) {
        CMatrix X = random_matrix(n, rng);
        CMatrix A = (X + X.adjoint()).scaled(0.5);
        std::vector<double> w;
        CMatrix V;
        eig_hermitian(A, w, V);
        CHECK(V.is_unitary(1e-11));
        for (size_t i = 0; i + 1 < w.size(); ++i) CHECK(w[i] <= w[i + 1]);
        CMatrix D(n);
        for (int i = 0; i < n; ++i) D.at(i, i) = w[i];
        CHECK((V * D * V.adjoint() - A).max_abs() < 1e-10 * std::max(1.0, A.max_abs()));
    }
}

TEST_CASE("intertwiner spaces of explicit small representations") {
    /* Z/3 one-dimensional reps: omega vs omega -> dim 1; omega vs omega^2 -> 0. */
    cplx omega = std::polar(1.0, 2 * 3.14159265358979323846 / 3);
    std::vector<CMatrix> L{CMatrix::from({{omega}})};
    std::vector<CMatrix> Rsame{CMatrix::from({{omega}})};
    std::vector<CMatrix> Rother{CMatrix::from({{omega * omega}})};
    CHECK(solve_intertwiner_space(L, Rsame).size() == 1);
    CHECK(solve_intertwiner_space(L, Rother).empty());

    /* Z/2 on C^2 as diag(1,-1): commutant is the diagonal algebra, dim 2. */
    std::vector<CMatrix> Ld{CMatrix::from({{cplx(1), cplx(0)}, {cplx(0), cplx(-1)}})};
    auto basis = solve_intertwiner_space(Ld, Ld);
    CHECK(basis.size() == 2);
    for (const auto& M : basis) {
        CHECK(std::abs(M.at(0, 1)) < 1e-10);
        CHECK(std::abs(M.at(1, 0)) < 1e-10);
    }

    /* Rectangular: map from the 2-dim space to a 1-dim rep picks out nothing
     * unless the 1-dim rep matches an eigenvalue. */
    std::vector<CMatrix> R1{CMatrix::from({{cplx(1)}})};
    auto maps = solve_intertwiner_space(Ld, R1);
    CHECK(maps.size() == 1);
    CHECK(maps[0].rows == 2);
    CHECK(maps[0].cols == 1);
    CHECK(std::abs(maps[0].at(1, 0)) < 1e-10); // supported on the +1 eigenline
    std::vector<CMatrix> Rminus{CMatrix::from({{cplx(-7)}})};
    CHECK(solve_intertwiner_space(Ld, Rminus).empty());
    CHECK_THROWS_AS(solve_intertwiner_space({}, {}), ValidationError);
}
