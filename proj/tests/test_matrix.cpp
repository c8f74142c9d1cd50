#include "doctest.h"
#include "liesym/matrix.hpp"
#include "liesym/rng.hpp"
#include "test_util.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace liesym;
using namespace liesym::testutil;

TEST_CASE("matrix construction validates") {
    CHECK_THROWS_AS(Matrix::from_data(2, 2, {1, 2, 3}), shape_error);
    CHECK_THROWS_AS(Matrix::from_data(2, 2, {1, 2, 3, std::nan("")}), shape_error);
    CHECK_THROWS_AS(Vector::from_data({1.0, INFINITY}), shape_error);
    Matrix m = Matrix::from_data(2, 3, {1, 2, 3, 4, 5, 6});
    CHECK(m.at(1, 2) == 6.0);
}

TEST_CASE("matmul identity and permutation") {
    Rng rng(11);
    Matrix a = rand_matrix(rng, 3, 3);
    Matrix r = matmul(Matrix::identity(3), a);
    CHECK(max_abs_diff(r, a) == 0.0);

    Matrix x = Matrix::from_data(2, 2, {1, 2, 3, 4});
    Matrix p = Matrix::from_data(2, 2, {0, 1, 1, 0});
    Matrix xp = matmul(x, p);
    CHECK(xp.at(0, 0) == 2.0);
    CHECK(xp.at(0, 1) == 1.0);
    CHECK(xp.at(1, 0) == 4.0);
    CHECK(xp.at(1, 1) == 3.0);
}

TEST_CASE("matmul matches triple-loop oracle") {
    Rng rng(42);
    Matrix a = rand_matrix(rng, 5, 7);
    Matrix b = rand_matrix(rng, 7, 3);
    Matrix fast = matmul(a, b);
    Matrix slow = ref::matmul(a, b);
    CHECK(max_abs_diff(fast, slow) <= 1e-15);
    CHECK_THROWS_AS(matmul(b, a), shape_error);
}

TEST_CASE("matmul associativity") {
    Rng rng(7);
    for (int trial = 0; trial < 10; trial++) {
        Matrix a = rand_matrix(rng, 6, 4);
        Matrix b = rand_matrix(rng, 4, 5);
        Matrix c = rand_matrix(rng, 5, 6);
        CHECK(rel_fro_diff(matmul(matmul(a, b), c), matmul(a, matmul(b, c))) <= 1e-12);
    }
}

#ifdef _OPENMP
TEST_CASE("matmul result independent of thread count") {
    Rng rng(3);
    Matrix a = rand_matrix(rng, 96, 96);
    Matrix b = rand_matrix(rng, 96, 96);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    Matrix c1 = matmul(a, b);
    omp_set_num_threads(2);
    Matrix c2 = matmul(a, b);
    omp_set_num_threads(saved);
    CHECK(max_abs_diff(c1, c2) == 0.0);
}
#endif

TEST_CASE("kron identity factor gives block diagonal") {
    Rng rng(5);
    Matrix b = rand_matrix(rng, 2, 2);
    Matrix k = kron(Matrix::identity(2), b);
    CHECK(k.rows == 4);
    CHECK(k.at(0, 0) == b.at(0, 0));
    CHECK(k.at(1, 1) == b.at(1, 1));
    CHECK(k.at(2, 2) == b.at(0, 0));
    CHECK(k.at(0, 2) == 0.0);
    CHECK(k.at(2, 0) == 0.0);
}

TEST_CASE("kron single-entry factor places block") {
    Matrix a = Matrix::from_data(2, 2, {0, 1, 0, 0});
    Matrix k = kron(a, Matrix::identity(2));
    // I_2 in the upper-right 2x2 block, zero elsewhere
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++) {
            const double want = (i < 2 && j >= 2 && (j - 2) == i) ? 1.0 : 0.0;
            CHECK(k.at(i, j) == want);
        }
}

TEST_CASE("kron mixed-product property on vectors") {
    Rng rng(9);
    Matrix a = rand_matrix(rng, 3, 3);
    Matrix b = rand_matrix(rng, 4, 4);
    Vector u = rand_vector(rng, 3);
    Vector v = rand_vector(rng, 4);
    Vector uv(12);
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 4; j++) uv[i * 4 + j] = u[i] * v[j];
    Vector lhs = matvec(kron(a, b), uv);
    Vector au = matvec(a, u), bv = matvec(b, v);
    Vector rhs(12);
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 4; j++) rhs[i * 4 + j] = au[i] * bv[j];
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
}

TEST_CASE("kron mixed-product property on matrices") {
    Rng rng(13);
    Matrix a = rand_matrix(rng, 3, 2), b = rand_matrix(rng, 2, 4);
    Matrix c = rand_matrix(rng, 2, 3), d = rand_matrix(rng, 4, 2);
    Matrix lhs = matmul(kron(a, c), kron(b, d));
    Matrix rhs = kron(matmul(a, b), matmul(c, d));
    CHECK(rel_fro_diff(lhs, rhs) <= 1e-12);
    CHECK(max_abs_diff(kron(a, c), ref::kron(a, c)) == 0.0);
}

TEST_CASE("solve identity and scaled identity") {
    Rng rng(21);
    Matrix b = rand_matrix(rng, 4, 3);
    CHECK(max_abs_diff(solve(Matrix::identity(4), b), b) == 0.0);
    Matrix half = solve(scale(Matrix::identity(4), 2.0), b);
    CHECK(max_abs_diff(half, scale(b, 0.5)) <= 1e-16);
}

TEST_CASE("solve residual on random well-conditioned system") {
    Rng rng(33);
    Matrix a = rand_matrix(rng, 10, 10);
    for (int i = 0; i < 10; i++) a.at(i, i) += 10.0;  // diagonally dominant
    Matrix b = rand_matrix(rng, 10, 4);
    Matrix x = solve(a, b);
    Matrix resid = sub(matmul(a, x), b);
    CHECK(frobenius_norm(resid) <= 1e-10 * frobenius_norm(b));
}

TEST_CASE("solve rejects singular matrix") {
    Matrix a(3, 3);
    a.at(0, 0) = 1.0;
    a.at(1, 1) = 1.0;  // third row/col zero
    Matrix b = Matrix::identity(3);
    CHECK_THROWS_AS(solve(a, b), singular_error);
}

TEST_CASE("lu transpose solve") {
    Rng rng(55);
    Matrix a = rand_matrix(rng, 12, 12);
    for (int i = 0; i < 12; i++) a.at(i, i) += 6.0;
    Matrix b = rand_matrix(rng, 12, 3);
    LuFactors f = lu_factor(a);
    Matrix x = lu_solve_transposed(f, b);
    CHECK(frobenius_norm(sub(matmul(transpose(a), x), b)) <= 1e-10 * frobenius_norm(b));
}

TEST_CASE("norms agree with direct summation oracle") {
    Rng rng(2);
    Matrix a = rand_matrix(rng, 9, 5);
    CHECK(one_norm(a) == ref::one_norm(a));
    CHECK(frobenius_norm(a) == ref::frobenius_norm(a));
}

TEST_CASE("matvec_transposed matches transpose-then-matvec") {
    Rng rng(88);
    Matrix a = rand_matrix(rng, 7, 5);
    Vector x = rand_vector(rng, 7);
    CHECK(max_abs_diff(matvec_transposed(a, x), matvec(transpose(a), x)) <= 1e-14);
}
