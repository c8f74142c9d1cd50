#include <cmath>

#include "doctest.h"
#include "liesym/operators.hpp"
#include "liesym/rng.hpp"
#include "test_util.hpp"

using namespace liesym;
using namespace liesym::testutil;

namespace {
constexpr double kPi = 3.14159265358979323846;

// samples of f over the grid, flattened row-major
Vector sample_image(const GridSpec& g, double (*f)(double, double)) {
    Matrix img(g.n, g.n);
    for (int r = 0; r < g.n; r++)
        for (int c = 0; c < g.n; c++) img.at(r, c) = f(g.coord(c), g.coord(r));
    return flatten(img);
}
}  // namespace

TEST_CASE("whittaker kernel point values") {
    CHECK(whittaker_kernel(0.0, 16) == doctest::Approx(15.0 / 16.0).epsilon(1e-15));
    // n=4: (1/4)(1 + 2 cos(pi/2)) = 1/4
    CHECK(whittaker_kernel(1.0, 4) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(whittaker_kernel(0.0, 5), shape_error);
    CHECK_THROWS_AS(whittaker_kernel(0.0, 2), shape_error);
}

TEST_CASE("whittaker kernel is n-periodic") {
    Rng rng(4);
    for (int trial = 0; trial < 20; trial++) {
        const double x = rng.uniform(-20.0, 20.0);
        CHECK(whittaker_kernel(x + 16.0, 16) ==
              doctest::Approx(whittaker_kernel(x, 16)).epsilon(1e-12));
    }
}

TEST_CASE("whittaker kernel derivative") {
    CHECK(whittaker_kernel_deriv(0.0, 16) == 0.0);
    CHECK(whittaker_kernel_deriv(1.0, 4) == doctest::Approx(-kPi / 4.0).epsilon(1e-14));
    // central finite difference oracle
    Rng rng(17);
    for (int trial = 0; trial < 20; trial++) {
        const double x = rng.uniform(-8.0, 8.0);
        const double h = 1e-5;
        const double fd = (whittaker_kernel(x + h, 16) - whittaker_kernel(x - h, 16)) / (2 * h);
        CHECK(whittaker_kernel_deriv(x, 16) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("reconstruction is exact for Nyquist-free signals") {
    const int n = 16;
    Rng rng(23);
    // random trig polynomial with frequencies strictly below n/2
    std::vector<double> amp(n / 2), phase(n / 2);
    for (int p = 1; p < n / 2; p++) {
        amp[static_cast<size_t>(p)] = rng.uniform(-1.0, 1.0);
        phase[static_cast<size_t>(p)] = rng.uniform(0.0, 2 * kPi);
    }
    auto f = [&](double x) {
        double s = 0.3;
        for (int p = 1; p < n / 2; p++)
            s += amp[static_cast<size_t>(p)] * std::cos(2 * kPi * p * x / n + phase[static_cast<size_t>(p)]);
        return s;
    };
    std::vector<double> samples(n);
    for (int i = 0; i < n; i++) samples[static_cast<size_t>(i)] = f(i);
    // interpolate at the grid points themselves
    for (int j = 0; j < n; j++) {
        double rec = 0.0;
        for (int i = 0; i < n; i++) rec += samples[static_cast<size_t>(i)] * whittaker_kernel(j - i, n);
        CHECK(std::abs(rec - samples[static_cast<size_t>(j)]) <= 1e-10);
    }
}

TEST_CASE("derivative matrix basics") {
    const int n = 16;
    Matrix d = derivative_matrix_1d(n);

    // D * ones = 0
    Vector ones(n);
    for (double& v : ones.v) v = 1.0;
    Vector dz = matvec(d, ones);
    for (int i = 0; i < n; i++) CHECK(std::abs(dz[i]) <= 1e-10);

    // antisymmetry
    CHECK(max_abs_diff(transpose(d), scale(d, -1.0)) <= 1e-12);

    // sub-Nyquist sinusoid differentiates exactly
    Vector s(n), want(n);
    for (int j = 0; j < n; j++) {
        s[j] = std::sin(2 * kPi * j / n);
        want[j] = 2 * kPi / n * std::cos(2 * kPi * j / n);
    }
    CHECK(max_abs_diff(matvec(d, s), want) <= 1e-10);
}

TEST_CASE("derivative matrix commutes with cyclic shift") {
    const int n = 12;
    Matrix d = derivative_matrix_1d(n);
    Matrix shift(n, n);
    for (int i = 0; i < n; i++) shift.at(i, (i + 1) % n) = 1.0;
    CHECK(max_abs_diff(matmul(d, shift), matmul(shift, d)) <= 1e-12);
}

TEST_CASE("derivative matrix spectrum is imaginary (antisymmetry bound)") {
    const int n = 16;
    Matrix d = derivative_matrix_1d(n);
    // real parts of eigenvalues are bounded by ||D + D^T|| / 2
    CHECK(one_norm(add(d, transpose(d))) <= 1e-10);
}

TEST_CASE("2d operators on separable image") {
    GridSpec g(16, CoordConvention::centered);
    Operators2D ops = build_operators_2d(g);

    // constant image
    Vector c(16 * 16);
    for (double& v : c.v) v = 2.5;
    CHECK(norm2(matvec(ops.dx, c)) <= 1e-10);
    CHECK(norm2(matvec(ops.dy, c)) <= 1e-10);

    // f(x, y) = sin(2 pi x / n): no y-dependence
    Vector img = sample_image(g, [](double x, double) { return std::sin(2 * kPi * x / 16); });
    Vector want = sample_image(g, [](double x, double) { return 2 * kPi / 16 * std::cos(2 * kPi * x / 16); });
    CHECK(max_abs_diff(matvec(ops.dx, img), want) <= 1e-10);
    CHECK(norm2(matvec(ops.dy, img)) <= 1e-10);

    // mixed partials commute
    CHECK(max_abs_diff(matmul(ops.dx, ops.dy), matmul(ops.dy, ops.dx)) <= 1e-10);
}

TEST_CASE("coordinate diagonals follow row-major flattening, x fastest") {
    Matrix xx = coordinate_diagonal(3, CoordConvention::zero_based, true);
    const double want[] = {0, 1, 2, 0, 1, 2, 0, 1, 2};
    for (int k = 0; k < 9; k++) CHECK(xx.at(k, k) == want[k]);

    Matrix xy = coordinate_diagonal(3, CoordConvention::zero_based, false);
    const double wanty[] = {0, 0, 0, 1, 1, 1, 2, 2, 2};
    for (int k = 0; k < 9; k++) CHECK(xy.at(k, k) == wanty[k]);

    // centered coordinates for even n
    Matrix cc = coordinate_diagonal(4, CoordConvention::centered, true);
    CHECK(cc.at(0, 0) == -1.5);
    CHECK(cc.at(3, 3) == 1.5);
}

TEST_CASE("grid rejects odd or tiny n") {
    CHECK_THROWS_AS(GridSpec(3, CoordConvention::centered), shape_error);
    CHECK_THROWS_AS(GridSpec(2, CoordConvention::centered), shape_error);
    CHECK_THROWS_AS(derivative_matrix_1d(7), shape_error);
}

TEST_CASE("flatten round trip and conventions") {
    Rng rng(31);
    Matrix img = rand_matrix(rng, 6, 6);
    Vector v = flatten(img);
    Matrix back = unflatten(v, 6);
    CHECK(max_abs_diff(back, img) == 0.0);

    Matrix small = Matrix::from_data(2, 2, {1, 2, 3, 4});
    Vector f = flatten(small);
    CHECK(f[0] == 1.0);
    CHECK(f[1] == 2.0);
    CHECK(f[2] == 3.0);
    CHECK(f[3] == 4.0);

    CHECK_THROWS_AS(unflatten(Vector(5), 2), shape_error);

    // linearity
    Matrix a = rand_matrix(rng, 4, 4), b = rand_matrix(rng, 4, 4);
    Vector fa = flatten(a), fb = flatten(b), fsum = flatten(add(a, b));
    for (int i = 0; i < 16; i++) CHECK(fsum[i] == fa[i] + fb[i]);
}
