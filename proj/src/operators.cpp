#include "liesym/operators.hpp"

#include <cmath>
#include <string>

namespace liesym {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_even_n(int n) {
    if (n < 4 || n % 2 != 0)
        throw shape_error("grid size must be even and >= 4, got " + std::to_string(n));
}
}  // namespace

GridSpec::GridSpec(int n_, CoordConvention c) : n(n_), coords(c) { check_even_n(n_); }

double whittaker_kernel(double x, int n) {
    check_even_n(n);
    double s = 1.0;
    for (int p = 1; p <= n / 2 - 1; p++) s += 2.0 * std::cos(kTwoPi * p * x / n);
    return s / n;
}

double whittaker_kernel_deriv(double x, int n) {
    check_even_n(n);
    double s = 0.0;
    for (int p = 1; p <= n / 2 - 1; p++) s += p * std::sin(kTwoPi * p * x / n);
    return -4.0 * M_PI / (static_cast<double>(n) * n) * s;
}

Matrix derivative_matrix_1d(int n) {
    check_even_n(n);
    // Q' is periodic in n, so D is circulant: compute one column of values.
    std::vector<double> q(n);
    for (int d = 0; d < n; d++) q[d] = whittaker_kernel_deriv(d, n);
    Matrix dmat(n, n);
    for (int j = 0; j < n; j++)
        for (int i = 0; i < n; i++) dmat.at(j, i) = q[((j - i) % n + n) % n];
    return dmat;
}

Matrix coordinate_diagonal(int n, CoordConvention coords, bool along_x) {
    if (n < 1) throw shape_error("coordinate_diagonal: n must be positive");
    Matrix m(n * n, n * n);
    for (int r = 0; r < n; r++)
        for (int c = 0; c < n; c++) {
            const int k = r * n + c;
            const int idx = along_x ? c : r;
            m.at(k, k) = coords == CoordConvention::centered ? idx - (n - 1) / 2.0
                                                             : static_cast<double>(idx);
        }
    return m;
}

Operators2D build_operators_2d(const GridSpec& grid) {
    check_even_n(grid.n);
    Operators2D ops;
    ops.grid = grid;
    const Matrix d = derivative_matrix_1d(grid.n);
    const Matrix id = Matrix::identity(grid.n);
    ops.dx = kron(id, d);
    ops.dy = kron(d, id);
    ops.xx = coordinate_diagonal(grid.n, grid.coords, true);
    ops.xy = coordinate_diagonal(grid.n, grid.coords, false);
    return ops;
}

Vector flatten(const Matrix& image) {
    if (image.rows != image.cols) throw shape_error("flatten: image must be square");
    return Vector(image.a);
}

Matrix unflatten(const Vector& v, int n) {
    if (v.len() != n * n)
        throw shape_error("unflatten: length " + std::to_string(v.len()) +
                          " is not " + std::to_string(n) + "^2");
    Matrix m(n, n);
    m.a = v.v;
    return m;
}

}  // namespace liesym
