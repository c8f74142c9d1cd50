#pragma once

#include "liesym/matrix.hpp"

namespace liesym {

enum class CoordConvention { centered, zero_based };

/// Square periodic sampling grid. n must be even (the interpolation kernel's
/// cosine sum runs to n/2-1) and at least 4.
struct GridSpec {
    int n = 0;
    CoordConvention coords = CoordConvention::centered;

    GridSpec() = default;
    GridSpec(int n_, CoordConvention c);  // validates

    /// coordinate of sample index i along either axis
    double coord(int i) const {
        return coords == CoordConvention::centered ? i - (n - 1) / 2.0 : static_cast<double>(i);
    }
};

/// The four n^2 x n^2 operators entering the affine generator, plus the grid
/// they were built on. dx acts along x (column index, fastest-varying under
/// row-major flattening), dy along y (row index).
struct Operators2D {
    Matrix dx;   // I_n (x) D
    Matrix dy;   // D (x) I_n
    Matrix xx;   // diagonal of per-pixel x coordinates
    Matrix xy;   // diagonal of per-pixel y coordinates
    GridSpec grid;
};

/// Periodic Shannon-Whittaker kernel Q(x) = (1/n)[1 + 2 sum_{p=1}^{n/2-1} cos(2 pi p x / n)].
double whittaker_kernel(double x, int n);

/// Q'(x) = -(4 pi / n^2) sum_{p=1}^{n/2-1} p sin(2 pi p x / n)
double whittaker_kernel_deriv(double x, int n);

/// Spectral differentiation matrix D[j][i] = Q'(j - i): maps samples of a
/// Nyquist-free periodic signal to samples of its derivative.
Matrix derivative_matrix_1d(int n);

/// Diagonal matrix of per-pixel coordinates along one axis. `along_x` selects
/// the column-index coordinate, otherwise the row index. Works for any n >= 1
/// (plain coordinate bookkeeping, no kernel involved).
Matrix coordinate_diagonal(int n, CoordConvention coords, bool along_x);

Operators2D build_operators_2d(const GridSpec& grid);

/// Row-major flattening, k = row*n + col.
Vector flatten(const Matrix& image);
Matrix unflatten(const Vector& v, int n);

}  // namespace liesym
