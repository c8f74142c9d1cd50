#include "liesym/matrix.hpp"

#include <cmath>
#include <cstdlib>

namespace liesym {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_data(int r, int c, std::vector<double> entries) {
    if (r <= 0 || c <= 0)
        throw shape_error("matrix dimensions must be positive");
    if (entries.size() != static_cast<size_t>(r) * c)
        throw shape_error("entry count " + std::to_string(entries.size()) +
                          " does not match " + std::to_string(r) + "x" + std::to_string(c));
    for (double x : entries)
        if (!std::isfinite(x)) throw shape_error("non-finite matrix entry");
    Matrix m;
    m.rows = r;
    m.cols = c;
    m.a = std::move(entries);
    return m;
}

Vector Vector::from_data(std::vector<double> entries) {
    if (entries.empty()) throw shape_error("vector must be nonempty");
    for (double x : entries)
        if (!std::isfinite(x)) throw shape_error("non-finite vector entry");
    return Vector(std::move(entries));
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows)
        throw shape_error("matmul shape mismatch: " + std::to_string(a.rows) + "x" +
                          std::to_string(a.cols) + " * " + std::to_string(b.rows) + "x" +
                          std::to_string(b.cols));
    Matrix c(a.rows, b.cols);
    const int m = a.rows, kk = a.cols, n = b.cols;
    // ikj order: each c[i][j] accumulates over k ascending, so the result
    // does not depend on how rows are split across threads.
#pragma omp parallel for if (m >= 48 && n >= 48) schedule(static)
    for (int i = 0; i < m; i++) {
        double* ci = c.row(i);
        const double* ai = a.row(i);
        for (int k = 0; k < kk; k++) {
            const double aik = ai[k];
            const double* bk = b.row(k);
            for (int j = 0; j < n; j++) ci[j] += aik * bk[j];
        }
    }
    return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const int p = b.rows, q = b.cols;
    Matrix c(a.rows * p, a.cols * q);
#pragma omp parallel for if (a.rows * p >= 64) schedule(static)
    for (int i = 0; i < a.rows; i++) {
        for (int k = 0; k < p; k++) {
            double* crow = c.row(i * p + k);
            const double* brow = b.row(k);
            for (int j = 0; j < a.cols; j++) {
                const double aij = a.at(i, j);
                if (aij == 0.0) continue;
                double* dst = crow + static_cast<size_t>(j) * q;
                for (int l = 0; l < q; l++) dst[l] = aij * brow[l];
            }
        }
    }
    return c;
}

static void check_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (!a.same_shape(b)) throw shape_error(std::string(what) + ": shape mismatch");
}

Matrix add(const Matrix& a, const Matrix& b) { return lincomb(1.0, a, 1.0, b); }
Matrix sub(const Matrix& a, const Matrix& b) { return lincomb(1.0, a, -1.0, b); }

Matrix scale(const Matrix& a, double s) {
    Matrix c = a;
    for (double& x : c.a) x *= s;
    return c;
}

Matrix lincomb(double alpha, const Matrix& a, double beta, const Matrix& b) {
    check_same_shape(a, b, "lincomb");
    Matrix c(a.rows, a.cols);
    const size_t n = c.a.size();
    for (size_t i = 0; i < n; i++) c.a[i] = alpha * a.a[i] + beta * b.a[i];
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix c(a.cols, a.rows);
    for (int i = 0; i < a.rows; i++)
        for (int j = 0; j < a.cols; j++) c.at(j, i) = a.at(i, j);
    return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols != x.len()) throw shape_error("matvec shape mismatch");
    Vector y(a.rows);
#pragma omp parallel for if (a.rows >= 256) schedule(static)
    for (int i = 0; i < a.rows; i++) {
        const double* ai = a.row(i);
        double s = 0.0;
        for (int j = 0; j < a.cols; j++) s += ai[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector matvec_transposed(const Matrix& a, const Vector& x) {
    if (a.rows != x.len()) throw shape_error("matvec_transposed shape mismatch");
    Vector y(a.cols);
    // accumulate row by row; order is fixed regardless of threading (serial)
    for (int i = 0; i < a.rows; i++) {
        const double* ai = a.row(i);
        const double xi = x[i];
        for (int j = 0; j < a.cols; j++) y[j] += xi * ai[j];
    }
    return y;
}

double one_norm(const Matrix& a) {
    double best = 0.0;
    for (int j = 0; j < a.cols; j++) {
        double s = 0.0;
        for (int i = 0; i < a.rows; i++) s += std::abs(a.at(i, j));
        if (s > best) best = s;
    }
    return best;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double x : a.a) s += x * x;
    return std::sqrt(s);
}

double max_abs(const Matrix& a) {
    double best = 0.0;
    for (double x : a.a) best = std::max(best, std::abs(x));
    return best;
}

double frobenius_dot(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw shape_error("frobenius_dot: shape mismatch");
    double s = 0.0;
    const size_t n = a.a.size();
    for (size_t i = 0; i < n; i++) s += a.a[i] * b.a[i];
    return s;
}

double norm2(const Vector& x) {
    double s = 0.0;
    for (double v : x.v) s += v * v;
    return std::sqrt(s);
}

double dot(const Vector& x, const Vector& y) {
    if (x.len() != y.len()) throw shape_error("dot: length mismatch");
    double s = 0.0;
    for (int i = 0; i < x.len(); i++) s += x[i] * y[i];
    return s;
}

LuFactors lu_factor(const Matrix& a) {
    if (a.rows != a.cols) throw shape_error("lu_factor: matrix must be square");
    const int n = a.rows;
    LuFactors f;
    f.lu = a;
    f.perm.resize(n);
    for (int i = 0; i < n; i++) f.perm[i] = i;
    Matrix& lu = f.lu;

    for (int k = 0; k < n; k++) {
        int piv = k;
        double best = std::abs(lu.at(k, k));
        for (int i = k + 1; i < n; i++) {
            const double v = std::abs(lu.at(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0 || !std::isfinite(best))
            throw singular_error("lu_factor: singular to working precision at column " +
                                 std::to_string(k));
        if (piv != k) {
            for (int j = 0; j < n; j++) std::swap(lu.at(k, j), lu.at(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
        }
        const double pivot = lu.at(k, k);
#pragma omp parallel for if (n - k > 128) schedule(static)
        for (int i = k + 1; i < n; i++) {
            const double m = lu.at(i, k) / pivot;
            lu.at(i, k) = m;
            const double* rk = lu.row(k);
            double* ri = lu.row(i);
            for (int j = k + 1; j < n; j++) ri[j] -= m * rk[j];
        }
    }
    return f;
}

Matrix lu_solve(const LuFactors& f, const Matrix& b) {
    const int n = f.lu.rows;
    if (b.rows != n) throw shape_error("lu_solve: rhs row count mismatch");
    const int m = b.cols;
    Matrix x(n, m);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < m; j++) x.at(i, j) = b.at(f.perm[i], j);
    // forward substitution (unit lower)
    for (int i = 1; i < n; i++) {
        const double* li = f.lu.row(i);
        double* xi = x.row(i);
        for (int k = 0; k < i; k++) {
            const double lik = li[k];
            if (lik == 0.0) continue;
            const double* xk = x.row(k);
            for (int j = 0; j < m; j++) xi[j] -= lik * xk[j];
        }
    }
    // back substitution
    for (int i = n - 1; i >= 0; i--) {
        const double* ui = f.lu.row(i);
        double* xi = x.row(i);
        for (int k = i + 1; k < n; k++) {
            const double uik = ui[k];
            if (uik == 0.0) continue;
            const double* xk = x.row(k);
            for (int j = 0; j < m; j++) xi[j] -= uik * xk[j];
        }
        const double d = ui[i];
        for (int j = 0; j < m; j++) xi[j] /= d;
    }
    return x;
}

Vector lu_solve(const LuFactors& f, const Vector& b) {
    Matrix bm(b.len(), 1);
    for (int i = 0; i < b.len(); i++) bm.at(i, 0) = b[i];
    Matrix xm = lu_solve(f, bm);
    Vector x(b.len());
    for (int i = 0; i < b.len(); i++) x[i] = xm.at(i, 0);
    return x;
}

Matrix lu_solve_transposed(const LuFactors& f, const Matrix& b) {
    // A = P^T L U  =>  A^T = U^T L^T P. Solve U^T z = b, L^T w = z, x = P^T w.
    const int n = f.lu.rows;
    if (b.rows != n) throw shape_error("lu_solve_transposed: rhs row count mismatch");
    const int m = b.cols;
    Matrix x = b;
    // U^T is lower triangular with diagonal of U
    for (int i = 0; i < n; i++) {
        double* xi = x.row(i);
        const double d = f.lu.at(i, i);
        for (int j = 0; j < m; j++) xi[j] /= d;
        for (int k = i + 1; k < n; k++) {
            const double uik = f.lu.at(i, k);  // (U^T)[k,i]
            if (uik == 0.0) continue;
            double* xk = x.row(k);
            for (int j = 0; j < m; j++) xk[j] -= uik * xi[j];
        }
    }
    // L^T is unit upper triangular
    for (int i = n - 1; i >= 0; i--) {
        double* xi = x.row(i);
        for (int k = 0; k < i; k++) {
            const double lik = f.lu.at(i, k);  // (L^T)[k,i]
            if (lik == 0.0) continue;
            double* xk = x.row(k);
            for (int j = 0; j < m; j++) xk[j] -= lik * xi[j];
        }
    }
    // x = P^T w: row perm[i] of result is row i of w
    Matrix out(n, m);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < m; j++) out.at(f.perm[i], j) = x.at(i, j);
    return out;
}

Matrix solve(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows) throw shape_error("solve: rhs row count mismatch");
    return lu_solve(lu_factor(a), b);
}

namespace ref {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw shape_error("ref::matmul shape mismatch");
    Matrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; i++)
        for (int j = 0; j < b.cols; j++) {
            double s = 0.0;
            for (int k = 0; k < a.cols; k++) s += a.at(i, k) * b.at(k, j);
            c.at(i, j) = s;
        }
    return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows * b.rows, a.cols * b.cols);
    for (int i = 0; i < a.rows; i++)
        for (int j = 0; j < a.cols; j++)
            for (int k = 0; k < b.rows; k++)
                for (int l = 0; l < b.cols; l++)
                    c.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
    return c;
}

double one_norm(const Matrix& a) {
    double best = 0.0;
    for (int j = 0; j < a.cols; j++) {
        double s = 0.0;
        for (int i = 0; i < a.rows; i++) s += std::abs(a.at(i, j));
        best = std::max(best, s);
    }
    return best;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows; i++)
        for (int j = 0; j < a.cols; j++) s += a.at(i, j) * a.at(i, j);
    return std::sqrt(s);
}

Matrix expm_taylor(const Matrix& a, int terms) {
    if (a.rows != a.cols) throw shape_error("expm_taylor: matrix must be square");
    // scale until the norm is small, sum the series, square back up
    int s = 0;
    double nrm = ref::one_norm(a);
    while (nrm > 0.25 && s < 60) {
        nrm /= 2.0;
        s++;
    }
    Matrix as = scale(a, std::ldexp(1.0, -s));
    Matrix sum = Matrix::identity(a.rows);
    Matrix term = Matrix::identity(a.rows);
    for (int k = 1; k <= terms; k++) {
        term = scale(ref::matmul(term, as), 1.0 / k);
        sum = add(sum, term);
    }
    for (int k = 0; k < s; k++) sum = ref::matmul(sum, sum);
    return sum;
}

}  // namespace ref

}  // namespace liesym
