#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace liesym {

/// Dense row-major matrix of 64-bit reals. Values are immutable by
/// convention once an operation returns them; all kernels below are pure.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;  // row-major, rows*cols entries

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    double* row(int i) { return a.data() + static_cast<size_t>(i) * cols; }
    const double* row(int i) const { return a.data() + static_cast<size_t>(i) * cols; }

    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }

    static Matrix identity(int n);
    // Validating constructor for data crossing an external boundary:
    // rejects shape/length mismatch and non-finite entries.
    static Matrix from_data(int r, int c, std::vector<double> entries);
};

struct Vector {
    std::vector<double> v;

    Vector() = default;
    explicit Vector(int n) : v(static_cast<size_t>(n), 0.0) {}
    explicit Vector(std::vector<double> entries) : v(std::move(entries)) {}

    int len() const { return static_cast<int>(v.size()); }
    double& operator[](int i) { return v[static_cast<size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<size_t>(i)]; }

    static Vector from_data(std::vector<double> entries);  // validates finiteness
};

// Shape or domain violation on an operation input.
class shape_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Matrix numerically singular to working precision.
class singular_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---- kernels (OpenMP-parallel where profitable; results are bitwise
// ---- independent of the worker count: every output entry is produced by
// ---- exactly one thread with a fixed left-to-right summation order).

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);
// r = alpha*a + beta*b
Matrix lincomb(double alpha, const Matrix& a, double beta, const Matrix& b);
Matrix transpose(const Matrix& a);

Vector matvec(const Matrix& a, const Vector& x);
Vector matvec_transposed(const Matrix& a, const Vector& x);  // A^T x

double one_norm(const Matrix& a);        // max column sum of |entries|
double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
double frobenius_dot(const Matrix& a, const Matrix& b);  // <A,B>_F = sum(A.*B)

double norm2(const Vector& x);
double dot(const Vector& x, const Vector& y);

// LU factorization with partial pivoting, kept around so callers can
// solve repeatedly (and against the transpose) without refactoring.
struct LuFactors {
    Matrix lu;               // combined L (unit diagonal) and U
    std::vector<int> perm;   // row permutation applied to the input
};

LuFactors lu_factor(const Matrix& a);                        // throws singular_error
Matrix lu_solve(const LuFactors& f, const Matrix& b);        // A X = B
Vector lu_solve(const LuFactors& f, const Vector& b);
Matrix lu_solve_transposed(const LuFactors& f, const Matrix& b);  // A^T X = B

// Solve A X = B (LU with partial pivoting).
Matrix solve(const Matrix& a, const Matrix& b);

// Serial reference kernels. Deliberately written as the most direct
// loops; unit tests and the benchmark compare the parallel kernels
// against these.
namespace ref {

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
double one_norm(const Matrix& a);
double frobenius_norm(const Matrix& a);

// Scaled 50-term Taylor series with repeated squaring. Accuracy oracle
// for the Pade exponential on small, moderately scaled inputs.
Matrix expm_taylor(const Matrix& a, int terms = 50);

}  // namespace ref

}  // namespace liesym
