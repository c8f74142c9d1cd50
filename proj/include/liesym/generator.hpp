#pragma once

#include <array>
#include <string>

#include "liesym/operators.hpp"

namespace liesym {

/// Coefficients of the affine generator in the basis {1, x, y}:
/// row 0 = (a11, a12, a13) multiplying (1, X_x, X_y) on the d/dx term,
/// row 1 = (a21, a22, a23) likewise on the d/dy term.
struct GeneratorCoefficients {
    std::array<double, 6> a{};  // a11 a12 a13 a21 a22 a23

    double& operator[](int i) { return a[static_cast<size_t>(i)]; }
    double operator[](int i) const { return a[static_cast<size_t>(i)]; }

    static GeneratorCoefficients from_rows(double a11, double a12, double a13, double a21,
                                           double a22, double a23) {
        return GeneratorCoefficients{{a11, a12, a13, a21, a22, a23}};
    }
    bool all_zero() const {
        for (double v : a)
            if (v != 0.0) return false;
        return true;
    }
};

struct GroundTruthGroup {
    std::string name;
    GeneratorCoefficients alpha_true;
};

/// The six basis operators {dx, X_x dx, X_y dx, dy, X_x dy, X_y dy}, in the
/// coefficient order of GeneratorCoefficients.
std::array<Matrix, 6> generator_basis(const Operators2D& ops);

/// L = sum_c alpha_c B_c; coefficient diagonals multiply the derivative
/// operators from the left.
Matrix assemble_generator(const GeneratorCoefficients& alpha, const Operators2D& ops);

/// Same contraction against a prebuilt basis (used by training loops).
Matrix assemble_from_basis(const GeneratorCoefficients& alpha, const std::array<Matrix, 6>& basis);

/// Catalog entries: rotation, translation-x, translation-y, isotropic-scaling.
GroundTruthGroup ground_truth(const std::string& name);
std::array<std::string, 4> ground_truth_names();

}  // namespace liesym
