#include "liesym/generator.hpp"

namespace liesym {

namespace {
// diag(d) * m without forming the product densely
Matrix diag_times(const Matrix& diag, const Matrix& m) {
    Matrix r = m;
    for (int i = 0; i < r.rows; i++) {
        const double di = diag.at(i, i);
        double* row = r.row(i);
        for (int j = 0; j < r.cols; j++) row[j] *= di;
    }
    return r;
}
}  // namespace

std::array<Matrix, 6> generator_basis(const Operators2D& ops) {
    return {ops.dx,
            diag_times(ops.xx, ops.dx),
            diag_times(ops.xy, ops.dx),
            ops.dy,
            diag_times(ops.xx, ops.dy),
            diag_times(ops.xy, ops.dy)};
}

Matrix assemble_from_basis(const GeneratorCoefficients& alpha, const std::array<Matrix, 6>& basis) {
    Matrix l(basis[0].rows, basis[0].cols);
    for (int c = 0; c < 6; c++) {
        const double w = alpha[c];
        if (w == 0.0) continue;
        const size_t n = l.a.size();
        for (size_t i = 0; i < n; i++) l.a[i] += w * basis[c].a[i];
    }
    return l;
}

Matrix assemble_generator(const GeneratorCoefficients& alpha, const Operators2D& ops) {
    // (a11 I + a12 X_x + a13 X_y) dx + (a21 I + a22 X_x + a23 X_y) dy,
    // with the coefficient diagonals applied per output pixel.
    const int n2 = ops.dx.rows;
    Matrix l(n2, n2);
    for (int i = 0; i < n2; i++) {
        const double cx = alpha[0] + alpha[1] * ops.xx.at(i, i) + alpha[2] * ops.xy.at(i, i);
        const double cy = alpha[3] + alpha[4] * ops.xx.at(i, i) + alpha[5] * ops.xy.at(i, i);
        const double* dxi = ops.dx.row(i);
        const double* dyi = ops.dy.row(i);
        double* li = l.row(i);
        for (int j = 0; j < n2; j++) li[j] = cx * dxi[j] + cy * dyi[j];
    }
    return l;
}

GroundTruthGroup ground_truth(const std::string& name) {
    if (name == "rotation")
        return {name, GeneratorCoefficients::from_rows(0, 0, 1, 0, -1, 0)};
    if (name == "translation-x")
        return {name, GeneratorCoefficients::from_rows(1, 0, 0, 0, 0, 0)};
    if (name == "translation-y")
        return {name, GeneratorCoefficients::from_rows(0, 0, 0, 1, 0, 0)};
    if (name == "isotropic-scaling")
        return {name, GeneratorCoefficients::from_rows(0, 1, 0, 0, 0, 1)};
    std::string known;
    for (const auto& k : ground_truth_names()) known += (known.empty() ? "" : ", ") + k;
    throw shape_error("unknown group '" + name + "' (known: " + known + ")");
}

std::array<std::string, 4> ground_truth_names() {
    return {"rotation", "translation-x", "translation-y", "isotropic-scaling"};
}

}  // namespace liesym
