#include "liesym/expm.hpp"

#include <cmath>

namespace liesym {

namespace {

// Pade coefficient tables and one-norm thresholds for orders 3..13.
const double kB3[] = {120.0, 60.0, 12.0, 1.0};
const double kB5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
const double kB7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0};
const double kB9[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                      2162160.0,     110880.0,     3960.0,       90.0,        1.0};
const double kB13[] = {64764752532480000.0,
                       32382376266240000.0,
                       7771770303897600.0,
                       1187353796428800.0,
                       129060195264000.0,
                       10559470521600.0,
                       670442572800.0,
                       33522128640.0,
                       1323241920.0,
                       40840800.0,
                       960960.0,
                       16380.0,
                       182.0,
                       1.0};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

const double* pade_coeffs(int order) {
    switch (order) {
        case 3: return kB3;
        case 5: return kB5;
        case 7: return kB7;
        case 9: return kB9;
        default: return kB13;
    }
}

void select_order_and_scaling(double norm, int& order, int& s) {
    s = 0;
    if (norm <= kTheta3) order = 3;
    else if (norm <= kTheta5) order = 5;
    else if (norm <= kTheta7) order = 7;
    else if (norm <= kTheta9) order = 9;
    else {
        order = 13;
        if (norm > kTheta13) {
            std::frexp(norm / kTheta13, &s);
            if (s < 0) s = 0;
            if (s > 60) throw numeric_error("expm: matrix norm too large for f64 range");
        }
    }
}

// U and V of the Pade approximant via the usual nested even-power scheme.
void pade_uv(const Matrix& a, int order, Matrix& u, Matrix& v) {
    const int n = a.rows;
    const double* b = pade_coeffs(order);
    const Matrix id = Matrix::identity(n);
    const Matrix a2 = matmul(a, a);
    if (order == 3) {
        u = matmul(a, lincomb(b[3], a2, b[1], id));
        v = lincomb(b[2], a2, b[0], id);
        return;
    }
    const Matrix a4 = matmul(a2, a2);
    if (order == 5) {
        u = matmul(a, add(scale(a4, b[5]), lincomb(b[3], a2, b[1], id)));
        v = add(scale(a4, b[4]), lincomb(b[2], a2, b[0], id));
        return;
    }
    const Matrix a6 = matmul(a4, a2);
    if (order == 7) {
        u = matmul(a, add(scale(a6, b[7]), add(scale(a4, b[5]), lincomb(b[3], a2, b[1], id))));
        v = add(scale(a6, b[6]), add(scale(a4, b[4]), lincomb(b[2], a2, b[0], id)));
        return;
    }
    if (order == 9) {
        const Matrix a8 = matmul(a6, a2);
        u = matmul(a, add(add(scale(a8, b[9]), scale(a6, b[7])),
                          add(scale(a4, b[5]), lincomb(b[3], a2, b[1], id))));
        v = add(add(scale(a8, b[8]), scale(a6, b[6])),
                add(scale(a4, b[4]), lincomb(b[2], a2, b[0], id)));
        return;
    }
    // order 13
    Matrix w1 = add(scale(a6, b[13]), lincomb(b[11], a4, b[9], a2));
    Matrix w2 = add(scale(a6, b[7]), add(scale(a4, b[5]), lincomb(b[3], a2, b[1], id)));
    u = matmul(a, add(matmul(a6, w1), w2));
    Matrix z1 = add(scale(a6, b[12]), lincomb(b[10], a4, b[8], a2));
    v = add(matmul(a6, z1), add(scale(a6, b[6]), add(scale(a4, b[4]), lincomb(b[2], a2, b[0], id))));
}

void check_finite(const Matrix& m, const char* what) {
    for (double x : m.a)
        if (!std::isfinite(x)) throw numeric_error(std::string(what) + ": non-finite result");
}

}  // namespace

ExpmResult expm(const Matrix& a) {
    if (a.rows != a.cols) throw shape_error("expm: matrix must be square");
    int order = 13, s = 0;
    select_order_and_scaling(one_norm(a), order, s);
    const Matrix as = s > 0 ? scale(a, std::ldexp(1.0, -s)) : a;
    Matrix u, v;
    pade_uv(as, order, u, v);
    Matrix r = lu_solve(lu_factor(sub(v, u)), add(v, u));
    for (int i = 0; i < s; i++) r = matmul(r, r);
    check_finite(r, "expm");
    return {std::move(r), s, order};
}

Matrix expm_frechet(const Matrix& a, const Matrix& e) {
    if (a.rows != a.cols || !a.same_shape(e))
        throw shape_error("expm_frechet: A and E must be square with equal shape");
    const int n = a.rows;
    Matrix block(2 * n, 2 * n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            block.at(i, j) = a.at(i, j);
            block.at(i, n + j) = e.at(i, j);
            block.at(n + i, n + j) = a.at(i, j);
        }
    const Matrix full = expm(block).value;
    Matrix out(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) out.at(i, j) = full.at(i, n + j);
    return out;
}

Vector flow_apply(const Matrix& l, double t, const Vector& x) {
    if (l.rows != l.cols || l.cols != x.len()) throw shape_error("flow_apply: shape mismatch");
    return matvec(expm(scale(l, t)).value, x);
}

FlowGrads flow_grads(const Matrix& l, double t, const Vector& x, const Vector& g,
                     std::span<const Matrix> basis) {
    if (l.rows != l.cols || l.cols != x.len() || g.len() != x.len())
        throw shape_error("flow_grads: shape mismatch");
    const Matrix a = scale(l, t);
    const Matrix r = expm(a).value;
    const Vector xhat = matvec(r, x);
    FlowGrads out;
    out.dt = dot(g, matvec(l, xhat));
    out.dx = matvec_transposed(r, g);
    Matrix gxt(x.len(), x.len());
    for (int i = 0; i < g.len(); i++) {
        const double gi = g[i];
        double* row = gxt.row(i);
        for (int j = 0; j < x.len(); j++) row[j] = gi * x[j];
    }
    const Matrix ga = expm_frechet(transpose(a), gxt);
    out.dalpha.resize(basis.size());
    for (size_t c = 0; c < basis.size(); c++) out.dalpha[c] = t * frobenius_dot(ga, basis[c]);
    return out;
}

// ---- FlowFamily ----

FlowFamily::FlowFamily(Matrix l) : l_(std::move(l)) {
    if (l_.rows != l_.cols) throw shape_error("FlowFamily: L must be square");
    norm1_ = one_norm(l_);
    double best = 0.0;
    for (int i = 0; i < l_.rows; i++) {
        double s = 0.0;
        for (int j = 0; j < l_.cols; j++) s += std::abs(l_.at(i, j));
        best = std::max(best, s);
    }
    norminf_ = best;
}

void FlowFamily::select(double abs_t, bool for_backward, int& order, int& s) const {
    // For the backward pass the block system carries the (normalized)
    // perturbation next to L^T, so budget for the transpose norm plus one.
    const double nu =
        for_backward ? abs_t * std::max(norm1_, norminf_) + 1.0 : abs_t * norm1_;
    select_order_and_scaling(nu, order, s);
}

void FlowFamily::prepare(double max_abs_t, bool for_backward) {
    int order, s;
    select(max_abs_t, for_backward, order, s);
    const size_t need = static_cast<size_t>(order);
    if (powers_.size() >= need) return;
    if (powers_.empty()) powers_.push_back(l_);
    while (powers_.size() < need) powers_.push_back(matmul(powers_.back(), l_));
}

void FlowFamily::combine(double tau, int order, Matrix& u, Matrix& v) const {
    const int n = l_.rows;
    const double* b = pade_coeffs(order);
    u = Matrix(n, n);
    v = Matrix(n, n);
    for (int i = 0; i < n; i++) v.at(i, i) = b[0];
    double tk = 1.0;
    for (int k = 1; k <= order; k++) {
        tk *= tau;
        const double c = b[k] * tk;
        const Matrix& p = powers_[static_cast<size_t>(k - 1)];
        Matrix& dst = (k % 2 == 1) ? u : v;
        const size_t len = dst.a.size();
        for (size_t i = 0; i < len; i++) dst.a[i] += c * p.a[i];
    }
}

Vector FlowFamily::value(double t, const Vector& x) const {
    if (x.len() != dim()) throw shape_error("FlowFamily::value: length mismatch");
    int order, s;
    select(std::abs(t), false, order, s);
    if (powers_.size() < static_cast<size_t>(order))
        throw shape_error("FlowFamily::value: prepare() not called for this |t|");
    const double tau = std::ldexp(t, -s);
    Matrix u, v;
    combine(tau, order, u, v);
    const LuFactors lu = lu_factor(sub(v, u));
    const Matrix numer = add(v, u);
    Vector y = x;
    const long reps = 1L << s;
    for (long r = 0; r < reps; r++) y = lu_solve(lu, matvec(numer, y));
    for (double val : y.v)
        if (!std::isfinite(val)) throw numeric_error("FlowFamily::value: non-finite result");
    return y;
}

FlowFamily::State FlowFamily::forward(double t, const Vector& x) const {
    if (x.len() != dim()) throw shape_error("FlowFamily::forward: length mismatch");
    State st;
    st.t = t;
    st.x = x;
    select(std::abs(t), true, st.order, st.s);
    if (powers_.size() < static_cast<size_t>(st.order))
        throw shape_error("FlowFamily::forward: prepare() not called for this |t|");
    const double tau = std::ldexp(t, -st.s);
    Matrix u, v;
    combine(tau, st.order, u, v);
    st.lu = lu_factor(sub(v, u));
    st.squares.clear();
    st.squares.push_back(lu_solve(st.lu, add(v, u)));
    for (int i = 0; i < st.s; i++) {
        const Matrix& r = st.squares.back();
        st.squares.push_back(matmul(r, r));
    }
    st.xhat = matvec(st.squares.back(), x);
    for (double val : st.xhat.v)
        if (!std::isfinite(val)) throw numeric_error("FlowFamily::forward: non-finite result");
    return st;
}

double FlowFamily::grad_t(const Vector& g, const Vector& y) const {
    return dot(g, matvec(l_, y));
}

FlowGrads FlowFamily::backward(const State& st, const Vector& g,
                               std::span<const Matrix> basis) const {
    const int n = dim();
    if (g.len() != n) throw shape_error("FlowFamily::backward: length mismatch");
    FlowGrads out;
    out.dt = grad_t(g, st.xhat);
    out.dx = matvec_transposed(st.squares.back(), g);
    out.dalpha.assign(basis.size(), 0.0);

    // G = L_exp((tL)^T, g x^T). Normalize the perturbation so the order
    // selection in forward() covers the block system's norm.
    double gsum = 0.0, xmax = 0.0;
    for (double v : g.v) gsum += std::abs(v);
    for (double v : st.x.v) xmax = std::max(xmax, std::abs(v));
    const double enorm = gsum * xmax;  // = ||g x^T||_1
    if (enorm == 0.0) return out;

    const int m = st.order;
    const double tau = std::ldexp(st.t, -st.s);
    const double escale = std::ldexp(1.0, -st.s);

    // Krylov-style vector chains: ucols[a] = (L^T)^a g / enorm, wcols[b] = L^b x.
    Matrix ucols(n, m), wcols(n, m);
    {
        Vector uv = g, wv = st.x;
        for (int i = 0; i < n; i++) ucols.at(i, 0) = uv[i] / enorm;
        for (int i = 0; i < n; i++) wcols.at(i, 0) = wv[i];
        for (int k = 1; k < m; k++) {
            uv = matvec_transposed(l_, uv);
            wv = matvec(l_, wv);
            for (int i = 0; i < n; i++) ucols.at(i, k) = uv[i] / enorm;
            for (int i = 0; i < n; i++) wcols.at(i, k) = wv[i];
        }
    }

    // Off-diagonal blocks of the Pade numerator/denominator of
    // [[(tau L)^T, E'],[0, (tau L)^T]]: Y_k = sum_{a+b=k-1} tau^{a+b}
    // u_a w_b^T, folded into coefficient matrices over (a, b).
    const double* b = pade_coeffs(m);
    std::vector<double> taupow(static_cast<size_t>(m), 1.0);
    for (int k = 1; k < m; k++) taupow[static_cast<size_t>(k)] = taupow[static_cast<size_t>(k - 1)] * tau;
    Matrix cu(m, m), cv(m, m);  // coefficients for Y_U and Y_V
    for (int k = 1; k <= m; k++) {
        const double c = b[k] * taupow[static_cast<size_t>(k - 1)] * escale;
        for (int a = 0; a <= k - 1; a++) {
            const int bb = k - 1 - a;
            if (k % 2 == 1) cu.at(a, bb) += c;
            else cv.at(a, bb) += c;
        }
    }
    const Matrix yu = matmul(matmul(ucols, cu), transpose(wcols));
    const Matrix yv = matmul(matmul(ucols, cv), transpose(wcols));

    // Block solve: Y_R = (V-U)^{-T} (Y_N - Y_D X_R) with X_R = R_0^T.
    const Matrix& r0 = st.squares.front();
    const Matrix yn = add(yv, yu);
    const Matrix yd = sub(yv, yu);
    Matrix y = lu_solve_transposed(st.lu, sub(yn, matmul(yd, transpose(r0))));

    // Squaring phase: (X, Y) -> (X^2, XY + YX) with X_j = R_j^T.
    for (int j = 0; j < st.s; j++) {
        const Matrix rt = transpose(st.squares[static_cast<size_t>(j)]);
        y = add(matmul(rt, y), matmul(y, rt));
    }

    for (size_t c = 0; c < basis.size(); c++)
        out.dalpha[c] = st.t * enorm * frobenius_dot(y, basis[c]);
    return out;
}

}  // namespace liesym
