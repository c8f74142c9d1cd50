#pragma once

#include <array>
#include <span>
#include <vector>

#include "liesym/matrix.hpp"

namespace liesym {

// Overflow or non-finite result in a numerical routine.
class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ExpmResult {
    Matrix value;
    int scaling_s = 0;   // number of squarings
    int pade_order = 0;  // 3, 5, 7, 9 or 13
};

/// Scaling-and-squaring Pade approximation of e^A, order selected from the
/// one-norm via the standard {3,5,7,9,13} threshold ladder.
ExpmResult expm(const Matrix& a);

/// Frechet derivative L_exp(A,E) = d/ds exp(A+sE)|_{s=0}, computed from the
/// 2n x 2n block identity: exp([[A,E],[0,A]]) has L_exp(A,E) as its
/// upper-right block.
Matrix expm_frechet(const Matrix& a, const Matrix& e);

/// e^{tL} x
Vector flow_apply(const Matrix& l, double t, const Vector& x);

struct FlowGrads {
    double dt = 0.0;
    std::vector<double> dalpha;
    Vector dx;
};

/// Gradients of the scalar <g, e^{tL} x> for L = sum_c alpha_c basis[c]:
///   dt       = g . (L e^{tL} x)
///   dalpha_c = t * <L_exp((tL)^T, g x^T), basis[c]>_F
///   dx       = (e^{tL})^T g
FlowGrads flow_grads(const Matrix& l, double t, const Vector& x, const Vector& g,
                     std::span<const Matrix> basis);

/// Engine for evaluating a family e^{t_i L} sharing one L, as arises inside a
/// training step (alpha fixed across the batch, t varying per sample). The
/// Pade numerator and denominator of every sample are linear combinations of
/// powers of L, so the matrix powers are computed once per step and each
/// sample pays only for its own solve and squarings. The backward pass reuses
/// the forward factorization and exploits the rank-1 structure of the loss
/// gradient's perturbation direction. Results agree with flow_apply /
/// flow_grads to roundoff; the unit tests pin that down.
///
/// prepare() must be called before value/forward; afterwards all methods are
/// const and safe to call concurrently on distinct samples.
class FlowFamily {
  public:
    explicit FlowFamily(Matrix l);

    void prepare(double max_abs_t, bool for_backward);

    struct State {
        double t = 0.0;
        int order = 3;
        int s = 0;
        Vector x;
        Vector xhat;
        LuFactors lu;                 // factorization of V - U at the scaled tau
        std::vector<Matrix> squares;  // R_0 (Pade result) .. R_s = e^{tL}
    };

    /// e^{tL} x without retaining state: applies the Pade map 2^s times to
    /// the vector instead of squaring matrices.
    Vector value(double t, const Vector& x) const;

    /// Full forward pass retaining what backward() needs.
    State forward(double t, const Vector& x) const;

    /// Gradients of <g, e^{tL} x>; dalpha against the supplied basis.
    FlowGrads backward(const State& st, const Vector& g, std::span<const Matrix> basis) const;

    /// g . (L y) -- the dt gradient given y = e^{tL} x.
    double grad_t(const Vector& g, const Vector& y) const;

    const Matrix& l() const { return l_; }
    int dim() const { return l_.rows; }

  private:
    void select(double abs_t, bool for_backward, int& order, int& s) const;
    void combine(double tau, int order, Matrix& u, Matrix& v) const;

    Matrix l_;
    double norm1_ = 0.0;
    double norminf_ = 0.0;
    std::vector<Matrix> powers_;  // powers_[k] = L^{k+1}, filled by prepare()
};

}  // namespace liesym
