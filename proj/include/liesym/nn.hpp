#pragma once

#include <span>
#include <vector>

#include "liesym/matrix.hpp"
#include "liesym/rng.hpp"

namespace liesym {

enum class Activation { tanh_act, relu };

/// layer_dims = input -> hidden... -> output. Hidden layers use the chosen
/// activation, the output layer is always identity (t-hat and latent codes
/// are unconstrained reals).
struct MlpSpec {
    std::vector<int> layer_dims;
    Activation activation = Activation::tanh_act;

    int n_layers() const { return static_cast<int>(layer_dims.size()) - 1; }
    void validate() const;
};

struct MlpParams {
    MlpSpec spec;
    std::vector<Matrix> w;  // w[l] has shape dims[l+1] x dims[l]
    std::vector<Vector> b;

    size_t n_scalars() const;
    std::vector<double> flatten() const;
    void unflatten(std::span<const double> flat);
};

/// Weight init: uniform in +-1/sqrt(fan_in), biases zero.
MlpParams mlp_init(const MlpSpec& spec, Rng& rng);

struct MlpTape {
    Vector input;
    std::vector<Vector> pre;   // pre-activation per layer
    std::vector<Vector> post;  // activation per layer; post.back() is the output
};

Vector mlp_forward(const MlpParams& p, const Vector& input, MlpTape* tape = nullptr);

struct MlpGrads {
    std::vector<Matrix> dw;
    std::vector<Vector> db;

    void add_scaled(const MlpGrads& other, double s);
    std::vector<double> flatten() const;
};

MlpGrads mlp_zero_grads(const MlpParams& p);

/// Reverse pass for <upstream, output>: accumulates parameter gradients into
/// `grads` and returns the input gradient. The tape must come from a forward
/// pass of the same params (shape-checked).
Vector mlp_backward(const MlpParams& p, const MlpTape& tape, const Vector& upstream,
                    MlpGrads& grads);

/// Adam over a flat parameter vector. Elementwise, so callers may keep one
/// state per parameter group; stepping groups together or separately is
/// equivalent.
struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step = 0;
    std::vector<double> m;
    std::vector<double> v;

    AdamState() = default;
    AdamState(size_t n, double lr_) : lr(lr_), m(n, 0.0), v(n, 0.0) {}
};

/// Standard bias-corrected update; throws numeric_error on non-finite grads.
void adam_step(AdamState& st, std::span<double> params, std::span<const double> grads);

}  // namespace liesym
