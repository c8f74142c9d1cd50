#include "liesym/nn.hpp"

#include <cmath>

#include "liesym/expm.hpp"  // numeric_error

namespace liesym {

void MlpSpec::validate() const {
    if (layer_dims.size() < 2) throw shape_error("MlpSpec: need at least input and output dims");
    for (int d : layer_dims)
        if (d <= 0) throw shape_error("MlpSpec: layer dims must be positive");
}

size_t MlpParams::n_scalars() const {
    size_t n = 0;
    for (size_t l = 0; l < w.size(); l++) n += w[l].a.size() + b[l].v.size();
    return n;
}

std::vector<double> MlpParams::flatten() const {
    std::vector<double> out;
    out.reserve(n_scalars());
    for (size_t l = 0; l < w.size(); l++) {
        out.insert(out.end(), w[l].a.begin(), w[l].a.end());
        out.insert(out.end(), b[l].v.begin(), b[l].v.end());
    }
    return out;
}

void MlpParams::unflatten(std::span<const double> flat) {
    if (flat.size() != n_scalars()) throw shape_error("MlpParams::unflatten: length mismatch");
    size_t pos = 0;
    for (size_t l = 0; l < w.size(); l++) {
        std::copy(flat.begin() + pos, flat.begin() + pos + w[l].a.size(), w[l].a.begin());
        pos += w[l].a.size();
        std::copy(flat.begin() + pos, flat.begin() + pos + b[l].v.size(), b[l].v.begin());
        pos += b[l].v.size();
    }
}

MlpParams mlp_init(const MlpSpec& spec, Rng& rng) {
    spec.validate();
    MlpParams p;
    p.spec = spec;
    for (int l = 0; l < spec.n_layers(); l++) {
        const int fan_in = spec.layer_dims[static_cast<size_t>(l)];
        const int fan_out = spec.layer_dims[static_cast<size_t>(l) + 1];
        Matrix w(fan_out, fan_in);
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (double& x : w.a) x = rng.uniform(-bound, bound);
        p.w.push_back(std::move(w));
        p.b.emplace_back(fan_out);
    }
    return p;
}

namespace {
double activate(double z, Activation act) {
    return act == Activation::tanh_act ? std::tanh(z) : (z > 0.0 ? z : 0.0);
}
double activate_deriv(double z, double a, Activation act) {
    return act == Activation::tanh_act ? 1.0 - a * a : (z > 0.0 ? 1.0 : 0.0);
}
}  // namespace

Vector mlp_forward(const MlpParams& p, const Vector& input, MlpTape* tape) {
    if (input.len() != p.spec.layer_dims.front())
        throw shape_error("mlp_forward: input length mismatch");
    if (tape) {
        tape->input = input;
        tape->pre.clear();
        tape->post.clear();
    }
    Vector a = input;
    const int nl = p.spec.n_layers();
    for (int l = 0; l < nl; l++) {
        Vector z = matvec(p.w[static_cast<size_t>(l)], a);
        const Vector& bias = p.b[static_cast<size_t>(l)];
        for (int i = 0; i < z.len(); i++) z[i] += bias[i];
        Vector out = z;
        if (l < nl - 1)
            for (int i = 0; i < out.len(); i++) out[i] = activate(z[i], p.spec.activation);
        if (tape) {
            tape->pre.push_back(z);
            tape->post.push_back(out);
        }
        a = std::move(out);
    }
    return a;
}

MlpGrads mlp_zero_grads(const MlpParams& p) {
    MlpGrads g;
    for (size_t l = 0; l < p.w.size(); l++) {
        g.dw.emplace_back(p.w[l].rows, p.w[l].cols);
        g.db.emplace_back(p.b[l].len());
    }
    return g;
}

void MlpGrads::add_scaled(const MlpGrads& other, double s) {
    for (size_t l = 0; l < dw.size(); l++) {
        for (size_t i = 0; i < dw[l].a.size(); i++) dw[l].a[i] += s * other.dw[l].a[i];
        for (size_t i = 0; i < db[l].v.size(); i++) db[l].v[i] += s * other.db[l].v[i];
    }
}

std::vector<double> MlpGrads::flatten() const {
    std::vector<double> out;
    for (size_t l = 0; l < dw.size(); l++) {
        out.insert(out.end(), dw[l].a.begin(), dw[l].a.end());
        out.insert(out.end(), db[l].v.begin(), db[l].v.end());
    }
    return out;
}

Vector mlp_backward(const MlpParams& p, const MlpTape& tape, const Vector& upstream,
                    MlpGrads& grads) {
    const int nl = p.spec.n_layers();
    if (static_cast<int>(tape.pre.size()) != nl || tape.input.len() != p.spec.layer_dims.front())
        throw shape_error("mlp_backward: tape does not match params");
    for (int l = 0; l < nl; l++)
        if (tape.pre[static_cast<size_t>(l)].len() != p.spec.layer_dims[static_cast<size_t>(l) + 1])
            throw shape_error("mlp_backward: tape layer width mismatch");
    if (upstream.len() != p.spec.layer_dims.back())
        throw shape_error("mlp_backward: upstream length mismatch");

    Vector delta = upstream;  // last layer is identity
    for (int l = nl - 1; l >= 0; l--) {
        const size_t lu = static_cast<size_t>(l);
        if (l < nl - 1) {
            const Vector& z = tape.pre[lu];
            const Vector& a = tape.post[lu];
            for (int i = 0; i < delta.len(); i++)
                delta[i] *= activate_deriv(z[i], a[i], p.spec.activation);
        }
        const Vector& below = l == 0 ? tape.input : tape.post[lu - 1];
        Matrix& dw = grads.dw[lu];
        for (int i = 0; i < delta.len(); i++) {
            const double di = delta[i];
            double* row = dw.row(i);
            for (int j = 0; j < below.len(); j++) row[j] += di * below[j];
            grads.db[lu][i] += di;
        }
        delta = matvec_transposed(p.w[lu], delta);
    }
    return delta;
}

void adam_step(AdamState& st, std::span<double> params, std::span<const double> grads) {
    if (params.size() != grads.size() || params.size() != st.m.size())
        throw shape_error("adam_step: size mismatch");
    for (double g : grads)
        if (!std::isfinite(g)) throw numeric_error("adam_step: non-finite gradient");
    st.step++;
    const double bc1 = 1.0 - std::pow(st.beta1, static_cast<double>(st.step));
    const double bc2 = 1.0 - std::pow(st.beta2, static_cast<double>(st.step));
    for (size_t i = 0; i < params.size(); i++) {
        st.m[i] = st.beta1 * st.m[i] + (1.0 - st.beta1) * grads[i];
        st.v[i] = st.beta2 * st.v[i] + (1.0 - st.beta2) * grads[i] * grads[i];
        const double mhat = st.m[i] / bc1;
        const double vhat = st.v[i] / bc2;
        params[i] -= st.lr * mhat / (std::sqrt(vhat) + st.eps);
    }
}

}  // namespace liesym
