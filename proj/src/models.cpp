#include "aep/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aep/error.hpp"

namespace aep::models {

namespace {

const BipartiteSplit kTwoQubits{2, 2};

Operator zz() { return tensor(pauli::z(), pauli::z()); }
Operator yy() { return tensor(pauli::y(), pauli::y()); }
Operator xx() { return tensor(pauli::x(), pauli::x()); }

}  // namespace

ParameterBox example0_default_box() { return {{1.0, 2.0, 4.0}, {1.2, 2.2, 4.4}}; }

HamiltonianFamily example0_family(const ParameterBox& box) {
    if (box.dim() != 3) throw std::invalid_argument("example0 family has three parameters");
    return HamiltonianFamily::general(
        "builtin:example0", box, {"lambda_x", "lambda_y", "lambda_z"}, kTwoQubits,
        [x = xx(), y = yy(), z = zz()](std::span<const double> l) {
            return Operator(l[0] * x + l[1] * y + l[2] * z);
        });
}

Operator bell_basis() {
    const double s = 1.0 / std::numbers::sqrt2;
    Operator b(4, 4);
    b << s, s, 0, 0,
         0, 0, s, s,
         0, 0, s, -s,
         s, -s, 0, 0;
    return b;
}

Operator sigma_plus() { return pauli::x() + Complex(0, 1) * pauli::y(); }
Operator sigma_minus() { return pauli::x() - Complex(0, 1) * pauli::y(); }

Operator Example1Params::base() const {
    const Operator id = pauli::identity();
    return lambda1 * tensor(pauli::z(), id) + lambda2 * tensor(id, pauli::z()) + zz_coupling * zz();
}

Operator example1_generator(Complex mu, double mu_z) {
    const Operator id = pauli::identity();
    return mu * tensor(sigma_plus(), sigma_minus()) + std::conj(mu) * tensor(sigma_minus(), sigma_plus()) +
           mu_z * (tensor(pauli::z(), id) - tensor(id, pauli::z()));
}

Operator example1_unitary(Complex mu, double mu_z) { return expm_skew(example1_generator(mu, mu_z)); }

Example1ClosedForm example1_closed_form(Complex mu, double mu_z) {
    Example1ClosedForm f;
    f.theta_vec = {4.0 * mu.real(), -4.0 * mu.imag(), 2.0 * mu_z};
    f.theta = std::sqrt(16.0 * std::norm(mu) + 4.0 * mu_z * mu_z);
    const double sinc = f.theta > 0.0 ? std::sin(f.theta) / f.theta : 1.0;
    f.a = Complex(std::cos(f.theta), 2.0 * sinc * mu_z);
    f.b = Complex(0.0, 4.0 * sinc) * std::conj(mu);
    return f;
}

ParameterBox example1_default_box() { return {{0.01, 0.0}, {1.2, 2.4}}; }

HamiltonianFamily example1_family(const Example1Params& params, const ParameterBox& box) {
    std::vector<std::string> names;
    std::function<Operator(std::span<const double>)> unitary;
    if (box.dim() == 2) {
        names = {"mu", "mu_z"};
        unitary = [](std::span<const double> p) { return example1_unitary(Complex(p[0], 0.0), p[1]); };
    } else if (box.dim() == 3) {
        names = {"mu_re", "mu_im", "mu_z"};
        unitary = [](std::span<const double> p) { return example1_unitary(Complex(p[0], p[1]), p[2]); };
    } else {
        throw std::invalid_argument("example1 family takes a 2- or 3-dimensional box");
    }
    if (std::abs(params.lambda1 - params.lambda2) <= 1e-9) {
        throw std::invalid_argument("example1 base needs lambda1 != lambda2");
    }
    return HamiltonianFamily::iso_spectral("builtin:example1", box, std::move(names), kTwoQubits,
                                           params.base(), std::move(unitary),
                                           ParameterPoint(box.dim(), 0.0));
}

MaxCondition example1_max_condition(Complex mu, double mu_z) {
    const double m = std::abs(mu);
    if (m == 0.0) throw ZeroCoupling();
    const double ratio = mu_z / (2.0 * m);
    return {std::abs(mu_z) <= 2.0 * m, 0.5 * (1.0 + ratio * ratio)};
}

Operator magic_basis() {
    const double s = 1.0 / std::numbers::sqrt2;
    const Complex i(0.0, 1.0);
    Operator m = Operator::Zero(4, 4);
    m(0, 0) = s;       m(3, 0) = s;
    m(0, 1) = -i * s;  m(3, 1) = i * s;
    m(1, 2) = s;       m(2, 2) = -s;
    m(1, 3) = -i * s;  m(2, 3) = -i * s;
    return m;
}

std::array<double, 4> Example2Params::h() const {
    return {lambda1 - lambda2 + lambda3, lambda1 + lambda2 - lambda3, -lambda1 + lambda2 + lambda3,
            -lambda1 - lambda2 - lambda3};
}

Operator example2_generator(const Example2Params& p) {
    return p.lambda1 * zz() + p.lambda2 * yy() + p.lambda3 * xx();
}

Operator example2_unitary(const Example2Params& p) { return expm_skew(example2_generator(p)); }

Operator example2_base() {
    const Operator id = pauli::identity();
    return 2.0 * tensor(pauli::z(), id) + tensor(id, pauli::z());
}

ParameterBox example2_default_box() { return {{0.0, 0.0}, {std::numbers::pi, std::numbers::pi}}; }

HamiltonianFamily example2_family(double lambda1_fixed, const ParameterBox& box) {
    if (box.dim() != 2) throw std::invalid_argument("example2 family has two parameters");
    std::optional<ParameterPoint> base_point;
    if (lambda1_fixed == 0.0) base_point = ParameterPoint{0.0, 0.0};
    return HamiltonianFamily::iso_spectral(
        "builtin:example2", box, {"lambda2", "lambda3"}, kTwoQubits, example2_base(),
        [lambda1_fixed](std::span<const double> p) {
            return example2_unitary({lambda1_fixed, p[0], p[1]});
        },
        base_point);
}

namespace {

// Convex weights of three points in the plane reproducing the origin, if any.
std::optional<std::array<double, 3>> origin_weights(Complex a, Complex b, Complex c) {
    Eigen::Matrix3d m;
    m << a.real(), b.real(), c.real(),
         a.imag(), b.imag(), c.imag(),
         1.0, 1.0, 1.0;
    if (std::abs(m.determinant()) < 1e-14) return std::nullopt;
    const Eigen::Vector3d w = m.partialPivLu().solve(Eigen::Vector3d(0.0, 0.0, 1.0));
    if (w.minCoeff() < -1e-12) return std::nullopt;
    return std::array<double, 3>{std::max(0.0, w(0)), std::max(0.0, w(1)), std::max(0.0, w(2))};
}

}  // namespace

Example2MaxConcurrence example2_max_concurrence(const Example2Params& p) {
    const auto h = p.h();
    std::array<double, 4> phase{};
    for (int c = 0; c < 4; ++c) phase[c] = h[kMagicColumnPhase[c]];
    const Operator magic = magic_basis();
    const Complex i(0.0, 1.0);

    Example2MaxConcurrence out;
    out.concurrence = -1.0;
    for (int k = 0; k < 4; ++k) {
        for (int l = k + 1; l < 4; ++l) {
            const double c = std::abs(std::sin(phase[k] - phase[l]));
            if (c > out.concurrence + 1e-15) {
                out.concurrence = c;
                out.best_pair = {k, l};
            }
        }
    }
    out.pair_concurrence = out.concurrence;
    out.best_input = (magic.col(out.best_pair.first) + i * magic.col(out.best_pair.second)) /
                     std::numbers::sqrt2;
    if (out.concurrence >= 1.0 - 1e-12) return out;

    // Zero strictly inside the hull of exp(2i phase): some triangle of the
    // points contains it and weights sqrt(p_c) exp(-i phase_c) reach C = 1.
    std::array<Complex, 4> u{};
    for (int c = 0; c < 4; ++c) u[c] = std::polar(1.0, 2.0 * phase[c]);
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            for (int c = b + 1; c < 4; ++c) {
                const auto w = origin_weights(u[a], u[b], u[c]);
                if (!w) continue;
                StateVector input = StateVector::Zero(4);
                const std::array<int, 3> idx = {a, b, c};
                for (int t = 0; t < 3; ++t) {
                    input += std::sqrt((*w)[t]) * std::polar(1.0, -phase[idx[t]]) * magic.col(idx[t]);
                }
                out.concurrence = 1.0;
                out.pair_formula = false;
                out.best_input = normalized(input);
                return out;
            }
        }
    }
    return out;
}

HamiltonianFamily spin_half_family(const ParameterBox& box) {
    if (box.dim() != 3) throw std::invalid_argument("spin-1/2 family has three field components");
    return HamiltonianFamily::general("spin_half", box, {"B_x", "B_y", "B_z"}, BipartiteSplit{2, 1},
                                      [](std::span<const double> b) {
                                          return Operator(b[0] * pauli::x() + b[1] * pauli::y() + b[2] * pauli::z());
                                      });
}

}  // namespace aep::models
