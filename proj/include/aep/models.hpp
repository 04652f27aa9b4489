#pragma once

#include <array>
#include <optional>
#include <utility>

#include "aep/family.hpp"
#include "aep/linalg.hpp"

namespace aep::models {

// ---------------------------------------------------------------------------
// Commuting XX + YY + ZZ family

/// Default box keeps the four Bell-state energies separated.
ParameterBox example0_default_box();

/// H(l) = lx XX + ly YY + lz ZZ. Eigenvectors are the Bell states at every point.
HamiltonianFamily example0_family(const ParameterBox& box = example0_default_box());

/// Columns: the four Bell states (|00>+|11>, |00>-|11>, |01>+|10>, |01>-|10>) / sqrt 2.
Operator bell_basis();

// ---------------------------------------------------------------------------
// Exchange family: H = U H_base U^dagger with U = exp(i K(mu, mu_z))

/// Raising/lowering operators are taken unnormalized, sigma_pm = sigma_x
/// +- i sigma_y, so sigma_+ = 2 |0><1|. With this normalization the block of
/// exp(iK) on span{|01>, |10>} has the closed form of Example1ClosedForm.
Operator sigma_plus();
Operator sigma_minus();

struct Example1Params {
    double lambda1 = 2.0;
    double lambda2 = 1.0;
    /// Optional zz coupling J added to the base as J sz (x) sz. Zero by default.
    double zz_coupling = 0.0;

    Operator base() const;
};

/// K(mu, mu_z) = mu s+ (x) s- + conj(mu) s- (x) s+ + mu_z (sz (x) 1 - 1 (x) sz).
Operator example1_generator(Complex mu, double mu_z);
Operator example1_unitary(Complex mu, double mu_z);

struct Example1ClosedForm {
    std::array<double, 3> theta_vec{};  // (4 Re mu, -4 Im mu, 2 mu_z)
    double theta = 0.0;
    Complex a;  // <01|U|01>
    Complex b;  // <10|U|01>
};

Example1ClosedForm example1_closed_form(Complex mu, double mu_z);

/// Real-mu chart (mu, mu_z) over the figure domain mu in [0.01, 1.2], mu_z in [0, 2.4].
ParameterBox example1_default_box();

/// A 2-dimensional box is read as (mu, mu_z) with real mu; a 3-dimensional
/// box as (Re mu, Im mu, mu_z). Throws std::invalid_argument when the base
/// is degenerate.
HamiltonianFamily example1_family(const Example1Params& params = {},
                                  const ParameterBox& box = example1_default_box());

struct MaxCondition {
    bool solvable = false;
    double sin2_theta_required = 0.0;
};

/// Whether a maximally entangled state is reachable from |01> along the ray
/// through (mu, mu_z). Throws ZeroCoupling when mu = 0.
MaxCondition example1_max_condition(Complex mu, double mu_z);

// ---------------------------------------------------------------------------
// exp(i sum_j l_j s_j (x) s_j) family

/// Magic basis columns: (|00>+|11>)/r2, -i(|00>-|11>)/r2, (|01>-|10>)/r2, -i(|01>+|10>)/r2.
Operator magic_basis();

/// The Pauli labels are (s_1, s_2, s_3) = (sz, sy, sx). Under this labelling
/// |00> = (Psi_1 + i Psi_2)/r2 picks up the phase difference h_1 - h_2 = 2(l3 - l2).
struct Example2Params {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;

    /// h1 = l1-l2+l3, h2 = l1+l2-l3, h3 = -l1+l2+l3, h4 = -l1-l2-l3.
    std::array<double, 4> h() const;
};

Operator example2_generator(const Example2Params& p);
Operator example2_unitary(const Example2Params& p);

/// Eigenphase carried by each magic-basis column: Psi_1..Psi_4 -> h1, h2, h4, h3.
inline constexpr std::array<int, 4> kMagicColumnPhase = {0, 1, 3, 2};

/// Base Hamiltonian 2 sz (x) 1 + 1 (x) sz.
Operator example2_base();

/// Box over (l2, l3) = [0, pi]^2.
ParameterBox example2_default_box();

HamiltonianFamily example2_family(double lambda1_fixed = 1.0,
                                  const ParameterBox& box = example2_default_box());

struct Example2MaxConcurrence {
    double concurrence = 0.0;
    double pair_concurrence = 0.0;         // max |sin(h_k - h_l)| over magic-basis pairs
    std::pair<int, int> best_pair{0, 0};  // zero-based magic-basis columns
    bool pair_formula = true;             // false when zero lies in the hull of exp(2ih)
    StateVector best_input;               // computational basis
};

/// Largest concurrence reachable from a product input. When the points
/// exp(2 i h_k) lie in an open half circle this is max |sin(h_k - h_l)|,
/// reached by (Psi_k + i Psi_l)/r2; otherwise it is 1.
Example2MaxConcurrence example2_max_concurrence(const Example2Params& p);

// ---------------------------------------------------------------------------
// Spin 1/2 in a field

/// H(B) = Bx sx + By sy + Bz sz on a single qubit (split 2 x 1), parameters
/// (B_x, B_y, B_z). Degenerate only at B = 0.
HamiltonianFamily spin_half_family(const ParameterBox& box = {{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}});

}  // namespace aep::models
