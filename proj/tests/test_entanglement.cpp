#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "aep/entanglement.hpp"
#include "aep/error.hpp"
#include "aep/models.hpp"
#include "test_util.hpp"

using namespace aep;

namespace {

const BipartiteSplit kQubits{2, 2};

StateVector partially_entangled() {
    StateVector v = StateVector::Zero(4);
    v(0) = std::sqrt(3.0) / 2.0;
    v(3) = 0.5;
    return v;
}

// Squared singular values of the coefficient matrix psi(i_A, i_B).
std::vector<double> svd_oracle(const StateVector& psi, const BipartiteSplit& split) {
    Operator m(split.dim_a, split.dim_b);
    for (std::size_t a = 0; a < split.dim_a; ++a) {
        for (std::size_t b = 0; b < split.dim_b; ++b) m(a, b) = psi(a * split.dim_b + b);
    }
    const Eigen::VectorXd s = Eigen::JacobiSVD<Operator>(m).singularValues();
    std::vector<double> out(split.dim_a, 0.0);
    for (Eigen::Index k = 0; k < s.size(); ++k) out[k] = s(k) * s(k);
    return out;
}

}  // namespace

TEST(SchmidtSpectrum, ReferenceStates) {
    const auto product = schmidt_spectrum(basis_state(4, 0), kQubits);
    EXPECT_NEAR(product[0], 1.0, 1e-15);
    EXPECT_NEAR(product[1], 0.0, 1e-15);
    for (double c : schmidt_spectrum(models::bell_basis().col(0), kQubits)) EXPECT_NEAR(c, 0.5, 1e-15);
    const auto partial = schmidt_spectrum(partially_entangled(), kQubits);
    EXPECT_NEAR(partial[0], 0.75, 1e-15);
    EXPECT_NEAR(partial[1], 0.25, 1e-15);
    EXPECT_THROW(schmidt_spectrum(basis_state(3, 0), kQubits), DimensionMismatch);
}

TEST(SchmidtSpectrum, MatchesSvdOracle) {
    std::mt19937_64 rng(21);
    for (const BipartiteSplit split : {BipartiteSplit{2, 2}, BipartiteSplit{2, 3}, BipartiteSplit{3, 2}, BipartiteSplit{3, 3}}) {
        for (int trial = 0; trial < 50; ++trial) {
            const StateVector psi = aep::testing::random_state(split.dim(), rng);
            const auto s = schmidt_spectrum(psi, split);
            const auto oracle = svd_oracle(psi, split);
            ASSERT_EQ(s.size(), oracle.size());
            double sum = 0.0;
            for (std::size_t k = 0; k < s.size(); ++k) {
                EXPECT_NEAR(s[k], oracle[k], 1e-12);
                EXPECT_GE(s[k], 0.0);
                if (k > 0) EXPECT_LE(s[k], s[k - 1]);
                sum += s[k];
            }
            EXPECT_NEAR(sum, 1.0, 1e-10);
        }
    }
}

TEST(Entropy, ReferenceStates) {
    EXPECT_NEAR(entropy(basis_state(4, 1), kQubits), 0.0, 1e-12);
    EXPECT_NEAR(entropy(models::bell_basis().col(0), kQubits), 1.0, 1e-12);
    // -(3/4) log2(3/4) - (1/4) log2(1/4)
    EXPECT_NEAR(entropy(partially_entangled(), kQubits), 0.8112781244591328, 1e-12);
    EXPECT_DOUBLE_EQ(shannon_entropy_bits({1.0, 0.0}), 0.0);
    EXPECT_NEAR(shannon_entropy_bits({0.25, 0.25, 0.25, 0.25}), 2.0, 1e-15);
}

TEST(Entropy, MaximalForQutrits) {
    StateVector psi = StateVector::Zero(9);
    for (int k = 0; k < 3; ++k) psi(k * 3 + k) = 1.0 / std::sqrt(3.0);
    EXPECT_NEAR(entropy(psi, {3, 3}), std::log2(3.0), 1e-12);
    EXPECT_TRUE(max_entangled_check(psi, {3, 3}, 1e-9));
}

TEST(Entropy, LocalUnitaryInvariance) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const StateVector psi = aep::testing::random_state(6, rng);
        const Operator local = tensor(aep::testing::random_unitary(2, rng), aep::testing::random_unitary(3, rng));
        EXPECT_NEAR(entropy(local * psi, {2, 3}), entropy(psi, {2, 3}), 1e-9);
    }
}

TEST(Entropy, StrictlyDecreasingInLargestCoefficient) {
    double previous = 1.0 + 1e-12;
    for (int k = 1; k <= 200; ++k) {
        const double lambda = 0.5 + 0.5 * k / 200.0;
        StateVector psi = StateVector::Zero(4);
        psi(0) = std::sqrt(lambda);
        psi(3) = std::sqrt(1.0 - lambda);
        const double e = entropy(psi, kQubits);
        EXPECT_LT(e, previous);
        previous = e;
    }
    EXPECT_NEAR(previous, 0.0, 1e-12);
}

TEST(Concurrence, ReferenceStates) {
    EXPECT_NEAR(concurrence_2q(basis_state(4, 0)), 0.0, 1e-15);
    EXPECT_NEAR(concurrence_2q(models::bell_basis().col(0)), 1.0, 1e-15);
    const StateVector xi = std::sqrt(0.5) * basis_state(4, 1) + Complex(0, std::sqrt(0.5)) * basis_state(4, 2);
    EXPECT_NEAR(concurrence_2q(xi), 1.0, 1e-15);
    EXPECT_NEAR(concurrence_2q(partially_entangled()), std::sqrt(3.0) / 2.0, 1e-15);
    EXPECT_NEAR(half_concurrence_coefficients(partially_entangled()), std::sqrt(3.0) / 4.0, 1e-15);
    EXPECT_THROW(concurrence_2q(basis_state(6, 0)), DimensionMismatch);
}

TEST(Concurrence, SpinFlipAgreesWithCoefficientsAndEntropy) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10000; ++trial) {
        const StateVector psi = aep::testing::random_state(4, rng);
        const double c = concurrence_2q(psi);
        ASSERT_NEAR(c, 2.0 * half_concurrence_coefficients(psi), 1e-9);
        ASSERT_NEAR(schmidt_spectrum(psi, kQubits)[0], (1.0 + std::sqrt(1.0 - c * c)) / 2.0, 1e-9);
        ASSERT_NEAR(entropy_from_concurrence(c), entropy(psi, kQubits), 1e-9);
    }
}

TEST(MaxEntangledCheck, ReferenceStates) {
    EXPECT_TRUE(max_entangled_check(models::bell_basis().col(0), kQubits, 1e-9));
    EXPECT_FALSE(max_entangled_check(basis_state(4, 0), kQubits, 1e-9));
    EXPECT_FALSE(max_entangled_check(partially_entangled(), kQubits, 1e-9));
    // For unequal factors only the min(dim_a, dim_b) leading coefficients are 1/min.
    StateVector psi = StateVector::Zero(6);
    psi(0) = psi(3) = 1.0 / std::numbers::sqrt2;  // |0,0> and |1,1>
    EXPECT_TRUE(max_entangled_check(psi, {3, 2}, 1e-9));
}
