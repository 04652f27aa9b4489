#include <cmath>
#include <numbers>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "aep/error.hpp"
#include "aep/linalg.hpp"
#include "aep/models.hpp"
#include "test_util.hpp"

using namespace aep;
using aep::testing::max_abs_diff;

namespace {

Operator diag(std::initializer_list<double> d) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index k = 0;
    for (double x : d) v(k++) = x;
    return v.asDiagonal();
}

}  // namespace

TEST(Tensor, IdentityTimesIdentity) {
    EXPECT_EQ(max_abs_diff(tensor(pauli::identity(), pauli::identity()), pauli::identity(4)), 0.0);
}

TEST(Tensor, SigmaZOnFirstFactor) {
    EXPECT_EQ(max_abs_diff(tensor(pauli::z(), pauli::identity()), diag({1, 1, -1, -1})), 0.0);
}

TEST(Tensor, BasisStatesFollowRowMajorIndex) {
    const StateVector v = tensor(basis_state(2, 0), basis_state(2, 1));
    EXPECT_EQ((v - basis_state(4, 1)).norm(), 0.0);
    const StateVector w = tensor(basis_state(2, 1), basis_state(3, 2));
    EXPECT_EQ((w - basis_state(6, 1 * 3 + 2)).norm(), 0.0);
}

TEST(Tensor, Associative) {
    std::mt19937_64 rng(1);
    const Operator a = aep::testing::random_hermitian(2, rng);
    const Operator b = aep::testing::random_hermitian(3, rng);
    const Operator c = aep::testing::random_hermitian(2, rng);
    EXPECT_LT(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-14);
}

TEST(Predicates, DetectStructure) {
    EXPECT_TRUE(is_hermitian(pauli::y()));
    EXPECT_FALSE(is_hermitian(models::sigma_plus()));
    EXPECT_TRUE(is_unitary(pauli::x()));
    EXPECT_FALSE(is_unitary(2.0 * pauli::x()));
    EXPECT_TRUE(is_projector(diag({1, 0})));
    EXPECT_FALSE(is_projector(pauli::z()));
    EXPECT_TRUE(is_hermitian(pauli::z() + Operator::Constant(2, 2, 1e-12), 1e-10));
    EXPECT_FALSE(is_hermitian(pauli::z() + Operator::Constant(2, 2, Complex(0, 1e-8)), 1e-10));
}

TEST(Normalized, UnitNormAndZeroRejected) {
    StateVector v(2);
    v << Complex(3, 0), Complex(0, 4);
    EXPECT_NEAR(normalized(v).norm(), 1.0, 1e-15);
    EXPECT_THROW(normalized(StateVector::Zero(2)), NumericalError);
}

TEST(EigHermitian, PauliZ) {
    const auto e = eig_hermitian(pauli::z());
    EXPECT_DOUBLE_EQ(e.values(0), -1.0);
    EXPECT_DOUBLE_EQ(e.values(1), 1.0);
}

TEST(EigHermitian, TwoFieldBase) {
    const auto e = eig_hermitian(2.0 * tensor(pauli::z(), pauli::identity()) + tensor(pauli::identity(), pauli::z()));
    const double expected[] = {-3, -1, 1, 3};
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(e.values(k), expected[k], 1e-14);
}

TEST(EigHermitian, ReconstructsRandomHermitian) {
    std::mt19937_64 rng(2);
    for (std::size_t n : {2u, 4u, 6u, 9u}) {
        const Operator h = aep::testing::random_hermitian(n, rng);
        const auto e = eig_hermitian(h);
        const Operator back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
        EXPECT_LT(max_abs_diff(back, h), 1e-9 * spectral_norm_hermitian(h));
        EXPECT_TRUE(is_unitary(e.vectors, 1e-9));
        for (Eigen::Index k = 1; k < e.values.size(); ++k) EXPECT_LE(e.values(k - 1), e.values(k));
        for (Eigen::Index k = 0; k < e.values.size(); ++k) {
            EXPECT_LT((h * e.vectors.col(k) - e.values(k) * e.vectors.col(k)).norm(),
                      1e-9 * spectral_norm_hermitian(h));
        }
    }
}

TEST(EigHermitian, RejectsNonHermitian) { EXPECT_THROW(eig_hermitian(models::sigma_plus()), NotHermitian); }

TEST(ExpmSkew, ZeroGivesIdentity) {
    EXPECT_LT(max_abs_diff(expm_skew(Operator::Zero(3, 3)), pauli::identity(3)), 1e-15);
}

TEST(ExpmSkew, HalfPiSigmaX) {
    const Operator u = expm_skew(std::numbers::pi / 2 * pauli::x());
    EXPECT_LT(max_abs_diff(u, Complex(0, 1) * pauli::x()), 1e-15);
}

TEST(ExpmSkew, ExchangeGeneratorAtSixteenthPi) {
    const Operator u = expm_skew(models::example1_generator(std::numbers::pi / 16, 0.0));
    EXPECT_NEAR(std::abs(u(1, 1) - Complex(1 / std::numbers::sqrt2, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(u(2, 1) - Complex(0, 1 / std::numbers::sqrt2)), 0.0, 1e-14);
}

TEST(ExpmSkew, AgreesWithPadeOracleAndIsUnitary) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Operator k = aep::testing::random_hermitian(4, rng, 2.0);
        const Operator u = expm_skew(k);
        const Operator oracle = (Complex(0, 1) * k).exp();
        EXPECT_LT(max_abs_diff(u, oracle), 1e-11);
        EXPECT_TRUE(is_unitary(u, 1e-10));
    }
    EXPECT_THROW(expm_skew(models::sigma_plus()), NotHermitian);
}

TEST(LogmUnitary, IdentityAndInverse) {
    EXPECT_LT(logm_unitary(pauli::identity(4)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(max_abs_diff(logm_unitary(Complex(0, 1) * pauli::x()), std::numbers::pi / 2 * pauli::x()), 1e-14);
}

TEST(LogmUnitary, RoundTrip) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        Operator g = aep::testing::random_hermitian(4, rng);
        g *= 3.0 / spectral_norm_hermitian(g);  // keep |G| < pi
        const Operator u = expm_skew(g);
        const Operator log = logm_unitary(u);
        EXPECT_TRUE(is_hermitian(log));
        EXPECT_LT(max_abs_diff(expm_skew(log), u), 1e-8);
        EXPECT_LT(max_abs_diff(log, g), 1e-8);
    }
}

TEST(LogmUnitary, DegenerateEigenspace) {
    const Operator u = tensor(Complex(0, 1) * pauli::z(), pauli::identity());
    EXPECT_LT(max_abs_diff(expm_skew(logm_unitary(u)), u), 1e-12);
}

TEST(LogmUnitary, Errors) {
    EXPECT_THROW(logm_unitary(2.0 * pauli::identity()), NotUnitary);
    EXPECT_THROW(logm_unitary(-pauli::identity()), BranchAmbiguity);
    EXPECT_THROW(logm_unitary(pauli::z()), BranchAmbiguity);
}

TEST(PartialTrace, ProductState) {
    const StateVector s = basis_state(4, 0);
    const Operator rho = partial_trace(s * s.adjoint(), {2, 2}, Subsystem::A);
    EXPECT_LT(max_abs_diff(rho, diag({1, 0})), 1e-15);
}

TEST(PartialTrace, BellStateIsMaximallyMixed) {
    const StateVector phi = models::bell_basis().col(0);
    for (auto keep : {Subsystem::A, Subsystem::B}) {
        EXPECT_LT(max_abs_diff(partial_trace(phi * phi.adjoint(), {2, 2}, keep), 0.5 * pauli::identity()), 1e-15);
    }
}

TEST(PartialTrace, ExchangeSuperposition) {
    const Complex a(0.6, 0.0), b(0.0, 0.8);
    const StateVector xi = a * basis_state(4, 1) + b * basis_state(4, 2);
    const Operator rho = partial_trace(xi * xi.adjoint(), {2, 2}, Subsystem::A);
    EXPECT_LT(max_abs_diff(rho, diag({0.36, 0.64})), 1e-15);
}

TEST(PartialTrace, TracePositivityAndUnequalDims) {
    std::mt19937_64 rng(5);
    const BipartiteSplit split{2, 3};
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector s = aep::testing::random_state(6, rng);
        for (auto keep : {Subsystem::A, Subsystem::B}) {
            const Operator r = partial_trace(s * s.adjoint(), split, keep);
            EXPECT_EQ(r.rows(), keep == Subsystem::A ? 2 : 3);
            EXPECT_NEAR(r.trace().real(), 1.0, 1e-10);
            EXPECT_TRUE(is_hermitian(r));
            EXPECT_GT(eig_hermitian(r).values(0), -1e-10);
        }
    }
    // Product of known factors.
    const StateVector a = aep::testing::random_state(2, rng);
    const StateVector b = aep::testing::random_state(3, rng);
    const StateVector ab = tensor(a, b);
    EXPECT_LT(max_abs_diff(partial_trace(ab * ab.adjoint(), split, Subsystem::B), b * b.adjoint()), 1e-14);
    EXPECT_THROW(partial_trace(pauli::identity(4), split, Subsystem::A), DimensionMismatch);
}

TEST(FixPhase, LargestComponentRealPositive) {
    StateVector v(3);
    v << Complex(0.1, 0.2), Complex(0, -0.9), Complex(0.3, 0);
    const StateVector f = fix_phase(v);
    EXPECT_NEAR(f(1).imag(), 0.0, 1e-15);
    EXPECT_GT(f(1).real(), 0.0);
    EXPECT_NEAR(std::abs(f.dot(v)), v.squaredNorm(), 1e-15);
    EXPECT_LT((fix_phase(Complex(0, 1) * v) - f).norm(), 1e-15);
}
