#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace aep {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kResidualTol = 1e-9;

// Index convention for composite systems: the basis state |i_A, i_B> has
// index i_A * dim_b + i_B (row-major, A then B). Every module relies on it.
struct BipartiteSplit {
    std::size_t dim_a = 2;
    std::size_t dim_b = 2;

    std::size_t dim() const noexcept { return dim_a * dim_b; }
    bool operator==(const BipartiteSplit&) const = default;
};

enum class Subsystem { A, B };

struct EigenDecomposition {
    RealVector values;  // ascending
    Operator vectors;   // orthonormal columns
};

namespace pauli {
Operator identity(std::size_t dim = 2);
Operator x();
Operator y();
Operator z();
}  // namespace pauli

/// Computational basis vector |index> of the given dimension.
StateVector basis_state(std::size_t dim, std::size_t index);

/// Returns v / |v|; throws NumericalError on a zero vector.
StateVector normalized(const StateVector& v);

Operator tensor(const Operator& a, const Operator& b);
StateVector tensor(const StateVector& a, const StateVector& b);

bool is_hermitian(const Operator& a, double tol = kStructuralTol);
bool is_unitary(const Operator& a, double tol = kStructuralTol);
bool is_projector(const Operator& a, double tol = kStructuralTol);

/// Largest absolute eigenvalue of a Hermitian operator.
double spectral_norm_hermitian(const Operator& h);

/// Eigen-decomposition of a Hermitian operator with ascending eigenvalues.
/// Throws NotHermitian.
EigenDecomposition eig_hermitian(const Operator& h, double tol = kStructuralTol);

/// exp(i k) for Hermitian k, via the eigen-decomposition of k.
Operator expm_skew(const Operator& k, double tol = kStructuralTol);

/// Hermitian G with exp(i G) = u and eigenphases in (-pi, pi].
/// Throws NotUnitary, or BranchAmbiguity when an eigenphase is within
/// 1e-12 of pi.
Operator logm_unitary(const Operator& u, double tol = kStructuralTol);

/// Reduced operator on the kept factor. Throws DimensionMismatch.
Operator partial_trace(const Operator& rho, const BipartiteSplit& split, Subsystem keep);

/// Rotates the global phase so the first component of largest magnitude is
/// real and positive.
StateVector fix_phase(const StateVector& v);

}  // namespace aep
