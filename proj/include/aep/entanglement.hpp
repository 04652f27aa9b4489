#pragma once

#include <vector>

#include "aep/linalg.hpp"

namespace aep {

/// Eigenvalues of the reduced density matrix Tr_B |psi><psi|, descending,
/// clamped to [0, 1] and renormalized. Length dim_a.
std::vector<double> schmidt_spectrum(const StateVector& psi, const BipartiteSplit& split);

/// Base-2 Shannon entropy of a probability vector, with 0 log 0 = 0.
double shannon_entropy_bits(const std::vector<double>& probabilities);

/// Von Neumann entropy (bits) of the reduced state of a pure bipartite state.
double entropy(const StateVector& psi, const BipartiteSplit& split);

/// Two-qubit concurrence |<psi| sigma_y (x) sigma_y |psi*>|, in [0, 1].
///
/// In coefficient form this is 2 |a_00 a_11 - a_01 a_10|. Some texts write
/// C^2 = |a1 a2 - a3 a4|^2 with (a1, a2, a3, a4) = (a_00, a_11, a_01, a_10)
/// and call 2C the concurrence; this function returns the full concurrence,
/// i.e. twice that C. The largest Schmidt coefficient is
/// (1 + sqrt(1 - concurrence^2)) / 2.
double concurrence_2q(const StateVector& psi);

/// The coefficient form |a_00 a_11 - a_01 a_10| (half the concurrence).
double half_concurrence_coefficients(const StateVector& psi);

/// Two-qubit entropy from the concurrence through the closed-form Schmidt
/// coefficient.
double entropy_from_concurrence(double concurrence);

/// True iff every Schmidt coefficient is within tol of 1 / min(dim_a, dim_b).
bool max_entangled_check(const StateVector& psi, const BipartiteSplit& split, double tol);

}  // namespace aep
