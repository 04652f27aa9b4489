#include "aep/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "aep/error.hpp"

namespace aep {

namespace {

constexpr double kNegativeClamp = -1e-12;

}  // namespace

std::vector<double> schmidt_spectrum(const StateVector& psi, const BipartiteSplit& split) {
    if (static_cast<std::size_t>(psi.size()) != split.dim()) {
        throw DimensionMismatch("state dimension does not match the bipartite split");
    }
    const Operator rho = psi * psi.adjoint();
    const Operator reduced = partial_trace(rho, split, Subsystem::A);
    const auto decomposition = eig_hermitian(reduced, 1e-8);

    std::vector<double> coefficients(decomposition.values.data(),
                                     decomposition.values.data() + decomposition.values.size());
    double total = 0.0;
    for (double& c : coefficients) {
        if (c < kNegativeClamp) {
            throw NumericalError("reduced density matrix has a negative eigenvalue");
        }
        c = std::clamp(c, 0.0, 1.0);
        total += c;
    }
    if (total <= 0.0) throw NumericalError("reduced density matrix has zero trace");
    for (double& c : coefficients) c /= total;
    std::ranges::sort(coefficients, std::greater<>());
    return coefficients;
}

double shannon_entropy_bits(const std::vector<double>& probabilities) {
    double h = 0.0;
    for (double p : probabilities) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return std::max(0.0, h);
}

double entropy(const StateVector& psi, const BipartiteSplit& split) {
    return shannon_entropy_bits(schmidt_spectrum(psi, split));
}

double concurrence_2q(const StateVector& psi) {
    if (psi.size() != 4) throw DimensionMismatch("concurrence_2q needs a two-qubit state");
    static const Operator yy = tensor(pauli::y(), pauli::y());
    const Complex overlap = psi.dot(yy * psi.conjugate());
    return std::min(1.0, std::abs(overlap));
}

double half_concurrence_coefficients(const StateVector& psi) {
    if (psi.size() != 4) throw DimensionMismatch("coefficient concurrence needs a two-qubit state");
    return std::abs(psi(0) * psi(3) - psi(1) * psi(2));
}

double entropy_from_concurrence(double concurrence) {
    const double c = std::clamp(concurrence, 0.0, 1.0);
    const double lambda = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
    return shannon_entropy_bits({lambda, 1.0 - lambda});
}

bool max_entangled_check(const StateVector& psi, const BipartiteSplit& split, double tol) {
    const auto coefficients = schmidt_spectrum(psi, split);
    const double target = 1.0 / static_cast<double>(std::min(split.dim_a, split.dim_b));
    // Only the min(dim_a, dim_b) leading coefficients can be nonzero.
    const std::size_t rank = std::min(split.dim_a, split.dim_b);
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const double expected = i < rank ? target : 0.0;
        if (std::abs(coefficients[i] - expected) > tol) return false;
    }
    return true;
}

}  // namespace aep
