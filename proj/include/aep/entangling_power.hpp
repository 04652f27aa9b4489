#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aep/family.hpp"

namespace aep {

inline constexpr std::uint64_t kDefaultSeed = 20040611;

// ---------------------------------------------------------------------------
// Eigenstate tracks

/// Level-th eigenvector along a sampled path, each vector rephased so its
/// overlap with the previous one is real and positive.
/// Throws DegeneracyEncountered.
std::vector<StateVector> eigenstate_track(const HamiltonianFamily& family, std::size_t level,
                                          std::span<const ParameterPoint> path);

/// Entanglement entropy of the level-th eigenvector at a point.
double level_entropy(const HamiltonianFamily& family, std::size_t level,
                     std::span<const double> point);

struct SweepResult {
    std::vector<ParameterPoint> grid;
    std::vector<std::vector<double>> per_level_entropy;  // [point][level]
    std::size_t argmax_level = 0;
    ParameterPoint argmax_point;
    double argmax_value = 0.0;
};

/// Per-level eigenstate entropies at every point. Points are evaluated on up
/// to `jobs` threads; the result does not depend on the job count.
SweepResult level_entropy_sweep(const HamiltonianFamily& family, std::vector<ParameterPoint> points,
                                int jobs = 1);

// ---------------------------------------------------------------------------
// Adiabatic entangling power

enum class PowerFormula {
    Auto,             // ProductBase when certified, TwoPoint otherwise
    TwoPoint,         // max_i sup |E_i(l) - E_i(l')|
    ProductBase,      // max_i sup E(U(l)|Psi_i>), Psi_i product eigenvectors of H0
};

std::string to_string(PowerFormula formula);

struct PowerOptions {
    int grid_per_axis = 41;
    bool refine = false;
    int refine_starts = 8;
    double refine_tol = 1e-6;
    std::optional<std::size_t> level;  // restrict the max over levels
    PowerFormula formula = PowerFormula::Auto;
    int jobs = 1;
};

struct PowerWitness {
    std::size_t level = 0;
    ParameterPoint lambda;
    /// Baseline point. With the product-base formula this is the family's
    /// base point (U = 1), which may lie outside the box, or absent if none.
    std::optional<ParameterPoint> lambda_prime;
};

/// A lower bound on the supremum, with the points that attain it.
struct PowerEstimate {
    double value = 0.0;
    PowerWitness witness;
    bool refined = false;
    int grid_resolution = 0;
    std::size_t samples = 0;
    PowerFormula formula = PowerFormula::Auto;

    std::string method() const { return refined ? "grid+refine" : "grid"; }
};

PowerFormula resolve_formula(const HamiltonianFamily& family, PowerFormula requested);

/// Grid estimate over the family's box. Throws DegeneracyEncountered.
PowerEstimate adiabatic_entangling_power(const HamiltonianFamily& family,
                                         const PowerOptions& options = {});

/// Same estimate over an explicit sample set instead of a grid.
PowerEstimate adiabatic_entangling_power(const HamiltonianFamily& family,
                                         std::vector<ParameterPoint> samples,
                                         const PowerOptions& options);

/// Re-evaluates an estimate from its witness.
double evaluate_witness(const HamiltonianFamily& family, const PowerEstimate& estimate);

// ---------------------------------------------------------------------------
// Entangling power of a single unitary

/// Number of real chart coordinates for a product state: 2(d - 1) per factor.
std::size_t product_chart_dim(const BipartiteSplit& split);

/// Product state from chart coordinates: per factor, d - 1 hyperspherical
/// magnitude angles followed by d - 1 relative phases.
StateVector product_state_from_chart(std::span<const double> coords, const BipartiteSplit& split);

struct UnitaryPowerOptions {
    int starts = 8;
    std::uint64_t seed = kDefaultSeed;
    double size_tol = 1e-6;
    /// Product inputs evaluated in addition to the optimizer starts.
    std::vector<StateVector> candidates;
};

struct ProductWitness {
    double entropy = 0.0;
    StateVector input;   // product state
    StateVector output;  // u * input
};

/// Multi-start simplex maximization of E(u (psi_a (x) psi_b)) over product
/// inputs; a lower bound on the supremum. Throws NotUnitary.
ProductWitness unitary_entangling_power(const Operator& u, const BipartiteSplit& split,
                                        const UnitaryPowerOptions& options = {});

struct BoundReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    PowerEstimate power;
    ParameterPoint rhs_point;
    bool eigenframe = false;  // rhs used the eigenvector frame of a non iso-spectral family
};

/// Compares the adiabatic power with max over the grid of e_p(U(lambda)).
/// Families without an iso-spectral form use their eigenvector frame
/// V(lambda), which maps |k> to the k-th eigenvector.
BoundReport bound_check(const HamiltonianFamily& family, int grid_per_axis,
                        const UnitaryPowerOptions& ep_options = {}, int jobs = 1);

}  // namespace aep
