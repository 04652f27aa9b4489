#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "aep/family.hpp"
#include "aep/models.hpp"

namespace aep {

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

enum class Schedule {
    Linear,  // constant speed along each segment
    Smooth,  // s(u) = u - sin(2 pi u) / (2 pi): zero velocity at segment ends
};

/// A curve through parameter space traversed in total time `duration`.
struct ParameterPath {
    double duration = 1.0;
    std::function<ParameterPoint(double)> waypoint;  // s in [0, 1]
    bool closed = false;

    ParameterPoint at(double s) const { return waypoint(s); }

    /// Piecewise-linear curve; time is split between segments in proportion
    /// to their length. Closed when the first and last waypoints coincide.
    static ParameterPath polyline(std::vector<ParameterPoint> waypoints, double duration,
                                  Schedule schedule = Schedule::Smooth);
    static ParameterPath constant(ParameterPoint point, double duration);
};

/// Closed loop on the sphere |mu|^2 + mu_z^2 = r^2 in the (Re mu, Im mu, mu_z)
/// chart of the exchange family: from the pole down the Im mu = 0 meridian
/// to polar angle theta0, once around that latitude, and back to the pole.
/// Segments use the smooth schedule. theta0 = 0 gives a stationary loop.
ParameterPath gate_loop(double theta0, double radius, double duration);

/// Circle at polar angle theta0 on the sphere of the given radius in a
/// Cartesian 3-dimensional chart, traversed once counter-clockwise about the
/// third axis at uniform speed.
ParameterPath latitude_loop(double theta0, double radius, double duration);

/// The same curve traversed backwards.
ParameterPath reversed(const ParameterPath& path);

struct PropagateOptions {
    int record_stride = 1;  // keep every n-th step in the time series (the last is always kept)
};

struct AdiabaticRunRecord {
    std::size_t level = 0;
    std::vector<double> times;
    std::vector<StateVector> states;
    std::vector<double> instantaneous_fidelity;  // |<n(t)|psi(t)>|^2
    std::vector<double> entropy;                 // entanglement of psi(t)
    std::vector<double> dynamical_series;        // -int eps dt up to t

    double dynamical_phase = 0.0;
    double geometric_phase = 0.0;  // in (-pi, pi]
    double total_phase = 0.0;      // arg <r(T)|psi(T)> relative to the initial phase
    double residual = 0.0;         // |psi(T) - exp(i(dyn + geo)) r(T)| up to the initial phase
    double final_fidelity = 0.0;
    double max_norm_drift = 0.0;
    double adiabaticity = 0.0;  // max over steps of |dH/dt| / gap^2
    StateVector final_state;
};

/// Integrates i d|psi>/dt = H(path(t/T)) |psi> with midpoint-exponential
/// steps. psi0 must be an eigenvector of the initial Hamiltonian.
///
/// Phases are measured against a reference eigenvector gauge r(lambda):
/// U(lambda)|Psi_i> for iso-spectral families, the initial eigenvector at
/// both ends of a closed loop otherwise, and the phase-fixed eigenvector at
/// the end of an open path. Throws NotAnEigenstate, DegeneracyEncountered.
AdiabaticRunRecord propagate(const HamiltonianFamily& family, const ParameterPath& path,
                             const StateVector& psi0, int steps, const PropagateOptions& options = {});

/// Full time-ordered evolution operator along the path (same stepping).
Operator evolution_operator(const HamiltonianFamily& family, const ParameterPath& path, int steps);

/// -arg prod_k <s_k|s_{k+1}> over a closed sequence (the last state connects
/// back to the first), in (-pi, pi]. Invariant under re-phasing any state.
double discrete_berry_phase(std::span<const StateVector> loop_states);

/// Berry phase of one level around a closed loop sampled at `samples` points.
/// Throws NotClosed, DegeneracyEncountered.
double berry_phase(const HamiltonianFamily& family, std::size_t level, const ParameterPath& loop,
                   int samples);

struct LevelDecomposition {
    std::size_t level = 0;
    double energy = 0.0;
    double dynamical = 0.0;  // -energy * T
    double geometric = 0.0;
    double residual = 0.0;   // |psi(T) - U(end) exp(i dyn) exp(i geo) |Psi_i>|
};

/// Splits the adiabatic evolution of every level into end-point unitary,
/// dynamical phase and geometric phase. Needs an iso-spectral family.
std::vector<LevelDecomposition> decompose_uad(const HamiltonianFamily& family,
                                              const ParameterPath& path, int steps);

struct GateSynthesisResult {
    std::array<double, 4> phases{};     // phi_00, phi_01, phi_10, phi_11
    std::array<double, 4> energies{};   // E_ab of the base
    std::array<double, 4> dynamical{};  // -E_ab T
    std::array<double, 4> geometric{};  // phi - dynamical, wrapped
    double nontriviality = 0.0;         // phi_01 + phi_10 - phi_00 - phi_11, wrapped
    bool entangling = false;            // |nontriviality| > 1e-3
    bool product_frame = false;         // loop starts where the eigenvectors are products
    double gate_error = 0.0;            // max |P - F diag(e^{i phi}) F^dagger|
    Operator propagator;
    Operator reconstructed;
};

inline constexpr double kEntanglingThreshold = 1e-3;

/// Runs the exchange family around a closed loop in (Re mu, Im mu, mu_z)
/// and reads off the diagonal gate. Throws NotClosed, ConstraintViolated
/// when |mu|^2 + mu_z^2 varies by more than 1e-9 along the loop.
GateSynthesisResult synthesize_controlled_phase(const models::Example1Params& params,
                                                const ParameterPath& loop, int steps);

}  // namespace aep
