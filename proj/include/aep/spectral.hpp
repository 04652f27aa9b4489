#pragma once

#include <functional>
#include <string>
#include <vector>

#include "aep/linalg.hpp"

namespace aep {

inline constexpr double kDefaultClusterTol = 1e-8;

/// One distinct eigenvalue with its eigenspace.
struct SpectralLevel {
    double energy = 0.0;
    Operator projector;
    Operator basis;  // orthonormal columns spanning the eigenspace
    int multiplicity = 0;
};

/// H = sum_i energy_i * projector_i, levels strictly ascending in energy.
struct SpectralResolution {
    std::vector<SpectralLevel> levels;
    std::size_t dim = 0;

    std::size_t distinct() const noexcept { return levels.size(); }
    Operator reconstruct() const;
};

/// Ranks of the level projectors, ordered by ascending eigenvalue.
using DegeneracyVector = std::vector<int>;

/// Groups ascending eigenvalues whose consecutive gaps are below
/// cluster_tol * max(1, |h|). Throws NotHermitian.
SpectralResolution spectral_resolution(const Operator& h, double cluster_tol = kDefaultClusterTol);

DegeneracyVector degeneracy_vector(const SpectralResolution& s);

enum class ConnectivityReason {
    None,
    RankMultisetMismatch,  // not even iso-degenerate
    OrderMismatch,         // iso-degenerate, but the ranks appear in another order
};

struct ConnectivityDecision {
    bool connectible = false;
    ConnectivityReason reason = ConnectivityReason::None;
    DegeneracyVector d0;
    DegeneracyVector d1;

    std::string describe() const;
};

/// Two Hamiltonians are adiabatically connectible iff their degeneracy
/// vectors agree as ordered tuples. Throws NotHermitian, DimensionMismatch.
ConnectivityDecision is_adiabatically_connectible(const Operator& h0, const Operator& h1,
                                                  double cluster_tol = kDefaultClusterTol);

/// Unitary W with W P0_i W^dagger = P1_i for every level i, built as V1 V0^dagger.
/// Throws DegeneracyMismatch.
Operator aligning_unitary(const SpectralResolution& s0, const SpectralResolution& s1);

/// H(t) = sum_i eps_i(t) U_t P0_i U_t^dagger with linearly interpolated
/// level energies and the geodesic U_t = exp(i t G), exp(i G) = W.
class ConnectingFamily {
public:
    ConnectingFamily(SpectralResolution base, std::vector<double> start_energies,
                     std::vector<double> end_energies, Operator generator);

    const SpectralResolution& base() const noexcept { return base_; }
    const Operator& generator() const noexcept { return generator_; }

    double energy(std::size_t level, double t) const;
    Operator unitary(double t) const;
    Operator sample(double t) const;

    /// Same eigenvector path with every level energy frozen at its t = 0 value.
    ConnectingFamily with_flat_curves() const;

private:
    SpectralResolution base_;
    std::vector<double> start_;
    std::vector<double> end_;
    Operator generator_;
};

/// Throws NotConnectible, or BranchAmbiguity if no admissible global phase
/// of W yields a principal logarithm.
ConnectingFamily build_connecting_family(const Operator& h0, const Operator& h1,
                                         double cluster_tol = kDefaultClusterTol);

/// Smallest consecutive eigenvalue gap of a Hermitian operator (+inf for dim 1).
double min_gap(const Operator& h);

/// Minimum of min_gap over t = k / (samples - 1), k = 0..samples-1.
double min_gap_along(const std::function<Operator(double)>& family, int samples);
double min_gap_along(const ConnectingFamily& family, int samples);

}  // namespace aep
