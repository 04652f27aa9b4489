#include "aep/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "aep/error.hpp"

namespace aep {

Operator SpectralResolution::reconstruct() const {
    Operator h = Operator::Zero(dim, dim);
    for (const auto& level : levels) h += level.energy * level.projector;
    return h;
}

SpectralResolution spectral_resolution(const Operator& h, double cluster_tol) {
    const auto [values, vectors] = eig_hermitian(h);
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    const double threshold = cluster_tol * scale;

    SpectralResolution out;
    out.dim = static_cast<std::size_t>(h.rows());
    Eigen::Index start = 0;
    const Eigen::Index n = values.size();
    for (Eigen::Index k = 1; k <= n; ++k) {
        if (k < n && values(k) - values(k - 1) < threshold) continue;
        const Eigen::Index count = k - start;
        SpectralLevel level;
        level.energy = values.segment(start, count).mean();
        level.multiplicity = static_cast<int>(count);
        level.basis.resize(h.rows(), count);
        for (Eigen::Index c = 0; c < count; ++c) {
            level.basis.col(c) = fix_phase(vectors.col(start + c));
        }
        level.projector = level.basis * level.basis.adjoint();
        out.levels.push_back(std::move(level));
        start = k;
    }
    return out;
}

DegeneracyVector degeneracy_vector(const SpectralResolution& s) {
    DegeneracyVector ranks;
    ranks.reserve(s.levels.size());
    for (const auto& level : s.levels) ranks.push_back(level.multiplicity);
    return ranks;
}

std::string ConnectivityDecision::describe() const {
    switch (reason) {
        case ConnectivityReason::None:
            return "connectible";
        case ConnectivityReason::RankMultisetMismatch:
            return "degeneracy multiset mismatch";
        case ConnectivityReason::OrderMismatch:
            return "degeneracy order mismatch";
    }
    return "unknown";
}

ConnectivityDecision is_adiabatically_connectible(const Operator& h0, const Operator& h1,
                                                  double cluster_tol) {
    if (h0.rows() != h1.rows()) {
        throw DimensionMismatch("Hamiltonians act on spaces of different dimension");
    }
    ConnectivityDecision decision;
    decision.d0 = degeneracy_vector(spectral_resolution(h0, cluster_tol));
    decision.d1 = degeneracy_vector(spectral_resolution(h1, cluster_tol));
    if (decision.d0 == decision.d1) {
        decision.connectible = true;
        return decision;
    }
    auto sorted0 = decision.d0;
    auto sorted1 = decision.d1;
    std::ranges::sort(sorted0);
    std::ranges::sort(sorted1);
    decision.reason = sorted0 == sorted1 ? ConnectivityReason::OrderMismatch
                                         : ConnectivityReason::RankMultisetMismatch;
    return decision;
}

namespace {

Operator stacked_basis(const SpectralResolution& s) {
    Operator v(s.dim, s.dim);
    Eigen::Index col = 0;
    for (const auto& level : s.levels) {
        v.middleCols(col, level.multiplicity) = level.basis;
        col += level.multiplicity;
    }
    return v;
}

}  // namespace

Operator aligning_unitary(const SpectralResolution& s0, const SpectralResolution& s1) {
    if (s0.dim != s1.dim || degeneracy_vector(s0) != degeneracy_vector(s1)) {
        throw DegeneracyMismatch("spectral resolutions have different degeneracy vectors");
    }
    return stacked_basis(s1) * stacked_basis(s0).adjoint();
}

ConnectingFamily::ConnectingFamily(SpectralResolution base, std::vector<double> start_energies,
                                   std::vector<double> end_energies, Operator generator)
    : base_(std::move(base)),
      start_(std::move(start_energies)),
      end_(std::move(end_energies)),
      generator_(std::move(generator)) {}

double ConnectingFamily::energy(std::size_t level, double t) const {
    return (1.0 - t) * start_.at(level) + t * end_.at(level);
}

Operator ConnectingFamily::unitary(double t) const { return expm_skew(t * generator_); }

Operator ConnectingFamily::sample(double t) const {
    const Operator u = unitary(t);
    Operator h = Operator::Zero(base_.dim, base_.dim);
    for (std::size_t i = 0; i < base_.levels.size(); ++i) {
        h += energy(i, t) * base_.levels[i].projector;
    }
    Operator out = u * h * u.adjoint();
    return 0.5 * (out + out.adjoint());
}

ConnectingFamily ConnectingFamily::with_flat_curves() const {
    return ConnectingFamily(base_, start_, start_, generator_);
}

ConnectingFamily build_connecting_family(const Operator& h0, const Operator& h1,
                                         double cluster_tol) {
    const auto decision = is_adiabatically_connectible(h0, h1, cluster_tol);
    if (!decision.connectible) {
        throw NotConnectible(decision.describe());
    }
    auto s0 = spectral_resolution(h0, cluster_tol);
    const auto s1 = spectral_resolution(h1, cluster_tol);
    const Operator w = aligning_unitary(s0, s1);

    // Any global phase on W preserves W P0 W^dagger = P1, so an eigenphase on
    // the branch cut is moved off it by rotating W.
    constexpr std::array<double, 4> kPhaseShifts = {0.0, 0.25, -0.5, 1.0};
    Operator generator;
    bool found = false;
    for (double shift : kPhaseShifts) {
        try {
            generator = logm_unitary(std::polar(1.0, shift) * w);
            found = true;
            break;
        } catch (const BranchAmbiguity&) {
        }
    }
    if (!found) throw BranchAmbiguity();

    std::vector<double> start, end;
    for (std::size_t i = 0; i < s0.levels.size(); ++i) {
        start.push_back(s0.levels[i].energy);
        end.push_back(s1.levels[i].energy);
    }
    return ConnectingFamily(std::move(s0), std::move(start), std::move(end), std::move(generator));
}

double min_gap(const Operator& h) {
    const auto decomposition = eig_hermitian(h);
    const auto& values = decomposition.values;
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 1; k < values.size(); ++k) gap = std::min(gap, values(k) - values(k - 1));
    return gap;
}

double min_gap_along(const std::function<Operator(double)>& family, int samples) {
    if (samples < 2) throw std::invalid_argument("min_gap_along needs at least two samples");
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / (samples - 1);
        gap = std::min(gap, min_gap(family(t)));
    }
    return gap;
}

double min_gap_along(const ConnectingFamily& family, int samples) {
    return min_gap_along([&](double t) { return family.sample(t); }, samples);
}

}  // namespace aep
