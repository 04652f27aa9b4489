#include "aep/family.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aep/entanglement.hpp"
#include "aep/error.hpp"

namespace aep {

ParameterPoint ParameterBox::clamp(std::span<const double> point) const {
    ParameterPoint out(point.begin(), point.end());
    for (std::size_t i = 0; i < out.size() && i < dim(); ++i) {
        out[i] = std::clamp(out[i], lower[i], upper[i]);
    }
    return out;
}

bool ParameterBox::contains(std::span<const double> point, double tol) const {
    if (point.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (point[i] < lower[i] - tol || point[i] > upper[i] + tol) return false;
    }
    return true;
}

std::vector<ParameterPoint> grid_points(const ParameterBox& box, int per_axis) {
    if (per_axis < 1) throw std::invalid_argument("grid needs at least one point per axis");
    const std::size_t n = box.dim();
    std::vector<std::vector<double>> axes(n);
    for (std::size_t a = 0; a < n; ++a) {
        if (per_axis == 1) {
            axes[a] = {0.5 * (box.lower[a] + box.upper[a])};
            continue;
        }
        for (int k = 0; k < per_axis; ++k) {
            const double s = static_cast<double>(k) / (per_axis - 1);
            axes[a].push_back(box.lower[a] + s * (box.upper[a] - box.lower[a]));
        }
    }
    std::size_t total = 1;
    for (std::size_t a = 0; a < n; ++a) total *= axes[a].size();
    std::vector<ParameterPoint> points;
    points.reserve(total);
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        ParameterPoint p(n);
        for (std::size_t a = 0; a < n; ++a) p[a] = axes[a][idx[a]];
        points.push_back(std::move(p));
        for (std::size_t a = n; a-- > 0;) {
            if (++idx[a] < axes[a].size()) break;
            idx[a] = 0;
        }
    }
    return points;
}

HamiltonianFamily HamiltonianFamily::general(std::string name, ParameterBox box,
                                             std::vector<std::string> parameter_names,
                                             BipartiteSplit split, Evaluator evaluate,
                                             double cluster_tol) {
    HamiltonianFamily f;
    f.name_ = std::move(name);
    f.box_ = std::move(box);
    f.names_ = std::move(parameter_names);
    f.split_ = split;
    f.cluster_tol_ = cluster_tol;
    f.evaluate_ = std::move(evaluate);
    return f;
}

HamiltonianFamily HamiltonianFamily::iso_spectral(std::string name, ParameterBox box,
                                                  std::vector<std::string> parameter_names,
                                                  BipartiteSplit split, Operator base,
                                                  std::function<Operator(std::span<const double>)> unitary,
                                                  std::optional<ParameterPoint> base_point,
                                                  double cluster_tol) {
    if (static_cast<std::size_t>(base.rows()) != split.dim()) {
        throw DimensionMismatch("base Hamiltonian does not match the bipartite split");
    }
    HamiltonianFamily f;
    f.name_ = std::move(name);
    f.box_ = std::move(box);
    f.names_ = std::move(parameter_names);
    f.split_ = split;
    f.cluster_tol_ = cluster_tol;

    const auto decomposition = eig_hermitian(base);
    f.check_gap(decomposition.values, base_point ? std::span<const double>(*base_point)
                                                 : std::span<const double>());
    f.base_energies_ = decomposition.values;
    f.product_base_ = true;
    for (Eigen::Index k = 0; k < decomposition.vectors.cols(); ++k) {
        StateVector v = fix_phase(decomposition.vectors.col(k));
        if (schmidt_spectrum(v, split).front() < 1.0 - 1e-9) f.product_base_ = false;
        f.base_states_.push_back(std::move(v));
    }
    f.evaluate_ = [base, unitary](std::span<const double> p) {
        const Operator u = unitary(p);
        Operator h = u * base * u.adjoint();
        return Operator(0.5 * (h + h.adjoint()));
    };
    f.iso_ = IsoSpectralForm{std::move(base), std::move(unitary), std::move(base_point)};
    return f;
}

Operator HamiltonianFamily::evaluate(std::span<const double> point) const {
    if (point.size() != parameter_dim()) {
        throw DimensionMismatch("parameter point has the wrong dimension");
    }
    return evaluate_(point);
}

void HamiltonianFamily::check_gap(const RealVector& values, std::span<const double> point) const {
    const double threshold = cluster_tol_ * std::max(1.0, values.cwiseAbs().maxCoeff());
    for (Eigen::Index k = 1; k < values.size(); ++k) {
        const double gap = values(k) - values(k - 1);
        if (gap < threshold) {
            throw DegeneracyEncountered(ParameterPoint(point.begin(), point.end()), gap);
        }
    }
}

EigenDecomposition HamiltonianFamily::eigensystem(std::span<const double> point) const {
    auto decomposition = eig_hermitian(evaluate(point));
    check_gap(decomposition.values, point);
    for (Eigen::Index k = 0; k < decomposition.vectors.cols(); ++k) {
        decomposition.vectors.col(k) = fix_phase(decomposition.vectors.col(k));
    }
    return decomposition;
}

StateVector HamiltonianFamily::eigenstate(std::size_t level, std::span<const double> point) const {
    if (level >= dim()) throw std::out_of_range("level index out of range");
    if (iso_) {
        // Iso-spectral: the gap is that of the base, checked at construction.
        return fix_phase(iso_->unitary(point) * base_states_[level]);
    }
    return eigensystem(point).vectors.col(static_cast<Eigen::Index>(level));
}

HamiltonianFamily HamiltonianFamily::left_multiplied(const Operator& left) const {
    if (iso_) {
        auto inner = iso_->unitary;
        auto f = iso_spectral(name_, box_, names_, split_, iso_->base,
                              [inner, left](std::span<const double> p) { return Operator(left * inner(p)); },
                              std::nullopt, cluster_tol_);
        return f;
    }
    auto inner = evaluate_;
    return general(name_, box_, names_, split_,
                   [inner, left](std::span<const double> p) {
                       return Operator(left * inner(p) * left.adjoint());
                   },
                   cluster_tol_);
}

}  // namespace aep
