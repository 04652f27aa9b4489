#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aep/linalg.hpp"
#include "aep/spectral.hpp"

namespace aep {

using ParameterPoint = std::vector<double>;

/// Axis-aligned box used as the compact chart of the control manifold.
struct ParameterBox {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dim() const noexcept { return lower.size(); }
    ParameterPoint clamp(std::span<const double> point) const;
    bool contains(std::span<const double> point, double tol = 0.0) const;
};

/// Points of a regular grid with `per_axis` points on every axis, endpoints
/// included, first axis varying slowest. A single point per axis samples the
/// box centre.
std::vector<ParameterPoint> grid_points(const ParameterBox& box, int per_axis);

/// H(lambda) = U(lambda) H0 U(lambda)^dagger.
struct IsoSpectralForm {
    Operator base;
    std::function<Operator(std::span<const double>)> unitary;
    /// Point where U is the identity, when the family contains one.
    std::optional<ParameterPoint> base_point;
};

/// A map from a box of control parameters to Hermitian operators on a
/// bipartite space.
class HamiltonianFamily {
public:
    using Evaluator = std::function<Operator(std::span<const double>)>;

    static HamiltonianFamily general(std::string name, ParameterBox box,
                                     std::vector<std::string> parameter_names,
                                     BipartiteSplit split, Evaluator evaluate,
                                     double cluster_tol = kDefaultClusterTol);

    /// Throws DegeneracyEncountered if the base Hamiltonian is degenerate.
    static HamiltonianFamily iso_spectral(std::string name, ParameterBox box,
                                          std::vector<std::string> parameter_names,
                                          BipartiteSplit split, Operator base,
                                          std::function<Operator(std::span<const double>)> unitary,
                                          std::optional<ParameterPoint> base_point,
                                          double cluster_tol = kDefaultClusterTol);

    const std::string& name() const noexcept { return name_; }
    const ParameterBox& box() const noexcept { return box_; }
    const std::vector<std::string>& parameter_names() const noexcept { return names_; }
    const BipartiteSplit& split() const noexcept { return split_; }
    double cluster_tol() const noexcept { return cluster_tol_; }
    std::size_t parameter_dim() const noexcept { return box_.dim(); }
    std::size_t dim() const noexcept { return split_.dim(); }

    Operator evaluate(std::span<const double> point) const;

    const std::optional<IsoSpectralForm>& iso_form() const noexcept { return iso_; }
    /// Ascending, phase-fixed eigenvectors of the base Hamiltonian (iso families).
    const std::vector<StateVector>& base_eigenstates() const noexcept { return base_states_; }
    const RealVector& base_energies() const noexcept { return base_energies_; }
    /// True when the base eigenvectors are product states to within 1e-9.
    bool has_product_base() const noexcept { return product_base_; }

    /// Level-th eigenvector (ascending energy) of H(point), phase-fixed.
    /// Throws DegeneracyEncountered when any gap is below the cluster threshold.
    StateVector eigenstate(std::size_t level, std::span<const double> point) const;

    /// Full ascending eigen-decomposition with the same degeneracy check.
    EigenDecomposition eigensystem(std::span<const double> point) const;

    /// Same family with every unitary replaced by left * U(lambda).
    HamiltonianFamily left_multiplied(const Operator& left) const;

private:
    HamiltonianFamily() = default;
    void check_gap(const RealVector& values, std::span<const double> point) const;

    std::string name_;
    ParameterBox box_;
    std::vector<std::string> names_;
    BipartiteSplit split_;
    double cluster_tol_ = kDefaultClusterTol;
    Evaluator evaluate_;
    std::optional<IsoSpectralForm> iso_;
    std::vector<StateVector> base_states_;
    RealVector base_energies_;
    bool product_base_ = false;
};

}  // namespace aep
