#include "aep/entangling_power.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "aep/entanglement.hpp"
#include "aep/error.hpp"
#include "aep/optimize.hpp"
#include "aep/parallel.hpp"

namespace aep {

std::vector<StateVector> eigenstate_track(const HamiltonianFamily& family, std::size_t level,
                                          std::span<const ParameterPoint> path) {
    std::vector<StateVector> track;
    track.reserve(path.size());
    for (const auto& point : path) {
        StateVector v = family.eigenstate(level, point);
        if (!track.empty()) {
            const Complex overlap = track.back().dot(v);
            v *= std::polar(1.0, -std::arg(overlap));
        }
        track.push_back(std::move(v));
    }
    return track;
}

double level_entropy(const HamiltonianFamily& family, std::size_t level,
                     std::span<const double> point) {
    return entropy(family.eigenstate(level, point), family.split());
}

namespace {

std::vector<double> all_level_entropies(const HamiltonianFamily& family,
                                        std::span<const double> point) {
    std::vector<double> out(family.dim());
    if (family.iso_form()) {
        const Operator u = family.iso_form()->unitary(point);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = entropy(u * family.base_eigenstates()[i], family.split());
        }
        return out;
    }
    const auto system = family.eigensystem(point);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = entropy(system.vectors.col(static_cast<Eigen::Index>(i)), family.split());
    }
    return out;
}

}  // namespace

SweepResult level_entropy_sweep(const HamiltonianFamily& family, std::vector<ParameterPoint> points,
                                int jobs) {
    SweepResult result;
    result.per_level_entropy.resize(points.size());
    parallel_for(points.size(), jobs, [&](std::size_t k) {
        result.per_level_entropy[k] = all_level_entropies(family, points[k]);
    });
    result.grid = std::move(points);
    result.argmax_value = -1.0;
    for (std::size_t k = 0; k < result.grid.size(); ++k) {
        for (std::size_t i = 0; i < family.dim(); ++i) {
            if (result.per_level_entropy[k][i] > result.argmax_value) {
                result.argmax_value = result.per_level_entropy[k][i];
                result.argmax_level = i;
                result.argmax_point = result.grid[k];
            }
        }
    }
    return result;
}

std::string to_string(PowerFormula formula) {
    switch (formula) {
        case PowerFormula::Auto:
            return "auto";
        case PowerFormula::TwoPoint:
            return "two-point";
        case PowerFormula::ProductBase:
            return "product-base";
    }
    return "unknown";
}

PowerFormula resolve_formula(const HamiltonianFamily& family, PowerFormula requested) {
    const bool certified = family.iso_form().has_value() && family.has_product_base();
    switch (requested) {
        case PowerFormula::Auto:
            return certified ? PowerFormula::ProductBase : PowerFormula::TwoPoint;
        case PowerFormula::ProductBase:
            if (!certified) {
                throw std::invalid_argument(
                    "product-base formula needs an iso-spectral family with product eigenvectors");
            }
            return requested;
        case PowerFormula::TwoPoint:
            return requested;
    }
    return requested;
}

namespace {

struct Extremum {
    double value;
    ParameterPoint point;
};

// Polishes the extremum of one level's entropy with simplex runs seeded at
// the best sample points. sign = +1 maximizes, -1 minimizes.
Extremum refine_level(const HamiltonianFamily& family, std::size_t level, const SweepResult& sweep,
                      double sign, const std::vector<double>& steps, const PowerOptions& options) {
    std::vector<std::size_t> order(sweep.grid.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) {
        return sign * sweep.per_level_entropy[a][level] > sign * sweep.per_level_entropy[b][level];
    });

    const auto& box = family.box();
    Extremum best{sweep.per_level_entropy[order.front()][level], sweep.grid[order.front()]};
    const std::size_t starts = std::min<std::size_t>(order.size(), std::max(options.refine_starts, 0));
    SimplexOptions simplex;
    simplex.initial_step = steps;
    simplex.size_tol = options.refine_tol;
    for (std::size_t s = 0; s < starts; ++s) {
        const auto& seed = sweep.grid[order[s]];
        auto objective = [&](std::span<const double> x) {
            return -sign * level_entropy(family, level, box.clamp(x));
        };
        const auto run = minimize_simplex(objective, seed, simplex);
        const ParameterPoint clamped = box.clamp(run.x);
        const double value = level_entropy(family, level, clamped);
        if (sign * value > sign * best.value) best = {value, clamped};
    }
    return best;
}

std::vector<double> refine_steps(const ParameterBox& box, int per_axis) {
    std::vector<double> steps(box.dim());
    for (std::size_t a = 0; a < box.dim(); ++a) {
        const double width = box.upper[a] - box.lower[a];
        const double step = per_axis > 1 ? width / (per_axis - 1) : 0.1 * width;
        steps[a] = step > 0.0 ? step : 0.1;
    }
    return steps;
}

PowerEstimate estimate_from_sweep(const HamiltonianFamily& family, const SweepResult& sweep,
                                  const PowerOptions& options, const std::vector<double>& steps) {
    PowerEstimate estimate;
    estimate.formula = resolve_formula(family, options.formula);
    estimate.samples = sweep.grid.size();
    estimate.refined = options.refine;
    if (sweep.grid.empty()) throw std::invalid_argument("no parameter samples");

    std::vector<std::size_t> levels;
    if (options.level) {
        if (*options.level >= family.dim()) throw std::out_of_range("level index out of range");
        levels.push_back(*options.level);
    } else {
        levels.resize(family.dim());
        std::iota(levels.begin(), levels.end(), std::size_t{0});
    }

    const bool two_point = estimate.formula == PowerFormula::TwoPoint;
    estimate.value = -1.0;
    for (std::size_t level : levels) {
        std::size_t hi = 0, lo = 0;
        for (std::size_t k = 1; k < sweep.grid.size(); ++k) {
            if (sweep.per_level_entropy[k][level] > sweep.per_level_entropy[hi][level]) hi = k;
            if (sweep.per_level_entropy[k][level] < sweep.per_level_entropy[lo][level]) lo = k;
        }
        Extremum top{sweep.per_level_entropy[hi][level], sweep.grid[hi]};
        Extremum bottom{sweep.per_level_entropy[lo][level], sweep.grid[lo]};
        if (options.refine) {
            top = refine_level(family, level, sweep, +1.0, steps, options);
            if (two_point) bottom = refine_level(family, level, sweep, -1.0, steps, options);
        }
        const double value = two_point ? top.value - bottom.value : top.value;
        if (value > estimate.value) {
            estimate.value = value;
            estimate.witness.level = level;
            estimate.witness.lambda = top.point;
            if (two_point) {
                estimate.witness.lambda_prime = bottom.point;
            } else {
                estimate.witness.lambda_prime = family.iso_form()->base_point;
            }
        }
    }
    return estimate;
}

}  // namespace

PowerEstimate adiabatic_entangling_power(const HamiltonianFamily& family,
                                         const PowerOptions& options) {
    auto sweep = level_entropy_sweep(family, grid_points(family.box(), options.grid_per_axis),
                                     options.jobs);
    auto estimate = estimate_from_sweep(family, sweep, options,
                                        refine_steps(family.box(), options.grid_per_axis));
    estimate.grid_resolution = options.grid_per_axis;
    return estimate;
}

PowerEstimate adiabatic_entangling_power(const HamiltonianFamily& family,
                                         std::vector<ParameterPoint> samples,
                                         const PowerOptions& options) {
    auto sweep = level_entropy_sweep(family, std::move(samples), options.jobs);
    auto estimate = estimate_from_sweep(family, sweep, options, refine_steps(family.box(), 1));
    estimate.grid_resolution = 0;
    return estimate;
}

double evaluate_witness(const HamiltonianFamily& family, const PowerEstimate& estimate) {
    const auto& w = estimate.witness;
    const double top = level_entropy(family, w.level, w.lambda);
    if (estimate.formula == PowerFormula::TwoPoint) {
        return top - level_entropy(family, w.level, *w.lambda_prime);
    }
    return top;
}

std::size_t product_chart_dim(const BipartiteSplit& split) {
    return 2 * (split.dim_a - 1) + 2 * (split.dim_b - 1);
}

namespace {

StateVector local_state(std::span<const double> coords, std::size_t d) {
    // coords: d-1 magnitude angles, then d-1 phases.
    StateVector v(d);
    double carry = 1.0;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        v(k) = carry * std::cos(coords[k]);
        carry *= std::sin(coords[k]);
    }
    v(d - 1) = carry;
    for (std::size_t k = 1; k < d; ++k) v(k) *= std::polar(1.0, coords[d - 1 + k - 1]);
    return v;
}

}  // namespace

StateVector product_state_from_chart(std::span<const double> coords, const BipartiteSplit& split) {
    if (coords.size() != product_chart_dim(split)) {
        throw DimensionMismatch("chart coordinates do not match the bipartite split");
    }
    const std::size_t na = 2 * (split.dim_a - 1);
    return tensor(local_state(coords.subspan(0, na), split.dim_a),
                  local_state(coords.subspan(na), split.dim_b));
}

ProductWitness unitary_entangling_power(const Operator& u, const BipartiteSplit& split,
                                        const UnitaryPowerOptions& options) {
    if (!is_unitary(u, 1e-9)) throw NotUnitary();
    if (static_cast<std::size_t>(u.rows()) != split.dim()) {
        throw DimensionMismatch("unitary does not match the bipartite split");
    }

    ProductWitness best;
    best.entropy = -1.0;
    auto consider = [&](const StateVector& input) {
        StateVector output = u * input;
        const double e = entropy(output, split);
        if (e > best.entropy) best = {e, input, std::move(output)};
    };
    for (const auto& candidate : options.candidates) consider(candidate);

    const std::size_t n = product_chart_dim(split);
    if (n == 0) {
        consider(product_state_from_chart({}, split));
        return best;
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    SimplexOptions simplex;
    simplex.initial_step.assign(n, 0.5);
    simplex.size_tol = options.size_tol;
    auto objective = [&](std::span<const double> x) {
        return -entropy(u * product_state_from_chart(x, split), split);
    };
    for (int s = 0; s < options.starts; ++s) {
        std::vector<double> start(n);
        for (auto& c : start) c = angle(rng);
        const auto run = minimize_simplex(objective, start, simplex);
        consider(product_state_from_chart(run.x, split));
    }
    return best;
}

namespace {

// e_p depends on the unitary alone; grids over families with a constant
// eigenvector frame would otherwise repeat the same optimization.
class EntanglingPowerCache {
public:
    const ProductWitness* find(const Operator& u) const {
        for (const auto& [key, value] : entries_) {
            if (key.rows() == u.rows() && (key - u).cwiseAbs().maxCoeff() < 1e-10) return &value;
        }
        return nullptr;
    }
    void insert(const Operator& u, const ProductWitness& w) {
        if (entries_.size() < kCapacity) entries_.emplace_back(u, w);
    }

private:
    static constexpr std::size_t kCapacity = 16;
    std::vector<std::pair<Operator, ProductWitness>> entries_;
};

}  // namespace

BoundReport bound_check(const HamiltonianFamily& family, int grid_per_axis,
                        const UnitaryPowerOptions& ep_options, int jobs) {
    BoundReport report;
    PowerOptions options;
    options.grid_per_axis = grid_per_axis;
    options.jobs = jobs;
    report.power = adiabatic_entangling_power(family, options);
    report.lhs = report.power.value;
    report.eigenframe = !family.iso_form().has_value();

    const auto points = grid_points(family.box(), grid_per_axis);
    std::vector<double> rhs(points.size(), 0.0);
    const std::size_t workers = static_cast<std::size_t>(std::max(jobs, 1));
    std::vector<EntanglingPowerCache> caches(workers);

    std::vector<StateVector> candidates = ep_options.candidates;
    if (family.iso_form()) {
        for (const auto& s : family.base_eigenstates()) candidates.push_back(s);
    } else {
        for (std::size_t k = 0; k < family.dim(); ++k) candidates.push_back(basis_state(family.dim(), k));
    }

    // Each worker walks a fixed stride so its cache sees a deterministic sequence.
    parallel_for(workers, jobs, [&](std::size_t w) {
        for (std::size_t k = w; k < points.size(); k += workers) {
            const Operator frame = family.iso_form() ? family.iso_form()->unitary(points[k])
                                                     : family.eigensystem(points[k]).vectors;
            if (const auto* hit = caches[w].find(frame)) {
                rhs[k] = hit->entropy;
                continue;
            }
            UnitaryPowerOptions local = ep_options;
            local.candidates = candidates;
            const auto witness = unitary_entangling_power(frame, family.split(), local);
            caches[w].insert(frame, witness);
            rhs[k] = witness.entropy;
        }
    });

    const auto best = std::ranges::max_element(rhs);
    report.rhs = *best;
    report.rhs_point = points[static_cast<std::size_t>(best - rhs.begin())];
    report.holds = report.lhs <= report.rhs + 1e-6;
    return report;
}

}  // namespace aep
