#include "aep/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "aep/entanglement.hpp"
#include "aep/error.hpp"

namespace aep {

double wrap_phase(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(angle, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    if (r > std::numbers::pi) r -= two_pi;
    return r;
}

namespace {

double apply_schedule(Schedule schedule, double u) {
    u = std::clamp(u, 0.0, 1.0);
    if (schedule == Schedule::Linear) return u;
    return u - std::sin(2.0 * std::numbers::pi * u) / (2.0 * std::numbers::pi);
}

double distance(const ParameterPoint& a, const ParameterPoint& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(d);
}

bool coincide(const ParameterPoint& a, const ParameterPoint& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

}  // namespace

ParameterPath ParameterPath::polyline(std::vector<ParameterPoint> waypoints, double duration,
                                      Schedule schedule) {
    if (waypoints.empty()) throw std::invalid_argument("path needs at least one waypoint");
    for (const auto& w : waypoints) {
        if (w.size() != waypoints.front().size()) {
            throw DimensionMismatch("waypoints have different dimensions");
        }
    }
    std::vector<double> cumulative{0.0};
    for (std::size_t k = 1; k < waypoints.size(); ++k) {
        cumulative.push_back(cumulative.back() + distance(waypoints[k - 1], waypoints[k]));
    }
    const double total = cumulative.back();
    ParameterPath path;
    path.duration = duration;
    path.closed = coincide(waypoints.front(), waypoints.back(), 1e-12);
    if (total == 0.0) {
        path.waypoint = [p = waypoints.front()](double) { return p; };
        return path;
    }
    path.waypoint = [waypoints = std::move(waypoints), cumulative = std::move(cumulative), total,
                     schedule](double s) {
        const double arc = std::clamp(s, 0.0, 1.0) * total;
        std::size_t seg = 1;
        while (seg + 1 < cumulative.size() && cumulative[seg] < arc) ++seg;
        const double length = cumulative[seg] - cumulative[seg - 1];
        const double u = length > 0.0 ? (arc - cumulative[seg - 1]) / length : 1.0;
        const double v = apply_schedule(schedule, u);
        ParameterPoint p(waypoints[seg].size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            p[i] = (1.0 - v) * waypoints[seg - 1][i] + v * waypoints[seg][i];
        }
        return p;
    };
    return path;
}

ParameterPath ParameterPath::constant(ParameterPoint point, double duration) {
    ParameterPath path;
    path.duration = duration;
    path.closed = true;
    path.waypoint = [p = std::move(point)](double) { return p; };
    return path;
}

ParameterPath gate_loop(double theta0, double radius, double duration) {
    const double meridian = radius * theta0;
    const double latitude = 2.0 * std::numbers::pi * radius * std::sin(theta0);
    const double total = 2.0 * meridian + latitude;
    auto point = [radius](double polar, double azimuth) {
        return ParameterPoint{radius * std::sin(polar) * std::cos(azimuth),
                              radius * std::sin(polar) * std::sin(azimuth), radius * std::cos(polar)};
    };
    ParameterPath path;
    path.duration = duration;
    path.closed = true;
    if (total <= 0.0) {
        path.waypoint = [p = point(0.0, 0.0)](double) { return p; };
        return path;
    }
    const double f1 = meridian / total;
    const double f2 = (meridian + latitude) / total;
    path.waypoint = [=](double s) {
        s = std::clamp(s, 0.0, 1.0);
        if (s < f1) return point(theta0 * apply_schedule(Schedule::Smooth, s / f1), 0.0);
        if (s < f2) {
            const double u = (s - f1) / (f2 - f1);
            return point(theta0, 2.0 * std::numbers::pi * apply_schedule(Schedule::Smooth, u));
        }
        const double u = f2 < 1.0 ? (s - f2) / (1.0 - f2) : 1.0;
        return point(theta0 * (1.0 - apply_schedule(Schedule::Smooth, u)), 0.0);
    };
    return path;
}

ParameterPath latitude_loop(double theta0, double radius, double duration) {
    ParameterPath path;
    path.duration = duration;
    path.closed = true;
    path.waypoint = [=](double s) {
        // Exact endpoints so the loop closes bit for bit.
        const double phi = s >= 1.0 ? 0.0 : 2.0 * std::numbers::pi * std::clamp(s, 0.0, 1.0);
        return ParameterPoint{radius * std::sin(theta0) * std::cos(phi),
                              radius * std::sin(theta0) * std::sin(phi), radius * std::cos(theta0)};
    };
    return path;
}

ParameterPath reversed(const ParameterPath& path) {
    ParameterPath out = path;
    out.waypoint = [inner = path.waypoint](double s) { return inner(1.0 - s); };
    return out;
}

namespace {

double level_gap(const RealVector& values, std::size_t level) {
    double gap = std::numeric_limits<double>::infinity();
    const auto i = static_cast<Eigen::Index>(level);
    if (i > 0) gap = std::min(gap, values(i) - values(i - 1));
    if (i + 1 < values.size()) gap = std::min(gap, values(i + 1) - values(i));
    return gap;
}

Operator step_unitary(const EigenDecomposition& mid, double dt) {
    Eigen::VectorXcd phases(mid.values.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -mid.values(k) * dt);
    return mid.vectors * phases.asDiagonal() * mid.vectors.adjoint();
}

// Reference eigenvector gauge r(lambda) used to report phases.
StateVector reference_state(const HamiltonianFamily& family, std::size_t level,
                            std::span<const double> point) {
    return family.iso_form()->unitary(point) * family.base_eigenstates()[level];
}

}  // namespace

AdiabaticRunRecord propagate(const HamiltonianFamily& family, const ParameterPath& path,
                             const StateVector& psi0, int steps, const PropagateOptions& options) {
    if (steps < 1) throw std::invalid_argument("propagate needs at least one step");
    if (static_cast<std::size_t>(psi0.size()) != family.dim()) {
        throw DimensionMismatch("initial state does not match the family dimension");
    }
    const double duration = path.duration;
    const double dt = duration / steps;
    const int stride = std::max(1, options.record_stride);
    auto lambda_at = [&](double t) { return path.at(duration > 0.0 ? t / duration : 0.0); };

    const ParameterPoint start = lambda_at(0.0);
    auto system = family.eigensystem(start);
    AdiabaticRunRecord record;
    double best = -1.0;
    for (Eigen::Index k = 0; k < system.vectors.cols(); ++k) {
        const double overlap = std::abs(system.vectors.col(k).dot(psi0));
        if (overlap > best) {
            best = overlap;
            record.level = static_cast<std::size_t>(k);
        }
    }
    // |psi0 - e^{ia} v|^2 = 2 - 2|<v|psi0>| for normalized vectors.
    if (std::abs(psi0.norm() - 1.0) > 1e-8 || 2.0 - 2.0 * best > 1e-12) {
        throw NotAnEigenstate();
    }
    const std::size_t level = record.level;
    const auto li = static_cast<Eigen::Index>(level);

    StateVector tracked = system.vectors.col(li);
    tracked *= std::polar(1.0, std::arg(tracked.dot(psi0)));
    const StateVector first_tracked = tracked;

    StateVector psi = psi0;
    Operator h_prev = family.evaluate(start);
    double dynamical = 0.0;

    auto store = [&](double t) {
        record.times.push_back(t);
        record.states.push_back(psi);
        record.instantaneous_fidelity.push_back(std::min(1.0, std::norm(tracked.dot(psi))));
        record.entropy.push_back(entropy(psi, family.split()));
        record.dynamical_series.push_back(dynamical);
    };
    store(0.0);

    for (int k = 1; k <= steps; ++k) {
        const auto mid = family.eigensystem(lambda_at((k - 0.5) * dt));
        psi = step_unitary(mid, dt) * psi;
        dynamical -= mid.values(li) * dt;

        const ParameterPoint here = lambda_at(k * dt);
        const Operator h = family.evaluate(here);
        system = family.eigensystem(here);
        StateVector v = system.vectors.col(li);
        v *= std::polar(1.0, -std::arg(tracked.dot(v)));
        tracked = std::move(v);

        const double gap = level_gap(system.values, level);
        const Operator dh = h - h_prev;
        const double rate = dt > 0.0 ? spectral_norm_hermitian(0.5 * (dh + dh.adjoint())) / dt : 0.0;
        record.adiabaticity = std::max(record.adiabaticity, rate / (gap * gap));
        record.max_norm_drift = std::max(record.max_norm_drift, std::abs(psi.norm() - 1.0));
        h_prev = h;

        if (k % stride == 0 || k == steps) store(k * dt);
    }

    const ParameterPoint end = lambda_at(duration);
    StateVector ref_start, ref_end;
    if (family.iso_form()) {
        ref_start = reference_state(family, level, start);
        ref_end = reference_state(family, level, end);
    } else if (path.closed) {
        ref_start = first_tracked;
        ref_end = first_tracked;
    } else {
        ref_start = first_tracked;
        ref_end = family.eigensystem(end).vectors.col(li);
    }

    const double initial_phase = std::arg(ref_start.dot(psi0));
    record.dynamical_phase = dynamical;
    record.geometric_phase =
        wrap_phase(std::arg(ref_end.dot(tracked)) - std::arg(ref_start.dot(first_tracked)));
    record.total_phase = wrap_phase(std::arg(ref_end.dot(psi)) - initial_phase);
    const StateVector predicted =
        std::polar(1.0, dynamical + record.geometric_phase + initial_phase) * ref_end;
    record.residual = (psi - predicted).norm();
    record.final_fidelity = record.instantaneous_fidelity.back();
    record.final_state = psi;
    return record;
}

Operator evolution_operator(const HamiltonianFamily& family, const ParameterPath& path, int steps) {
    if (steps < 1) throw std::invalid_argument("evolution_operator needs at least one step");
    const double duration = path.duration;
    const double dt = duration / steps;
    Operator u = Operator::Identity(family.dim(), family.dim());
    for (int k = 1; k <= steps; ++k) {
        const double s = duration > 0.0 ? (k - 0.5) * dt / duration : 0.0;
        u = step_unitary(family.eigensystem(path.at(s)), dt) * u;
    }
    return u;
}

double discrete_berry_phase(std::span<const StateVector> loop_states) {
    if (loop_states.size() < 2) return 0.0;
    Complex product = 1.0;
    for (std::size_t k = 0; k < loop_states.size(); ++k) {
        const auto& next = loop_states[(k + 1) % loop_states.size()];
        const Complex overlap = loop_states[k].dot(next);
        // Normalize each factor so long loops do not underflow.
        product *= overlap / std::abs(overlap);
    }
    return wrap_phase(-std::arg(product));
}

double berry_phase(const HamiltonianFamily& family, std::size_t level, const ParameterPath& loop,
                   int samples) {
    if (samples < 3) throw std::invalid_argument("berry_phase needs at least three samples");
    if (!coincide(loop.at(0.0), loop.at(1.0), 1e-12)) throw NotClosed();
    std::vector<StateVector> states;
    states.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        states.push_back(family.eigenstate(level, loop.at(static_cast<double>(k) / samples)));
    }
    return discrete_berry_phase(states);
}

std::vector<LevelDecomposition> decompose_uad(const HamiltonianFamily& family,
                                              const ParameterPath& path, int steps) {
    if (!family.iso_form()) {
        throw std::invalid_argument("decompose_uad needs an iso-spectral family");
    }
    const ParameterPoint start = path.at(0.0);
    const ParameterPoint end = path.at(1.0);
    std::vector<LevelDecomposition> out;
    for (std::size_t i = 0; i < family.dim(); ++i) {
        const StateVector psi0 = reference_state(family, i, start);
        const auto record = propagate(family, path, psi0, steps);
        LevelDecomposition d;
        d.level = i;
        d.energy = family.base_energies()(static_cast<Eigen::Index>(i));
        d.dynamical = -d.energy * path.duration;
        d.geometric = record.geometric_phase;
        const StateVector predicted =
            std::polar(1.0, d.dynamical + d.geometric) * reference_state(family, i, end);
        d.residual = (record.final_state - predicted).norm();
        out.push_back(d);
    }
    return out;
}

GateSynthesisResult synthesize_controlled_phase(const models::Example1Params& params,
                                                const ParameterPath& loop, int steps) {
    if (!coincide(loop.at(0.0), loop.at(1.0), 1e-12)) throw NotClosed();
    const ParameterPoint start = loop.at(0.0);
    if (start.size() != 3) {
        throw DimensionMismatch("gate loops live in the (Re mu, Im mu, mu_z) chart");
    }
    auto radius2 = [](const ParameterPoint& p) { return p[0] * p[0] + p[1] * p[1] + p[2] * p[2]; };
    const double r2 = radius2(start);
    const int checks = std::max(steps, 2000);
    for (int k = 0; k <= checks; ++k) {
        if (std::abs(radius2(loop.at(static_cast<double>(k) / checks)) - r2) > 1e-9) {
            throw ConstraintViolated("|mu|^2 + mu_z^2 is not constant along the loop");
        }
    }

    const double r = std::sqrt(r2) + 1.0;
    const auto family = models::example1_family(params, ParameterBox{{-r, -r, -r}, {r, r, r}});

    GateSynthesisResult result;
    result.propagator = evolution_operator(family, loop, steps);
    const Operator frame = family.iso_form()->unitary(start);
    const Operator base = params.base();

    Eigen::VectorXcd diag(4);
    for (int c = 0; c < 4; ++c) {
        const StateVector e = frame.col(c);
        result.phases[c] = std::arg(e.dot(result.propagator * e));
        result.energies[c] = base(c, c).real();
        result.dynamical[c] = -result.energies[c] * loop.duration;
        result.geometric[c] = wrap_phase(result.phases[c] - result.dynamical[c]);
        diag(c) = std::polar(1.0, result.phases[c]);
    }
    result.reconstructed = frame * diag.asDiagonal() * frame.adjoint();
    result.gate_error = (result.propagator - result.reconstructed).cwiseAbs().maxCoeff();
    result.nontriviality =
        wrap_phase(result.phases[1] + result.phases[2] - result.phases[0] - result.phases[3]);
    result.entangling = std::abs(result.nontriviality) > kEntanglingThreshold;

    Operator off = frame;
    off.diagonal().setZero();
    result.product_frame = off.cwiseAbs().maxCoeff() < 1e-12;
    return result;
}

}  // namespace aep
