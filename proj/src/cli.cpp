#include "aep/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <sstream>

#include "aep/entanglement.hpp"
#include "aep/entangling_power.hpp"
#include "aep/error.hpp"
#include "aep/io.hpp"
#include "aep/parallel.hpp"
#include "aep/simulator.hpp"
#include "aep/spectral.hpp"

namespace aep::cli {

namespace {

using io::Json;

// Above this value of max |dH/dt| / gap^2 the run is reported as likely diabatic.
constexpr double kAdiabaticityLimit = 0.1;

std::string format_point(const ParameterPoint& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + io::format_double(p[i]);
    return s + ")";
}

std::string format_ranks(const DegeneracyVector& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + std::to_string(d[i]);
    return s + ")";
}

int default_jobs() {
    if (const char* env = std::getenv(kJobsEnv)) {
        try {
            const int jobs = std::stoi(env);
            if (jobs >= 1) return jobs;
        } catch (const std::exception&) {
        }
        throw InputError(std::string(kJobsEnv) + " must be a positive integer");
    }
    return 1;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        io::write_text_file(path, text);
    }
}

std::vector<ParameterPoint> parse_waypoints(const std::string& text, std::size_t dim) {
    std::vector<ParameterPoint> points;
    std::stringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
        ParameterPoint p;
        std::stringstream cells(row);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                p.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw InputError("bad path coordinate '" + cell + "'");
            }
            if (!std::isfinite(p.back())) throw InputError("path coordinates must be finite");
        }
        if (p.size() != dim) {
            throw InputError("path waypoint " + format_point(p) + " needs " + std::to_string(dim) +
                             " coordinates");
        }
        points.push_back(std::move(p));
    }
    if (points.empty()) throw InputError("path needs at least one waypoint");
    return points;
}

// ---------------------------------------------------------------------------

struct Common {
    int jobs = 1;
    std::uint64_t seed = kDefaultSeed;
};

struct ConnectibleArgs {
    std::string h0, h1, out;
    double cluster_tol = kDefaultClusterTol;
    int samples = 101;
};

int cmd_connectible(const ConnectibleArgs& a, const Common& c, std::ostream& out) {
    const Operator h0 = io::load_hermitian_file(a.h0);
    const Operator h1 = io::load_hermitian_file(a.h1);
    if (a.samples < 2) throw InputError("--samples must be at least 2");
    const auto decision = is_adiabatically_connectible(h0, h1, a.cluster_tol);

    Json report;
    report["manifest"] = io::to_json(io::make_manifest(
        "connectible",
        Json{{"h0", io::to_json(h0)}, {"h1", io::to_json(h1)}, {"cluster_tol", a.cluster_tol},
             {"samples", a.samples}},
        c.seed));
    report["connectible"] = decision.connectible;
    report["reason"] = decision.describe();
    report["degeneracy_h0"] = decision.d0;
    report["degeneracy_h1"] = decision.d1;

    out << "decision: " << (decision.connectible ? "connectible" : "not connectible") << "\n";
    if (!decision.connectible) out << "reason: " << decision.describe() << "\n";
    out << "degeneracy h0: " << format_ranks(decision.d0) << "\n";
    out << "degeneracy h1: " << format_ranks(decision.d1) << "\n";

    if (decision.connectible) {
        const auto family = build_connecting_family(h0, h1, a.cluster_tol);
        Json spectra = Json::array();
        double gap = std::numeric_limits<double>::infinity();
        double endpoint_error = 0.0;
        for (int k = 0; k < a.samples; ++k) {
            const double t = static_cast<double>(k) / (a.samples - 1);
            const Operator h = family.sample(t);
            const auto eig = eig_hermitian(h);
            gap = std::min(gap, min_gap(h));
            Json energies = Json::array();
            for (Eigen::Index i = 0; i < eig.values.size(); ++i) energies.push_back(eig.values(i));
            spectra.push_back(Json{{"t", t}, {"energies", std::move(energies)}});
        }
        endpoint_error = std::max((family.sample(0.0) - h0).cwiseAbs().maxCoeff(),
                                  (family.sample(1.0) - h1).cwiseAbs().maxCoeff());
        report["min_gap"] = gap;
        report["endpoint_error"] = endpoint_error;
        report["generator"] = io::to_json(family.generator());
        report["spectra"] = std::move(spectra);
        out << "min gap: " << io::format_double(gap) << "\n";
        out << "endpoint error: " << io::format_double(endpoint_error) << "\n";
    }
    if (!a.out.empty()) io::write_text_file(a.out, report.dump(2) + "\n");
    return decision.connectible ? kExitOk : kExitNegative;
}

// ---------------------------------------------------------------------------

struct PowerArgs {
    std::string spec, csv, level = "all", formula = "auto";
    int grid = 41;
    bool refine = false;
};

PowerFormula parse_formula(const std::string& s) {
    if (s == "auto") return PowerFormula::Auto;
    if (s == "two-point") return PowerFormula::TwoPoint;
    if (s == "product-base") return PowerFormula::ProductBase;
    throw InputError("--formula must be auto, two-point or product-base");
}

int cmd_power(const PowerArgs& a, const Common& c, std::ostream& out) {
    const auto spec = io::load_family_spec(a.spec);
    const auto family = io::build_family(spec);
    if (a.grid < 1) throw InputError("--grid must be positive");

    PowerOptions opt;
    opt.grid_per_axis = a.grid;
    opt.refine = a.refine;
    opt.jobs = c.jobs;
    opt.formula = parse_formula(a.formula);
    if (a.level != "all") {
        try {
            std::size_t used = 0;
            const long level = std::stol(a.level, &used);
            if (used != a.level.size() || level < 0 || static_cast<std::size_t>(level) >= family.dim()) {
                throw std::out_of_range(a.level);
            }
            opt.level = static_cast<std::size_t>(level);
        } catch (const std::exception&) {
            throw InputError("--level must be 'all' or a level index below " + std::to_string(family.dim()));
        }
    }
    try {
        resolve_formula(family, opt.formula);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }

    const auto estimate = adiabatic_entangling_power(family, opt);
    out << "family: " << spec.kind << "\n";
    out << "formula: " << to_string(estimate.formula) << "\n";
    out << "method: " << estimate.method() << "\n";
    out << "grid: " << estimate.grid_resolution << " per axis, " << estimate.samples << " points\n";
    out << "value: " << io::format_double(estimate.value) << "\n";
    out << "witness level: " << estimate.witness.level << "\n";
    out << "witness lambda: " << format_point(estimate.witness.lambda) << "\n";
    if (estimate.witness.lambda_prime) {
        const bool base = estimate.formula == PowerFormula::ProductBase;
        out << "witness lambda'" << (base ? " (base point)" : "") << ": "
            << format_point(*estimate.witness.lambda_prime) << "\n";
    }

    if (!a.csv.empty()) {
        const auto sweep = level_entropy_sweep(family, grid_points(family.box(), a.grid), c.jobs);
        Json config{{"family", io::to_json(spec)}, {"grid", a.grid}, {"refine", a.refine},
                    {"level", a.level}, {"formula", to_string(estimate.formula)}};
        auto header = family.parameter_names();
        header.push_back("level");
        header.push_back("entropy");
        io::CsvWriter csv(io::make_manifest("power", std::move(config), c.seed), header);
        for (std::size_t p = 0; p < sweep.grid.size(); ++p) {
            for (std::size_t level = 0; level < family.dim(); ++level) {
                if (opt.level && *opt.level != level) continue;
                auto row = sweep.grid[p];
                row.push_back(static_cast<double>(level));
                row.push_back(sweep.per_level_entropy[p][level]);
                csv.row(row);
            }
        }
        emit(csv.str(), a.csv, out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
    std::string spec, input_state, format = "csv", output;
    int grid = 121;
};

int cmd_sweep(const SweepArgs& a, const Common& c, std::ostream& out) {
    const auto spec = io::load_family_spec(a.spec);
    const auto family = io::build_family(spec);
    if (!family.iso_form()) throw InputError("sweep needs an iso-spectral family");
    if (a.grid < 1) throw InputError("--grid must be positive");
    if (a.format != "csv" && a.format != "json") throw InputError("--out must be csv or json");
    const StateVector psi = io::parse_input_state(a.input_state, family.split());

    const auto points = grid_points(family.box(), a.grid);
    std::vector<double> values(points.size());
    const auto& iso = *family.iso_form();
    parallel_for(points.size(), c.jobs, [&](std::size_t k) {
        values[k] = entropy(iso.unitary(points[k]) * psi, family.split());
    });

    Json config{{"family", io::to_json(spec)},
                {"input_state", io::to_json(psi)},
                {"grid", a.grid},
                {"domain", Json{{"names", family.parameter_names()}, {"bounds", io::to_json(spec)["bounds"]}}}};
    const auto manifest = io::make_manifest("sweep", std::move(config), c.seed);
    auto header = family.parameter_names();
    header.push_back("entropy");

    if (a.format == "csv") {
        io::CsvWriter csv(manifest, header);
        for (std::size_t k = 0; k < points.size(); ++k) {
            auto row = points[k];
            row.push_back(values[k]);
            csv.row(row);
        }
        emit(csv.str(), a.output, out);
    } else {
        Json doc;
        doc["manifest"] = io::to_json(manifest);
        doc["columns"] = header;
        Json rows = Json::array();
        for (std::size_t k = 0; k < points.size(); ++k) {
            Json row(points[k]);
            row.push_back(values[k]);
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        emit(doc.dump() + "\n", a.output, out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct EvolveArgs {
    std::string spec, path, schedule = "smooth", output;
    double duration = 20.0;
    int steps = 2000;
    std::size_t level = 0;
    int stride = 1;
};

int cmd_evolve(const EvolveArgs& a, const Common& c, std::ostream& out) {
    const auto spec = io::load_family_spec(a.spec);
    const auto family = io::build_family(spec);
    if (a.duration <= 0.0) throw InputError("--T must be positive");
    if (a.steps < 1 || a.stride < 1) throw InputError("--steps and --stride must be positive");
    if (a.level >= family.dim()) throw InputError("--level must be below " + std::to_string(family.dim()));
    if (a.schedule != "smooth" && a.schedule != "linear") throw InputError("--schedule must be smooth or linear");

    auto waypoints = parse_waypoints(a.path, family.parameter_dim());
    for (const auto& w : waypoints) {
        if (!family.box().contains(w, 1e-12)) throw InputError("waypoint " + format_point(w) + " lies outside the domain");
    }
    const auto path = ParameterPath::polyline(waypoints, a.duration,
                                              a.schedule == "smooth" ? Schedule::Smooth : Schedule::Linear);
    const StateVector psi0 = family.eigenstate(a.level, path.at(0.0));
    const auto record = propagate(family, path, psi0, a.steps, PropagateOptions{a.stride});
    const bool diabatic = record.adiabaticity > kAdiabaticityLimit;

    Json config{{"family", io::to_json(spec)}, {"path", waypoints}, {"T", a.duration},
                {"steps", a.steps}, {"level", a.level}, {"schedule", a.schedule}, {"stride", a.stride}};
    Json doc;
    doc["manifest"] = io::to_json(io::make_manifest("evolve", std::move(config), c.seed));
    doc["level"] = record.level;
    doc["times"] = record.times;
    doc["fidelity"] = record.instantaneous_fidelity;
    doc["entropy"] = record.entropy;
    doc["dynamical_phase_series"] = record.dynamical_series;
    doc["dynamical_phase"] = record.dynamical_phase;
    doc["geometric_phase"] = record.geometric_phase;
    doc["total_phase"] = record.total_phase;
    doc["residual"] = record.residual;
    doc["final_fidelity"] = record.final_fidelity;
    doc["final_entropy"] = record.entropy.back();
    doc["max_norm_drift"] = record.max_norm_drift;
    doc["adiabaticity"] = record.adiabaticity;
    doc["diabatic"] = diabatic;
    doc["final_state"] = io::to_json(record.final_state);
    if (!a.output.empty()) io::write_text_file(a.output, doc.dump(2) + "\n");

    out << "final entropy: " << io::format_double(record.entropy.back()) << "\n";
    out << "final fidelity: " << io::format_double(record.final_fidelity) << "\n";
    out << "adiabaticity: " << io::format_double(record.adiabaticity) << " ("
        << (diabatic ? "diabatic, exceeds " : "adiabatic, below ") << io::format_double(kAdiabaticityLimit)
        << ")\n";
    out << "norm drift: " << io::format_double(record.max_norm_drift) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct GateArgs {
    std::vector<std::string> loop{"circle", "1.0471975511965976", "0.3"};
    double duration = 400.0;
    int steps = 20000;
    double lambda1 = 2.0, lambda2 = 1.0, zz = 0.0;
    std::string output;
};

double parse_number(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double x = std::stod(s, &used);
        if (used == s.size() && std::isfinite(x)) return x;
    } catch (const std::exception&) {
    }
    throw InputError(std::string(what) + " must be a finite number");
}

int cmd_gate(const GateArgs& a, const Common& c, std::ostream& out) {
    if (a.loop.size() != 3 || a.loop[0] != "circle") throw InputError("--loop expects: circle THETA0 RADIUS");
    const double theta0 = parse_number(a.loop[1], "theta0");
    const double radius = parse_number(a.loop[2], "radius");
    if (radius < 0.0) throw InputError("radius must be non-negative");
    if (a.duration <= 0.0 || a.steps < 1) throw InputError("--T and --steps must be positive");

    models::Example1Params params{a.lambda1, a.lambda2, a.zz};
    const auto result = synthesize_controlled_phase(params, gate_loop(theta0, radius, a.duration), a.steps);

    static constexpr const char* labels[] = {"00", "01", "10", "11"};
    for (int k = 0; k < 4; ++k) {
        out << "phi_" << labels[k] << ": " << io::format_double(result.phases[k]) << "  dynamical "
            << io::format_double(wrap_phase(result.dynamical[k])) << "  geometric "
            << io::format_double(result.geometric[k]) << "\n";
    }
    out << "nontriviality: " << io::format_double(result.nontriviality) << "\n";
    out << "gate error: " << io::format_double(result.gate_error) << "\n";
    out << "verdict: " << (result.entangling ? "entangling" : "not entangling") << "\n";

    if (!a.output.empty()) {
        Json config{{"loop", Json{{"shape", "circle"}, {"theta0", theta0}, {"radius", radius}}},
                    {"T", a.duration}, {"steps", a.steps},
                    {"params", Json{{"lambda1", a.lambda1}, {"lambda2", a.lambda2}, {"zz_coupling", a.zz}}}};
        Json doc;
        doc["manifest"] = io::to_json(io::make_manifest("gate", std::move(config), c.seed));
        doc["phases"] = result.phases;
        doc["energies"] = result.energies;
        doc["dynamical"] = result.dynamical;
        doc["geometric"] = result.geometric;
        doc["nontriviality"] = result.nontriviality;
        doc["entangling"] = result.entangling;
        doc["product_frame"] = result.product_frame;
        doc["gate_error"] = result.gate_error;
        doc["propagator"] = io::to_json(result.propagator);
        io::write_text_file(a.output, doc.dump(2) + "\n");
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adiabatic entangling power of Hamiltonian families", "aep"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    std::optional<int> jobs;
    app.add_option("--jobs", jobs, std::string("worker threads (default $") + kJobsEnv + " or 1)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", common.seed, "random seed recorded in every manifest");

    ConnectibleArgs ca;
    auto* connectible = app.add_subcommand("connectible", "decide adiabatic connectibility of two Hamiltonians");
    connectible->add_option("h0", ca.h0, "JSON matrix file")->required();
    connectible->add_option("h1", ca.h1, "JSON matrix file")->required();
    connectible->add_option("--cluster-tol", ca.cluster_tol, "relative degeneracy threshold");
    connectible->add_option("--samples", ca.samples, "samples of the connecting family");
    connectible->add_option("--out", ca.out, "JSON report with sampled spectra");

    PowerArgs pa;
    auto* power = app.add_subcommand("power", "estimate the adiabatic entangling power of a family");
    power->add_option("spec", pa.spec, "family spec file")->required();
    power->add_option("--grid", pa.grid, "grid points per axis");
    power->add_flag("--refine", pa.refine, "polish the best grid points with a simplex search");
    power->add_option("--level", pa.level, "'all' or a level index");
    power->add_option("--formula", pa.formula, "auto, two-point or product-base");
    power->add_option("--csv", pa.csv, "write per-point level entropies ('-' for stdout)");

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "entanglement of U(lambda)|psi> over the family domain");
    sweep->add_option("spec", sa.spec, "family spec file")->required();
    sweep->add_option("--input-state", sa.input_state, "basis label such as 01, or [[re,im],...]")->required();
    sweep->add_option("--grid", sa.grid, "grid points per axis");
    sweep->add_option("--out", sa.format, "csv or json");
    sweep->add_option("--output", sa.output, "output file (default stdout)");

    EvolveArgs ea;
    auto* evolve = app.add_subcommand("evolve", "simulate adiabatic evolution along a path");
    evolve->add_option("spec", ea.spec, "family spec file")->required();
    evolve->add_option("--path", ea.path, "waypoints 'a,b;c,d;...'")->required();
    evolve->add_option("--T", ea.duration, "total duration");
    evolve->add_option("--steps", ea.steps, "integration steps");
    evolve->add_option("--level", ea.level, "eigenstate index, ascending energy");
    evolve->add_option("--schedule", ea.schedule, "smooth or linear");
    evolve->add_option("--stride", ea.stride, "record every n-th step");
    evolve->add_option("--output", ea.output, "JSON run record");

    GateArgs ga;
    auto* gate = app.add_subcommand("gate", "diagonal gate from a loop of the exchange family");
    gate->add_option("--loop", ga.loop, "circle THETA0 RADIUS")->expected(3);
    gate->add_option("--T", ga.duration, "loop duration");
    gate->add_option("--steps", ga.steps, "integration steps");
    gate->add_option("--lambda1", ga.lambda1, "base field on A");
    gate->add_option("--lambda2", ga.lambda2, "base field on B");
    gate->add_option("--zz", ga.zz, "zz coupling added to the base");
    gate->add_option("--output", ga.output, "JSON result");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    try {
        common.jobs = jobs ? *jobs : default_jobs();
        if (connectible->parsed()) return cmd_connectible(ca, common, out);
        if (power->parsed()) return cmd_power(pa, common, out);
        if (sweep->parsed()) return cmd_sweep(sa, common, out);
        if (evolve->parsed()) return cmd_evolve(ea, common, out);
        if (gate->parsed()) return cmd_gate(ga, common, out);
    } catch (const DegeneracyEncountered& e) {
        err << "error: " << e.what() << "\n";
        return kExitDegeneracy;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace aep::cli
