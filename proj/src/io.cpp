#include "aep/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "aep/error.hpp"

#ifndef AEP_VERSION
#define AEP_VERSION "0.0.0"
#endif

namespace aep::io {

std::string version() { return AEP_VERSION; }

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Operator& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const StateVector& v) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v(k)));
    return out;
}

namespace {

double finite_number(const Json& j, const std::string& what) {
    if (!j.is_number()) throw InputError(what + " must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw InputError(what + " must be finite");
    return x;
}

}  // namespace

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw InputError("complex values must be [re, im] pairs");
    return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

Operator matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw InputError("matrix must be a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    Operator m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw InputError("matrix must be square");
        }
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

StateVector vector_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw InputError("state must be a non-empty array of [re, im] pairs");
    StateVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
    return v;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

Operator load_hermitian_file(const std::string& path) {
    const Json j = read_json_file(path);
    const Operator m = matrix_from_json(j.is_object() ? j.value("matrix", Json()) : j);
    if (!is_hermitian(m)) throw NotHermitian();
    return m;
}

// ---------------------------------------------------------------------------

namespace {

ParameterBox box_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw InputError("bounds must be a non-empty list of [lo, hi]");
    ParameterBox box;
    for (const auto& axis : j) {
        if (!axis.is_array() || axis.size() != 2) throw InputError("each bound must be [lo, hi]");
        const double lo = finite_number(axis[0], "lower bound");
        const double hi = finite_number(axis[1], "upper bound");
        if (lo > hi) throw InputError("lower bound exceeds upper bound");
        box.lower.push_back(lo);
        box.upper.push_back(hi);
    }
    return box;
}

Json box_to_json(const ParameterBox& box) {
    Json out = Json::array();
    for (std::size_t i = 0; i < box.dim(); ++i) out.push_back(Json::array({box.lower[i], box.upper[i]}));
    return out;
}

double param(const Json& params, const char* key, double fallback) {
    if (!params.contains(key)) return fallback;
    return finite_number(params[key], key);
}

void reject_unknown(const Json& params, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : params.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw InputError("unknown parameter '" + key + "'");
    }
}

models::Example1Params example1_params(const Json& params) {
    reject_unknown(params, {"lambda1", "lambda2", "zz_coupling"});
    models::Example1Params p;
    p.lambda1 = param(params, "lambda1", p.lambda1);
    p.lambda2 = param(params, "lambda2", p.lambda2);
    p.zz_coupling = param(params, "zz_coupling", p.zz_coupling);
    return p;
}

}  // namespace

FamilySpec parse_family_spec(const Json& j) {
    if (!j.is_object()) throw InputError("family spec must be a JSON object");
    FamilySpec spec;
    if (!j.contains("kind") || !j["kind"].is_string()) throw InputError("family spec needs a 'kind'");
    spec.kind = j["kind"].get<std::string>();
    if (j.contains("cluster_tol")) {
        spec.cluster_tol = finite_number(j["cluster_tol"], "cluster_tol");
        if (spec.cluster_tol <= 0.0) throw InputError("cluster_tol must be positive");
    }
    if (j.contains("bounds")) spec.bounds = box_from_json(j["bounds"]);
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw InputError("params must be an object");
        spec.params = j["params"];
    }

    if (spec.kind == "builtin:example0") {
        reject_unknown(spec.params, {});
        if (!spec.bounds) spec.bounds = models::example0_default_box();
        if (spec.bounds->dim() != 3) throw InputError("example0 takes three bounds");
    } else if (spec.kind == "builtin:example1") {
        const auto p = example1_params(spec.params);
        spec.params = Json{{"lambda1", p.lambda1}, {"lambda2", p.lambda2}, {"zz_coupling", p.zz_coupling}};
        if (!spec.bounds) spec.bounds = models::example1_default_box();
        if (spec.bounds->dim() != 2 && spec.bounds->dim() != 3) {
            throw InputError("example1 takes two bounds (mu, mu_z) or three (Re mu, Im mu, mu_z)");
        }
    } else if (spec.kind == "builtin:example2") {
        reject_unknown(spec.params, {"lambda1"});
        spec.params = Json{{"lambda1", param(spec.params, "lambda1", 1.0)}};
        if (!spec.bounds) spec.bounds = models::example2_default_box();
        if (spec.bounds->dim() != 2) throw InputError("example2 takes two bounds (lambda2, lambda3)");
    } else if (spec.kind == "custom") {
        if (!spec.params.empty()) throw InputError("custom families take no params");
        if (!j.contains("base")) throw InputError("custom family needs a 'base' matrix");
        spec.base = matrix_from_json(j["base"]);
        if (!is_hermitian(spec.base)) throw NotHermitian();
        if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty()) {
            throw InputError("custom family needs a non-empty 'generators' list");
        }
        for (const auto& g : j["generators"]) {
            Operator m = matrix_from_json(g);
            if (m.rows() != spec.base.rows()) throw InputError("generator dimension differs from the base");
            if (!is_hermitian(m)) throw NotHermitian();
            spec.generators.push_back(std::move(m));
        }
        if (!spec.bounds) throw InputError("custom family needs 'bounds'");
        if (spec.bounds->dim() != spec.generators.size()) {
            throw InputError("custom family needs one bound per generator");
        }
        if (!j.contains("split") || !j["split"].is_array() || j["split"].size() != 2) {
            throw InputError("custom family needs 'split': [dim_a, dim_b]");
        }
        const auto& s = j["split"];
        if (!s[0].is_number_unsigned() || !s[1].is_number_unsigned()) {
            throw InputError("split entries must be positive integers");
        }
        BipartiteSplit split{s[0].get<std::size_t>(), s[1].get<std::size_t>()};
        if (split.dim_a == 0 || split.dim_b == 0 ||
            static_cast<Eigen::Index>(split.dim()) != spec.base.rows()) {
            throw InputError("split dimensions must multiply to the matrix dimension");
        }
        spec.split = split;
        if (j.contains("names")) {
            if (!j["names"].is_array() || j["names"].size() != spec.generators.size()) {
                throw InputError("names must list one name per generator");
            }
            for (const auto& n : j["names"]) {
                if (!n.is_string()) throw InputError("names must be strings");
                spec.names.push_back(n.get<std::string>());
            }
        } else {
            for (std::size_t k = 0; k < spec.generators.size(); ++k) {
                spec.names.push_back("lambda_" + std::to_string(k + 1));
            }
        }
    } else {
        throw InputError("unknown family kind '" + spec.kind + "'");
    }
    return spec;
}

FamilySpec load_family_spec(const std::string& path) { return parse_family_spec(read_json_file(path)); }

Json to_json(const FamilySpec& spec) {
    Json out;
    out["kind"] = spec.kind;
    if (spec.kind != "custom") out["params"] = spec.params;
    if (spec.bounds) out["bounds"] = box_to_json(*spec.bounds);
    out["cluster_tol"] = spec.cluster_tol;
    if (spec.kind == "custom") {
        out["names"] = spec.names;
        out["split"] = Json::array({spec.split->dim_a, spec.split->dim_b});
        out["base"] = to_json(spec.base);
        Json gens = Json::array();
        for (const auto& g : spec.generators) gens.push_back(to_json(g));
        out["generators"] = std::move(gens);
    }
    return out;
}

HamiltonianFamily build_family(const FamilySpec& spec) {
    const ParameterBox& box = *spec.bounds;
    if (spec.kind == "builtin:example0") return models::example0_family(box);
    if (spec.kind == "builtin:example1") {
        try {
            return models::example1_family(example1_params(spec.params), box);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    if (spec.kind == "builtin:example2") return models::example2_family(spec.params["lambda1"].get<double>(), box);

    std::optional<ParameterPoint> base_point;
    const ParameterPoint origin(box.dim(), 0.0);
    if (box.contains(origin)) base_point = origin;
    auto unitary = [generators = spec.generators](std::span<const double> lambda) {
        Operator k = Operator::Zero(generators.front().rows(), generators.front().cols());
        for (std::size_t j = 0; j < generators.size(); ++j) k += lambda[j] * generators[j];
        return expm_skew(k);
    };
    return HamiltonianFamily::iso_spectral("custom", box, spec.names, *spec.split, spec.base, unitary,
                                           base_point, spec.cluster_tol);
}

// ---------------------------------------------------------------------------

StateVector parse_input_state(const std::string& text, const BipartiteSplit& split) {
    const std::size_t dim = split.dim();
    StateVector v;
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw InputError(std::string("input state: ") + e.what());
        }
        v = vector_from_json(j);
        if (static_cast<std::size_t>(v.size()) != dim) {
            throw InputError("input state has " + std::to_string(v.size()) + " amplitudes, expected " +
                             std::to_string(dim));
        }
    } else {
        if (text.size() != 2) throw InputError("basis label must have one digit per subsystem, e.g. \"01\"");
        const auto digit = [&](char c, std::size_t d) {
            if (c < '0' || c > '9' || static_cast<std::size_t>(c - '0') >= d) {
                throw InputError("basis label '" + text + "' is out of range");
            }
            return static_cast<std::size_t>(c - '0');
        };
        v = basis_state(dim, digit(text[0], split.dim_a) * split.dim_b + digit(text[1], split.dim_b));
    }
    const double norm = v.norm();
    if (norm == 0.0) throw InputError("input state is zero");
    return v / norm;
}

// ---------------------------------------------------------------------------

RunManifest make_manifest(std::string command, Json config, std::uint64_t seed) {
    RunManifest m;
    m.command = std::move(command);
    m.config = std::move(config);
    m.seed = seed;
    m.tool_version = version();

    std::time_t t = 0;
    const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
    long long parsed = 0;
    if (epoch && *epoch) {
        const char* end = epoch + std::char_traits<char>::length(epoch);
        const auto [ptr, ec] = std::from_chars(epoch, end, parsed);
        if (ec != std::errc() || ptr != end) throw InputError("SOURCE_DATE_EPOCH must be an integer");
        t = static_cast<std::time_t>(parsed);
    } else {
        t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    m.timestamp = buf;
    return m;
}

Json to_json(const RunManifest& m) {
    Json out;
    out["command"] = m.command;
    out["config"] = m.config;
    out["seed"] = m.seed;
    out["tool_version"] = m.tool_version;
    out["timestamp"] = m.timestamp;
    return out;
}

std::string format_double(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw NumericalError("cannot format value");
    return std::string(buf, ptr);
}

CsvWriter::CsvWriter(const RunManifest& manifest, std::vector<std::string> header)
    : columns_(header.size()) {
    text_ = "# manifest " + to_json(manifest).dump() + "\n";
    for (std::size_t k = 0; k < header.size(); ++k) text_ += (k ? "," : "") + header[k];
    text_ += "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw DimensionMismatch("CSV row width differs from the header");
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) text_ += ',';
        text_ += format_double(values[k]);
    }
    text_ += '\n';
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
    if (!out) throw InputError("failed writing " + path);
}

}  // namespace aep::io
