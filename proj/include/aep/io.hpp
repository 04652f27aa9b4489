#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aep/family.hpp"
#include "aep/models.hpp"

namespace aep::io {

using Json = nlohmann::ordered_json;

/// Tool version recorded in every manifest.
std::string version();

// ---------------------------------------------------------------------------
// Complex values and matrices as [re, im] pairs

Json to_json(Complex z);
Json to_json(const Operator& m);
Json to_json(const StateVector& v);

/// Throws InputError.
Complex complex_from_json(const Json& j);
/// Square D x D nested array of [re, im] pairs. Throws InputError.
Operator matrix_from_json(const Json& j);
/// Flat array of [re, im] pairs. Throws InputError.
StateVector vector_from_json(const Json& j);

/// A file holding either a bare matrix or an object with a "matrix" field.
/// The matrix must be Hermitian. Throws InputError, NotHermitian.
Operator load_hermitian_file(const std::string& path);

Json read_json_file(const std::string& path);

// ---------------------------------------------------------------------------
// Family specifications
//
// {
//   "kind": "builtin:example0" | "builtin:example1" | "builtin:example2" | "custom",
//   "params": {...},                  // builtin only, see README
//   "bounds": [[lo, hi], ...],        // optional for builtins
//   "names": ["a", "b"],              // optional
//   "split": [dim_a, dim_b],          // custom only
//   "base": D x D matrix,             // custom only
//   "generators": [D x D matrix, ...],// custom only; U = exp(i sum l_j G_j)
//   "cluster_tol": 1e-8               // optional
// }

struct FamilySpec {
    std::string kind;
    Json params = Json::object();
    std::optional<ParameterBox> bounds;
    std::vector<std::string> names;
    std::optional<BipartiteSplit> split;
    double cluster_tol = kDefaultClusterTol;
    Operator base;
    std::vector<Operator> generators;
};

/// Validates structure, Hermiticity, bounds and split. Throws InputError, NotHermitian.
FamilySpec parse_family_spec(const Json& j);
FamilySpec load_family_spec(const std::string& path);

/// Fully resolved configuration, defaults filled in.
Json to_json(const FamilySpec& spec);

HamiltonianFamily build_family(const FamilySpec& spec);

// ---------------------------------------------------------------------------
// Input states

/// Either a basis label with one digit per subsystem ("01" is |0>|1>) or a
/// JSON list of [re, im] amplitudes. The result is normalized. Throws InputError.
StateVector parse_input_state(const std::string& text, const BipartiteSplit& split);

// ---------------------------------------------------------------------------
// Output

struct RunManifest {
    std::string command;
    Json config = Json::object();
    std::uint64_t seed = 0;
    std::string tool_version;
    std::string timestamp;  // UTC, ISO 8601
};

/// Timestamp taken from SOURCE_DATE_EPOCH when set, the clock otherwise.
RunManifest make_manifest(std::string command, Json config, std::uint64_t seed);

Json to_json(const RunManifest& m);

/// Shortest representation that reads back to the same double.
std::string format_double(double x);

/// CSV with the manifest as a leading "# manifest " comment line.
class CsvWriter {
public:
    CsvWriter(const RunManifest& manifest, std::vector<std::string> header);

    void row(const std::vector<double>& values);
    std::string str() const { return text_; }

private:
    std::size_t columns_;
    std::string text_;
};

void write_text_file(const std::string& path, const std::string& text);

}  // namespace aep::io
