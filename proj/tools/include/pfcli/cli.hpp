#pragma once

#include "pf/io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pfcli {

using pf::Json;

enum ExitCode : int { kOk = 0, kConfigError = 1, kVerificationFailure = 2, kObstruction = 3 };

inline const std::vector<std::string>& commands()
{
    static const std::vector<std::string> names = {
        "constant", "homotopy-check", "local-primitive", "cech", "glue-check",
        "primitive", "int-pairing", "subdivision-check", "lp-scan"};
    return names;
}

/// Everything a command reads. Cover, form and domain are held as JSON
/// (file contents or inline objects) and parsed when the command runs.
struct RunConfig {
    std::string command;
    std::optional<Json> cover;
    std::optional<Json> form;
    std::optional<Json> domain;
    double p = 2.0;
    double q = 2.0;
    int r = 1;
    int n = 2;
    std::optional<int> m;
    pf::QuadratureSpec quad{};
    std::optional<double> tol;
    std::string out;
    std::uint64_t seed = 0x5EED;
    std::string emit_xi_grid;
    int grid_points = 10000;
    int count = 20;
    std::vector<double> eps{1e-1, 1e-2, 1e-3};
};

/// Fills a config from a JSON object (file contents of --config). Paths in
/// "cover", "form" and "domain" are resolved relative to `base_dir`.
RunConfig config_from_json(const Json& j, const std::string& base_dir = "");

/// A string is either a path to a JSON file or an inline JSON object.
Json load_json_arg(const std::string& value, const std::string& base_dir = "");

/// Rejects unknown commands and out-of-range values (throws InvalidArgument).
void validate(const RunConfig& config);

struct Artifact {
    std::string path;
    std::string contents;
};

struct RunResult {
    int exit_code = kOk;
    Json report;
    /// Extra files (CSV tables, sampled ξ) written next to the report.
    std::vector<Artifact> artifacts;
};

/// Runs one command. Library errors propagate as exceptions; callers map
/// them to exit codes with exit_code_for.
RunResult execute(const RunConfig& config);

/// Writes the canonical report to `path` (stdout when empty) and the
/// artifacts to their paths.
void emit_report(const RunResult& result, const std::string& path);

int exit_code_for(const std::exception& e);
/// {"error": {"kind", "message", "residual"?}, "exit_code"} as one line.
std::string error_json(const std::exception& e);

} // namespace pfcli
