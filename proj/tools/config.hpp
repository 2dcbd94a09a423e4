#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fenchel/discrete.hpp"
#include "fenchel/fixpoint.hpp"

namespace fenchel::cli {

using json = nlohmann::ordered_json;

/// Sampled candidate as read from a config: either explicit samples or a
/// log-family member evaluated on a grid.
struct SampledCandidate {
    std::vector<double> points;
    std::vector<double> values;
    std::optional<LogFamilyMember> log_member;
};

struct RunOptions {
    std::size_t points = 100;
    std::uint64_t seed = 0;
    double radius = 1.0;
    double tol_scale = 1.0;
    Tolerances base_tolerances;
    bool timing = false;
    std::optional<std::vector<double>> slopes;
    std::optional<std::pair<double, double>> window;
    double boundary_exclusion = 0.0;
    /// verify on samples passes when maxAbs <= grid_tol · h
    double grid_tol = 2.0;

    Tolerances tolerances() const { return base_tolerances.scaled(tol_scale); }
};

struct ProblemConfig {
    std::optional<TransformParams> params;
    std::optional<QuadraticFn> quadratic;
    std::optional<SampledCandidate> sampled;
    RunOptions options;
};

/// Throws Error(ParseError) on malformed input and DimMismatch on
/// inconsistent sizes. Relative file references resolve against base_dir.
ProblemConfig parse_config(const json& doc, const std::filesystem::path& base_dir);
ProblemConfig load_config(const std::filesystem::path& path);

/// {points, values} with "inf" for +∞.
SampledCandidate parse_sampled(const json& doc);

double parse_extended(const json& v, const char* what);
Vector parse_vector(const json& v, std::size_t expected_dim, const char* what);
Matrix parse_matrix(const json& v, const char* what);

} // namespace fenchel::cli
