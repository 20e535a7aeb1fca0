#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fractalhisto/contraction_check.hpp"
#include "fractalhisto/histopolation.hpp"
#include "fractalhisto/system.hpp"

namespace fractalhisto {

enum class RunMode { solve, construct, verify, attractor, diagnose, check };
enum class CheckTarget { all, modulus, contraction, banach_witness };

struct OutputRequest {
    std::string type;  // function-csv | attractor-csv | report-json | plot-svg |
                       // oscillation-csv | riemann-csv
    std::string path;
};

struct MapSpec {
    double c = 0.0;
    ScalingSpec delta;
    ContractionSpec s;
    std::optional<double> d;
};

struct AttractorSettings {
    long points = 100000;
    long burn_in = 100;
};

struct CheckSettings {
    CheckTarget target = CheckTarget::all;
    Interval contraction_range = kDefaultContractionRange;
    Interval modulus_range = kDefaultModulusRange;
    int samples = kDefaultPairCount;
    int pairs = kDefaultPairCount;
    std::vector<double> banach_k{0.5, 0.9, 0.99};
};

struct DiagnoseSettings {
    int max_p = 8;
    std::vector<std::size_t> K_list{1u << 10, 1u << 11, 1u << 12, 1u << 13, 1u << 14,
                                    1u << 15, 1u << 16};
};

struct VerifySettings {
    double residual_tol = 1e-6;
    double area_tol = 1e-3;
};

/// A parsed, validated configuration document (schema 1).
struct RunConfig {
    int schema = 1;
    RunMode mode = RunMode::construct;
    std::uint64_t seed = 1;
    std::vector<double> knots;
    std::optional<std::vector<double>> histogram;
    std::vector<MapSpec> maps;
    SolverSettings solver;
    AttractorSettings attractor;
    CheckSettings check;
    DiagnoseSettings diagnose;
    VerifySettings verify;
    std::vector<OutputRequest> outputs;
    std::optional<std::string> function_csv;  // verify input, set by the CLI

    Partition partition() const;
    bool has_offsets() const;
    std::vector<double> offsets() const;  // requires has_offsets()

    /// Histopolation problem view (requires a histogram).
    HistopolationProblem problem() const;
    /// Fully specified system with the given offsets.
    FractalSystem system(SystemMode m, std::vector<double> d) const;
    /// System from the maps' own offsets (requires has_offsets()).
    FractalSystem system(SystemMode m) const;
};

/// Parses and validates a configuration document. Validation errors carry
/// the JSON path of the offending field; admissibility is enforced here.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical re-serialization; parse(dump_config(cfg)) is equivalent to cfg.
std::string dump_config(const RunConfig& cfg);

/// Re-validate after CLI overrides changed the mode or fields.
void validate_config(const RunConfig& cfg);

RunMode parse_mode(const std::string& name);
std::string mode_name(RunMode mode);

}  // namespace fractalhisto
