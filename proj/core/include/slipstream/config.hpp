#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "slipstream/elliptic.hpp"
#include "slipstream/geometry.hpp"
#include "slipstream/scenario.hpp"
#include "slipstream/transport.hpp"

namespace slipstream {

enum class RunMode { march, picard };

struct GeometryConfig {
    DomainKind kind = DomainKind::annulus;
    double r_inner = 0.5;
    double r_outer = 1.0;
    double core_radius = 0.2; // disk only: radius of the excised impermeable core
    std::size_t n_r = 64;
    std::size_t n_s = 128;
};

struct SweepConfig {
    std::vector<double> nu_list;
    std::vector<double> theta_list;
    std::vector<std::pair<std::size_t, std::size_t>> grid_list;

    bool empty() const { return nu_list.empty() && theta_list.empty() && grid_list.empty(); }
};

struct OutputConfig {
    std::filesystem::path dir = "out";
    std::vector<std::string> checks = {"all"};
    bool write_snapshots = true;
};

struct RunConfig {
    GeometryConfig geometry;
    std::string scenario_name = "zero";
    ScenarioParams scenario_params;
    SolverParams solver;
    RunMode mode = RunMode::march;
    bool r_auto = true; // R = 1/theta when theta > 0, otherwise no cutoff
    std::size_t picard_max_iters = 30;
    double picard_tol = 1e-8;
    StreamSolver::Method stream_method = StreamSolver::Method::direct;
    SweepConfig sweep;
    OutputConfig output;
    unsigned seed = 0;

    bool check_enabled(const std::string& name) const;
};

/// Parses the sectioned key = value run configuration. Unknown keys are
/// ParseErrors in strict mode and warnings (stderr) otherwise. Missing
/// [geometry] is a ParseError. Validation throws ValidationError listing
/// every violated range.
RunConfig parse_config(const std::filesystem::path& path, bool strict = true);
RunConfig parse_config_text(const std::string& text, bool strict = true);

/// Range validation; fills derived defaults (R from r_auto, seed into
/// scenario params). Throws ValidationError listing all violations at once.
void validate_config(RunConfig& cfg);

/// The configuration with every default materialized, in parseable form.
std::string resolved_config_text(const RunConfig& cfg);

} // namespace slipstream
