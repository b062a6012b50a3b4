#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include "slipstream/config.hpp"
#include "slipstream/estimates.hpp"

namespace slipstream {

/// Everything a single run leaves behind (in memory; artifacts also land in
/// the run directory when outdir is non-empty).
struct RunArtifacts {
    EstimateReport report;
    bool pass = true;
    std::filesystem::path dir;
    std::shared_ptr<DomainGeometry> geom;
    std::shared_ptr<Grid> grid;
    std::shared_ptr<ReducedData> data;
    std::shared_ptr<Trajectory> trajectory;
    std::shared_ptr<StreamSolver> solver;
    std::optional<PicardResult> picard;
};

/// Builds geometry, scenario data, runs the configured construction, runs the
/// enabled per-run checks, and writes resolved config + CSV logs + snapshots
/// under outdir (pass an empty path to skip artifacts).
RunArtifacts run_single(const RunConfig& cfg, const std::filesystem::path& outdir,
                        bool keep_trajectory = false);

struct SweepResult {
    std::vector<double> nu_values;              // including the appended nu = 0 run
    std::vector<RunArtifacts> runs;             // same order
    std::vector<double> consecutive_l2;         // ||w_{nu_i} - w_{nu_{i+1}}||_2 at T
    std::vector<double> to_inviscid_l2;         // distance of each nu run to the nu = 0 run
    std::vector<double> strip_at_16dx;          // inflow-collar strip functional per nu run
    EstimateReport summary;
    bool pass = true;
};

/// Runs the scenario per nu in cfg.sweep.nu_list plus one nu = 0 run,
/// in a worker pool (SLIPSTREAM_WORKERS), writes per-nu subdirectories and a
/// sweep summary CSV, and reports the vanishing-viscosity diagnostics.
SweepResult viscosity_sweep_report(const RunConfig& cfg, const std::filesystem::path& outdir);

/// Worker count for sweeps: SLIPSTREAM_WORKERS when set, else hardware limit.
unsigned worker_count();

/// L2 distance between the final fields of two runs on a shared grid.
double final_field_distance(const RunArtifacts& a, const RunArtifacts& b);

} // namespace slipstream
