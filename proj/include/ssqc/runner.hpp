// runner.hpp: Single runs, parallel sweeps and their tabular output.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ssqc/analysis.hpp"
#include "ssqc/config.hpp"
#include "ssqc/dynamics.hpp"

namespace ssqc {

struct RunOutcome {
    Trajectory trajectory;
    SteadyStateResult steady;
    double seconds{0.0};
};

RunOutcome run_single(const RunConfig& cfg);

// `t,C` followed by rho_re_i_j, rho_im_i_j for i <= j (1-based indices),
// 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
std::string trajectory_csv(const Trajectory& traj);

enum class FailureKind { Config, Numeric };

struct SweepPoint {
    std::optional<double> outer_value;
    double axis_value{0.0};
    bool ok{false};
    double ssqc{0.0};
    bool converged{false};
    double t_converged{0.0};
    double residual{0.0};
    PropagationDiagnostics diagnostics;
    FailureKind failure{FailureKind::Numeric};
    std::string error;
};

struct SweepOutcome {
    SweepSpec spec;
    std::vector<SweepPoint> points; // outer-major, axis order
    int workers{1};
    double seconds{0.0};

    bool all_ok() const;
    std::size_t failures() const;
    // Successful points of a one-axis sweep (or of outer slice `outer_index`).
    SweepResult result(std::size_t outer_index = 0) const;
};

// Runs every grid point on a pool of `workers` threads. Rows come back in
// grid order and are bit-identical for any worker count.
SweepOutcome run_sweep(const SweepSpec& spec, int workers);

// `axis_value,ssqc,converged,t_converged,residual`; surfaces prepend
// `outer_value`. Failed points are left out (see write_failure_manifest).
void write_sweep_csv(std::ostream& os, const SweepOutcome& outcome);
std::string sweep_csv(const SweepOutcome& outcome);

// `axis_value,kind,message` (with `outer_value` first for surfaces).
void write_failure_manifest(std::ostream& os, const SweepOutcome& outcome);

// JSON mirrors carrying the config echo, build version and timing.
std::string run_json(const RunConfig& cfg, const RunOutcome& outcome);
std::string sweep_json(const SweepOutcome& outcome);

std::string_view version();

} // namespace ssqc
