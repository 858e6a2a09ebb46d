#include "ssqc/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

namespace ssqc {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

// CSV fields here never contain commas except error messages.
std::string csv_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    out += '"';
    return out;
}

std::string_view to_string(FailureKind k) { return k == FailureKind::Config ? "config" : "numeric"; }

nlohmann::json diagnostics_json(const PropagationDiagnostics& d) {
    return {
        {"steps", d.steps},
        {"dt_used", d.dt_used},
        {"refinement", d.refinement},
        {"max_trace_error_pre_repair", d.max_trace_error_pre_repair},
        {"max_hermiticity_drift_pre_repair", d.max_hermiticity_drift_pre_repair},
        {"max_repair_correction", d.max_repair_correction},
        {"repaired_steps", d.repaired_steps},
        {"warnings", d.warnings},
    };
}

} // namespace

std::string_view version() { return "0.1.0"; }

RunOutcome run_single(const RunConfig& cfg) {
    const auto t0 = Clock::now();
    RunOutcome out;
    out.trajectory = propagate(cfg.request());
    out.steady = detect_steady_state(out.trajectory, cfg.steady);
    out.seconds = elapsed(t0);
    return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    const Eigen::Index d = traj.samples.empty() ? 0 : traj.samples.front().rho.rows();
    os << "t,C";
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i; j < d; ++j) os << fmt::format(",rho_re_{0}_{1},rho_im_{0}_{1}", i + 1, j + 1);
    os << "\r\n";
    for (const auto& s : traj.samples) {
        std::string row = num(s.t) + "," + num(s.coherence);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = i; j < d; ++j) {
                row += ',';
                row += num(s.rho(i, j).real());
                row += ',';
                row += num(s.rho(i, j).imag());
            }
        os << row << "\r\n";
    }
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    write_trajectory_csv(os, traj);
    return os.str();
}

bool SweepOutcome::all_ok() const { return failures() == 0; }

std::size_t SweepOutcome::failures() const {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const auto& p) { return !p.ok; }));
}

SweepResult SweepOutcome::result(std::size_t outer_index) const {
    SweepResult r;
    r.axis_name = std::string(to_string(spec.axis));
    const std::size_t n = spec.values.size();
    const std::size_t begin = spec.outer_axis ? outer_index * n : 0;
    if (begin + n > points.size()) throw std::out_of_range("outer slice index out of range");
    for (std::size_t k = begin; k < begin + n; ++k) {
        const auto& p = points[k];
        if (!p.ok) continue;
        r.axis_values.push_back(p.axis_value);
        r.ssqc_values.push_back(p.ssqc);
        r.converged.push_back(p.converged);
        r.t_converged.push_back(p.t_converged);
        r.residuals.push_back(p.residual);
    }
    return r;
}

SweepOutcome run_sweep(const SweepSpec& spec, int workers) {
    const auto t0 = Clock::now();
    SweepOutcome out;
    out.spec = spec;
    const std::size_t n_inner = spec.values.size();
    const std::size_t n_outer = spec.outer_axis ? spec.outer_values.size() : 1;
    out.points.resize(n_inner * n_outer);

    auto run_point = [&](std::size_t k) {
        SweepPoint& p = out.points[k];
        RunConfig cfg = spec.base;
        if (spec.outer_axis) {
            p.outer_value = spec.outer_values[k / n_inner];
            apply_axis(cfg, *spec.outer_axis, *p.outer_value);
        }
        p.axis_value = spec.values[k % n_inner];
        try {
            apply_axis(cfg, spec.axis, p.axis_value);
            const LightTrajectory traj = propagate_light(cfg.request());
            const SteadyStateResult ss = detect_steady_state(traj, cfg.steady);
            p.ok = true;
            p.ssqc = ss.ssqc;
            p.converged = ss.converged;
            p.t_converged = ss.t_converged;
            p.residual = ss.residual;
            p.diagnostics = traj.diagnostics;
        } catch (const NumericError& e) {
            p.failure = FailureKind::Numeric;
            p.error = e.what();
        } catch (const std::exception& e) {
            p.failure = FailureKind::Config;
            p.error = e.what();
        }
    };

    const std::size_t total = out.points.size();
    out.workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(total, 1))));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < total; k = next++) run_point(k);
    };
    if (out.workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(out.workers));
        for (int i = 0; i < out.workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    out.seconds = elapsed(t0);
    return out;
}

void write_sweep_csv(std::ostream& os, const SweepOutcome& outcome) {
    const bool surface = outcome.spec.outer_axis.has_value();
    os << (surface ? "outer_value,axis_value,ssqc,converged,t_converged,residual" : "axis_value,ssqc,converged,t_converged,residual")
       << "\r\n";
    for (const auto& p : outcome.points) {
        if (!p.ok) continue;
        std::string row;
        if (surface) row = num(*p.outer_value) + ",";
        row += fmt::format("{},{},{},{},{}", num(p.axis_value), num(p.ssqc), p.converged ? "true" : "false",
                           num(p.t_converged), num(p.residual));
        os << row << "\r\n";
    }
}

std::string sweep_csv(const SweepOutcome& outcome) {
    std::ostringstream os;
    write_sweep_csv(os, outcome);
    return os.str();
}

void write_failure_manifest(std::ostream& os, const SweepOutcome& outcome) {
    const bool surface = outcome.spec.outer_axis.has_value();
    os << (surface ? "outer_value,axis_value,kind,message" : "axis_value,kind,message") << "\r\n";
    for (const auto& p : outcome.points) {
        if (p.ok) continue;
        std::string row;
        if (surface) row = num(*p.outer_value) + ",";
        row += fmt::format("{},{},{}", num(p.axis_value), to_string(p.failure), csv_quote(p.error));
        os << row << "\r\n";
    }
}

std::string run_json(const RunConfig& cfg, const RunOutcome& outcome) {
    nlohmann::json j;
    j["version"] = std::string(version());
    j["config"] = emit_config(cfg);
    j["seconds"] = outcome.seconds;
    j["steady_state"] = {
        {"ssqc", outcome.steady.ssqc},
        {"converged", outcome.steady.converged},
        {"t_converged", outcome.steady.t_converged},
        {"residual", outcome.steady.residual},
    };
    j["diagnostics"] = diagnostics_json(outcome.trajectory.diagnostics);
    auto& samples = j["samples"] = nlohmann::json::array();
    for (const auto& s : outcome.trajectory.samples) {
        nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
        for (Eigen::Index i = 0; i < s.rho.rows(); ++i) {
            nlohmann::json rr = nlohmann::json::array(), ri = nlohmann::json::array();
            for (Eigen::Index k = 0; k < s.rho.cols(); ++k) {
                rr.push_back(s.rho(i, k).real());
                ri.push_back(s.rho(i, k).imag());
            }
            re.push_back(std::move(rr));
            im.push_back(std::move(ri));
        }
        samples.push_back({{"t", s.t}, {"C", s.coherence}, {"rho_re", std::move(re)}, {"rho_im", std::move(im)}});
    }
    return j.dump(2);
}

std::string sweep_json(const SweepOutcome& outcome) {
    nlohmann::json j;
    j["version"] = std::string(version());
    j["config"] = emit_config(outcome.spec);
    j["axis"] = std::string(to_string(outcome.spec.axis));
    if (outcome.spec.outer_axis) j["outer_axis"] = std::string(to_string(*outcome.spec.outer_axis));
    j["workers"] = outcome.workers;
    j["seconds"] = outcome.seconds;
    auto& rows = j["points"] = nlohmann::json::array();
    for (const auto& p : outcome.points) {
        nlohmann::json row{{"axis_value", p.axis_value}, {"ok", p.ok}};
        if (p.outer_value) row["outer_value"] = *p.outer_value;
        if (p.ok) {
            row["ssqc"] = p.ssqc;
            row["converged"] = p.converged;
            row["t_converged"] = p.t_converged;
            row["residual"] = p.residual;
            row["diagnostics"] = diagnostics_json(p.diagnostics);
        } else {
            row["failure"] = std::string(to_string(p.failure));
            row["error"] = p.error;
        }
        rows.push_back(std::move(row));
    }
    return j.dump(2);
}

} // namespace ssqc
