#include "ssqc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace ssqc {

SteadyStateResult detect_steady_state(std::span<const double> times, std::span<const double> coherences,
                                      const Operator& final_rho, const SteadyStateOptions& opts) {
    if (times.size() != coherences.size())
        throw std::invalid_argument("times and coherences differ in length");
    if (times.size() < 2) throw std::invalid_argument("trajectory too short: need at least two samples");
    if (!(opts.window > 0.0) || !(opts.tolerance >= 0.0))
        throw std::invalid_argument("steady-state window must be positive and tolerance non-negative");
    const double t_end = times.back();
    const double span = t_end - times.front();
    if (span < 2.0 * opts.window * (1.0 - 1e-12))
        throw std::invalid_argument(fmt::format(
            "trajectory too short: spans {} time units, steady-state detection needs {}", span,
            2.0 * opts.window));

    SteadyStateResult out;
    out.final_rho = final_rho;
    out.ssqc = l1_coherence(final_rho);
    const double c_end = coherences.back();
    const double scale = std::max(c_end, opts.floor);

    // Walk backwards; the first sample that leaves the band ends the settled run.
    out.t_converged = times.front();
    bool settled = true;
    for (std::size_t k = times.size(); k-- > 0;) {
        const double dev = std::abs(coherences[k] - c_end) / scale;
        if (times[k] >= t_end - opts.window) out.residual = std::max(out.residual, dev);
        if (settled && dev > opts.tolerance) {
            settled = false;
            out.t_converged = k + 1 < times.size() ? times[k + 1] : t_end;
        }
    }
    out.converged = out.residual <= opts.tolerance;
    return out;
}

SteadyStateResult detect_steady_state(const Trajectory& traj, const SteadyStateOptions& opts) {
    if (traj.samples.empty()) throw std::invalid_argument("trajectory too short: no samples");
    const auto t = traj.times();
    const auto c = traj.coherences();
    return detect_steady_state(t, c, traj.samples.back().rho, opts);
}

SteadyStateResult detect_steady_state(const LightTrajectory& traj, const SteadyStateOptions& opts) {
    return detect_steady_state(traj.times, traj.coherences, traj.final_rho, opts);
}

DensityMatrix markov_steady_state_analytic(double omega1, double omega2) {
    Operator rho = Operator::Zero(4, 4);
    const double scale = std::max({1.0, std::abs(omega1), std::abs(omega2)});
    if (std::abs(omega1 - omega2) <= 1e-12 * scale) {
        rho(0, 0) = 1.0 / 3.0;
        rho(3, 3) = 1.0 / 3.0;
        rho(1, 1) = rho(2, 2) = rho(1, 2) = rho(2, 1) = 1.0 / 6.0;
    } else {
        rho.diagonal().setConstant(0.25);
    }
    return DensityMatrix(std::move(rho));
}

DensityMatrix markov_steady_state_analytic(const SystemSpec& spec) {
    if (spec.n_qubits != 2)
        throw std::invalid_argument(
            fmt::format("analytic Markovian steady state exists only for N = 2 (got N = {})", spec.n_qubits));
    if (spec.channel != Channel::SigmaX)
        throw std::invalid_argument("analytic Markovian steady state requires the sigma_x channel");
    spec.validate();
    return markov_steady_state_analytic(spec.omegas[0], spec.omegas[1]);
}

void SweepResult::validate() const {
    const std::size_t n = axis_values.size();
    if (ssqc_values.size() != n || converged.size() != n || t_converged.size() != n || residuals.size() != n)
        throw std::invalid_argument("sweep result columns differ in length");
    for (std::size_t i = 1; i < n; ++i)
        if (!(axis_values[i] > axis_values[i - 1]))
            throw std::invalid_argument("sweep axis must be strictly increasing");
}

Peak find_peak(std::span<const double> axis, std::span<const double> values, double tolerance) {
    if (axis.size() != values.size()) throw std::invalid_argument("axis and values differ in length");
    if (values.size() < 3) throw std::invalid_argument("peak finding needs at least three points");
    Peak p;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[p.index]) p.index = i;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (i != p.index && values[i] == values[p.index]) p.tied = true;
    p.axis_value = axis[p.index];
    p.ssqc = values[p.index];
    const std::size_t last = values.size() - 1;
    p.is_interior = p.index > 0 && p.index < last && values[p.index] > values[p.index - 1] + tolerance &&
                    values[p.index] > values[p.index + 1] + tolerance;
    return p;
}

Peak find_peak(const SweepResult& sweep, double tolerance) {
    return find_peak(sweep.axis_values, sweep.ssqc_values, tolerance);
}

} // namespace ssqc
