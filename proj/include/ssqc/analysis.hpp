// analysis.hpp: Steady-state detection, peak finding and the closed-form
// two-qubit Markovian steady states.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "ssqc/dynamics.hpp"
#include "ssqc/quantum_core.hpp"

namespace ssqc {

struct SteadyStateOptions {
    double tolerance{1e-4}; // relative
    double window{20.0};    // trailing time span that must sit inside the tolerance band
    double floor{1e-6};     // denominator guard when C is close to zero

    bool operator==(const SteadyStateOptions&) const = default;
};

struct SteadyStateResult {
    double ssqc{0.0};
    double t_converged{0.0};
    bool converged{false};
    double residual{0.0};
    Operator final_rho;
};

// Windowed max-deviation test on C(t): converged iff every sample in the last
// `window` time units lies within `tolerance` (relative) of the final value.
// t_converged is the earliest sample time after which that remains true.
// Throws std::invalid_argument when the samples span less than 2 * window.
SteadyStateResult detect_steady_state(std::span<const double> times, std::span<const double> coherences,
                                      const Operator& final_rho, const SteadyStateOptions& opts = {});
SteadyStateResult detect_steady_state(const Trajectory& traj, const SteadyStateOptions& opts = {});
SteadyStateResult detect_steady_state(const LightTrajectory& traj, const SteadyStateOptions& opts = {});

// Fixed point of the Markovian Lindblad equation for two qubits coupled
// through L = sigma_x^1 + sigma_x^2, reached from a permutation-symmetric
// initial state: the 1/3, 1/6 matrix for omega1 == omega2, I/4 otherwise.
DensityMatrix markov_steady_state_analytic(double omega1, double omega2);
DensityMatrix markov_steady_state_analytic(const SystemSpec& spec);

struct SweepResult {
    std::string axis_name;
    std::vector<double> axis_values;
    std::vector<double> ssqc_values;
    std::vector<bool> converged;
    std::vector<double> t_converged;
    std::vector<double> residuals;

    std::size_t size() const { return axis_values.size(); }
    void validate() const;
};

struct Peak {
    std::size_t index{0};
    double axis_value{0.0};
    double ssqc{0.0};
    bool is_interior{false};
    bool tied{false}; // another point shares the maximum; the smallest axis value was chosen
};

// Argmax over the sweep. The peak is interior when it is not an endpoint and
// exceeds both neighbours by more than `tolerance`.
Peak find_peak(const SweepResult& sweep, double tolerance = 0.0);
Peak find_peak(std::span<const double> axis, std::span<const double> values, double tolerance = 0.0);

} // namespace ssqc
