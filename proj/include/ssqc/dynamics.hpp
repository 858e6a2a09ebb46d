// dynamics.hpp: Coupled integration of the reduced density matrix with its
// memory operators (non-Markovian thermal and squeezed baths) and the
// Markovian Lindblad limit.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssqc/bath_model.hpp"
#include "ssqc/quantum_core.hpp"

namespace ssqc {

enum class Regime { NonMarkovian, Markovian };

std::string_view to_string(Regime r);
Regime regime_from_string(std::string_view name);

enum class MemoryKind { Thermal, Squeezed };

// Thermal: blocks = {O, Q}. Squeezed: blocks = {O1, O2, Q1, Q2}.
struct MemoryOperators {
    MemoryKind kind{MemoryKind::Thermal};
    std::vector<Operator> blocks;

    static MemoryOperators zero(MemoryKind kind, Eigen::Index dim);

    std::size_t o_count() const { return blocks.size() / 2; }
    Operator o_total() const;
    Operator q_total() const;
};

struct PropagationState {
    double t{0.0};
    Operator rho;
    MemoryOperators mem;
};

struct ThermalDerivative {
    Operator rho, o, q;
};

struct SqueezedDerivative {
    Operator rho, o1, o2, q1, q2;
};

ThermalDerivative rhs_nonmarkovian_thermal(const PropagationState& state, const Operator& h,
                                           const Operator& l, const ThermalCorrelations& corr);

SqueezedDerivative rhs_nonmarkovian_squeezed(const PropagationState& state, const Operator& h,
                                             const Operator& l, const SqueezedCorrelations& corr);

Operator rhs_lindblad(const Operator& rho, const Operator& h, const Operator& l, const BathParams& p);

enum class Scheme { RK4 };

// What to do when dt violates dt*gamma <= 0.1 or dt*max|omega| <= 0.1.
//   Reject: throw StabilityError.
//   Warn:   record a warning and integrate anyway.
//   Refine: split dt into k equal substeps (and sample k times less often)
//           so that sample times are unchanged.
enum class StabilityPolicy { Reject, Warn, Refine };

std::string_view to_string(StabilityPolicy p);
StabilityPolicy stability_policy_from_string(std::string_view name);

struct IntegratorConfig {
    double dt{0.01};
    double t_max{200.0};
    int sample_every{10};
    Scheme scheme{Scheme::RK4};
    StabilityPolicy stability{StabilityPolicy::Reject};
    double stability_limit{0.1};

    void validate() const;

    bool operator==(const IntegratorConfig&) const = default;
};

struct Sample {
    double t{0.0};
    Operator rho;
    double coherence{0.0};
};

// Per-run numerical bookkeeping. The "pre_repair" maxima are measured on the
// raw RK4 output before symmetrization and renormalization.
struct PropagationDiagnostics {
    long steps{0};
    double dt_used{0.0};
    int refinement{1};
    double max_trace_error_pre_repair{0.0};
    double max_hermiticity_drift_pre_repair{0.0};
    double max_repair_correction{0.0};
    long repaired_steps{0}; // steps where the repair changed rho by more than 1e-14
    std::vector<std::string> warnings;
};

struct Trajectory {
    std::vector<Sample> samples;
    PropagationDiagnostics diagnostics;

    std::vector<double> times() const;
    std::vector<double> coherences() const;
};

struct PropagationRequest {
    DensityMatrix initial;
    SystemSpec system;
    BathParams bath;
    std::optional<SqueezeParams> squeeze;
    IntegratorConfig integrator;
    Regime regime{Regime::NonMarkovian};
};

Trajectory propagate(const PropagationRequest& request);

// Same as propagate(), but keeps only every sample's coherence and the last
// density matrix; used by sweeps where storing every rho is wasteful.
struct LightTrajectory {
    std::vector<double> times;
    std::vector<double> coherences;
    Operator final_rho;
    PropagationDiagnostics diagnostics;
};

LightTrajectory propagate_light(const PropagationRequest& request);

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class StabilityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace ssqc
