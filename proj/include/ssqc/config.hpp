// config.hpp: Sectioned key-value run and sweep configuration.
//
//   # comment
//   [system]      n_qubits, omegas, channel, regime, initial_state
//   [bath]        Gamma, gamma, T, omega0
//   [squeeze]     r, theta
//   [integrator]  dt, t_max, sample_every, scheme, stability, stability_limit,
//                 steady_tol, steady_window, steady_floor
//   [sweep]       axis, values | start+stop+count, outer_axis, outer_values | outer_start+outer_stop+outer_count
//   [output]      path, format
//
// Keys are case-sensitive (Gamma is the coupling, gamma the bandwidth).
// Numbers may also be written as multiples of pi: pi, pi/2, 0.25*pi.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ssqc/analysis.hpp"
#include "ssqc/bath_model.hpp"
#include "ssqc/dynamics.hpp"
#include "ssqc/quantum_core.hpp"

namespace ssqc {

enum class OutputFormat { Csv, Json, CsvJson };

std::string_view to_string(OutputFormat f);

struct OutputSpec {
    std::string path;
    OutputFormat format{OutputFormat::Csv};

    bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
    SystemSpec system;
    std::string initial_state{"ground"}; // "ground", "mixed" or a string over {e, g}
    BathParams bath;
    std::optional<SqueezeParams> squeeze;
    Regime regime{Regime::NonMarkovian};
    IntegratorConfig integrator;
    SteadyStateOptions steady;
    OutputSpec output;

    DensityMatrix initial_density() const;
    PropagationRequest request() const;

    bool operator==(const RunConfig&) const = default;
};

enum class SweepAxis { Gamma, T, gamma, r, theta };

std::string_view to_string(SweepAxis a);
std::optional<SweepAxis> sweep_axis_from_string(std::string_view name);

// Writes `value` into the parameter selected by `axis`.
void apply_axis(RunConfig& cfg, SweepAxis axis, double value);

struct SweepSpec {
    RunConfig base;
    SweepAxis axis{SweepAxis::Gamma};
    std::vector<double> values;
    // Optional second axis for surfaces; the inner axis varies fastest.
    std::optional<SweepAxis> outer_axis;
    std::vector<double> outer_values;

    bool operator==(const SweepSpec&) const = default;
};

using ConfigDocument = std::variant<RunConfig, SweepSpec>;

struct ConfigIssue {
    int line{0}; // 0 when the problem is not tied to a line
    std::string message;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);
    const std::vector<ConfigIssue>& issues() const { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

// Parses and validates a document. A [sweep] section makes it a SweepSpec.
// Every violation found is reported together in one ConfigError.
ConfigDocument parse_config(std::string_view text);

std::string emit_config(const RunConfig& cfg);
std::string emit_config(const SweepSpec& spec);
std::string emit_config(const ConfigDocument& doc);

// Evenly spaced grid including both ends.
std::vector<double> linear_grid(double start, double stop, int count);

} // namespace ssqc
