// ssqc: command-line front end: single runs, parameter sweeps, presets and
// the closed-form two-qubit Markovian oracle.
//
// Exit codes: 0 success, 1 config error, 2 numeric failure, 3 I/O failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ssqc/analysis.hpp"
#include "ssqc/config.hpp"
#include "ssqc/presets.hpp"
#include "ssqc/runner.hpp"

namespace fs = std::filesystem;
using namespace ssqc;

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kNumeric = 2, kIo = 3 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot read '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
    out << content;
    if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

const char* env(const char* name) {
    const char* v = std::getenv(name);
    return v && *v ? v : nullptr;
}

// --out wins; otherwise the config path, placed under --out-dir or
// SSQC_OUTPUT_DIR when relative. Empty means stdout.
std::string resolve_output(const std::string& flag_out, const std::string& flag_dir, const std::string& cfg_path) {
    if (!flag_out.empty()) return flag_out;
    if (cfg_path.empty()) return {};
    fs::path p(cfg_path);
    std::string dir = flag_dir;
    if (dir.empty())
        if (const char* e = env("SSQC_OUTPUT_DIR")) dir = e;
    if (!dir.empty() && p.is_relative()) p = fs::path(dir) / p;
    return p.string();
}

int resolve_workers(int flag_workers) {
    if (flag_workers > 0) return flag_workers;
    if (const char* e = env("SSQC_WORKERS")) {
        try {
            if (int w = std::stoi(e); w > 0) return w;
        } catch (const std::exception&) {
        }
        std::cerr << fmt::format("warning: ignoring invalid SSQC_WORKERS='{}'\n", e);
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

bool wants_csv(OutputFormat f) { return f != OutputFormat::Json; }
bool wants_json(OutputFormat f) { return f != OutputFormat::Csv; }

fs::path json_path_for(const std::string& out, OutputFormat f) {
    fs::path p(out);
    if (f == OutputFormat::Json) return p;
    p += ".json";
    return p;
}

int cmd_run(const std::string& config_path, const std::string& out_flag, const std::string& dir_flag) {
    const ConfigDocument doc = parse_config(read_file(config_path));
    const auto* cfg = std::get_if<RunConfig>(&doc);
    if (!cfg) {
        std::cerr << "error: config contains a [sweep] section; use 'ssqc sweep'\n";
        return kConfig;
    }
    const RunOutcome outcome = run_single(*cfg);
    const std::string out = resolve_output(out_flag, dir_flag, cfg->output.path);
    if (out.empty()) {
        if (cfg->output.format == OutputFormat::Json) std::cout << run_json(*cfg, outcome) << '\n';
        else write_trajectory_csv(std::cout, outcome.trajectory);
    } else {
        if (wants_csv(cfg->output.format)) write_file(out, trajectory_csv(outcome.trajectory));
        if (wants_json(cfg->output.format)) write_file(json_path_for(out, cfg->output.format), run_json(*cfg, outcome));
    }
    for (const auto& w : outcome.trajectory.diagnostics.warnings) std::cerr << "warning: " << w << '\n';
    std::cerr << fmt::format("ssqc = {:.10g}  converged = {}  residual = {:.3g}  ({:.2f} s)\n", outcome.steady.ssqc,
                             outcome.steady.converged, outcome.steady.residual, outcome.seconds);
    return kOk;
}

int cmd_sweep(const std::string& config_path, int workers_flag, const std::string& out_flag,
              const std::string& dir_flag) {
    const ConfigDocument doc = parse_config(read_file(config_path));
    const auto* spec = std::get_if<SweepSpec>(&doc);
    if (!spec) {
        std::cerr << "error: config has no [sweep] section; use 'ssqc run'\n";
        return kConfig;
    }
    const SweepOutcome outcome = run_sweep(*spec, resolve_workers(workers_flag));
    const std::string out = resolve_output(out_flag, dir_flag, spec->base.output.path);
    const OutputFormat fmt_out = spec->base.output.format;
    if (out.empty()) {
        if (fmt_out == OutputFormat::Json) std::cout << sweep_json(outcome) << '\n';
        else write_sweep_csv(std::cout, outcome);
        if (!outcome.all_ok()) write_failure_manifest(std::cerr, outcome);
    } else {
        if (wants_csv(fmt_out)) write_file(out, sweep_csv(outcome));
        if (wants_json(fmt_out)) write_file(json_path_for(out, fmt_out), sweep_json(outcome));
        if (!outcome.all_ok()) {
            std::ostringstream manifest;
            write_failure_manifest(manifest, outcome);
            fs::path mp(out);
            mp += ".failures.csv";
            write_file(mp, manifest.str());
            std::cerr << fmt::format("failure manifest: {}\n", mp.string());
        }
    }
    std::cerr << fmt::format("{} points, {} failed, {} workers, {:.2f} s\n", outcome.points.size(),
                             outcome.failures(), outcome.workers, outcome.seconds);
    if (outcome.all_ok()) return kOk;
    // Numeric failures take precedence in the exit code.
    for (const auto& p : outcome.points)
        if (!p.ok && p.failure == FailureKind::Numeric) return kNumeric;
    return kConfig;
}

int cmd_preset(const std::string& name) {
    if (name.empty()) {
        for (auto n : preset_names()) std::cout << n << '\n';
        return kOk;
    }
    const auto text = preset_text(name);
    if (!text) {
        std::cerr << fmt::format("error: unknown preset '{}'; available:", name);
        for (auto n : preset_names()) std::cerr << ' ' << n;
        std::cerr << '\n';
        return kConfig;
    }
    std::cout << *text;
    return kOk;
}

int cmd_oracle(double omega1, double omega2) {
    const DensityMatrix rho = markov_steady_state_analytic(omega1, omega2);
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        for (Eigen::Index j = 0; j < rho.dim(); ++j)
            std::cout << (j ? " " : "") << fmt::format("{:.17g}", rho(i, j).real());
        std::cout << '\n';
    }
    std::cout << fmt::format("C = {:.17g}\n", rho.coherence());
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state coherence of qubits in a collective bosonic bath"};
    app.require_subcommand(1);

    std::string config_path, out_path, out_dir;
    int workers = 0;

    auto* run = app.add_subcommand("run", "Propagate one configuration and write its trajectory");
    run->add_option("--config", config_path, "Config file")->required();
    run->add_option("--out", out_path, "Output file (default: [output] path, or stdout)");
    run->add_option("--out-dir", out_dir, "Directory for relative output paths (overrides SSQC_OUTPUT_DIR)");

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write the SSQC table");
    sweep->add_option("--config", config_path, "Config file")->required();
    sweep->add_option("--workers", workers, "Worker threads (overrides SSQC_WORKERS)")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_path, "Output file (default: [output] path, or stdout)");
    sweep->add_option("--out-dir", out_dir, "Directory for relative output paths (overrides SSQC_OUTPUT_DIR)");

    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "Print a named preset config (no name lists presets)");
    preset->add_option("name", preset_name, "Preset name");

    double omega1 = 1.0, omega2 = 1.0;
    auto* oracle = app.add_subcommand("oracle", "Closed-form reference states");
    oracle->require_subcommand(1);
    auto* markov_n2 = oracle->add_subcommand("markov-n2", "Two-qubit Markovian steady state and its coherence");
    markov_n2->add_option("--omega1", omega1, "Frequency of qubit 1")->required();
    markov_n2->add_option("--omega2", omega2, "Frequency of qubit 2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*run) return cmd_run(config_path, out_path, out_dir);
        if (*sweep) return cmd_sweep(config_path, workers, out_path, out_dir);
        if (*preset) return cmd_preset(preset_name);
        if (*markov_n2) return cmd_oracle(omega1, omega2);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
    return kOk;
}
