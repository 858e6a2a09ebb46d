// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "ssqc/analysis.hpp"
#include "ssqc/config.hpp"
#include "ssqc/dynamics.hpp"
#include "ssqc/presets.hpp"
#include "ssqc/runner.hpp"

using namespace ssqc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double max_abs(const Operator& m) { return m.cwiseAbs().maxCoeff(); }

struct Hygiene {
    double trace{0.0};
    double hermiticity{0.0};

    void add(const PropagationDiagnostics& d) {
        trace = std::max(trace, d.max_trace_error_pre_repair);
        hermiticity = std::max(hermiticity, d.max_hermiticity_drift_pre_repair);
    }
    void add(const SweepOutcome& s) {
        for (const auto& p : s.points)
            if (p.ok) add(p.diagnostics);
    }
};

Hygiene hygiene;
int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    if (!pass) ++failures;
    std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

void note(const std::string& text) {
    std::printf("    %s\n", text.c_str());
    std::fflush(stdout);
}

SweepSpec preset(std::string_view name) { return std::get<SweepSpec>(parse_config(*preset_text(name))); }

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

PropagationRequest markov_request(double coupling, double temperature, double omega2) {
    PropagationRequest r;
    r.initial = DensityMatrix::ground(2);
    r.system = {2, {1.0, omega2}, Channel::SigmaX};
    r.bath = {coupling, 5.0, temperature, 1.0};
    r.regime = Regime::Markovian;
    r.integrator.t_max = 200.0;
    return r;
}

void criterion1() {
    const Operator want = markov_steady_state_analytic(1.0, 1.0).matrix();
    bool pass = true;
    std::string detail;
    for (auto [g, temp] : {std::pair{0.05, 15.0}, std::pair{0.1, 5.0}}) {
        const auto t0 = Clock::now();
        const Trajectory traj = propagate(markov_request(g, temp, 1.0));
        const SteadyStateResult ss = detect_steady_state(traj);
        const double secs = seconds_since(t0);
        hygiene.add(traj.diagnostics);
        const double err = max_abs(ss.final_rho - want);
        pass = pass && err <= 1e-5 && std::abs(ss.ssqc - 1.0 / 3.0) <= 1e-4 && secs < 10.0;
        detail += fmt::format("(Gamma={}, T={}): max|drho|={:.2e} SSQC={:.10f} {:.2f}s; ", g, temp, err, ss.ssqc, secs);
    }
    report(1, pass, detail);
}

void criterion2() {
    const Trajectory traj = propagate(markov_request(0.05, 15.0, 0.7));
    hygiene.add(traj.diagnostics);
    const SteadyStateResult ss = detect_steady_state(traj);
    const double err = max_abs(ss.final_rho - Operator::Identity(4, 4) / 4.0);
    report(2, err <= 1e-5 && ss.ssqc <= 1e-4, fmt::format("max|rho - I/4|={:.2e} SSQC={:.2e}", err, ss.ssqc));
}

void criterion3() {
    double worst = 0.0;
    for (double w2 : {1.0, 0.7}) {
        const SystemSpec spec{2, {1.0, w2}, Channel::SigmaX};
        const Operator h = build_hamiltonian(spec), l = build_lindblad(spec);
        const Operator rho = markov_steady_state_analytic(spec).matrix();
        for (double g : {0.005, 0.05, 0.1, 0.3})
            for (double temp : {1.0, 5.0, 15.0, 40.0})
                worst = std::max(worst, max_abs(rhs_lindblad(rho, h, l, {g, 5.0, temp, 1.0})));
    }
    report(3, worst <= 1e-12, fmt::format("max residual {:.2e} over 32 (Gamma, T, matrix) cases", worst));
}

void criterion4() {
    PropagationRequest r;
    r.initial = DensityMatrix::ground(2);
    r.system = {2, {1.0, 1.0}, Channel::SigmaX};
    r.bath = {0.05, 500.0, 15.0, 1.0};
    r.integrator.t_max = 400.0;
    r.integrator.stability = StabilityPolicy::Refine;
    const auto t0 = Clock::now();
    const LightTrajectory traj = propagate_light(r);
    hygiene.add(traj.diagnostics);
    const SteadyStateResult ss = detect_steady_state(traj);
    const double rel = std::abs(ss.ssqc - 1.0 / 3.0) / (1.0 / 3.0);
    const double min_eig = Eigen::SelfAdjointEigenSolver<Operator>(ss.final_rho).eigenvalues().minCoeff();
    report(4, rel <= 0.05,
           fmt::format("gamma=500: SSQC={:.6f} ({:.1f}% from 1/3), converged={}, min eigenvalue {:.3f}, {:.1f}s",
                       ss.ssqc, 100.0 * rel, ss.converged, min_eig, seconds_since(t0)));
}

void criterion5(SweepOutcome& fig1a_parallel) {
    const auto t0 = Clock::now();
    bool pass = true;
    std::string detail;
    for (auto name : {"fig1a", "fig1b", "fig1c"}) {
        const SweepSpec spec = preset(name);
        SweepOutcome nm = run_sweep(spec, workers());
        hygiene.add(nm);
        SweepSpec markov = spec;
        markov.base.regime = Regime::Markovian;
        const SweepOutcome mk = run_sweep(markov, workers());
        hygiene.add(mk);

        bool ok = nm.all_ok() && mk.all_ok();
        std::string line = fmt::format("{}: ", name);
        if (ok) {
            const Peak p = find_peak(nm.result());
            const auto& v = mk.result().ssqc_values;
            const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
            const double spread = *hi - *lo;
            ok = p.is_interior && spread <= 1e-4;
            line += fmt::format("peak SSQC={:.5f} at {}={:.6g} interior={}, markovian spread {:.2e}", p.ssqc,
                                nm.result().axis_name, p.axis_value, p.is_interior, spread);
        } else {
            line += fmt::format("{} failed points", nm.failures() + mk.failures());
        }
        pass = pass && ok;
        detail += line + "; ";
        if (std::string_view(name) == "fig1a") fig1a_parallel = std::move(nm);
    }
    const double secs = seconds_since(t0);
    report(5, pass && secs < 600.0, detail + fmt::format("{:.1f}s total", secs));
}

void criterion6() {
    double worst = 0.0;
    for (auto name : {"fig3a", "fig3b"}) {
        const SweepSpec spec = preset(name);
        PropagationRequest r = spec.base.request();
        r.squeeze.reset();
        const Trajectory vacuum = propagate(r);
        r.squeeze = SqueezeParams{0.0, spec.base.squeeze->theta};
        const Trajectory squeezed = propagate(r);
        hygiene.add(vacuum.diagnostics);
        hygiene.add(squeezed.diagnostics);
        if (vacuum.samples.size() != squeezed.samples.size()) {
            worst = INFINITY;
            break;
        }
        for (std::size_t i = 0; i < vacuum.samples.size(); ++i)
            worst = std::max(worst, max_abs(vacuum.samples[i].rho - squeezed.samples[i].rho));
    }
    report(6, worst <= 1e-10, fmt::format("max |rho_EISS(r=0) - rho_EIVS| = {:.2e} over every sample", worst));
}

void criterion7() {
    const SweepSpec eiss = preset("fig3a");
    SweepSpec eivs = eiss;
    eivs.base.squeeze.reset();
    const SweepOutcome so = run_sweep(eiss, workers());
    const SweepOutcome vo = run_sweep(eivs, workers());
    hygiene.add(so);
    hygiene.add(vo);
    const Peak ps = find_peak(so.result());
    const Peak pv = find_peak(vo.result());
    report(7, ps.ssqc > pv.ssqc,
           fmt::format("EISS peak {:.5f} at Gamma={:.6g} (interior={}, {} failed points); EIVS peak {:.5f} at "
                       "Gamma={:.6g} (interior={})",
                       ps.ssqc, ps.axis_value, ps.is_interior, so.failures(), pv.ssqc, pv.axis_value, pv.is_interior));

    const SweepResult rs = so.result(), rv = vo.result();
    note("Gamma, SSQC squeezed, SSQC vacuum");
    for (std::size_t i = 0, j = 0; i < rs.axis_values.size() && j < rv.axis_values.size();) {
        if (rs.axis_values[i] == rv.axis_values[j]) {
            note(fmt::format("{:.6g}, {:.5f}, {:.5f}", rs.axis_values[i], rs.ssqc_values[i], rv.ssqc_values[j]));
            ++i;
            ++j;
        } else if (rs.axis_values[i] < rv.axis_values[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    for (const auto& p : so.points)
        if (!p.ok) note(fmt::format("EISS point Gamma={:.6g} failed: {}", p.axis_value, p.error));
}

double rk4_ratio(PropagationRequest r) {
    r.integrator.stability = StabilityPolicy::Warn;
    r.integrator.t_max = 40.0;
    std::vector<std::vector<double>> c;
    for (double dt : {0.04, 0.02, 0.01}) {
        r.integrator.dt = dt;
        r.integrator.sample_every = static_cast<int>(std::lround(0.2 / dt));
        c.push_back(propagate_light(r).coherences);
    }
    auto dev = [](const std::vector<double>& a, const std::vector<double>& b) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    };
    return dev(c[0], c[1]) / dev(c[1], c[2]);
}

void criterion8() {
    PropagationRequest nm;
    nm.initial = DensityMatrix::ground(2);
    nm.system = {2, {1.0, 1.0}, Channel::SigmaX};
    nm.bath = {0.05, 5.0, 15.0, 1.0};
    PropagationRequest mk = nm;
    mk.regime = Regime::Markovian;
    PropagationRequest sq = preset("fig3a").base.request();
    sq.bath.coupling = 0.05;
    const double r_nm = rk4_ratio(nm), r_mk = rk4_ratio(mk), r_sq = rk4_ratio(sq);
    const bool pass = hygiene.trace <= 1e-8 && hygiene.hermiticity <= 1e-9 && std::min({r_nm, r_mk, r_sq}) >= 8.0;
    report(8, pass,
           fmt::format("max |Tr rho - 1| = {:.2e}, max hermiticity drift = {:.2e} (pre-repair, criteria 1-7); "
                       "step-halving ratio {:.2f} thermal, {:.2f} markovian, {:.2f} squeezed",
                       hygiene.trace, hygiene.hermiticity, r_nm, r_mk, r_sq));
}

void criterion9(const SweepOutcome& fig1a_parallel) {
    const SweepSpec spec = preset("fig1a");
    const std::string one = sweep_csv(run_sweep(spec, 1));
    const std::string eight = sweep_csv(run_sweep(spec, 8));
    const std::string earlier = sweep_csv(fig1a_parallel);
    report(9, one == eight && one == earlier,
           fmt::format("fig1a CSV: 1 worker {} bytes, 8 workers {} bytes, identical={}; {}-worker rerun identical={}",
                       one.size(), eight.size(), one == eight, fig1a_parallel.workers, one == earlier));
}

} // namespace

int main() {
    const auto t0 = Clock::now();
    SweepOutcome fig1a;
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5(fig1a);
    criterion6();
    criterion7();
    criterion8();
    criterion9(fig1a);
    std::printf("%d of 9 criteria failed (%.1fs)\n", failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
