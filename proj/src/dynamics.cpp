#include "ssqc/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ssqc {

namespace {

constexpr cplx I{0.0, 1.0};

// One memory block obeys dM/dt = source * S - decay * M - [A, M], with
// S = L for O-type blocks and S = L^dagger for Q-type blocks.
struct MemoryChannel {
    cplx source;
    cplx decay;
};

std::vector<MemoryChannel> thermal_channels(const BathParams& p) {
    const double w0 = p.omega0;
    const double g = p.bandwidth;
    return {
        {alpha_thermal(0.0, 0.0, p), cplx(g, w0)},  // -(i w0 + gamma) O
        {eta_thermal(0.0, 0.0, p), cplx(g, -w0)},   // +(i w0 - gamma) Q
    };
}

std::vector<MemoryChannel> squeezed_channels(const SqueezedCorrelations& c) {
    const double w0 = c.bath.omega0;
    const double g = c.bath.bandwidth;
    return {
        {c.alpha1(0.0, 0.0), cplx(g, w0)},  // O1: -(i w0 + gamma)
        {c.alpha2(0.0, 0.0), cplx(g, -w0)}, // O2: -(-i w0 + gamma)
        {c.eta1(0.0, 0.0), cplx(g, -w0)},   // Q1: -(-i w0 + gamma)
        {c.eta2(0.0, 0.0), cplx(g, w0)},    // Q2: -(i w0 + gamma)
    };
}

void require_square(const Operator& m, Eigen::Index dim, const char* what) {
    if (m.rows() != dim || m.cols() != dim)
        throw DimensionError(fmt::format("{} is {}x{}, expected {}x{}", what, m.rows(), m.cols(), dim, dim));
}

// Right-hand side of the stacked system y = {rho, M_1, ..., M_K}. All scratch
// matrices are owned here so evaluation does not allocate.
class Generator {
public:
    Generator(const Operator& h, const Operator& l, std::vector<MemoryChannel> channels)
        : h_(h), l_(l), ld_(l.adjoint()), channels_(std::move(channels)), markovian_(false) {
        init_scratch();
    }

    Generator(const Operator& h, const Operator& l, double markov_rate)
        : h_(h), l_(l), ld_(l.adjoint()), markovian_(true), rate_(markov_rate) {
        ldl_ = ld_ * l_;
        lld_ = l_ * ld_;
        init_scratch();
    }

    std::size_t blocks() const { return 1 + channels_.size(); }
    Eigen::Index dim() const { return h_.rows(); }

    void evaluate(const std::vector<Operator>& y, std::vector<Operator>& dy) {
        const Operator& rho = y[0];
        Operator& drho = dy[0];

        // -i[H, rho]
        a_.noalias() = h_ * rho;
        a_.noalias() -= rho * h_;
        drho = -I * a_;

        if (markovian_) {
            lindblad_dissipator(rho, drho);
            return;
        }

        const std::size_t k = channels_.size();
        const std::size_t n_o = k / 2;
        obar_.setZero();
        qbar_.setZero();
        for (std::size_t i = 0; i < n_o; ++i) obar_ += y[1 + i];
        for (std::size_t i = n_o; i < k; ++i) qbar_ += y[1 + i];

        // X - W with X = rho Obar^dagger, W = Qbar rho
        x_.noalias() = rho * obar_.adjoint();
        x_.noalias() -= qbar_ * rho;
        // Y - Z with Y = Obar rho, Z = rho Qbar^dagger
        z_.noalias() = obar_ * rho;
        z_.noalias() -= rho * qbar_.adjoint();

        drho.noalias() += l_ * x_;
        drho.noalias() -= x_ * l_;
        drho.noalias() -= ld_ * z_;
        drho.noalias() += z_ * ld_;

        // A = i H + L^dagger Obar + L Qbar
        a_ = I * h_;
        a_.noalias() += ld_ * obar_;
        a_.noalias() += l_ * qbar_;

        for (std::size_t i = 0; i < k; ++i) {
            const Operator& m = y[1 + i];
            Operator& dm = dy[1 + i];
            const Operator& source = i < n_o ? l_ : ld_;
            dm = channels_[i].source * source - channels_[i].decay * m;
            dm.noalias() -= a_ * m;
            dm.noalias() += m * a_;
        }
    }

private:
    void init_scratch() {
        const Eigen::Index d = h_.rows();
        a_ = Operator::Zero(d, d);
        x_ = Operator::Zero(d, d);
        z_ = Operator::Zero(d, d);
        obar_ = Operator::Zero(d, d);
        qbar_ = Operator::Zero(d, d);
    }

    // (rate/2)[(2 L rho L^+ - L^+L rho - rho L^+L) + (2 L^+ rho L - L L^+ rho - rho L L^+)]
    void lindblad_dissipator(const Operator& rho, Operator& drho) {
        x_.noalias() = l_ * rho;
        z_.noalias() = 2.0 * x_ * ld_;
        x_.noalias() = ld_ * rho;
        z_.noalias() += 2.0 * x_ * l_;
        z_.noalias() -= ldl_ * rho;
        z_.noalias() -= rho * ldl_;
        z_.noalias() -= lld_ * rho;
        z_.noalias() -= rho * lld_;
        drho += (0.5 * rate_) * z_;
    }

    Operator h_, l_, ld_, ldl_, lld_;
    std::vector<MemoryChannel> channels_;
    bool markovian_;
    double rate_{0.0};
    Operator a_, x_, z_, obar_, qbar_;
};

std::vector<Operator> stack(const PropagationState& s) {
    std::vector<Operator> y;
    y.reserve(1 + s.mem.blocks.size());
    y.push_back(s.rho);
    for (const auto& b : s.mem.blocks) y.push_back(b);
    return y;
}

std::vector<Operator> zeros_like(const std::vector<Operator>& y) {
    std::vector<Operator> out;
    out.reserve(y.size());
    for (const auto& m : y) out.push_back(Operator::Zero(m.rows(), m.cols()));
    return out;
}

void check_state(const PropagationState& s, const Operator& h, const Operator& l, std::size_t blocks) {
    const Eigen::Index d = h.rows();
    require_square(h, d, "Hamiltonian");
    require_square(l, d, "Lindblad operator");
    require_square(s.rho, d, "density matrix");
    if (s.mem.blocks.size() != blocks)
        throw DimensionError(fmt::format("expected {} memory operators, got {}", blocks, s.mem.blocks.size()));
    for (const auto& b : s.mem.blocks) require_square(b, d, "memory operator");
}

// Fixed-step classical RK4 on the stacked system.
class Rk4Stepper {
public:
    Rk4Stepper(Generator& gen, const std::vector<Operator>& like)
        : gen_(gen), k1_(zeros_like(like)), k2_(zeros_like(like)), k3_(zeros_like(like)),
          k4_(zeros_like(like)), tmp_(zeros_like(like)) {}

    void step(std::vector<Operator>& y, double dt) {
        const std::size_t n = y.size();
        gen_.evaluate(y, k1_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + (0.5 * dt) * k1_[i];
        gen_.evaluate(tmp_, k2_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + (0.5 * dt) * k2_[i];
        gen_.evaluate(tmp_, k3_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + dt * k3_[i];
        gen_.evaluate(tmp_, k4_);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += (dt / 6.0) * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }

private:
    Generator& gen_;
    std::vector<Operator> k1_, k2_, k3_, k4_, tmp_;
};

std::string describe(const PropagationRequest& r) {
    std::string s = fmt::format("regime={} N={} Gamma={} gamma={} T={} omega0={}", to_string(r.regime),
                                r.system.n_qubits, r.bath.coupling, r.bath.bandwidth, r.bath.temperature,
                                r.bath.omega0);
    if (r.squeeze) s += fmt::format(" r={} theta={}", r.squeeze->r, r.squeeze->theta);
    return s;
}

// Drives the integration and hands each sample to `sink(t, rho)`.
template <typename Sink>
PropagationDiagnostics integrate(const PropagationRequest& req, Sink&& sink) {
    req.system.validate();
    req.bath.validate();
    req.integrator.validate();
    if (req.squeeze) {
        req.squeeze->validate();
        if (req.regime == Regime::Markovian)
            throw std::invalid_argument("squeezing is only defined for the non-Markovian regime");
    }
    const Operator h = build_hamiltonian(req.system);
    const Operator l = build_lindblad(req.system);
    require_square(req.initial.matrix(), h.rows(), "initial state");

    PropagationDiagnostics diag;
    const IntegratorConfig& cfg = req.integrator;

    // Stability guard.
    double stiffness = cfg.dt * req.system.max_abs_omega();
    if (req.regime == Regime::NonMarkovian) stiffness = std::max(stiffness, cfg.dt * req.bath.bandwidth);
    int refine = 1;
    if (stiffness > cfg.stability_limit * (1.0 + 1e-12)) {
        const std::string msg = fmt::format(
            "time step dt={} violates the stability guard (dt*rate = {:.4g} > {})", cfg.dt, stiffness,
            cfg.stability_limit);
        switch (cfg.stability) {
        case StabilityPolicy::Reject: throw StabilityError(msg);
        case StabilityPolicy::Warn: diag.warnings.push_back(msg); break;
        case StabilityPolicy::Refine:
            refine = static_cast<int>(std::ceil(stiffness / cfg.stability_limit - 1e-12));
            break;
        }
    }
    const double dt = cfg.dt / refine;
    const long sample_every = static_cast<long>(cfg.sample_every) * refine;
    const long n_steps = std::lround(cfg.t_max / dt);
    diag.dt_used = dt;
    diag.refinement = refine;

    std::optional<Generator> gen;
    std::vector<Operator> y;
    const Eigen::Index d = h.rows();
    y.push_back(req.initial.matrix());
    if (req.regime == Regime::Markovian) {
        gen.emplace(h, l, req.bath.coupling * req.bath.temperature);
    } else if (req.squeeze) {
        gen.emplace(h, l, squeezed_channels(squeezed_correlations(req.bath, *req.squeeze)));
        for (int i = 0; i < 4; ++i) y.push_back(Operator::Zero(d, d));
    } else {
        gen.emplace(h, l, thermal_channels(req.bath));
        for (int i = 0; i < 2; ++i) y.push_back(Operator::Zero(d, d));
    }

    Rk4Stepper stepper(*gen, y);
    Operator repaired(d, d);
    sink(0.0, y[0]);
    for (long step = 1; step <= n_steps; ++step) {
        stepper.step(y, dt);
        bool finite = true;
        for (const auto& m : y) finite = finite && m.allFinite();
        if (!finite)
            throw NumericError(fmt::format("non-finite value at step {} (t = {}) for {}", step,
                                           static_cast<double>(step) * dt, describe(req)));

        Operator& rho = y[0];
        diag.max_trace_error_pre_repair = std::max(diag.max_trace_error_pre_repair, trace_error(rho));
        diag.max_hermiticity_drift_pre_repair =
            std::max(diag.max_hermiticity_drift_pre_repair, hermiticity_error(rho));
        repaired = rho;
        symmetrize_and_normalize(repaired);
        const double correction = (repaired - rho).cwiseAbs().maxCoeff();
        diag.max_repair_correction = std::max(diag.max_repair_correction, correction);
        if (correction > 1e-14) ++diag.repaired_steps;
        rho.swap(repaired);

        if (step % sample_every == 0 || step == n_steps) sink(static_cast<double>(step) * dt, rho);
    }
    diag.steps = n_steps;
    return diag;
}

} // namespace

std::string_view to_string(Regime r) {
    return r == Regime::Markovian ? "markovian" : "nonmarkovian";
}

Regime regime_from_string(std::string_view name) {
    if (name == "markovian") return Regime::Markovian;
    if (name == "nonmarkovian") return Regime::NonMarkovian;
    throw std::invalid_argument(fmt::format("unknown regime '{}'", name));
}

std::string_view to_string(StabilityPolicy p) {
    switch (p) {
    case StabilityPolicy::Reject: return "reject";
    case StabilityPolicy::Warn: return "warn";
    case StabilityPolicy::Refine: return "refine";
    }
    return "reject";
}

StabilityPolicy stability_policy_from_string(std::string_view name) {
    if (name == "reject") return StabilityPolicy::Reject;
    if (name == "warn") return StabilityPolicy::Warn;
    if (name == "refine") return StabilityPolicy::Refine;
    throw std::invalid_argument(fmt::format("unknown stability policy '{}'", name));
}

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be positive");
    if (sample_every < 1) throw std::invalid_argument("sample_every must be a positive integer");
    if (!(stability_limit > 0.0)) throw std::invalid_argument("stability_limit must be positive");
}

MemoryOperators MemoryOperators::zero(MemoryKind kind, Eigen::Index dim) {
    MemoryOperators m;
    m.kind = kind;
    m.blocks.assign(kind == MemoryKind::Thermal ? 2 : 4, Operator::Zero(dim, dim));
    return m;
}

Operator MemoryOperators::o_total() const {
    Operator s = blocks.front();
    for (std::size_t i = 1; i < o_count(); ++i) s += blocks[i];
    return s;
}

Operator MemoryOperators::q_total() const {
    Operator s = blocks[o_count()];
    for (std::size_t i = o_count() + 1; i < blocks.size(); ++i) s += blocks[i];
    return s;
}

ThermalDerivative rhs_nonmarkovian_thermal(const PropagationState& state, const Operator& h,
                                           const Operator& l, const ThermalCorrelations& corr) {
    if (state.mem.kind != MemoryKind::Thermal)
        throw std::invalid_argument("thermal right-hand side needs thermal memory operators");
    check_state(state, h, l, 2);
    Generator gen(h, l, thermal_channels(corr.bath));
    const auto y = stack(state);
    auto dy = zeros_like(y);
    gen.evaluate(y, dy);
    return {std::move(dy[0]), std::move(dy[1]), std::move(dy[2])};
}

SqueezedDerivative rhs_nonmarkovian_squeezed(const PropagationState& state, const Operator& h,
                                             const Operator& l, const SqueezedCorrelations& corr) {
    if (state.mem.kind != MemoryKind::Squeezed)
        throw std::invalid_argument("squeezed right-hand side needs squeezed memory operators");
    check_state(state, h, l, 4);
    Generator gen(h, l, squeezed_channels(corr));
    const auto y = stack(state);
    auto dy = zeros_like(y);
    gen.evaluate(y, dy);
    return {std::move(dy[0]), std::move(dy[1]), std::move(dy[2]), std::move(dy[3]), std::move(dy[4])};
}

Operator rhs_lindblad(const Operator& rho, const Operator& h, const Operator& l, const BathParams& p) {
    const Eigen::Index d = h.rows();
    require_square(h, d, "Hamiltonian");
    require_square(l, d, "Lindblad operator");
    require_square(rho, d, "density matrix");
    Generator gen(h, l, p.coupling * p.temperature);
    std::vector<Operator> y{rho};
    std::vector<Operator> dy{Operator::Zero(d, d)};
    gen.evaluate(y, dy);
    return std::move(dy[0]);
}

std::vector<double> Trajectory::times() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.t);
    return out;
}

std::vector<double> Trajectory::coherences() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.coherence);
    return out;
}

Trajectory propagate(const PropagationRequest& request) {
    Trajectory traj;
    traj.diagnostics = integrate(request, [&](double t, const Operator& rho) {
        traj.samples.push_back({t, rho, l1_coherence(rho)});
    });
    return traj;
}

LightTrajectory propagate_light(const PropagationRequest& request) {
    LightTrajectory traj;
    traj.diagnostics = integrate(request, [&](double t, const Operator& rho) {
        traj.times.push_back(t);
        traj.coherences.push_back(l1_coherence(rho));
        traj.final_rho = rho;
    });
    return traj;
}

} // namespace ssqc
