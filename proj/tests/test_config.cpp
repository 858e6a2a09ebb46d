#include <doctest.h>

#include <numbers>
#include <random>
#include <string>

#include "ssqc/config.hpp"
#include "ssqc/presets.hpp"

using namespace ssqc;

namespace {

const ConfigError& expect_error(std::string_view text, ConfigError& holder) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        holder = e;
        return holder;
    }
    FAIL("expected a ConfigError");
    return holder;
}

bool mentions(const ConfigError& e, int line, std::string_view needle) {
    for (const auto& i : e.issues())
        if (i.line == line && i.message.find(needle) != std::string::npos) return true;
    return false;
}

constexpr std::string_view kMinimal = R"([system]
n_qubits = 2
omegas = 1
[bath]
Gamma = 0.05
gamma = 5
T = 15
)";

} // namespace

TEST_CASE("minimal run config takes defaults") {
    const auto doc = parse_config(kMinimal);
    REQUIRE(std::holds_alternative<RunConfig>(doc));
    const auto& cfg = std::get<RunConfig>(doc);
    CHECK(cfg.system.omegas == std::vector<double>{1.0, 1.0});
    CHECK(cfg.system.channel == Channel::SigmaX);
    CHECK(cfg.regime == Regime::NonMarkovian);
    CHECK(cfg.initial_state == "ground");
    CHECK(cfg.bath == BathParams{0.05, 5.0, 15.0, 1.0});
    CHECK_FALSE(cfg.squeeze.has_value());
    CHECK(cfg.integrator.dt == 0.01);
}

TEST_CASE("every preset parses to a sweep") {
    REQUIRE(preset_names().size() == 6);
    for (auto name : preset_names()) {
        CAPTURE(name);
        const auto doc = parse_config(*preset_text(name));
        CHECK(std::holds_alternative<SweepSpec>(doc));
    }
    CHECK_FALSE(preset_text("nope").has_value());
}

TEST_CASE("fig1a preset content") {
    const auto spec = std::get<SweepSpec>(parse_config(*preset_text("fig1a")));
    CHECK(spec.base.system == SystemSpec{2, {1.0, 1.0}, Channel::SigmaX});
    CHECK(spec.base.bath.temperature == 15.0);
    CHECK(spec.base.bath.bandwidth == 5.0);
    CHECK(spec.base.bath.omega0 == 1.0);
    CHECK(spec.axis == SweepAxis::Gamma);
    CHECK(spec.values.front() == doctest::Approx(0.005));
    CHECK(spec.values.back() == doctest::Approx(0.3));
    CHECK_FALSE(spec.outer_axis.has_value());
}

TEST_CASE("fig2 preset is a 21 x 21 surface over theta and r") {
    const auto spec = std::get<SweepSpec>(parse_config(*preset_text("fig2")));
    REQUIRE(spec.base.squeeze.has_value());
    CHECK(spec.axis == SweepAxis::theta);
    REQUIRE(spec.outer_axis.has_value());
    CHECK(*spec.outer_axis == SweepAxis::r);
    CHECK(spec.values.size() == 21);
    CHECK(spec.outer_values.size() == 21);
    CHECK(spec.values.back() == doctest::Approx(std::numbers::pi));
}

TEST_CASE("zero bandwidth is rejected with its line number") {
    ConfigError e({});
    expect_error("[system]\nn_qubits = 2\n[bath]\ngamma = 0\n", e);
    CHECK(mentions(e, 4, "bandwidth gamma must be positive"));
}

TEST_CASE("squeezing in the markovian regime is rejected") {
    ConfigError e({});
    expect_error("[system]\nregime = markovian\n[squeeze]\nr = 0.4\ntheta = pi/2\n", e);
    CHECK(mentions(e, 2, "[squeeze]"));
}

TEST_CASE("all violations are reported together") {
    ConfigError e({});
    expect_error(R"([system]
n_qubits = two
colour = red
[bath]
gamma = -1
T = -2
[warp]
[integrator]
dt = 0
)",
                 e);
    CHECK(mentions(e, 2, "expected an integer"));
    CHECK(mentions(e, 3, "unknown key 'colour'"));
    CHECK(mentions(e, 5, "bandwidth"));
    CHECK(mentions(e, 6, "temperature"));
    CHECK(mentions(e, 7, "unknown section [warp]"));
    CHECK(mentions(e, 9, "dt must be positive"));
    CHECK(e.issues().size() >= 6);
    CHECK(std::string(e.what()).find("line 9") != std::string::npos);
}

TEST_CASE("duplicate keys and malformed lines") {
    ConfigError e({});
    expect_error("[bath]\nT = 1\nT = 2\njust words\n", e);
    CHECK(mentions(e, 3, "duplicate key 'T'"));
    CHECK(mentions(e, 4, "expected 'key = value'"));
}

TEST_CASE("sweep grid validation") {
    ConfigError e({});
    SUBCASE("non-increasing values") {
        expect_error("[sweep]\naxis = T\nvalues = 1, 3, 2\n", e);
        CHECK(mentions(e, 3, "strictly increasing"));
    }
    SUBCASE("axis domain") {
        expect_error("[sweep]\naxis = gamma\nvalues = 0, 1\n", e);
        CHECK(mentions(e, 3, "bandwidth gamma must be positive"));
    }
    SUBCASE("unknown axis") {
        expect_error("[sweep]\naxis = omega\nvalues = 1\n", e);
        CHECK_FALSE(e.issues().empty());
    }
    SUBCASE("squeeze axis without squeeze section") {
        expect_error("[sweep]\naxis = r\nvalues = 0, 1\n", e);
        CHECK_FALSE(e.issues().empty());
    }
    SUBCASE("values and a grid together") {
        expect_error("[sweep]\naxis = T\nvalues = 1, 2\nstart = 1\nstop = 2\ncount = 2\n", e);
        CHECK(mentions(e, 3, "mutually exclusive"));
    }
}

TEST_CASE("t_max must cover two steady-state windows") {
    ConfigError e({});
    expect_error("[integrator]\nt_max = 30\n", e);
    CHECK(mentions(e, 2, "twice the steady-state window"));
    CHECK_NOTHROW(parse_config("[integrator]\nt_max = 30\nsteady_window = 10\n"));
}

TEST_CASE("numbers may be written in multiples of pi") {
    auto theta = [](std::string_view v) {
        const std::string text = "[system]\nn_qubits = 1\nomegas = 1\n[squeeze]\nr = 0.1\ntheta = " + std::string(v) + "\n";
        return std::get<RunConfig>(parse_config(text)).squeeze->theta;
    };
    CHECK(theta("pi") == std::numbers::pi);
    CHECK(theta("pi/2") == std::numbers::pi / 2);
    CHECK(theta("0.25*pi") == 0.25 * std::numbers::pi);
    CHECK(theta("-pi") == -std::numbers::pi);
    CHECK(theta("1.5") == 1.5);
}

TEST_CASE("linear grid") {
    const auto g = linear_grid(0.0, 1.0, 5);
    CHECK(g == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(linear_grid(2.0, 3.0, 1) == std::vector<double>{2.0});
    CHECK_THROWS(linear_grid(0.0, 1.0, 0));
}

TEST_CASE("presets survive an emit and parse round trip") {
    for (auto name : preset_names()) {
        CAPTURE(name);
        const auto doc = parse_config(*preset_text(name));
        CHECK(parse_config(emit_config(doc)) == doc);
    }
}

TEST_CASE("randomised configs survive an emit and parse round trip") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 1000);
    for (int trial = 0; trial < 300; ++trial) {
        RunConfig cfg;
        cfg.system.n_qubits = 1 + pick(rng) % 4;
        cfg.system.omegas.clear();
        for (int i = 0; i < cfg.system.n_qubits; ++i) cfg.system.omegas.push_back(4.0 * u(rng) - 2.0);
        cfg.system.channel = static_cast<Channel>(pick(rng) % 3);
        cfg.bath = {u(rng) * 0.3, 0.1 + 20.0 * u(rng), 40.0 * u(rng), 3.0 * u(rng)};
        cfg.regime = pick(rng) % 2 ? Regime::Markovian : Regime::NonMarkovian;
        if (cfg.regime == Regime::NonMarkovian && pick(rng) % 2) cfg.squeeze = SqueezeParams{u(rng), 6.0 * u(rng)};
        switch (pick(rng) % 3) {
        case 0: cfg.initial_state = "ground"; break;
        case 1: cfg.initial_state = "mixed"; break;
        default:
            cfg.initial_state.clear();
            for (int i = 0; i < cfg.system.n_qubits; ++i) cfg.initial_state += pick(rng) % 2 ? 'e' : 'g';
        }
        cfg.integrator.dt = 0.001 + 0.02 * u(rng);
        cfg.integrator.t_max = 50.0 + 300.0 * u(rng);
        cfg.integrator.sample_every = 1 + pick(rng) % 50;
        cfg.integrator.stability = static_cast<StabilityPolicy>(pick(rng) % 3);
        cfg.integrator.stability_limit = 0.05 + 0.1 * u(rng);
        cfg.steady = {1e-5 + 1e-3 * u(rng), 5.0 + 20.0 * u(rng), 1e-7 + 1e-5 * u(rng)};
        cfg.output = {pick(rng) % 2 ? "out/run.csv" : "", static_cast<OutputFormat>(pick(rng) % 3)};

        const ConfigDocument doc = cfg;
        const std::string text = emit_config(doc);
        CAPTURE(text);
        REQUIRE(parse_config(text) == doc);

        SweepSpec spec{cfg, SweepAxis::T, {0.5, 1.0 + u(rng), 7.0}, std::nullopt, {}};
        if (cfg.squeeze && pick(rng) % 2) {
            spec.outer_axis = SweepAxis::theta;
            spec.outer_values = {0.0, u(rng), 3.0};
        }
        const ConfigDocument sdoc = spec;
        REQUIRE(parse_config(emit_config(sdoc)) == sdoc);
    }
}
