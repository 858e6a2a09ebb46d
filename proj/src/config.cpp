#include "ssqc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include <fmt/format.h>

namespace ssqc {

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_plain_number(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

// number | [number '*'] 'pi' ['/' number]
std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    const auto pi_at = s.find("pi");
    if (pi_at == std::string_view::npos) return parse_plain_number(s);
    double factor = 1.0;
    std::string_view head = trim(s.substr(0, pi_at));
    if (!head.empty()) {
        if (head.back() != '*') {
            if (head == "-") factor = -1.0;
            else return std::nullopt;
        } else {
            auto f = parse_plain_number(head.substr(0, head.size() - 1));
            if (!f) return std::nullopt;
            factor = *f;
        }
    }
    double divisor = 1.0;
    std::string_view tail = trim(s.substr(pi_at + 2));
    if (!tail.empty()) {
        if (tail.front() != '/') return std::nullopt;
        auto d = parse_plain_number(tail.substr(1));
        if (!d || *d == 0.0) return std::nullopt;
        divisor = *d;
    }
    return factor * std::numbers::pi / divisor;
}

std::optional<long> parse_integer(std::string_view s) {
    s = trim(s);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<std::vector<double>> parse_list(std::string_view s) {
    std::vector<double> out;
    while (true) {
        const auto comma = s.find(',');
        auto v = parse_number(s.substr(0, comma));
        if (!v) return std::nullopt;
        out.push_back(*v);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

std::string format_number(double v) { return fmt::format("{}", v); }

std::string format_list(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += format_number(xs[i]);
    }
    return s;
}

const std::map<std::string, std::set<std::string>, std::less<>>& known_keys() {
    static const std::map<std::string, std::set<std::string>, std::less<>> keys{
        {"system", {"n_qubits", "omegas", "channel", "regime", "initial_state"}},
        {"bath", {"Gamma", "gamma", "T", "omega0"}},
        {"squeeze", {"r", "theta"}},
        {"integrator",
         {"dt", "t_max", "sample_every", "scheme", "stability", "stability_limit", "steady_tol", "steady_window",
          "steady_floor"}},
        {"sweep",
         {"axis", "values", "start", "stop", "count", "outer_axis", "outer_values", "outer_start", "outer_stop",
          "outer_count"}},
        {"output", {"path", "format"}},
    };
    return keys;
}

struct Entry {
    std::string value;
    int line{0};
};

// Collects typed values out of the raw entries and records every problem.
class Reader {
public:
    std::map<std::string, Entry, std::less<>> entries; // "section.key"
    std::set<std::string, std::less<>> sections;
    std::vector<ConfigIssue> issues;

    bool has(std::string_view key) const { return entries.find(key) != entries.end(); }
    int line_of(std::string_view key) const {
        auto it = entries.find(key);
        return it == entries.end() ? 0 : it->second.line;
    }

    void issue(std::string_view key, std::string msg) { issues.push_back({line_of(key), std::move(msg)}); }

    void number(std::string_view key, double& out) {
        auto it = entries.find(key);
        if (it == entries.end()) return;
        if (auto v = parse_number(it->second.value)) out = *v;
        else issue(key, fmt::format("{}: expected a number, got '{}'", key, it->second.value));
    }

    void integer(std::string_view key, auto& out) {
        auto it = entries.find(key);
        if (it == entries.end()) return;
        if (auto v = parse_integer(it->second.value)) out = static_cast<std::remove_reference_t<decltype(out)>>(*v);
        else issue(key, fmt::format("{}: expected an integer, got '{}'", key, it->second.value));
    }

    void list(std::string_view key, std::vector<double>& out) {
        auto it = entries.find(key);
        if (it == entries.end()) return;
        if (auto v = parse_list(it->second.value)) out = std::move(*v);
        else issue(key, fmt::format("{}: expected a comma-separated list of numbers, got '{}'", key,
                                    it->second.value));
    }

    template <typename F>
    void word(std::string_view key, F&& convert) {
        auto it = entries.find(key);
        if (it == entries.end()) return;
        try {
            convert(std::string(trim(it->second.value)));
        } catch (const std::invalid_argument& e) {
            issue(key, fmt::format("{}: {}", key, e.what()));
        }
    }

    void text(std::string_view key, std::string& out) {
        auto it = entries.find(key);
        if (it != entries.end()) out = std::string(trim(it->second.value));
    }
};

OutputFormat output_format_from_string(std::string_view s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    if (s == "csv+json") return OutputFormat::CsvJson;
    throw std::invalid_argument(fmt::format("unknown output format '{}' (csv, json, csv+json)", s));
}

bool valid_initial_state(const std::string& s, int n_qubits, std::string& why) {
    if (s == "ground" || s == "mixed") return true;
    if (static_cast<int>(s.size()) != n_qubits) {
        why = fmt::format("basis string '{}' has {} characters, expected {}", s, s.size(), n_qubits);
        return false;
    }
    for (char c : s)
        if (c != 'e' && c != 'g') {
            why = fmt::format("basis string '{}' may only contain 'e' and 'g'", s);
            return false;
        }
    return true;
}

void read_axis_values(Reader& rd, const std::string& prefix, std::vector<double>& values) {
    const std::string vkey = "sweep." + prefix + "values";
    const std::string skey = "sweep." + prefix + "start";
    const std::string ekey = "sweep." + prefix + "stop";
    const std::string ckey = "sweep." + prefix + "count";
    const bool grid = rd.has(skey) || rd.has(ekey) || rd.has(ckey);
    if (rd.has(vkey) && grid) {
        rd.issue(vkey, fmt::format("{0}values and {0}start/{0}stop/{0}count are mutually exclusive", prefix));
        return;
    }
    if (rd.has(vkey)) {
        rd.list(vkey, values);
        return;
    }
    if (!grid) {
        rd.issues.push_back({rd.line_of("sweep." + prefix + "axis"),
                             fmt::format("sweep needs {0}values or {0}start/{0}stop/{0}count", prefix)});
        return;
    }
    double start = 0.0, stop = 0.0;
    long count = 0;
    bool ok = true;
    for (const auto& k : {skey, ekey, ckey})
        if (!rd.has(k)) {
            rd.issue(vkey, fmt::format("linear grid is missing '{}'", k.substr(6)));
            ok = false;
        }
    if (!ok) return;
    const std::size_t before = rd.issues.size();
    rd.number(skey, start);
    rd.number(ekey, stop);
    rd.integer(ckey, count);
    if (rd.issues.size() != before) return;
    if (count < 1) {
        rd.issue(ckey, fmt::format("{}count must be at least 1", prefix));
        return;
    }
    if (count > 1 && !(stop > start)) {
        rd.issue(ekey, fmt::format("{}stop must exceed {}start", prefix, prefix));
        return;
    }
    values = linear_grid(start, stop, static_cast<int>(count));
}

void check_axis_values(Reader& rd, const std::string& prefix, SweepAxis axis, const std::vector<double>& values) {
    const std::string key = "sweep." + prefix + (rd.has("sweep." + prefix + "values") ? "values" : "start");
    if (values.empty()) {
        rd.issue(key, fmt::format("{}values must not be empty", prefix));
        return;
    }
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1])) {
            rd.issue(key, fmt::format("{}values must be strictly increasing ({} follows {})", prefix, values[i],
                                      values[i - 1]));
            break;
        }
    for (double v : values) {
        std::string bad;
        switch (axis) {
        case SweepAxis::gamma:
            if (!(v > 0.0)) bad = "bandwidth gamma must be positive";
            break;
        case SweepAxis::Gamma:
            if (v < 0.0) bad = "coupling Gamma must be non-negative";
            break;
        case SweepAxis::T:
            if (v < 0.0) bad = "temperature T must be non-negative";
            break;
        case SweepAxis::r:
            if (v < 0.0) bad = "squeeze strength r must be non-negative";
            break;
        case SweepAxis::theta: break;
        }
        if (!bad.empty()) {
            rd.issue(key, fmt::format("{} (sweep value {})", bad, v));
            break;
        }
    }
}

} // namespace

std::string_view to_string(OutputFormat f) {
    switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::CsvJson: return "csv+json";
    }
    return "csv";
}

std::string_view to_string(SweepAxis a) {
    switch (a) {
    case SweepAxis::Gamma: return "Gamma";
    case SweepAxis::T: return "T";
    case SweepAxis::gamma: return "gamma";
    case SweepAxis::r: return "r";
    case SweepAxis::theta: return "theta";
    }
    return "Gamma";
}

std::optional<SweepAxis> sweep_axis_from_string(std::string_view name) {
    for (auto a : {SweepAxis::Gamma, SweepAxis::T, SweepAxis::gamma, SweepAxis::r, SweepAxis::theta})
        if (to_string(a) == name) return a;
    return std::nullopt;
}

void apply_axis(RunConfig& cfg, SweepAxis axis, double value) {
    switch (axis) {
    case SweepAxis::Gamma: cfg.bath.coupling = value; break;
    case SweepAxis::T: cfg.bath.temperature = value; break;
    case SweepAxis::gamma: cfg.bath.bandwidth = value; break;
    case SweepAxis::r:
    case SweepAxis::theta:
        if (!cfg.squeeze) throw std::invalid_argument("squeeze axis needs a [squeeze] section");
        (axis == SweepAxis::r ? cfg.squeeze->r : cfg.squeeze->theta) = value;
        break;
    }
}

std::vector<double> linear_grid(double start, double stop, int count) {
    if (count < 1) throw std::invalid_argument("grid count must be at least 1");
    if (count == 1) return {start};
    std::vector<double> out(static_cast<std::size_t>(count));
    const double step = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i) out[i] = start + step * i;
    out.back() = stop;
    return out;
}

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error([&] {
          std::string s = "invalid configuration:";
          for (const auto& i : issues)
              s += i.line > 0 ? fmt::format("\n  line {}: {}", i.line, i.message) : fmt::format("\n  {}", i.message);
          return s;
      }()),
      issues_(std::move(issues)) {}

DensityMatrix RunConfig::initial_density() const {
    if (initial_state == "ground") return DensityMatrix::ground(system.n_qubits);
    if (initial_state == "mixed") return DensityMatrix::maximally_mixed(system.n_qubits);
    return DensityMatrix::basis_state(initial_state);
}

PropagationRequest RunConfig::request() const {
    PropagationRequest r;
    r.initial = initial_density();
    r.system = system;
    r.bath = bath;
    r.squeeze = squeeze;
    r.integrator = integrator;
    r.regime = regime;
    return r;
}

ConfigDocument parse_config(std::string_view text) {
    Reader rd;
    std::string section;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view raw = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                rd.issues.push_back({line_no, fmt::format("malformed section header '{}'", line)});
                section.clear();
                continue;
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!known_keys().contains(section)) {
                rd.issues.push_back({line_no, fmt::format("unknown section [{}]", section)});
                section.clear();
                continue;
            }
            if (!rd.sections.insert(section).second)
                rd.issues.push_back({line_no, fmt::format("duplicate section [{}]", section)});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            rd.issues.push_back({line_no, fmt::format("expected 'key = value', got '{}'", line)});
            continue;
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (section.empty()) {
            rd.issues.push_back({line_no, fmt::format("key '{}' appears outside a known section", key)});
            continue;
        }
        if (!known_keys().at(section).contains(key)) {
            rd.issues.push_back({line_no, fmt::format("unknown key '{}' in [{}]", key, section)});
            continue;
        }
        const std::string full = section + "." + key;
        if (rd.has(full)) {
            rd.issues.push_back(
                {line_no, fmt::format("duplicate key '{}' (first set on line {})", key, rd.line_of(full))});
            continue;
        }
        rd.entries.emplace(full, Entry{std::string(value), line_no});
    }

    RunConfig cfg;
    // [system]
    rd.integer("system.n_qubits", cfg.system.n_qubits);
    if (rd.has("system.omegas")) {
        rd.list("system.omegas", cfg.system.omegas);
        if (cfg.system.omegas.size() == 1 && cfg.system.n_qubits > 1)
            cfg.system.omegas.assign(static_cast<std::size_t>(cfg.system.n_qubits), cfg.system.omegas.front());
    } else if (cfg.system.n_qubits >= 1 && cfg.system.n_qubits <= kMaxQubits) {
        cfg.system.omegas.assign(static_cast<std::size_t>(cfg.system.n_qubits), 1.0);
    }
    rd.word("system.channel", [&](const std::string& s) { cfg.system.channel = channel_from_string(s); });
    rd.word("system.regime", [&](const std::string& s) { cfg.regime = regime_from_string(s); });
    rd.text("system.initial_state", cfg.initial_state);

    // [bath]
    rd.number("bath.Gamma", cfg.bath.coupling);
    rd.number("bath.gamma", cfg.bath.bandwidth);
    rd.number("bath.T", cfg.bath.temperature);
    rd.number("bath.omega0", cfg.bath.omega0);

    // [squeeze]
    if (rd.sections.contains("squeeze")) {
        cfg.squeeze = SqueezeParams{};
        rd.number("squeeze.r", cfg.squeeze->r);
        rd.number("squeeze.theta", cfg.squeeze->theta);
    }

    // [integrator]
    rd.number("integrator.dt", cfg.integrator.dt);
    rd.number("integrator.t_max", cfg.integrator.t_max);
    rd.integer("integrator.sample_every", cfg.integrator.sample_every);
    rd.word("integrator.scheme", [&](const std::string& s) {
        if (s != "rk4") throw std::invalid_argument(fmt::format("unsupported scheme '{}' (only rk4)", s));
        cfg.integrator.scheme = Scheme::RK4;
    });
    rd.word("integrator.stability",
            [&](const std::string& s) { cfg.integrator.stability = stability_policy_from_string(s); });
    rd.number("integrator.stability_limit", cfg.integrator.stability_limit);
    rd.number("integrator.steady_tol", cfg.steady.tolerance);
    rd.number("integrator.steady_window", cfg.steady.window);
    rd.number("integrator.steady_floor", cfg.steady.floor);

    // [output]
    rd.text("output.path", cfg.output.path);
    rd.word("output.format", [&](const std::string& s) { cfg.output.format = output_format_from_string(s); });

    // Invariants.
    const auto& sys = cfg.system;
    if (sys.n_qubits < 1) rd.issue("system.n_qubits", "n_qubits must be at least 1");
    else if (sys.n_qubits > kMaxQubits)
        rd.issue("system.n_qubits", fmt::format("n_qubits = {} exceeds the dense limit of {}", sys.n_qubits, kMaxQubits));
    else if (static_cast<int>(sys.omegas.size()) != sys.n_qubits)
        rd.issue("system.omegas",
                 fmt::format("omegas lists {} frequencies for {} qubits", sys.omegas.size(), sys.n_qubits));
    if (std::string why; sys.n_qubits >= 1 && !valid_initial_state(cfg.initial_state, sys.n_qubits, why))
        rd.issue("system.initial_state", why);

    if (!(cfg.bath.bandwidth > 0.0))
        rd.issue("bath.gamma", fmt::format("bandwidth gamma must be positive (got {})", cfg.bath.bandwidth));
    if (cfg.bath.coupling < 0.0)
        rd.issue("bath.Gamma", fmt::format("coupling Gamma must be non-negative (got {})", cfg.bath.coupling));
    if (cfg.bath.temperature < 0.0)
        rd.issue("bath.T", fmt::format("temperature T must be non-negative (got {})", cfg.bath.temperature));

    if (cfg.squeeze) {
        if (cfg.squeeze->r < 0.0)
            rd.issue("squeeze.r", fmt::format("squeeze strength r must be non-negative (got {})", cfg.squeeze->r));
        if (cfg.regime == Regime::Markovian)
            rd.issue("system.regime", "a [squeeze] section is only allowed with regime = nonmarkovian");
    }

    const auto& ic = cfg.integrator;
    if (!(ic.dt > 0.0)) rd.issue("integrator.dt", "dt must be positive");
    if (!(ic.t_max > 0.0)) rd.issue("integrator.t_max", "t_max must be positive");
    if (ic.sample_every < 1) rd.issue("integrator.sample_every", "sample_every must be a positive integer");
    if (!(ic.stability_limit > 0.0)) rd.issue("integrator.stability_limit", "stability_limit must be positive");
    if (!(cfg.steady.tolerance >= 0.0)) rd.issue("integrator.steady_tol", "steady_tol must be non-negative");
    if (!(cfg.steady.window > 0.0)) rd.issue("integrator.steady_window", "steady_window must be positive");
    else if (ic.t_max < 2.0 * cfg.steady.window)
        rd.issue("integrator.t_max", fmt::format("t_max = {} is shorter than twice the steady-state window ({})",
                                                 ic.t_max, cfg.steady.window));
    if (!(cfg.steady.floor > 0.0)) rd.issue("integrator.steady_floor", "steady_floor must be positive");

    if (!rd.sections.contains("sweep")) {
        if (!rd.issues.empty()) throw ConfigError(std::move(rd.issues));
        return cfg;
    }

    SweepSpec spec;
    if (!rd.has("sweep.axis")) {
        rd.issues.push_back({0, "[sweep] requires 'axis' (Gamma, T, gamma, r or theta)"});
    } else if (auto a = sweep_axis_from_string(trim(rd.entries.at("sweep.axis").value))) {
        spec.axis = *a;
        read_axis_values(rd, "", spec.values);
        check_axis_values(rd, "", spec.axis, spec.values);
        if ((spec.axis == SweepAxis::r || spec.axis == SweepAxis::theta) && !cfg.squeeze)
            rd.issue("sweep.axis", fmt::format("sweeping '{}' needs a [squeeze] section", to_string(spec.axis)));
    } else {
        rd.issue("sweep.axis", fmt::format("unknown sweep axis '{}' (Gamma, T, gamma, r, theta)",
                                           rd.entries.at("sweep.axis").value));
    }

    if (rd.has("sweep.outer_axis")) {
        if (auto a = sweep_axis_from_string(trim(rd.entries.at("sweep.outer_axis").value))) {
            spec.outer_axis = *a;
            read_axis_values(rd, "outer_", spec.outer_values);
            check_axis_values(rd, "outer_", *a, spec.outer_values);
            if (*a == spec.axis) rd.issue("sweep.outer_axis", "outer_axis must differ from axis");
            if ((*a == SweepAxis::r || *a == SweepAxis::theta) && !cfg.squeeze)
                rd.issue("sweep.outer_axis", fmt::format("sweeping '{}' needs a [squeeze] section", to_string(*a)));
        } else {
            rd.issue("sweep.outer_axis", fmt::format("unknown sweep axis '{}'", rd.entries.at("sweep.outer_axis").value));
        }
    } else {
        for (auto k : {"sweep.outer_values", "sweep.outer_start", "sweep.outer_stop", "sweep.outer_count"})
            if (rd.has(k)) rd.issue(k, fmt::format("'{}' needs outer_axis", std::string_view(k).substr(6)));
    }

    if (!rd.issues.empty()) throw ConfigError(std::move(rd.issues));
    spec.base = std::move(cfg);
    return spec;
}

std::string emit_config(const RunConfig& cfg) {
    std::string s;
    s += "[system]\n";
    s += fmt::format("n_qubits = {}\n", cfg.system.n_qubits);
    s += fmt::format("omegas = {}\n", format_list(cfg.system.omegas));
    s += fmt::format("channel = {}\n", to_string(cfg.system.channel));
    s += fmt::format("regime = {}\n", to_string(cfg.regime));
    s += fmt::format("initial_state = {}\n", cfg.initial_state);
    s += "\n[bath]\n";
    s += fmt::format("Gamma = {}\n", format_number(cfg.bath.coupling));
    s += fmt::format("gamma = {}\n", format_number(cfg.bath.bandwidth));
    s += fmt::format("T = {}\n", format_number(cfg.bath.temperature));
    s += fmt::format("omega0 = {}\n", format_number(cfg.bath.omega0));
    if (cfg.squeeze) {
        s += "\n[squeeze]\n";
        s += fmt::format("r = {}\n", format_number(cfg.squeeze->r));
        s += fmt::format("theta = {}\n", format_number(cfg.squeeze->theta));
    }
    s += "\n[integrator]\n";
    s += fmt::format("dt = {}\n", format_number(cfg.integrator.dt));
    s += fmt::format("t_max = {}\n", format_number(cfg.integrator.t_max));
    s += fmt::format("sample_every = {}\n", cfg.integrator.sample_every);
    s += "scheme = rk4\n";
    s += fmt::format("stability = {}\n", to_string(cfg.integrator.stability));
    s += fmt::format("stability_limit = {}\n", format_number(cfg.integrator.stability_limit));
    s += fmt::format("steady_tol = {}\n", format_number(cfg.steady.tolerance));
    s += fmt::format("steady_window = {}\n", format_number(cfg.steady.window));
    s += fmt::format("steady_floor = {}\n", format_number(cfg.steady.floor));
    if (!cfg.output.path.empty() || cfg.output.format != OutputFormat::Csv) {
        s += "\n[output]\n";
        if (!cfg.output.path.empty()) s += fmt::format("path = {}\n", cfg.output.path);
        s += fmt::format("format = {}\n", to_string(cfg.output.format));
    }
    return s;
}

std::string emit_config(const SweepSpec& spec) {
    std::string s = emit_config(spec.base);
    s += "\n[sweep]\n";
    s += fmt::format("axis = {}\n", to_string(spec.axis));
    s += fmt::format("values = {}\n", format_list(spec.values));
    if (spec.outer_axis) {
        s += fmt::format("outer_axis = {}\n", to_string(*spec.outer_axis));
        s += fmt::format("outer_values = {}\n", format_list(spec.outer_values));
    }
    return s;
}

std::string emit_config(const ConfigDocument& doc) {
    return std::visit([](const auto& d) { return emit_config(d); }, doc);
}

} // namespace ssqc
