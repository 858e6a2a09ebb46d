#include "ssqc/presets.hpp"

#include <array>
#include <utility>

namespace ssqc {

namespace {

constexpr std::string_view kFig1a = R"(# SSQC versus coupling Gamma at T = 15, gamma = 5.
[system]
n_qubits = 2
omegas = 1, 1
channel = sigma_x
regime = nonmarkovian
initial_state = ground

[bath]
Gamma = 0.05
gamma = 5
T = 15
omega0 = 1

[integrator]
dt = 0.01
t_max = 200
sample_every = 10
stability = refine

[sweep]
axis = Gamma
start = 0.005
stop = 0.3
count = 21

[output]
path = fig1a.csv
)";

constexpr std::string_view kFig1b = R"(# SSQC versus temperature T at Gamma = 0.05, gamma = 5.
[system]
n_qubits = 2
omegas = 1, 1
channel = sigma_x
regime = nonmarkovian
initial_state = ground

[bath]
Gamma = 0.05
gamma = 5
T = 15
omega0 = 1

[integrator]
dt = 0.01
t_max = 200
sample_every = 10
stability = refine

[sweep]
axis = T
start = 1
stop = 40
count = 21

[output]
path = fig1b.csv
)";

constexpr std::string_view kFig1c = R"(# SSQC versus bandwidth gamma at Gamma = 0.05, T = 15.
[system]
n_qubits = 2
omegas = 1, 1
channel = sigma_x
regime = nonmarkovian
initial_state = ground

[bath]
Gamma = 0.05
gamma = 5
T = 15
omega0 = 1

[integrator]
dt = 0.01
t_max = 200
sample_every = 10
stability = refine

[sweep]
axis = gamma
start = 0.5
stop = 20
count = 21

[output]
path = fig1c.csv
)";

constexpr std::string_view kFig2 = R"(# SSQC over the squeeze plane (r, theta) at gamma = 3, Gamma = 0.04, T = 8.
# 21 x 21 grid; theta varies fastest.
[system]
n_qubits = 2
omegas = 1, 1
channel = sigma_x
regime = nonmarkovian
initial_state = ground

[bath]
Gamma = 0.04
gamma = 3
T = 8
omega0 = 1

[squeeze]
r = 0
theta = 0

[integrator]
dt = 0.01
t_max = 200
sample_every = 10
stability = refine

[sweep]
axis = theta
start = 0
stop = pi
count = 21
outer_axis = r
outer_start = 0
outer_stop = 1
outer_count = 21

[output]
path = fig2.csv
)";

constexpr std::string_view kFig3a = R"(# Squeezed bath: SSQC versus Gamma at T = 6, r = 0.4, theta = pi/2.
# Remove the [squeeze] section for the vacuum-bath comparison curve.
[system]
n_qubits = 2
omegas = 0.5, 0.5
channel = sigma_x
regime = nonmarkovian
initial_state = ground

[bath]
Gamma = 0.04
gamma = 3
T = 6
omega0 = 0.5

[squeeze]
r = 0.4
theta = pi/2

[integrator]
dt = 0.01
t_max = 200
sample_every = 10
stability = refine

[sweep]
axis = Gamma
start = 0.005
stop = 0.3
count = 21

[output]
path = fig3a.csv
)";

constexpr std::string_view kFig3b = R"(# Squeezed bath: SSQC versus T at Gamma = 0.04, r = 0.4, theta = pi/2.
# Remove the [squeeze] section for the vacuum-bath comparison curve.
[system]
n_qubits = 2
omegas = 0.5, 0.5
channel = sigma_x
regime = nonmarkovian
initial_state = ground

[bath]
Gamma = 0.04
gamma = 3
T = 6
omega0 = 0.5

[squeeze]
r = 0.4
theta = pi/2

[integrator]
dt = 0.01
t_max = 200
sample_every = 10
stability = refine

[sweep]
axis = T
start = 1
stop = 40
count = 21

[output]
path = fig3b.csv
)";

constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kPresets{{
    {"fig1a", kFig1a},
    {"fig1b", kFig1b},
    {"fig1c", kFig1c},
    {"fig2", kFig2},
    {"fig3a", kFig3a},
    {"fig3b", kFig3b},
}};

} // namespace

std::vector<std::string_view> preset_names() {
    std::vector<std::string_view> out;
    for (const auto& [name, _] : kPresets) out.push_back(name);
    return out;
}

std::optional<std::string_view> preset_text(std::string_view name) {
    for (const auto& [n, text] : kPresets)
        if (n == name) return text;
    return std::nullopt;
}

} // namespace ssqc
