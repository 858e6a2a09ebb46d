// quantum_core.hpp: Dense operator algebra for an N-qubit register

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ssqc {

using Operator = Eigen::MatrixXcd;
using cplx = std::complex<double>;

// Largest register the dense backend accepts.
inline constexpr int kMaxQubits = 12;

enum class Channel { SigmaX, SigmaZ, SigmaMinus };

std::string_view to_string(Channel c);
Channel channel_from_string(std::string_view name);

// Qubit register description. Basis ordering is big-endian: qubit 1 is the
// most significant bit and |e> is index 0 of each factor, so sigma_z|e> = +|e>.
struct SystemSpec {
    int n_qubits{2};
    std::vector<double> omegas{1.0, 1.0};
    Channel channel{Channel::SigmaX};

    void validate(int max_qubits = kMaxQubits) const;
    std::size_t dim() const { return std::size_t{1} << n_qubits; }
    double max_abs_omega() const;

    bool operator==(const SystemSpec&) const = default;
};

// Single-qubit operators in the {|e>, |g>} basis.
namespace pauli {
Operator x();
Operator y();
Operator z();
Operator minus(); // |g><e|
Operator identity();
} // namespace pauli

// Embed a single-qubit operator at `slot` (0-based, 0 = most significant).
Operator embed(const Operator& single, int slot, int n_qubits);

Operator build_hamiltonian(const SystemSpec& spec);
Operator build_lindblad(const SystemSpec& spec);

// Sum of |rho_ij| over i != j.
double l1_coherence(const Operator& rho);

struct DensityTolerance {
    double hermiticity{1e-10};
    double trace{1e-8};
    double negativity{1e-8};
};

// Trace-one Hermitian state. Construction validates the invariants; the raw
// matrix is reachable for arithmetic through matrix().
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(Operator m, const DensityTolerance& tol = {});

    // |bits> with bits over {'e','g'} (or '0' = e, '1' = g).
    static DensityMatrix basis_state(std::string_view bits);
    static DensityMatrix ground(int n_qubits);
    static DensityMatrix maximally_mixed(int n_qubits);

    const Operator& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    double coherence() const { return l1_coherence(m_); }
    cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

private:
    Operator m_;
};

double hermiticity_error(const Operator& m);
double trace_error(const Operator& m);

// rho <- (rho + rho^dagger)/2 followed by rho <- rho / Tr rho.
void symmetrize_and_normalize(Operator& rho);

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace ssqc
