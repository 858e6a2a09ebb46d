#include "ssqc/quantum_core.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ssqc {

std::string_view to_string(Channel c) {
    switch (c) {
    case Channel::SigmaX: return "sigma_x";
    case Channel::SigmaZ: return "sigma_z";
    case Channel::SigmaMinus: return "sigma_minus";
    }
    return "unknown";
}

Channel channel_from_string(std::string_view name) {
    if (name == "sigma_x" || name == "x") return Channel::SigmaX;
    if (name == "sigma_z" || name == "z") return Channel::SigmaZ;
    if (name == "sigma_minus" || name == "minus") return Channel::SigmaMinus;
    throw std::invalid_argument(fmt::format("unknown channel '{}'", name));
}

void SystemSpec::validate(int max_qubits) const {
    if (n_qubits < 1)
        throw std::invalid_argument("n_qubits must be at least 1");
    if (n_qubits > max_qubits)
        throw DimensionError(fmt::format("n_qubits = {} exceeds the dense limit of {}", n_qubits,
                                         max_qubits));
    if (static_cast<int>(omegas.size()) != n_qubits)
        throw std::invalid_argument(fmt::format("expected {} qubit frequencies, got {}", n_qubits,
                                                omegas.size()));
    for (double w : omegas)
        if (!std::isfinite(w)) throw std::invalid_argument("qubit frequencies must be finite");
}

double SystemSpec::max_abs_omega() const {
    double m = 0.0;
    for (double w : omegas) m = std::max(m, std::abs(w));
    return m;
}

namespace pauli {

Operator x() {
    Operator m = Operator::Zero(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

Operator y() {
    Operator m = Operator::Zero(2, 2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

Operator z() {
    Operator m = Operator::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

Operator minus() {
    Operator m = Operator::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

Operator identity() { return Operator::Identity(2, 2); }

} // namespace pauli

Operator embed(const Operator& single, int slot, int n_qubits) {
    if (slot < 0 || slot >= n_qubits)
        throw std::out_of_range(fmt::format("qubit slot {} outside [0, {})", slot, n_qubits));
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    const int shift = n_qubits - 1 - slot;
    const Eigen::Index mask = Eigen::Index{1} << shift;
    Operator out = Operator::Zero(dim, dim);
    // Kronecker structure: entries differ only in the bit belonging to `slot`.
    for (Eigen::Index row = 0; row < dim; ++row) {
        const Eigen::Index rbit = (row & mask) >> shift;
        for (Eigen::Index cbit = 0; cbit < 2; ++cbit) {
            const cplx v = single(rbit, cbit);
            if (v == cplx{}) continue;
            const Eigen::Index col = (row & ~mask) | (cbit << shift);
            out(row, col) = v;
        }
    }
    return out;
}

Operator build_hamiltonian(const SystemSpec& spec) {
    spec.validate();
    const auto dim = static_cast<Eigen::Index>(spec.dim());
    Operator h = Operator::Zero(dim, dim);
    const Operator sz = pauli::z();
    for (int i = 0; i < spec.n_qubits; ++i) h += spec.omegas[i] * embed(sz, i, spec.n_qubits);
    return h;
}

Operator build_lindblad(const SystemSpec& spec) {
    spec.validate();
    const auto dim = static_cast<Eigen::Index>(spec.dim());
    Operator single;
    switch (spec.channel) {
    case Channel::SigmaX: single = pauli::x(); break;
    case Channel::SigmaZ: single = pauli::z(); break;
    case Channel::SigmaMinus: single = pauli::minus(); break;
    }
    Operator l = Operator::Zero(dim, dim);
    for (int i = 0; i < spec.n_qubits; ++i) l += embed(single, i, spec.n_qubits);
    return l;
}

double l1_coherence(const Operator& rho) {
    double c = 0.0;
    for (Eigen::Index j = 0; j < rho.cols(); ++j)
        for (Eigen::Index i = 0; i < rho.rows(); ++i)
            if (i != j) c += std::abs(rho(i, j));
    return c;
}

double hermiticity_error(const Operator& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double trace_error(const Operator& m) { return std::abs(m.trace() - cplx(1.0, 0.0)); }

void symmetrize_and_normalize(Operator& rho) {
    Operator sym = 0.5 * (rho + rho.adjoint());
    const double tr = sym.trace().real();
    rho = sym / tr;
}

DensityMatrix::DensityMatrix(Operator m, const DensityTolerance& tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
        throw DimensionError("density matrix must be square and non-empty");
    const Eigen::Index d = m_.rows();
    if ((d & (d - 1)) != 0)
        throw DimensionError(fmt::format("density matrix dimension {} is not a power of two", d));
    if (!m_.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
    if (double h = hermiticity_error(m_); h > tol.hermiticity)
        throw std::invalid_argument(fmt::format("density matrix not Hermitian (max |rho - rho^+| = {:.3g})", h));
    if (double t = trace_error(m_); t > tol.trace)
        throw std::invalid_argument(fmt::format("density matrix trace deviates from 1 by {:.3g}", t));
    for (Eigen::Index i = 0; i < d; ++i)
        if (m_(i, i).real() < -tol.negativity)
            throw std::invalid_argument(
                fmt::format("negative population {:.3g} at index {}", m_(i, i).real(), i));
}

DensityMatrix DensityMatrix::basis_state(std::string_view bits) {
    if (bits.empty() || static_cast<int>(bits.size()) > kMaxQubits)
        throw std::invalid_argument(fmt::format("basis string must have 1..{} characters", kMaxQubits));
    Eigen::Index index = 0;
    for (char ch : bits) {
        index <<= 1;
        if (ch == 'g' || ch == '1') index |= 1;
        else if (ch != 'e' && ch != '0')
            throw std::invalid_argument(fmt::format("invalid basis character '{}' in '{}'", ch, bits));
    }
    const Eigen::Index dim = Eigen::Index{1} << bits.size();
    Operator m = Operator::Zero(dim, dim);
    m(index, index) = 1.0;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::ground(int n_qubits) {
    return basis_state(std::string(static_cast<std::size_t>(std::max(n_qubits, 0)), 'g'));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw DimensionError(fmt::format("n_qubits = {} outside [1, {}]", n_qubits, kMaxQubits));
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    return DensityMatrix(Operator::Identity(dim, dim) / static_cast<double>(dim));
}

} // namespace ssqc
