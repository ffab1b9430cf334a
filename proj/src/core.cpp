#include "qcd/core.hpp"

#include "qcd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace qcd {

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

struct SplitIndex {
    std::vector<Eigen::Index> kept;    // global offset of each kept-local index
    std::vector<Eigen::Index> traced;  // global offset of each traced-local index
};

// Splits the big-endian global index into kept and traced bit groups.
SplitIndex split_index(int n, std::span<const int> keep) {
    if (keep.empty()) throw IndexError("partial trace: keep set is empty");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= n)
            throw IndexError("partial trace: qubit " + std::to_string(keep[i]) +
                             " out of range for " + std::to_string(n) + " qubits");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw IndexError("partial trace: keep set must be strictly increasing");
    }
    std::vector<int> traced;
    for (int q = 0, p = 0; q < n; ++q) {
        if (p < static_cast<int>(keep.size()) && keep[p] == q)
            ++p;
        else
            traced.push_back(q);
    }

    auto offsets = [n](const std::vector<int>& qubits) {
        const std::size_t count = std::size_t{1} << qubits.size();
        std::vector<Eigen::Index> out(count, 0);
        for (std::size_t local = 0; local < count; ++local) {
            Eigen::Index g = 0;
            for (std::size_t b = 0; b < qubits.size(); ++b) {
                // bit b of `local` counted from its MSB belongs to qubits[b]
                const bool bit = (local >> (qubits.size() - 1 - b)) & 1U;
                if (bit) g |= Eigen::Index{1} << (n - 1 - qubits[b]);
            }
            out[local] = g;
        }
        return out;
    };
    return {offsets(std::vector<int>(keep.begin(), keep.end())), offsets(traced)};
}

}  // namespace

int qubit_count(Eigen::Index dim) {
    if (dim < 1 || (dim & (dim - 1)) != 0)
        throw ShapeError("dimension " + std::to_string(dim) + " is not a power of two");
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    return n;
}

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) throw InvalidStateError("pure state: empty amplitude vector");
    const double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol::kNorm)
        throw InvalidStateError("pure state: squared norm " + fmt_double(norm2) + " != 1");
}

PureState PureState::basis(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) throw IndexError("basis state index out of range");
    Vector v = Vector::Zero(dim);
    v(index) = 1.0;
    return PureState(std::move(v));
}

PureState PureState::uniform(Eigen::Index dim) {
    return PureState(Vector::Constant(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0)));
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
        throw InvalidStateError("density matrix must be square and nonempty");
    const Eigen::Index d = m_.rows();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i; j < d; ++j)
            worst = std::max(worst, std::abs(m_(i, j) - std::conj(m_(j, i))));
    if (worst > tol::kHermitian)
        throw InvalidStateError("density matrix not Hermitian (deviation " + fmt_double(worst) + ")");
    const cplx tr = m_.trace();
    if (std::abs(tr.real() - 1.0) > tol::kTrace || std::abs(tr.imag()) > tol::kTrace)
        throw InvalidStateError("density matrix trace " + fmt_double(tr.real()) + " != 1");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    const Vector& v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    Matrix m = Matrix::Identity(dim, dim) / static_cast<double>(dim);
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> populations) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(populations.size()),
                            static_cast<Eigen::Index>(populations.size()));
    for (std::size_t i = 0; i < populations.size(); ++i)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = populations[i];
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::dephased() const {
    Matrix d = Matrix::Zero(dim(), dim());
    d.diagonal() = m_.diagonal().real().cast<cplx>();
    return DensityMatrix(std::move(d));
}

HermitianSpectrum eigh(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw NumericalConsistencyError("Hermitian eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector density_spectrum(const DensityMatrix& rho) {
    RealVector values;
    if (rho.dim() == 1) {
        values = RealVector::Ones(1);
        return values;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalConsistencyError("Hermitian eigensolver failed to converge");
    values = solver.eigenvalues();
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values(i) < -tol::kNegativeEigenvalue)
            throw InvalidStateError("density matrix has eigenvalue " + fmt_double(values(i)));
        if (values(i) < 0.0) values(i) = 0.0;
    }
    return values;
}

double shannon_entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) h -= xlog2x(p);
    return std::max(h, 0.0);
}

double binary_entropy(double x) {
    if (!(x >= -1e-12 && x <= 1.0 + 1e-12))
        throw DomainError("binary entropy argument " + fmt_double(x) + " outside [0,1]");
    x = std::clamp(x, 0.0, 1.0);
    return std::max(-xlog2x(x) - xlog2x(1.0 - x), 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const RealVector spectrum = density_spectrum(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) s -= xlog2x(spectrum(i));
    return std::clamp(s, 0.0, std::log2(static_cast<double>(rho.dim())));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw ShapeError("relative entropy: dimensions " + std::to_string(rho.dim()) + " and " +
                         std::to_string(sigma.dim()) + " differ");
    const double neg_entropy = -von_neumann_entropy(rho);

    const HermitianSpectrum sig = eigh(sigma.matrix());
    double cross = 0.0;  // Tr rho log2 sigma
    for (Eigen::Index k = 0; k < sig.values.size(); ++k) {
        if (sig.values(k) < -tol::kNegativeEigenvalue)
            throw InvalidStateError("relative entropy: sigma has eigenvalue " + fmt_double(sig.values(k)));
        const auto w = sig.vectors.col(k);
        const double weight = (w.adjoint() * rho.matrix() * w)(0, 0).real();
        if (sig.values(k) <= tol::kSupport) {
            if (weight > tol::kSupport) return std::numeric_limits<double>::infinity();
            continue;
        }
        cross += weight * std::log2(sig.values(k));
    }
    return std::max(neg_entropy - cross, 0.0);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    const int n = qubit_count(rho.dim());
    const SplitIndex idx = split_index(n, keep);
    const auto dk = static_cast<Eigen::Index>(idx.kept.size());
    const Matrix& m = rho.matrix();
    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index x = 0; x < dk; ++x)
        for (Eigen::Index y = 0; y < dk; ++y) {
            cplx acc = 0.0;
            for (Eigen::Index t : idx.traced) acc += m(idx.kept[x] + t, idx.kept[y] + t);
            out(x, y) = acc;
        }
    return DensityMatrix(std::move(out));
}

DensityMatrix reduced_from_pure(const PureState& psi, std::span<const int> keep) {
    const int n = qubit_count(psi.dim());
    const SplitIndex idx = split_index(n, keep);
    const auto dk = static_cast<Eigen::Index>(idx.kept.size());
    const auto dt = static_cast<Eigen::Index>(idx.traced.size());
    Matrix block(dk, dt);
    for (Eigen::Index x = 0; x < dk; ++x)
        for (Eigen::Index t = 0; t < dt; ++t) block(x, t) = psi[idx.kept[x] + idx.traced[t]];
    Matrix out = block * block.adjoint();
    // enforce exact Hermiticity against accumulation-order rounding
    out = (0.5 * (out + out.adjoint())).eval();
    return DensityMatrix(std::move(out));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(kron(a.matrix(), b.matrix()));
}

const Matrix& pauli(int axis) {
    static const Matrix paulis[3] = {
        [] { Matrix m(2, 2); m << 0.0, 1.0, 1.0, 0.0; return m; }(),
        [] { Matrix m(2, 2); m << 0.0, cplx(0, -1), cplx(0, 1), 0.0; return m; }(),
        [] { Matrix m(2, 2); m << 1.0, 0.0, 0.0, -1.0; return m; }(),
    };
    if (axis < 0 || axis > 2) throw IndexError("Pauli axis must be 0, 1 or 2");
    return paulis[axis];
}

}  // namespace qcd
