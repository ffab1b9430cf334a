#pragma once

// Dense numerical substrate shared by every engine: validated density
// matrices and pure states, Hermitian spectra, entropies in bits, and partial
// traces over qubits.
//
// Basis convention: a computational-basis index is the big-endian bit string
// of the qubit values, so qubit 0 is the most significant bit.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qcd {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kNorm = 1e-12;
// Eigenvalues in (-kNegativeEigenvalue, 0) are rounding noise and are clipped
// to zero; anything more negative marks an invalid state.
inline constexpr double kNegativeEigenvalue = 1e-10;
// Eigenvalues of sigma below this are treated as outside its support.
inline constexpr double kSupport = 1e-12;
}  // namespace tol

/// Number of qubits n with dim == 2^n; throws ShapeError otherwise.
int qubit_count(Eigen::Index dim);

class PureState {
public:
    /// Throws InvalidStateError unless the squared norm is 1 within tol::kNorm.
    explicit PureState(Vector amplitudes);

    static PureState basis(Eigen::Index dim, Eigen::Index index);
    static PureState uniform(Eigen::Index dim);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const Vector& amplitudes() const { return amplitudes_; }
    cplx operator[](Eigen::Index i) const { return amplitudes_(i); }

private:
    Vector amplitudes_;
};

/// Hermitian, unit-trace complex matrix. Positivity is checked wherever a
/// spectrum is taken, since it needs an eigendecomposition.
class DensityMatrix {
public:
    /// Throws InvalidStateError if the matrix is not square, not Hermitian or
    /// not unit trace.
    explicit DensityMatrix(Matrix m);

    static DensityMatrix from_pure(const PureState& psi);
    static DensityMatrix maximally_mixed(Eigen::Index dim);
    static DensityMatrix diagonal(std::span<const double> populations);

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    /// Off-diagonal entries removed.
    DensityMatrix dephased() const;

private:
    Matrix m_;
};

struct HermitianSpectrum {
    RealVector values;  // ascending
    Matrix vectors;     // columns are eigenvectors
};

HermitianSpectrum eigh(const Matrix& h);

/// Eigenvalues of rho (ascending) with rounding-level negatives clipped to 0.
/// Throws InvalidStateError on an eigenvalue below -tol::kNegativeEigenvalue.
RealVector density_spectrum(const DensityMatrix& rho);

/// Shannon entropy in bits of a probability vector, with 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);

/// H(x) = -x log2 x - (1-x) log2(1-x). Throws DomainError outside [0,1].
double binary_entropy(double x);

/// -Tr rho log2 rho, in [0, log2 dim].
double von_neumann_entropy(const DensityMatrix& rho);

/// Tr rho (log2 rho - log2 sigma); +infinity when supp(rho) is not contained
/// in supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Reduced state on the qubits in `keep` (nonempty, strictly increasing).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Reduced state of a pure n-qubit state vector, without forming the full
/// projector.
DensityMatrix reduced_from_pure(const PureState& psi, std::span<const int> keep);

Matrix kron(const Matrix& a, const Matrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Pauli matrices indexed 0 -> x, 1 -> y, 2 -> z.
const Matrix& pauli(int axis);

}  // namespace qcd
