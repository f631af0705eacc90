#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

#include "varbounds/errors.hpp"

namespace varbounds {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest dimension the dense routines are tuned for.
inline constexpr int kMaxDim = 32;

double max_abs(const CMatrix& m);

/// True when ||m - m^dagger||_max <= 1e-12 * ||m||_max.
bool is_hermitian(const CMatrix& m);

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what);

/// A set of d orthonormal column vectors.
class OrthonormalBasis {
public:
    /// Validates the Gram matrix against the identity (1e-10).
    explicit OrthonormalBasis(CMatrix columns);

    static OrthonormalBasis standard(int dim);
    /// Skips the Gram check; for columns orthonormal by construction.
    static OrthonormalBasis unchecked(CMatrix columns);

    int dim() const { return static_cast<int>(columns_.cols()); }
    const CMatrix& columns() const { return columns_; }
    CVector column(int n) const { return columns_.col(n); }

private:
    struct Unchecked {};
    OrthonormalBasis(CMatrix columns, Unchecked) : columns_(std::move(columns)) {}

    CMatrix columns_;
};

struct EigenDecomposition {
    RVector values;  // ascending
    OrthonormalBasis vectors;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Eigenvalues come back ascending. Each eigenvector is rotated so that its
/// largest-magnitude component (first one on ties) is real and positive, and
/// vectors inside a cluster of eigenvalues closer than 1e-9 are re-orthonormalized
/// by Gram-Schmidt in index order. Output is a pure function of the input bits.
EigenDecomposition eigh(const CMatrix& m);

/// Hermitian operator together with its spectral decomposition.
class Observable {
public:
    explicit Observable(CMatrix matrix);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const CMatrix& matrix() const { return matrix_; }
    const RVector& eigenvalues() const { return spectrum_.values; }
    const OrthonormalBasis& eigenvectors() const { return spectrum_.vectors; }

private:
    CMatrix matrix_;
    EigenDecomposition spectrum_;
};

enum class StateKind { Pure, Mixed };

class QuantumState {
public:
    /// Unit vector, norm within 1e-12 of one.
    static QuantumState pure(CVector psi);
    /// Normalizes a nonzero vector first.
    static QuantumState pure_normalized(const CVector& v);
    /// Hermitian, unit trace (1e-12), eigenvalues >= -1e-10.
    static QuantumState mixed(CMatrix rho);

    StateKind kind() const { return kind_; }
    bool is_pure() const { return kind_ == StateKind::Pure; }
    int dim() const { return static_cast<int>(rho_.rows()); }

    /// Throws MixedStateUnsupported for mixed states.
    const CVector& vector() const;
    const CMatrix& density() const { return rho_; }

    /// <x|rho|x>, i.e. |<psi|x>|^2 for pure states.
    double fidelity(const CVector& x) const;

private:
    QuantumState(StateKind kind, CVector psi, CMatrix rho)
        : kind_(kind), psi_(std::move(psi)), rho_(std::move(rho)) {}

    StateKind kind_;
    CVector psi_;
    CMatrix rho_;
};

struct SpinOperators {
    Observable x, y, z;
};

/// Spin-1 angular momentum in the L_z basis (|1>, |0>, |-1>).
SpinOperators spin1_operators();

/// Pauli matrices sigma_x, sigma_y, sigma_z.
SpinOperators pauli_operators();

/// rho = (I + r . sigma) / 2; the state is flagged pure when |r| >= 1 - 1e-10.
QuantumState qubit_state_from_bloch(const std::array<double, 3>& r);

}  // namespace varbounds
