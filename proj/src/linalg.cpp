#include "varbounds/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace varbounds {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::BlochNormExceeded: return "BlochNormExceeded";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::MixedStateUnsupported: return "MixedStateUnsupported";
        case ErrorCode::BadParameterCount: return "BadParameterCount";
        case ErrorCode::InternalConsistency: return "InternalConsistency";
        case ErrorCode::UnknownPreset: return "UnknownPreset";
        case ErrorCode::UnknownBoundId: return "UnknownBoundId";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m) {
    if (m.rows() != m.cols()) return false;
    const double scale = max_abs(m);
    const CMatrix diff = m - m.adjoint();
    return max_abs(diff) <= 1e-12 * scale;
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + " (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

namespace {

bool all_finite(const CMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

double off_diagonal_norm(const CMatrix& a) {
    double sum = 0.0;
    for (Eigen::Index q = 0; q < a.cols(); ++q)
        for (Eigen::Index p = 0; p < a.rows(); ++p)
            if (p != q) sum += std::norm(a(p, q));
    return std::sqrt(sum);
}

// One two-sided Jacobi rotation annihilating a(p, q). The rotation is the
// phase fix diag(1, e^{-i phi}) followed by the real symmetric Jacobi rotation.
void jacobi_rotate(CMatrix& a, CMatrix& w, Eigen::Index p, Eigen::Index q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    const Complex e = apq / r;
    const Complex ebar = std::conj(e);
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * r);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    // V = [[c, s], [-s ebar, c ebar]] on the (p, q) block.
    const Complex vqp = -s * ebar;
    const Complex vqq = c * ebar;
    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * c + akq * vqp;
        a(k, q) = akp * s + akq * vqq;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk + std::conj(vqp) * aqk;
        a(q, k) = s * apk + std::conj(vqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = app - t * r;
    a(q, q) = aqq + t * r;

    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex wkp = w(k, p);
        const Complex wkq = w(k, q);
        w(k, p) = wkp * c + wkq * vqp;
        w(k, q) = wkp * s + wkq * vqq;
    }
}

void gram_schmidt(CMatrix& v, Eigen::Index first, Eigen::Index last) {
    for (Eigen::Index j = first; j < last; ++j) {
        for (Eigen::Index k = first; k < j; ++k) {
            const Complex proj = v.col(k).dot(v.col(j));
            v.col(j) -= proj * v.col(k);
        }
        v.col(j) /= v.col(j).norm();
    }
}

void fix_phase(Eigen::Ref<CVector> v) {
    double largest = 0.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) largest = std::max(largest, std::abs(v[k]));
    if (largest == 0.0) return;
    Eigen::Index pivot = 0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v[k]) >= largest * (1.0 - 1e-12)) {
            pivot = k;
            break;
        }
    }
    const Complex phase = std::conj(v[pivot]) / std::abs(v[pivot]);
    v *= phase;
    v[pivot] = Complex(v[pivot].real(), 0.0);
}

}  // namespace

OrthonormalBasis::OrthonormalBasis(CMatrix columns) : columns_(std::move(columns)) {
    if (columns_.rows() != columns_.cols() || columns_.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "basis must be a nonempty square matrix");
    }
    const CMatrix gram = columns_.adjoint() * columns_;
    const CMatrix id = CMatrix::Identity(columns_.rows(), columns_.cols());
    if (max_abs(gram - id) > 1e-10) {
        throw Error(ErrorCode::InvalidArgument, "basis columns are not orthonormal");
    }
}

OrthonormalBasis OrthonormalBasis::standard(int dim) {
    return OrthonormalBasis(CMatrix::Identity(dim, dim), Unchecked{});
}

OrthonormalBasis OrthonormalBasis::unchecked(CMatrix columns) {
    return OrthonormalBasis(std::move(columns), Unchecked{});
}

EigenDecomposition eigh(const CMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorCode::NotHermitian, "matrix is not square");
    }
    if (!all_finite(m)) throw Error(ErrorCode::NotHermitian, "matrix has non-finite entries");
    if (!is_hermitian(m)) throw Error(ErrorCode::NotHermitian, "symmetry tolerance violated");

    const Eigen::Index n = m.rows();
    CMatrix a = 0.5 * (m + m.adjoint());
    CMatrix w = CMatrix::Identity(n, n);

    const double scale = a.norm();
    if (scale > 0.0) {
        for (int sweep = 0; sweep < 100; ++sweep) {
            if (off_diagonal_norm(a) < 1e-14 * scale) break;
            for (Eigen::Index p = 0; p < n - 1; ++p) {
                for (Eigen::Index q = p + 1; q < n; ++q) {
                    const double r = std::abs(a(p, q));
                    if (r == 0.0) continue;
                    const double g = 100.0 * r;
                    const double app = std::abs(a(p, p).real());
                    const double aqq = std::abs(a(q, q).real());
                    if (sweep > 3 && app + g == app && aqq + g == aqq) {
                        a(p, q) = 0.0;
                        a(q, p) = 0.0;
                        continue;
                    }
                    jacobi_rotate(a, w, p, q);
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() < a(j, j).real();
    });

    RVector values(n);
    CMatrix vectors(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        values[k] = a(order[k], order[k]).real();
        vectors.col(k) = w.col(order[k]);
    }

    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= n; ++k) {
        if (k == n || values[k] - values[k - 1] >= 1e-9) {
            if (k - start > 1) gram_schmidt(vectors, start, k);
            start = k;
        }
    }
    for (Eigen::Index k = 0; k < n; ++k) fix_phase(vectors.col(k));

    return EigenDecomposition{std::move(values), OrthonormalBasis::unchecked(std::move(vectors))};
}

Observable::Observable(CMatrix matrix)
    : matrix_(0.5 * (matrix + matrix.adjoint())), spectrum_(eigh(matrix)) {}

QuantumState QuantumState::pure(CVector psi) {
    if (psi.size() == 0) throw Error(ErrorCode::InvalidState, "empty state vector");
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        if (!std::isfinite(psi[i].real()) || !std::isfinite(psi[i].imag())) {
            throw Error(ErrorCode::InvalidState, "non-finite amplitude");
        }
    }
    if (std::abs(psi.norm() - 1.0) > 1e-12) {
        throw Error(ErrorCode::InvalidState, "pure state must have unit norm");
    }
    CMatrix rho = psi * psi.adjoint();
    return QuantumState(StateKind::Pure, std::move(psi), std::move(rho));
}

QuantumState QuantumState::pure_normalized(const CVector& v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw Error(ErrorCode::InvalidState, "cannot normalize a zero or non-finite vector");
    }
    return pure(v / norm);
}

QuantumState QuantumState::mixed(CMatrix rho) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw Error(ErrorCode::InvalidState, "density matrix must be square");
    }
    if (!all_finite(rho) || !is_hermitian(rho)) {
        throw Error(ErrorCode::InvalidState, "density matrix must be Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > 1e-12) {
        throw Error(ErrorCode::InvalidState, "density matrix must have unit trace");
    }
    CMatrix herm = 0.5 * (rho + rho.adjoint());
    if (eigh(herm).values[0] < -1e-10) {
        throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
    }
    return QuantumState(StateKind::Mixed, CVector(), std::move(herm));
}

const CVector& QuantumState::vector() const {
    if (!is_pure()) throw Error(ErrorCode::MixedStateUnsupported, "operation needs a pure state");
    return psi_;
}

double QuantumState::fidelity(const CVector& x) const {
    require_same_dim(x.size(), dim(), "fidelity vector");
    if (is_pure()) return std::norm(psi_.dot(x));
    return std::max(0.0, x.dot(rho_ * x).real());
}

SpinOperators spin1_operators() {
    const double h = 1.0 / std::sqrt(2.0);
    CMatrix lx = CMatrix::Zero(3, 3);
    lx(0, 1) = lx(1, 0) = lx(1, 2) = lx(2, 1) = h;
    CMatrix ly = CMatrix::Zero(3, 3);
    ly(0, 1) = -kI * h;
    ly(1, 0) = kI * h;
    ly(1, 2) = -kI * h;
    ly(2, 1) = kI * h;
    CMatrix lz = CMatrix::Zero(3, 3);
    lz(0, 0) = 1.0;
    lz(2, 2) = -1.0;
    return {Observable(lx), Observable(ly), Observable(lz)};
}

SpinOperators pauli_operators() {
    CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    sy << 0.0, -kI, kI, 0.0;
    sz << 1.0, 0.0, 0.0, -1.0;
    return {Observable(sx), Observable(sy), Observable(sz)};
}

QuantumState qubit_state_from_bloch(const std::array<double, 3>& r) {
    const double norm = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    if (!std::isfinite(norm) || norm > 1.0 + 1e-12) {
        throw Error(ErrorCode::BlochNormExceeded, "Bloch vector norm " + std::to_string(norm) + " exceeds 1");
    }
    CMatrix rho(2, 2);
    rho << 0.5 * (1.0 + r[2]), 0.5 * Complex(r[0], -r[1]),
           0.5 * Complex(r[0], r[1]), 0.5 * (1.0 - r[2]);
    if (norm >= 1.0 - 1e-10) {
        const auto spectrum = eigh(rho);
        return QuantumState::pure_normalized(spectrum.vectors.column(1));
    }
    return QuantumState::mixed(std::move(rho));
}

}  // namespace varbounds
