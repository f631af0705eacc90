#include "varbounds/moments.hpp"

#include <cmath>
#include <string>

namespace varbounds {

namespace {

void check_dims(const QuantumState& s, const CMatrix& a) {
    require_same_dim(a.rows(), s.dim(), "operator/state dimension");
    require_same_dim(a.cols(), s.dim(), "operator/state dimension");
}

Complex expect_complex(const QuantumState& s, const CMatrix& op) {
    if (s.is_pure()) return s.vector().dot(op * s.vector());
    return (s.density() * op).trace();
}

CMatrix centred(const QuantumState& s, const CMatrix& a) {
    const double mean = expectation(s, a);
    return a - mean * CMatrix::Identity(a.rows(), a.cols());
}

double clamp_variance(double v) {
    if (v < -1e-12) {
        throw Error(ErrorCode::InternalConsistency, "negative variance " + std::to_string(v));
    }
    return v < 0.0 ? 0.0 : v;
}

}  // namespace

double expectation(const QuantumState& s, const CMatrix& a) {
    check_dims(s, a);
    return expect_complex(s, a).real();
}

double expectation(const QuantumState& s, const Observable& a) { return expectation(s, a.matrix()); }

double variance(const QuantumState& s, const CMatrix& a) {
    check_dims(s, a);
    const CMatrix abar = centred(s, a);
    if (s.is_pure()) return (abar * s.vector()).squaredNorm();
    return clamp_variance(expect_complex(s, abar * abar).real());
}

double variance(const QuantumState& s, const Observable& a) { return variance(s, a.matrix()); }

double covariance(const QuantumState& s, const CMatrix& a, const CMatrix& b) {
    check_dims(s, a);
    check_dims(s, b);
    // Re <A-bar B-bar> equals 1/2 <{A,B}> - <A><B> exactly; the centred form
    // keeps |Cov| <= dA dB at round-off level.
    const CMatrix abar = centred(s, a);
    const CMatrix bbar = centred(s, b);
    if (s.is_pure()) return (abar * s.vector()).dot(bbar * s.vector()).real();
    return expect_complex(s, abar * bbar).real();
}

double covariance(const QuantumState& s, const Observable& a, const Observable& b) {
    return covariance(s, a.matrix(), b.matrix());
}

Complex commutator_expectation(const QuantumState& s, const CMatrix& a, const CMatrix& b) {
    check_dims(s, a);
    check_dims(s, b);
    const CMatrix comm = a * b - b * a;
    return Complex(0.0, expect_complex(s, comm).imag());
}

Complex commutator_expectation(const QuantumState& s, const Observable& a, const Observable& b) {
    return commutator_expectation(s, a.matrix(), b.matrix());
}

double anticommutator_expectation(const QuantumState& s, const CMatrix& a, const CMatrix& b) {
    check_dims(s, a);
    check_dims(s, b);
    const CMatrix anti = a * b + b * a;
    return expect_complex(s, anti).real();
}

double anticommutator_expectation(const QuantumState& s, const Observable& a, const Observable& b) {
    return anticommutator_expectation(s, a.matrix(), b.matrix());
}

DeviationVector deviation_vector(const QuantumState& s, const CMatrix& a) {
    check_dims(s, a);
    const CVector& psi = s.vector();
    const double mean = expectation(s, a);
    return DeviationVector{a * psi - mean * psi};
}

DeviationVector deviation_vector(const QuantumState& s, const Observable& a) {
    return deviation_vector(s, a.matrix());
}

MomentSet moments(const QuantumState& s, const Observable& a, const Observable& b) {
    MomentSet m;
    m.mean_a = expectation(s, a);
    m.mean_b = expectation(s, b);
    m.var_a = variance(s, a);
    m.var_b = variance(s, b);
    m.cov = covariance(s, a, b);
    m.comm_expect = commutator_expectation(s, a, b);
    m.anticomm_expect = anticommutator_expectation(s, a, b);
    return m;
}

}  // namespace varbounds
