#pragma once

#include "varbounds/linalg.hpp"

namespace varbounds {

/// First and second moments of a pair of observables in one state.
struct MomentSet {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    double cov = 0.0;
    Complex comm_expect{};       // <[A,B]>, purely imaginary
    double anticomm_expect = 0.0;  // <{A,B}>

    double product() const { return var_a * var_b; }
    double sum() const { return var_a + var_b; }
};

/// The vector (A - <A>) |psi>.
struct DeviationVector {
    CVector entries;

    double norm_squared() const { return entries.squaredNorm(); }
};

double expectation(const QuantumState& s, const CMatrix& a);
double expectation(const QuantumState& s, const Observable& a);

/// <A^2> - <A>^2. Round-off down to -1e-12 is clamped to zero; anything more
/// negative raises InternalConsistency.
double variance(const QuantumState& s, const CMatrix& a);
double variance(const QuantumState& s, const Observable& a);

/// 1/2 <{A,B}> - <A><B>.
double covariance(const QuantumState& s, const CMatrix& a, const CMatrix& b);
double covariance(const QuantumState& s, const Observable& a, const Observable& b);

Complex commutator_expectation(const QuantumState& s, const CMatrix& a, const CMatrix& b);
Complex commutator_expectation(const QuantumState& s, const Observable& a, const Observable& b);

double anticommutator_expectation(const QuantumState& s, const CMatrix& a, const CMatrix& b);
double anticommutator_expectation(const QuantumState& s, const Observable& a, const Observable& b);

/// Pure states only; throws MixedStateUnsupported otherwise.
DeviationVector deviation_vector(const QuantumState& s, const CMatrix& a);
DeviationVector deviation_vector(const QuantumState& s, const Observable& a);

MomentSet moments(const QuantumState& s, const Observable& a, const Observable& b);

}  // namespace varbounds
