#pragma once

#include <optional>

#include "varbounds/bound_result.hpp"
#include "varbounds/linalg.hpp"
#include "varbounds/moments.hpp"

namespace varbounds {

/// Multiplier of the reverse Cauchy-Schwarz inequality for two strictly
/// positive sequences: (M_a M_b + m_a m_b)^2 / (4 M_a M_b m_a m_b) >= 1.
struct ReverseFactor {
    double max_a = 0.0;
    double min_a = 0.0;
    double max_b = 0.0;
    double min_b = 0.0;
    double factor = 1.0;
};

/// Entries count as positive when they exceed 1e-12 times the largest entry
/// of their own sequence. Returns nullopt when either sequence has a
/// non-positive entry.
std::optional<ReverseFactor> reverse_factor(const RVector& c, const RVector& d);

/// Omega (sum_i c_i d_i)^2 with c_i = sqrt(F_a_i)|a_i - <A>| and likewise d_i.
/// Undefined when some c_i or d_i vanishes.
BoundResult reverse_fidelity_product_bound(const QuantumState& s, const Observable& a, const Observable& b);

/// Lambda (sum_n |alpha_n| |beta_n|)^2 in the given basis. Undefined when some
/// alpha_n or beta_n vanishes.
BoundResult reverse_basis_product_bound(const QuantumState& s, const Observable& a, const Observable& b,
                                        const OrthonormalBasis& basis);

/// sqrt(2) D(A-B) / sqrt(1 - Cov/(dA dB)), an upper bound on dA + dB.
BoundResult dw_deviation_sum_bound(const QuantumState& s, const Observable& a, const Observable& b);

/// 2 D(A-B)^2 / (1 - Cov/(dA dB)) - 2 dA dB, an upper bound on dA^2 + dB^2.
BoundResult dw_variance_sum_bound(const QuantumState& s, const Observable& a, const Observable& b);

/// D(A-B) alone. Only exceeds dA + dB under extra conditions, so it is a
/// comparison column and never checked as a bound.
BoundResult weak_deviation_sum(const QuantumState& s, const Observable& a, const Observable& b);

namespace detail {

/// Lambda-weighted objective on basis amplitudes; nullopt when undefined.
std::optional<double> reverse_basis_objective(const RVector& abs_alpha, const RVector& abs_beta);

}  // namespace detail

}  // namespace varbounds
