#pragma once

#include <vector>

#include "varbounds/bound_result.hpp"
#include "varbounds/linalg.hpp"
#include "varbounds/moments.hpp"
#include "varbounds/optimizer_config.hpp"

namespace varbounds {

/// Fidelity-weighted deviations of one observable: entries (a_i - <A>) sqrt(F_i)
/// with F_i = <a_i|rho|a_i>, plus their ascending arrangement.
struct WeightSequence {
    RVector fidelity;       // eigenvector order
    RVector shifted;        // a_i - <A>, eigenvector order
    RVector weight;         // shifted * sqrt(fidelity), eigenvector order
    RVector sorted;         // weight, ascending
    std::vector<int> order; // sorted[k] == weight[order[k]]
};

struct SortedWeightSequences {
    WeightSequence a;
    WeightSequence b;

    const RVector& u() const { return a.sorted; }
    const RVector& v() const { return b.sorted; }
};

WeightSequence weight_sequence(const QuantumState& s, const Observable& a);
SortedWeightSequences sorted_weight_sequences(const QuantumState& s, const Observable& a, const Observable& b);

/// |1/2 <[A,B]>|^2 + Cov(A,B)^2.
BoundResult rs_product_bound(const QuantumState& s, const Observable& a, const Observable& b);

/// (sum_n |alpha_n| |beta_n|)^2 with alpha = <psi_n|f>, beta = <psi_n|g>.
/// The commutator/anticommutator form of the same value is recomputed from
/// operator products and must agree to 1e-10 (InternalConsistency otherwise).
BoundResult basis_product_bound(const QuantumState& s, const Observable& a, const Observable& b,
                                const OrthonormalBasis& basis);

/// Best of the two extremal pairings of the sorted weight sequences, squared.
BoundResult fidelity_product_bound(const QuantumState& s, const Observable& a, const Observable& b);

/// 1/2 sum_i (u_i + v_i)^2 over the ascending/ascending pairing.
BoundResult parallelogram_sum_bound(const QuantumState& s, const Observable& a, const Observable& b);

/// 1/2 sum_n (|alpha_n| + |beta_n|)^2.
BoundResult basis_sum_bound(const QuantumState& s, const Observable& a, const Observable& b,
                            const OrthonormalBasis& basis);

/// Baseline: max over sign of +-i<[A,B]> + |<psi|(A +- iB)|psi_perp>|^2 with
/// psi_perp searched numerically over the orthogonal complement.
BoundResult mp_sum_bound_1(const QuantumState& s, const Observable& a, const Observable& b,
                           const OptimizerConfig& cfg = {});

/// Baseline: 1/2 |<psi_perp|(A+B)|psi>|^2 with psi_perp the normalized
/// orthogonal part of (A+B)|psi>.
BoundResult mp_sum_bound_2(const QuantumState& s, const Observable& a, const Observable& b);

namespace detail {

struct BasisAmplitudes {
    RVector abs_alpha;
    RVector abs_beta;
};

/// |<psi_n|f>| and |<psi_n|g>| for the columns of u.
BasisAmplitudes basis_amplitudes(const CVector& f, const CVector& g, const CMatrix& u);

double product_objective(const BasisAmplitudes& amp);
double sum_objective(const BasisAmplitudes& amp);

}  // namespace detail

}  // namespace varbounds
