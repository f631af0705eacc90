#include "varbounds/lower_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "varbounds/basis_optimizer.hpp"

namespace varbounds {

namespace {

void check_pair(const QuantumState& s, const Observable& a, const Observable& b) {
    require_same_dim(a.dim(), s.dim(), "observable A/state dimension");
    require_same_dim(b.dim(), s.dim(), "observable B/state dimension");
}

std::string indexed(const char* name, Eigen::Index n) { return std::string(name) + "_" + std::to_string(n); }

}  // namespace

namespace detail {

BasisAmplitudes basis_amplitudes(const CVector& f, const CVector& g, const CMatrix& u) {
    return {(u.adjoint() * f).cwiseAbs(), (u.adjoint() * g).cwiseAbs()};
}

double product_objective(const BasisAmplitudes& amp) {
    const double s = amp.abs_alpha.dot(amp.abs_beta);
    return s * s;
}

double sum_objective(const BasisAmplitudes& amp) {
    return 0.5 * (amp.abs_alpha + amp.abs_beta).squaredNorm();
}

}  // namespace detail

WeightSequence weight_sequence(const QuantumState& s, const Observable& a) {
    require_same_dim(a.dim(), s.dim(), "observable/state dimension");
    const int d = a.dim();
    const double mean = expectation(s, a);
    WeightSequence w;
    w.fidelity.resize(d);
    w.shifted.resize(d);
    w.weight.resize(d);
    for (int i = 0; i < d; ++i) {
        w.fidelity[i] = s.fidelity(a.eigenvectors().column(i));
        w.shifted[i] = a.eigenvalues()[i] - mean;
        w.weight[i] = w.shifted[i] * std::sqrt(w.fidelity[i]);
    }
    w.order.resize(static_cast<std::size_t>(d));
    std::iota(w.order.begin(), w.order.end(), 0);
    std::stable_sort(w.order.begin(), w.order.end(),
                     [&](int i, int j) { return w.weight[i] < w.weight[j]; });
    w.sorted.resize(d);
    for (int k = 0; k < d; ++k) w.sorted[k] = w.weight[w.order[static_cast<std::size_t>(k)]];
    return w;
}

SortedWeightSequences sorted_weight_sequences(const QuantumState& s, const Observable& a, const Observable& b) {
    check_pair(s, a, b);
    return {weight_sequence(s, a), weight_sequence(s, b)};
}

BoundResult rs_product_bound(const QuantumState& s, const Observable& a, const Observable& b) {
    check_pair(s, a, b);
    const Complex half_comm = 0.5 * commutator_expectation(s, a, b);
    const double cov = covariance(s, a, b);
    const double comm_term = std::norm(half_comm);
    const double cov_term = cov * cov;
    auto r = BoundResult::ok(BoundKind::RsProduct, comm_term + cov_term);
    r.intermediates["commutator_term"] = comm_term;
    r.intermediates["covariance_term"] = cov_term;
    return r;
}

BoundResult basis_product_bound(const QuantumState& s, const Observable& a, const Observable& b,
                                const OrthonormalBasis& basis) {
    check_pair(s, a, b);
    require_same_dim(basis.dim(), s.dim(), "basis/state dimension");
    const CVector& psi = s.vector();
    const int d = s.dim();

    const CVector f = deviation_vector(s, a).entries;
    const CVector g = deviation_vector(s, b).entries;
    const auto amp = detail::basis_amplitudes(f, g, basis.columns());
    const double value = detail::product_objective(amp);

    // Same quantity through 1/4 (sum_n |<[A-bar, B-bar_n]> + <{A-bar, B-bar_n}>|)^2
    // with B-bar_n = |psi_n><psi_n| B-bar.
    const CMatrix id = CMatrix::Identity(d, d);
    const CMatrix abar = a.matrix() - expectation(s, a) * id;
    const CMatrix bbar = b.matrix() - expectation(s, b) * id;
    double comm_sum = 0.0;
    for (int n = 0; n < d; ++n) {
        const CVector col = basis.column(n);
        const CMatrix bn = col * (col.adjoint() * bbar);
        const CMatrix comm = abar * bn - bn * abar;
        const CMatrix anti = abar * bn + bn * abar;
        comm_sum += std::abs(psi.dot(comm * psi) + psi.dot(anti * psi));
    }
    const double comm_form = 0.25 * comm_sum * comm_sum;
    if (std::abs(comm_form - value) > 1e-10 * std::max(1.0, value)) {
        throw Error(ErrorCode::InternalConsistency,
                    "basis product bound forms disagree: " + std::to_string(value) + " vs " +
                        std::to_string(comm_form));
    }

    auto r = BoundResult::ok(BoundKind::BasisProduct, value);
    r.intermediates["commutator_form"] = comm_form;
    for (int n = 0; n < d; ++n) {
        r.intermediates[indexed("abs_alpha", n)] = amp.abs_alpha[n];
        r.intermediates[indexed("abs_beta", n)] = amp.abs_beta[n];
    }
    return r;
}

BoundResult fidelity_product_bound(const QuantumState& s, const Observable& a, const Observable& b) {
    const auto seq = sorted_weight_sequences(s, a, b);
    const RVector& u = seq.u();
    const RVector& v = seq.v();
    const double ascending = u.dot(v);
    const double descending = u.dot(v.reverse());
    const double asc_sq = ascending * ascending;
    const double desc_sq = descending * descending;
    auto r = BoundResult::ok(BoundKind::FidelityProduct, std::max(asc_sq, desc_sq));
    r.intermediates["ascending_pairing"] = asc_sq;
    r.intermediates["descending_pairing"] = desc_sq;
    r.intermediates["pairing"] = asc_sq >= desc_sq ? 0.0 : 1.0;
    return r;
}

BoundResult parallelogram_sum_bound(const QuantumState& s, const Observable& a, const Observable& b) {
    const auto seq = sorted_weight_sequences(s, a, b);
    const RVector& u = seq.u();
    const RVector& v = seq.v();
    const double ascending = 0.5 * (u + v).squaredNorm();
    const double descending = 0.5 * (u + v.reverse()).squaredNorm();
    auto r = BoundResult::ok(BoundKind::ParallelogramSum, ascending);
    r.intermediates["descending_pairing"] = descending;
    return r;
}

BoundResult basis_sum_bound(const QuantumState& s, const Observable& a, const Observable& b,
                            const OrthonormalBasis& basis) {
    check_pair(s, a, b);
    require_same_dim(basis.dim(), s.dim(), "basis/state dimension");
    const CVector f = deviation_vector(s, a).entries;
    const CVector g = deviation_vector(s, b).entries;
    const auto amp = detail::basis_amplitudes(f, g, basis.columns());
    auto r = BoundResult::ok(BoundKind::BasisSum, detail::sum_objective(amp));
    for (Eigen::Index n = 0; n < amp.abs_alpha.size(); ++n) {
        r.intermediates[indexed("abs_alpha", n)] = amp.abs_alpha[n];
        r.intermediates[indexed("abs_beta", n)] = amp.abs_beta[n];
    }
    return r;
}

BoundResult mp_sum_bound_1(const QuantumState& s, const Observable& a, const Observable& b,
                           const OptimizerConfig& cfg) {
    check_pair(s, a, b);
    const CVector& psi = s.vector();
    if (s.dim() < 2) throw Error(ErrorCode::InvalidArgument, "orthogonal complement is empty for d < 2");

    // i<[A,B]> is real because <[A,B]> is purely imaginary.
    const double i_comm = -commutator_expectation(s, a, b).imag();
    double best = -kInfinity;
    BoundResult r = BoundResult::ok(BoundKind::MpSum1, 0.0);
    for (const int sign : {+1, -1}) {
        // <psi|(A + sign iB)|perp> = <(A - sign iB) psi|perp>
        const CVector h = a.matrix() * psi - Complex(0.0, sign) * (b.matrix() * psi);
        const auto perp = optimize_perp_state(
            s, [&h](const CVector& x) { return std::norm(h.dot(x)); }, cfg);
        const double value = sign * i_comm + perp.value;
        r.intermediates[sign > 0 ? "plus_sign" : "minus_sign"] = value;
        best = std::max(best, value);
    }
    r.value = best;
    return r;
}

BoundResult mp_sum_bound_2(const QuantumState& s, const Observable& a, const Observable& b) {
    check_pair(s, a, b);
    const CVector& psi = s.vector();
    const CVector h = (a.matrix() + b.matrix()) * psi;
    const CVector h_perp = h - psi.dot(h) * psi;
    const double perp_norm = h_perp.norm();
    auto r = BoundResult::ok(BoundKind::MpSum2, 0.0);
    r.intermediates["variance_of_sum"] = perp_norm * perp_norm;
    if (perp_norm < 1e-14) return r;  // eigenstate of A + B
    const CVector unit = h_perp / perp_norm;
    r.value = 0.5 * std::norm(unit.dot(h));
    return r;
}

}  // namespace varbounds
