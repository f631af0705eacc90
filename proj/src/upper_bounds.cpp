#include "varbounds/upper_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "varbounds/lower_bounds.hpp"

namespace varbounds {

namespace {

constexpr double kPositivity = 1e-12;
constexpr double kDenominatorGuard = 1e-12;
constexpr double kZeroDeviation = 1e-12;

const char* const kHypothesisViolated = "reverse Cauchy-Schwarz hypothesis 0<c<=c_i violated";

bool strictly_positive(const RVector& x) {
    if (x.size() == 0) return false;
    const double largest = x.maxCoeff();
    if (!(largest > 0.0)) return false;
    return x.minCoeff() > kPositivity * largest;
}

// Round-off leaves entries of order 1e-17 where the exact sequence is zero;
// those must not pass the relative positivity test.
bool numerically_null(const RVector& x, const Observable& op) {
    return x.size() == 0 || x.maxCoeff() <= kZeroDeviation * (1.0 + max_abs(op.matrix()));
}

RVector sorted_copy(RVector x) {
    std::sort(x.begin(), x.end());
    return x;
}

struct DwInputs {
    double sd_a = 0.0;
    double sd_b = 0.0;
    double cov = 0.0;
    double var_diff = 0.0;
    double denominator = 0.0;
};

// Shared preconditions of the two Dunkl-Williams bounds. Returns an undefined
// result through `failure` when they do not hold.
std::optional<DwInputs> dw_inputs(const QuantumState& s, const Observable& a, const Observable& b,
                                  BoundKind kind, BoundResult& failure) {
    require_same_dim(a.dim(), s.dim(), "observable A/state dimension");
    require_same_dim(b.dim(), s.dim(), "observable B/state dimension");
    DwInputs in;
    in.sd_a = std::sqrt(variance(s, a));
    in.sd_b = std::sqrt(variance(s, b));
    if (in.sd_a <= kZeroDeviation || in.sd_b <= kZeroDeviation) {
        failure = BoundResult::undefined(kind, "Dunkl-Williams needs non-null vectors: zero deviation");
        return std::nullopt;
    }
    in.cov = covariance(s, a, b);
    in.denominator = 1.0 - in.cov / (in.sd_a * in.sd_b);
    if (in.denominator <= kDenominatorGuard) {
        failure = BoundResult::undefined(kind, "perfect correlation: 1 - Cov/(dA dB) <= 1e-12");
        failure.intermediates["denominator"] = in.denominator;
        return std::nullopt;
    }
    in.var_diff = variance(s, CMatrix(a.matrix() - b.matrix()));
    return in;
}

void record(BoundResult& r, const DwInputs& in) {
    r.intermediates["variance_of_difference"] = in.var_diff;
    r.intermediates["covariance"] = in.cov;
    r.intermediates["denominator"] = in.denominator;
}

}  // namespace

std::optional<ReverseFactor> reverse_factor(const RVector& c, const RVector& d) {
    if (!strictly_positive(c) || !strictly_positive(d)) return std::nullopt;
    ReverseFactor f;
    f.max_a = c.maxCoeff();
    f.min_a = c.minCoeff();
    f.max_b = d.maxCoeff();
    f.min_b = d.minCoeff();
    const double big = f.max_a * f.max_b;
    const double small = f.min_a * f.min_b;
    // (big + small)^2 / (4 big small), written to stay finite for tiny `small`.
    const double ratio = small / big;
    f.factor = (1.0 + ratio) * (1.0 + ratio) / (4.0 * ratio);
    return f;
}

namespace detail {

std::optional<double> reverse_basis_objective(const RVector& abs_alpha, const RVector& abs_beta) {
    const auto f = reverse_factor(abs_alpha, abs_beta);
    if (!f) return std::nullopt;
    const double s = abs_alpha.dot(abs_beta);
    return f->factor * s * s;
}

}  // namespace detail

BoundResult reverse_fidelity_product_bound(const QuantumState& s, const Observable& a, const Observable& b) {
    const auto seq = sorted_weight_sequences(s, a, b);
    const RVector c = seq.a.weight.cwiseAbs();
    const RVector d = seq.b.weight.cwiseAbs();
    const auto factor = reverse_factor(c, d);
    if (!factor || numerically_null(c, a) || numerically_null(d, b))
        return BoundResult::undefined(BoundKind::ReverseFidelityProduct, kHypothesisViolated);

    // The inequality holds for every pairing of the two sequences; the
    // opposite-order pairing minimizes sum c_i d_i and so gives the tightest value.
    const RVector c_up = sorted_copy(c);
    const RVector d_up = sorted_copy(d);
    const double eigen_order = c.dot(d);
    const double signed_order = seq.u().cwiseAbs().dot(seq.v().cwiseAbs());
    const double same_order = c_up.dot(d_up);
    const double opposite_order = c_up.dot(d_up.reverse());

    const double omega = factor->factor;
    auto r = BoundResult::ok(BoundKind::ReverseFidelityProduct, omega * opposite_order * opposite_order);
    r.intermediates["omega"] = omega;
    r.intermediates["max_a"] = factor->max_a;
    r.intermediates["min_a"] = factor->min_a;
    r.intermediates["max_b"] = factor->max_b;
    r.intermediates["min_b"] = factor->min_b;
    r.intermediates["eigen_order_pairing"] = omega * eigen_order * eigen_order;
    r.intermediates["signed_order_pairing"] = omega * signed_order * signed_order;
    r.intermediates["same_order_pairing"] = omega * same_order * same_order;
    return r;
}

BoundResult reverse_basis_product_bound(const QuantumState& s, const Observable& a, const Observable& b,
                                        const OrthonormalBasis& basis) {
    require_same_dim(a.dim(), s.dim(), "observable A/state dimension");
    require_same_dim(b.dim(), s.dim(), "observable B/state dimension");
    require_same_dim(basis.dim(), s.dim(), "basis/state dimension");
    const CVector f = deviation_vector(s, a).entries;
    const CVector g = deviation_vector(s, b).entries;
    const auto amp = detail::basis_amplitudes(f, g, basis.columns());
    const auto factor = reverse_factor(amp.abs_alpha, amp.abs_beta);
    if (!factor || numerically_null(amp.abs_alpha, a) || numerically_null(amp.abs_beta, b)) return BoundResult::undefined(BoundKind::ReverseBasisProduct, kHypothesisViolated);

    const double sum = amp.abs_alpha.dot(amp.abs_beta);
    auto r = BoundResult::ok(BoundKind::ReverseBasisProduct, factor->factor * sum * sum);
    r.intermediates["lambda"] = factor->factor;
    for (Eigen::Index n = 0; n < amp.abs_alpha.size(); ++n) {
        r.intermediates["product_" + std::to_string(n)] = amp.abs_alpha[n] * amp.abs_beta[n];
    }
    return r;
}

BoundResult dw_deviation_sum_bound(const QuantumState& s, const Observable& a, const Observable& b) {
    BoundResult failure;
    const auto in = dw_inputs(s, a, b, BoundKind::DwDeviationSum, failure);
    if (!in) return failure;
    auto r = BoundResult::ok(BoundKind::DwDeviationSum,
                             std::sqrt(2.0) * std::sqrt(in->var_diff) / std::sqrt(in->denominator));
    record(r, *in);
    return r;
}

BoundResult dw_variance_sum_bound(const QuantumState& s, const Observable& a, const Observable& b) {
    BoundResult failure;
    const auto in = dw_inputs(s, a, b, BoundKind::DwVarianceSum, failure);
    if (!in) return failure;
    auto r = BoundResult::ok(BoundKind::DwVarianceSum,
                             2.0 * in->var_diff / in->denominator - 2.0 * in->sd_a * in->sd_b);
    record(r, *in);
    return r;
}

BoundResult weak_deviation_sum(const QuantumState& s, const Observable& a, const Observable& b) {
    require_same_dim(a.dim(), s.dim(), "observable A/state dimension");
    require_same_dim(b.dim(), s.dim(), "observable B/state dimension");
    const double value = std::sqrt(variance(s, CMatrix(a.matrix() - b.matrix())));
    auto r = BoundResult::ok(BoundKind::WeakDeviationSum, value);
    const double dev_sum = std::sqrt(variance(s, a)) + std::sqrt(variance(s, b));
    r.intermediates["holds"] = dev_sum < value ? 1.0 : 0.0;
    return r;
}

}  // namespace varbounds
