#include "varbounds/harness.hpp"

#include <cmath>
#include <string>

#include "varbounds/lower_bounds.hpp"
#include "varbounds/moments.hpp"
#include "varbounds/upper_bounds.hpp"

namespace varbounds {

std::string_view to_string(Preset p) {
    switch (p) {
        case Preset::Fig1: return "fig1";
        case Preset::Fig2: return "fig2";
        case Preset::Fig3: return "fig3";
        case Preset::Fig4: return "fig4";
        case Preset::Custom: return "custom";
    }
    return "custom";
}

Preset parse_preset(std::string_view name) {
    for (const Preset p : {Preset::Fig1, Preset::Fig2, Preset::Fig3, Preset::Fig4, Preset::Custom})
        if (to_string(p) == name) return p;
    throw Error(ErrorCode::UnknownPreset, std::string(name));
}

std::string_view to_string(StateFamily f) {
    return f == StateFamily::CosSin ? "cos_sin" : "bloch_fig3";
}

StateFamily parse_state_family(std::string_view name) {
    if (name == "cos_sin") return StateFamily::CosSin;
    if (name == "bloch_fig3") return StateFamily::BlochFig3;
    throw Error(ErrorCode::ConfigError, "unknown state family '" + std::string(name) + "'");
}

std::string_view describe(StateFamily f) {
    if (f == StateFamily::CosSin) return "cos(theta)|e0> - sin(theta)|e1>";
    return "rho = (I + cos(theta/2) sx + (sqrt(3)/2) sin(theta/2) sy + (1/2) sin(theta/2) sz) / 2";
}

QuantumState family_state(StateFamily family, double theta, int dim) {
    if (family == StateFamily::CosSin) {
        if (dim < 2) throw Error(ErrorCode::InvalidArgument, "cos_sin family needs dimension >= 2");
        CVector psi = CVector::Zero(dim);
        psi[0] = std::cos(theta);
        psi[1] = -std::sin(theta);
        return QuantumState::pure_normalized(psi);
    }
    require_same_dim(dim, 2, "bloch_fig3 family is a qubit family");
    const double h = std::sin(theta / 2.0);
    return qubit_state_from_bloch({std::cos(theta / 2.0), std::sqrt(3.0) / 2.0 * h, 0.5 * h});
}

std::vector<double> ThetaGrid::points() const {
    if (count < 2) throw Error(ErrorCode::InvalidArgument, "theta grid needs at least 2 points");
    if (!std::isfinite(start) || !std::isfinite(stop) || stop < start) {
        throw Error(ErrorCode::InvalidArgument, "theta grid needs finite start <= stop");
    }
    std::vector<double> pts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pts[static_cast<std::size_t>(i)] = start + (stop - start) * i / (count - 1);
    pts.back() = stop;
    return pts;
}

SweepSpec SweepSpec::from_preset(Preset p) {
    SweepSpec spec;
    spec.preset = p;
    switch (p) {
        case Preset::Fig1:
        case Preset::Fig2: {
            const auto l = spin1_operators();
            spec.a = l.x.matrix();
            spec.b = l.y.matrix();
            spec.a_label = "spin1.x";
            spec.b_label = "spin1.y";
            spec.family = StateFamily::CosSin;
            if (p == Preset::Fig1) {
                spec.bounds = {BoundKind::RsProduct, BoundKind::FidelityProduct, BoundKind::OptBasisProduct};
            } else {
                spec.bounds = {BoundKind::ParallelogramSum, BoundKind::MpSum2, BoundKind::MpSum1};
            }
            spec.optimizer = OptimizerConfig{};
            break;
        }
        case Preset::Fig3:
        case Preset::Fig4: {
            const auto s = pauli_operators();
            spec.a = s.x.matrix();
            spec.b = s.z.matrix();
            spec.a_label = "pauli.x";
            spec.b_label = "pauli.z";
            spec.family = StateFamily::BlochFig3;
            if (p == Preset::Fig3) {
                spec.bounds = {BoundKind::ReverseFidelityProduct};
            } else {
                spec.bounds = {BoundKind::DwVarianceSum, BoundKind::DwDeviationSum, BoundKind::WeakDeviationSum};
            }
            break;
        }
        case Preset::Custom:
            break;
    }
    return spec;
}

double ExactQuantities::target(Target t) const {
    switch (t) {
        case Target::Product: return product;
        case Target::Sum: return sum;
        case Target::DeviationSum: return deviation_sum;
    }
    return product;
}

ExactQuantities exact_quantities(const QuantumState& s, const Observable& a, const Observable& b) {
    ExactQuantities e;
    e.var_a = variance(s, a);
    e.var_b = variance(s, b);
    e.product = e.var_a * e.var_b;
    e.sum = e.var_a + e.var_b;
    e.deviation_sum = std::sqrt(e.var_a) + std::sqrt(e.var_b);
    return e;
}

OrthonormalBasis choose_basis(BasisChoice choice, const Observable& a, const Observable& b) {
    switch (choice) {
        case BasisChoice::Standard: return OrthonormalBasis::standard(a.dim());
        case BasisChoice::EigenA: return a.eigenvectors();
        case BasisChoice::EigenB: return b.eigenvectors();
    }
    return OrthonormalBasis::standard(a.dim());
}

BoundResult compute_bound(BoundKind kind, const QuantumState& s, const Observable& a, const Observable& b,
                          const OrthonormalBasis& basis, const OptimizerConfig& cfg) {
    const auto& info = bound_info(kind);
    if (info.pure_only && !s.is_pure()) {
        return BoundResult::undefined(kind, "needs a pure state");
    }
    switch (kind) {
        case BoundKind::RsProduct: return rs_product_bound(s, a, b);
        case BoundKind::BasisProduct: return basis_product_bound(s, a, b, basis);
        case BoundKind::FidelityProduct: return fidelity_product_bound(s, a, b);
        case BoundKind::ParallelogramSum: return parallelogram_sum_bound(s, a, b);
        case BoundKind::BasisSum: return basis_sum_bound(s, a, b, basis);
        case BoundKind::MpSum1: return mp_sum_bound_1(s, a, b, cfg);
        case BoundKind::MpSum2: return mp_sum_bound_2(s, a, b);
        case BoundKind::ReverseFidelityProduct: return reverse_fidelity_product_bound(s, a, b);
        case BoundKind::ReverseBasisProduct: return reverse_basis_product_bound(s, a, b, basis);
        case BoundKind::DwDeviationSum: return dw_deviation_sum_bound(s, a, b);
        case BoundKind::DwVarianceSum: return dw_variance_sum_bound(s, a, b);
        case BoundKind::WeakDeviationSum: return weak_deviation_sum(s, a, b);
        case BoundKind::OptBasisProduct:
        case BoundKind::OptBasisSum:
        case BoundKind::OptReverseBasisProduct: {
            const auto report = kind == BoundKind::OptBasisProduct ? optimize_product_bound(s, a, b, cfg)
                                : kind == BoundKind::OptBasisSum   ? optimize_sum_bound(s, a, b, cfg)
                                                                   : optimize_reverse_product_bound(s, a, b, cfg);
            if (!std::isfinite(report.best_value)) {
                return BoundResult::undefined(kind, "no basis satisfied the positivity hypothesis");
            }
            auto r = BoundResult::ok(kind, report.best_value);
            r.intermediates["evaluations"] = static_cast<double>(report.evaluations);
            r.intermediates["restarts"] = report.restarts_used;
            r.intermediates["converged"] = report.converged ? 1.0 : 0.0;
            return r;
        }
    }
    throw Error(ErrorCode::UnknownBoundId, "unhandled bound kind");
}

SweepTable run_sweep(const SweepSpec& spec) {
    const auto thetas = spec.grid.points();
    const Observable a(spec.a);
    const Observable b(spec.b);
    require_same_dim(a.dim(), b.dim(), "observable dimensions");
    const OrthonormalBasis basis = choose_basis(spec.basis, a, b);
    const OptimizerConfig cfg = spec.optimizer.value_or(OptimizerConfig{});

    SweepTable table;
    table.spec = spec;
    table.rows.reserve(thetas.size());
    for (const double theta : thetas) {
        const QuantumState s = family_state(spec.family, theta, a.dim());
        SweepRow row;
        row.theta = theta;
        row.exact = exact_quantities(s, a, b);
        for (const BoundKind kind : spec.bounds) row.bounds.push_back(compute_bound(kind, s, a, b, basis, cfg));
        table.rows.push_back(std::move(row));
    }
    return table;
}

InstanceReport compute_all(const QuantumState& s, const Observable& a, const Observable& b,
                           const OrthonormalBasis& basis, const OptimizerConfig& cfg) {
    InstanceReport report;
    report.exact = exact_quantities(s, a, b);
    for (const auto& info : bound_registry()) report.bounds.push_back(compute_bound(info.kind, s, a, b, basis, cfg));
    return report;
}

}  // namespace varbounds
