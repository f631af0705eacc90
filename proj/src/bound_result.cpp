#include "varbounds/bound_result.hpp"

#include <array>
#include <string>

#include "varbounds/errors.hpp"

namespace varbounds {

namespace {

using enum BoundKind;

constexpr std::array<BoundInfo, 15> kRegistry{{
    {RsProduct, "rs_product", Target::Product, Direction::Lower, false, false, false},
    {BasisProduct, "basis_product", Target::Product, Direction::Lower, false, true, false},
    {FidelityProduct, "fidelity_product", Target::Product, Direction::Lower, false, false, false},
    {ParallelogramSum, "parallelogram_sum", Target::Sum, Direction::Lower, false, false, false},
    {BasisSum, "basis_sum", Target::Sum, Direction::Lower, false, true, false},
    {MpSum1, "mp_sum_1", Target::Sum, Direction::Lower, true, true, true},
    {MpSum2, "mp_sum_2", Target::Sum, Direction::Lower, true, true, false},
    {ReverseFidelityProduct, "reverse_fidelity_product", Target::Product, Direction::Upper, false, false, false},
    {ReverseBasisProduct, "reverse_basis_product", Target::Product, Direction::Upper, false, true, false},
    {DwDeviationSum, "dw_deviation_sum", Target::DeviationSum, Direction::Upper, false, false, false},
    {DwVarianceSum, "dw_variance_sum", Target::Sum, Direction::Upper, false, false, false},
    {OptBasisProduct, "opt_basis_product", Target::Product, Direction::Lower, false, true, true},
    {OptBasisSum, "opt_basis_sum", Target::Sum, Direction::Lower, false, true, true},
    {OptReverseBasisProduct, "opt_reverse_basis_product", Target::Product, Direction::Upper, false, true, true},
    {WeakDeviationSum, "weak_deviation_sum", Target::DeviationSum, Direction::Comparison, false, false, false},
}};

}  // namespace

std::span<const BoundInfo> bound_registry() { return kRegistry; }

const BoundInfo& bound_info(BoundKind kind) {
    for (const auto& info : kRegistry)
        if (info.kind == kind) return info;
    throw Error(ErrorCode::UnknownBoundId, "unregistered bound kind");
}

const BoundInfo& bound_info(std::string_view id) {
    for (const auto& info : kRegistry)
        if (info.id == id) return info;
    throw Error(ErrorCode::UnknownBoundId, std::string(id));
}

BoundResult BoundResult::ok(BoundKind kind, double value) {
    BoundResult r;
    r.kind = kind;
    r.value = value;
    r.baseline = bound_info(kind).baseline;
    return r;
}

BoundResult BoundResult::undefined(BoundKind kind, std::string reason) {
    BoundResult r;
    r.kind = kind;
    r.value = kInfinity;
    r.defined = false;
    r.reason = std::move(reason);
    r.baseline = bound_info(kind).baseline;
    return r;
}

}  // namespace varbounds
