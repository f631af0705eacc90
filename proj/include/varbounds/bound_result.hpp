#pragma once

#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>

namespace varbounds {

enum class BoundKind {
    RsProduct,
    BasisProduct,
    FidelityProduct,
    ParallelogramSum,
    BasisSum,
    MpSum1,
    MpSum2,
    ReverseFidelityProduct,
    ReverseBasisProduct,
    DwDeviationSum,
    DwVarianceSum,
    OptBasisProduct,
    OptBasisSum,
    OptReverseBasisProduct,
    WeakDeviationSum,
};

/// Which exact quantity a bound is compared against.
enum class Target { Product, Sum, DeviationSum };

enum class Direction {
    Lower,
    Upper,
    /// Reported for comparison only; not a theorem, never checked for validity.
    Comparison,
};

struct BoundInfo {
    BoundKind kind;
    std::string_view id;  // snake_case, used as CSV column name
    Target target;
    Direction direction;
    bool baseline;       // comparison curve from the literature, not one of ours
    bool pure_only;
    bool needs_optimizer;
};

std::span<const BoundInfo> bound_registry();
const BoundInfo& bound_info(BoundKind kind);
/// Throws UnknownBoundId.
const BoundInfo& bound_info(std::string_view id);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct BoundResult {
    BoundKind kind{};
    double value = 0.0;
    bool defined = true;
    std::string reason;  // set when !defined
    bool baseline = false;
    std::map<std::string, double> intermediates;

    static BoundResult ok(BoundKind kind, double value);
    static BoundResult undefined(BoundKind kind, std::string reason);
    std::string_view id() const { return bound_info(kind).id; }
};

}  // namespace varbounds
