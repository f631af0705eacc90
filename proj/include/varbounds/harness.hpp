#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "varbounds/basis_optimizer.hpp"
#include "varbounds/bound_result.hpp"
#include "varbounds/linalg.hpp"
#include "varbounds/optimizer_config.hpp"

namespace varbounds {

inline constexpr std::string_view kVersion = "1.0.0";

/// Note echoed into every output that uses the Bloch family.
inline constexpr std::string_view kSigma2Note =
    "Bloch family coefficient printed as sigma_2 is read as sigma_y";

enum class Preset { Fig1, Fig2, Fig3, Fig4, Custom };

std::string_view to_string(Preset p);
/// Throws UnknownPreset.
Preset parse_preset(std::string_view name);

enum class StateFamily {
    /// cos(theta)|e_0> - sin(theta)|e_1>; in the spin-1 L_z basis this is
    /// cos(theta)|1> - sin(theta)|0>.
    CosSin,
    /// r = (cos(theta/2), (sqrt(3)/2) sin(theta/2), (1/2) sin(theta/2)).
    BlochFig3,
};

std::string_view to_string(StateFamily f);
StateFamily parse_state_family(std::string_view name);
std::string_view describe(StateFamily f);

QuantumState family_state(StateFamily family, double theta, int dim);

struct ThetaGrid {
    double start = 0.0;
    double stop = std::numbers::pi;
    int count = 181;

    /// Uniform, inclusive of both ends. Throws InvalidArgument if count < 2.
    std::vector<double> points() const;
};

/// Basis used by the basis-dependent bounds when they are evaluated outside
/// the optimizer.
enum class BasisChoice { Standard, EigenA, EigenB };

struct SweepSpec {
    Preset preset = Preset::Custom;
    ThetaGrid grid;
    CMatrix a;
    CMatrix b;
    std::string a_label;
    std::string b_label;
    StateFamily family = StateFamily::CosSin;
    std::vector<BoundKind> bounds;
    std::optional<OptimizerConfig> optimizer;
    BasisChoice basis = BasisChoice::Standard;

    static SweepSpec from_preset(Preset p);
};

struct ExactQuantities {
    double var_a = 0.0;
    double var_b = 0.0;
    double product = 0.0;
    double sum = 0.0;
    double deviation_sum = 0.0;  // dA + dB

    double target(Target t) const;
};

ExactQuantities exact_quantities(const QuantumState& s, const Observable& a, const Observable& b);

/// Evaluates one bound. Pure-only bounds on a mixed state come back undefined
/// rather than throwing; optimizer-backed bounds use `cfg`.
BoundResult compute_bound(BoundKind kind, const QuantumState& s, const Observable& a, const Observable& b,
                          const OrthonormalBasis& basis, const OptimizerConfig& cfg);

OrthonormalBasis choose_basis(BasisChoice choice, const Observable& a, const Observable& b);

struct SweepRow {
    double theta = 0.0;
    ExactQuantities exact;
    std::vector<BoundResult> bounds;  // same order as SweepSpec::bounds
};

struct SweepTable {
    SweepSpec spec;
    std::vector<SweepRow> rows;  // theta ascending
};

/// One row per grid point. Throws InvalidArgument for a bad grid.
SweepTable run_sweep(const SweepSpec& spec);

/// Every bound registered for a single instance, in registry order.
struct InstanceReport {
    ExactQuantities exact;
    std::vector<BoundResult> bounds;
};

InstanceReport compute_all(const QuantumState& s, const Observable& a, const Observable& b,
                           const OrthonormalBasis& basis, const OptimizerConfig& cfg);

}  // namespace varbounds
