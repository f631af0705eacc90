#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "varbounds/linalg.hpp"
#include "varbounds/optimizer_config.hpp"

namespace varbounds {

/// Givens-rotation parameterization of a basis, up to column phases.
///
/// For every index pair (p, q), p < q in lexicographic order, two entries
/// (theta, phi) define the rotation
///
///     G_pp = G_qq = cos theta,  G_pq = -e^{i phi} sin theta,  G_qp = e^{-i phi} sin theta
///
/// and the basis is the column set of G_0 G_1 ... G_{K-1}.
struct UnitaryParams {
    int dim = 1;
    std::vector<double> angles;  // length dim * (dim - 1)

    static int angle_count(int dim) { return dim * (dim - 1); }
    static UnitaryParams zeros(int dim);
};

/// Throws BadParameterCount when the angle count does not match dim.
OrthonormalBasis synthesize_basis(const UnitaryParams& p);

/// Same product as synthesize_basis, unchecked, for inner loops.
CMatrix synthesize_unitary(int dim, std::span<const double> angles);

struct OptimizationReport {
    double best_value = 0.0;
    OrthonormalBasis best_basis = OrthonormalBasis::standard(1);
    int restarts_used = 0;
    long evaluations = 0;
    bool converged = false;
    std::vector<std::pair<int, double>> trace;  // (restart, final value)
};

/// Objective over unitaries (columns = basis). Return -infinity for points
/// where the objective is undefined.
using BasisObjective = std::function<double(const CMatrix&)>;

/// Maximizes objective(V * U(angles)) by compass search. Each seed basis V is
/// a restart starting at zero angles; cfg.restarts further restarts start at
/// V = I with random angles drawn from a generator keyed on (cfg.seed, index).
OptimizationReport optimize_basis(int dim, const BasisObjective& objective,
                                  std::span<const CMatrix> seeds, const OptimizerConfig& cfg);

/// Maximizes the basis product bound; seeds are the standard basis and the
/// eigenbases of A and B.
OptimizationReport optimize_product_bound(const QuantumState& s, const Observable& a,
                                          const Observable& b, const OptimizerConfig& cfg = {});

/// Maximizes the basis sum bound with the same seeds.
OptimizationReport optimize_sum_bound(const QuantumState& s, const Observable& a,
                                      const Observable& b, const OptimizerConfig& cfg = {});

/// Minimizes the reverse basis product bound. best_value is the minimum found;
/// it stays +infinity if every visited basis violates the positivity hypothesis.
OptimizationReport optimize_reverse_product_bound(const QuantumState& s, const Observable& a,
                                                  const Observable& b, const OptimizerConfig& cfg = {});

struct PerpStateResult {
    CVector vector;
    double value = 0.0;
    long evaluations = 0;
};

using VectorObjective = std::function<double(const CVector&)>;

/// Maximizes objective over unit vectors orthogonal to the pure state s.
PerpStateResult optimize_perp_state(const QuantumState& s, const VectorObjective& objective,
                                    const OptimizerConfig& cfg = {});

}  // namespace varbounds
