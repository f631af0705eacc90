#include "varbounds/basis_optimizer.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "varbounds/lower_bounds.hpp"
#include "varbounds/moments.hpp"
#include "varbounds/upper_bounds.hpp"

namespace varbounds {

namespace {

using Objective = std::function<double(std::span<const double>)>;

struct SearchResult {
    std::vector<double> x;
    double value = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// Coordinate-wise compass search (maximization) with step halving.
SearchResult compass_search(const Objective& f, std::vector<double> x, const OptimizerConfig& cfg) {
    SearchResult out;
    double fx = f(x);
    long evals = 1;
    if (x.empty()) {
        out.x = std::move(x);
        out.value = fx;
        out.evaluations = evals;
        out.converged = true;
        return out;
    }
    double step = cfg.step_init;
    while (step >= cfg.step_min && evals < cfg.max_evals) {
        bool improved = false;
        for (std::size_t i = 0; i < x.size() && evals < cfg.max_evals; ++i) {
            const double old = x[i];
            for (const double dir : {1.0, -1.0}) {
                if (evals >= cfg.max_evals) break;
                x[i] = old + dir * step;
                const double ft = f(x);
                ++evals;
                if (ft > fx + cfg.tol) {
                    fx = ft;
                    improved = true;
                    break;
                }
                x[i] = old;
            }
        }
        if (!improved) step *= 0.5;
    }
    out.x = std::move(x);
    out.value = fx;
    out.evaluations = evals;
    out.converged = step < cfg.step_min;
    return out;
}

std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    return std::mt19937_64(seq);
}

std::vector<double> random_angles(std::mt19937_64& rng, int count) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> x(static_cast<std::size_t>(count));
    for (auto& a : x) a = angle(rng);
    return x;
}

void apply_givens_columns(CMatrix& u, int p, int q, double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex e = std::polar(1.0, phi);
    const Complex gqp = std::conj(e) * s;
    const Complex gpq = -e * s;
    for (Eigen::Index k = 0; k < u.rows(); ++k) {
        const Complex ukp = u(k, p);
        const Complex ukq = u(k, q);
        u(k, p) = ukp * c + ukq * gqp;
        u(k, q) = ukp * gpq + ukq * c;
    }
}

// Unit vector G_{0,1} G_{0,2} ... G_{0,m-1} e_0 from 2(m-1) angles; covers the
// unit sphere of C^m up to a global phase.
CVector unit_vector_from_angles(int m, std::span<const double> angles) {
    CVector v = CVector::Zero(m);
    v[0] = 1.0;
    for (int q = m - 1; q >= 1; --q) {
        const double theta = angles[2 * static_cast<std::size_t>(q - 1)];
        const double phi = angles[2 * static_cast<std::size_t>(q - 1) + 1];
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Complex e = std::polar(1.0, phi);
        const Complex v0 = v[0];
        const Complex vq = v[q];
        v[0] = c * v0 - e * s * vq;
        v[q] = std::conj(e) * s * v0 + c * vq;
    }
    return v;
}

struct PairVectors {
    CVector f;
    CVector g;
};

PairVectors deviations(const QuantumState& s, const Observable& a, const Observable& b) {
    require_same_dim(a.dim(), s.dim(), "observable A/state dimension");
    require_same_dim(b.dim(), s.dim(), "observable B/state dimension");
    return {deviation_vector(s, a).entries, deviation_vector(s, b).entries};
}

std::vector<CMatrix> mandatory_seeds(const Observable& a, const Observable& b) {
    const int d = a.dim();
    return {CMatrix::Identity(d, d), a.eigenvectors().columns(), b.eigenvectors().columns()};
}

}  // namespace

UnitaryParams UnitaryParams::zeros(int dim) {
    return UnitaryParams{dim, std::vector<double>(static_cast<std::size_t>(angle_count(dim)), 0.0)};
}

CMatrix synthesize_unitary(int dim, std::span<const double> angles) {
    CMatrix u = CMatrix::Identity(dim, dim);
    std::size_t k = 0;
    for (int p = 0; p < dim - 1; ++p) {
        for (int q = p + 1; q < dim; ++q) {
            apply_givens_columns(u, p, q, angles[k], angles[k + 1]);
            k += 2;
        }
    }
    return u;
}

OrthonormalBasis synthesize_basis(const UnitaryParams& p) {
    if (p.dim < 1 || p.angles.size() != static_cast<std::size_t>(UnitaryParams::angle_count(p.dim))) {
        throw Error(ErrorCode::BadParameterCount,
                    "expected " + std::to_string(UnitaryParams::angle_count(std::max(p.dim, 1))) +
                        " angles for dimension " + std::to_string(p.dim) + ", got " +
                        std::to_string(p.angles.size()));
    }
    return OrthonormalBasis(synthesize_unitary(p.dim, p.angles));
}

OptimizationReport optimize_basis(int dim, const BasisObjective& objective, std::span<const CMatrix> seeds,
                                  const OptimizerConfig& cfg) {
    const int n_angles = UnitaryParams::angle_count(dim);
    const int n_seeds = static_cast<int>(seeds.size());
    const int total = n_seeds + std::max(cfg.restarts, 0);
    const CMatrix identity = CMatrix::Identity(dim, dim);

    OptimizationReport report;
    report.best_value = -kInfinity;
    CMatrix best_u = identity;
    bool have_best = false;

    for (int restart = 0; restart < total; ++restart) {
        const CMatrix& base = restart < n_seeds ? seeds[static_cast<std::size_t>(restart)] : identity;
        std::vector<double> x0(static_cast<std::size_t>(n_angles), 0.0);
        if (restart >= n_seeds) {
            auto rng = restart_rng(cfg.seed, restart);
            x0 = random_angles(rng, n_angles);
        }
        const auto result = compass_search(
            [&](std::span<const double> x) { return objective(base * synthesize_unitary(dim, x)); },
            std::move(x0), cfg);
        report.evaluations += result.evaluations;
        report.trace.emplace_back(restart, result.value);
        if (!have_best || result.value > report.best_value) {
            have_best = true;
            report.best_value = result.value;
            best_u = base * synthesize_unitary(dim, result.x);
            report.converged = result.converged;
        }
    }
    report.restarts_used = total;
    report.best_basis = OrthonormalBasis(best_u);
    return report;
}

OptimizationReport optimize_product_bound(const QuantumState& s, const Observable& a, const Observable& b,
                                          const OptimizerConfig& cfg) {
    const auto dev = deviations(s, a, b);
    const auto seeds = mandatory_seeds(a, b);
    return optimize_basis(
        s.dim(),
        [&](const CMatrix& u) { return detail::product_objective(detail::basis_amplitudes(dev.f, dev.g, u)); },
        seeds, cfg);
}

OptimizationReport optimize_sum_bound(const QuantumState& s, const Observable& a, const Observable& b,
                                      const OptimizerConfig& cfg) {
    const auto dev = deviations(s, a, b);
    const auto seeds = mandatory_seeds(a, b);
    return optimize_basis(
        s.dim(),
        [&](const CMatrix& u) { return detail::sum_objective(detail::basis_amplitudes(dev.f, dev.g, u)); },
        seeds, cfg);
}

OptimizationReport optimize_reverse_product_bound(const QuantumState& s, const Observable& a,
                                                  const Observable& b, const OptimizerConfig& cfg) {
    const auto dev = deviations(s, a, b);
    const auto seeds = mandatory_seeds(a, b);
    const bool null_deviation = dev.f.norm() <= 1e-12 * (1.0 + max_abs(a.matrix())) ||
                                dev.g.norm() <= 1e-12 * (1.0 + max_abs(b.matrix()));
    auto report = optimize_basis(
        s.dim(),
        [&](const CMatrix& u) {
            if (null_deviation) return -kInfinity;
            const auto amp = detail::basis_amplitudes(dev.f, dev.g, u);
            const auto v = detail::reverse_basis_objective(amp.abs_alpha, amp.abs_beta);
            return v ? -*v : -kInfinity;
        },
        seeds, cfg);
    report.best_value = -report.best_value;
    for (auto& [restart, value] : report.trace) value = -value;
    return report;
}

PerpStateResult optimize_perp_state(const QuantumState& s, const VectorObjective& objective,
                                    const OptimizerConfig& cfg) {
    const CVector& psi = s.vector();
    const int d = s.dim();
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "orthogonal complement is empty for d < 2");

    // Orthonormal basis of the complement: eigenvalue-1 eigenvectors of I - |psi><psi|.
    const CMatrix projector = CMatrix::Identity(d, d) - psi * psi.adjoint();
    const CMatrix complement = eigh(projector).vectors.columns().rightCols(d - 1);
    const int m = d - 1;
    const int n_angles = 2 * (m - 1);

    const auto candidate = [&](std::span<const double> x) -> CVector {
        return complement * unit_vector_from_angles(m, x);
    };
    const Objective f = [&](std::span<const double> x) { return objective(candidate(x)); };

    PerpStateResult best;
    best.value = -kInfinity;
    bool have_best = false;
    const int total = 1 + std::max(cfg.restarts, 0);
    for (int restart = 0; restart < total; ++restart) {
        std::vector<double> x0(static_cast<std::size_t>(n_angles), 0.0);
        if (restart > 0) {
            auto rng = restart_rng(cfg.seed, restart);
            x0 = random_angles(rng, n_angles);
        }
        const auto result = compass_search(f, std::move(x0), cfg);
        best.evaluations += result.evaluations;
        if (!have_best || result.value > best.value) {
            have_best = true;
            best.value = result.value;
            best.vector = candidate(result.x);
        }
        if (n_angles == 0) break;
    }
    return best;
}

}  // namespace varbounds
