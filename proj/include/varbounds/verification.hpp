#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "varbounds/linalg.hpp"
#include "varbounds/optimizer_config.hpp"

namespace varbounds {

struct VerifyConfig {
    long n = 1000;  // instances per dimension
    std::vector<int> dims{2, 3};
    std::uint64_t seed = 7;
    double tol = 1e-10;
    /// Budget for the baseline's orthogonal-state search. Any orthogonal
    /// vector gives a valid value, so a short search suffices here.
    OptimizerConfig mp_search{.restarts = 1, .seed = 0xDEBA515, .max_evals = 400};
};

/// Statistics for one named check across the ensemble.
///
/// Slack is signed so that positive means the inequality is broken:
/// bound - exact for lower bounds, exact - bound for upper bounds.
struct CheckStats {
    long checked = 0;
    long undefined = 0;
    long violations = 0;
    double max_slack = -std::numeric_limits<double>::infinity();

    double undefined_fraction() const;
};

struct Violation {
    std::string check;
    std::string digest;
    int dim = 0;
    long index = 0;
    double slack = 0.0;
};

struct VerificationReport {
    VerifyConfig config;
    long instances = 0;
    std::map<std::string, CheckStats> checks;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

/// Throws InvalidArgument when n < 1 or dims is empty or has d < 2.
VerificationReport run_verification(const VerifyConfig& cfg);

/// Random ensembles, exposed for tests. Each takes the generator by reference.
CMatrix random_hermitian(std::mt19937_64& rng, int dim);
CVector random_pure_vector(std::mt19937_64& rng, int dim);
CMatrix random_density(std::mt19937_64& rng, int dim);
CMatrix random_unitary(std::mt19937_64& rng, int dim);

/// Generator for instance `index` of dimension `dim`.
std::mt19937_64 instance_rng(std::uint64_t seed, int dim, long index);

}  // namespace varbounds
