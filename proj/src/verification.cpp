#include "varbounds/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "varbounds/bound_result.hpp"
#include "varbounds/lower_bounds.hpp"
#include "varbounds/moments.hpp"
#include "varbounds/upper_bounds.hpp"

namespace varbounds {

namespace {

CMatrix ginibre(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix g(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    return g;
}

class Fnv1a {
public:
    void add(const CMatrix& m) {
        for (Eigen::Index k = 0; k < m.size(); ++k) {
            add(m.data()[k].real());
            add(m.data()[k].imag());
        }
    }
    void add(double x) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &x, sizeof(double));
        for (const unsigned char byte : bytes) {
            hash_ ^= byte;
            hash_ *= 0x100000001b3ULL;
        }
    }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash_));
        return buf;
    }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

class Recorder {
public:
    Recorder(VerificationReport& report, double tol) : report_(report), tol_(tol) {}

    void begin(int dim, long index, std::string digest) {
        dim_ = dim;
        index_ = index;
        digest_ = std::move(digest);
    }

    void slack(const std::string& check, double value) { slack(check, value, tol_); }

    void slack(const std::string& check, double value, double tol) {
        auto& stats = report_.checks[check];
        ++stats.checked;
        stats.max_slack = std::max(stats.max_slack, value);
        if (!(value <= tol)) {
            ++stats.violations;
            report_.violations.push_back({check, digest_, dim_, index_, value});
        }
    }

    void undefined(const std::string& check) { ++report_.checks[check].undefined; }

    /// Validity of a bound against its exact quantity.
    void bound(const BoundResult& r, double exact) {
        const std::string id(r.id());
        if (!r.defined) {
            undefined(id);
            return;
        }
        const auto dir = bound_info(r.kind).direction;
        slack(id, dir == Direction::Lower ? r.value - exact : exact - r.value);
    }

private:
    VerificationReport& report_;
    double tol_;
    int dim_ = 0;
    long index_ = 0;
    std::string digest_;
};

void check_state(Recorder& rec, const QuantumState& s, const Observable& a, const Observable& b,
                 const OrthonormalBasis& basis, const VerifyConfig& cfg) {
    const double var_a = variance(s, a);
    const double var_b = variance(s, b);
    const double product = var_a * var_b;
    const double sum = var_a + var_b;
    const double dev_sum = std::sqrt(var_a) + std::sqrt(var_b);

    const auto rs = rs_product_bound(s, a, b);
    const auto fid = fidelity_product_bound(s, a, b);
    const auto par = parallelogram_sum_bound(s, a, b);
    const auto rev = reverse_fidelity_product_bound(s, a, b);
    const auto dw_dev = dw_deviation_sum_bound(s, a, b);
    const auto dw_var = dw_variance_sum_bound(s, a, b);

    rec.bound(rs, product);
    rec.bound(fid, product);
    rec.bound(par, sum);
    rec.bound(rev, product);
    rec.bound(dw_dev, dev_sum);
    rec.bound(dw_var, sum);

    if (rev.defined) {
        rec.slack("sandwich_product", std::max(fid.value - product, product - rev.value));
        rec.slack("reverse_factor_ge_1", 1.0 - rev.intermediates.at("omega"));
    } else {
        rec.undefined("sandwich_product");
    }
    if (dw_var.defined) {
        rec.slack("sandwich_sum", std::max(par.value - sum, sum - dw_var.value));
    } else {
        rec.undefined("sandwich_sum");
    }
    rec.slack("covariance_cs", std::abs(covariance(s, a, b)) - std::sqrt(var_a) * std::sqrt(var_b));

    if (!s.is_pure()) return;

    const auto basis_prod = basis_product_bound(s, a, b, basis);
    rec.bound(basis_prod, product);
    rec.slack("chain_basis_ge_rs", rs.value - basis_prod.value);
    rec.bound(basis_sum_bound(s, a, b, basis), sum);
    rec.bound(mp_sum_bound_1(s, a, b, cfg.mp_search), sum);
    rec.bound(mp_sum_bound_2(s, a, b), sum);

    const auto rev_basis = reverse_basis_product_bound(s, a, b, basis);
    rec.bound(rev_basis, product);
    if (rev_basis.defined) rec.slack("reverse_factor_ge_1", 1.0 - rev_basis.intermediates.at("lambda"));

    // Moments through the vector and through the rank-1 density matrix agree.
    const auto as_density = QuantumState::mixed(s.density());
    const double gap = std::max({std::abs(variance(as_density, a) - var_a),
                                 std::abs(variance(as_density, b) - var_b),
                                 std::abs(covariance(as_density, a, b) - covariance(s, a, b)),
                                 std::abs(deviation_vector(s, a).norm_squared() - var_a)});
    rec.slack("pure_density_agreement", gap);
}

}  // namespace

double CheckStats::undefined_fraction() const {
    const long total = checked + undefined;
    return total == 0 ? 0.0 : static_cast<double>(undefined) / static_cast<double>(total);
}

CMatrix random_hermitian(std::mt19937_64& rng, int dim) {
    const CMatrix g = ginibre(rng, dim, dim);
    return 0.5 * (g + g.adjoint());
}

CVector random_pure_vector(std::mt19937_64& rng, int dim) {
    const CVector v = ginibre(rng, dim, 1).col(0);
    return v / v.norm();
}

CMatrix random_density(std::mt19937_64& rng, int dim) {
    const CMatrix g = ginibre(rng, dim, dim);
    CMatrix rho = g * g.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    return rho / rho.trace().real();
}

CMatrix random_unitary(std::mt19937_64& rng, int dim) {
    const CMatrix g = ginibre(rng, dim, dim);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < dim; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

std::mt19937_64 instance_rng(std::uint64_t seed, int dim, long index) {
    const auto idx = static_cast<std::uint64_t>(index);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(dim), static_cast<std::uint32_t>(idx),
                      static_cast<std::uint32_t>(idx >> 32)};
    return std::mt19937_64(seq);
}

VerificationReport run_verification(const VerifyConfig& cfg) {
    if (cfg.n < 1) throw Error(ErrorCode::InvalidArgument, "verification needs n >= 1");
    if (cfg.dims.empty()) throw Error(ErrorCode::InvalidArgument, "verification needs at least one dimension");
    for (const int d : cfg.dims) {
        if (d < 2 || d > kMaxDim) throw Error(ErrorCode::InvalidArgument, "dimensions must lie in [2, 32]");
    }

    VerificationReport report;
    report.config = cfg;
    Recorder rec(report, cfg.tol);
    for (const int d : cfg.dims) {
        for (long i = 0; i < cfg.n; ++i) {
            auto rng = instance_rng(cfg.seed, d, i);
            const CMatrix a_mat = random_hermitian(rng, d);
            const CMatrix b_mat = random_hermitian(rng, d);
            const CVector psi = random_pure_vector(rng, d);
            const CMatrix rho = random_density(rng, d);
            const CMatrix u = random_unitary(rng, d);

            Fnv1a digest;
            digest.add(a_mat);
            digest.add(b_mat);
            digest.add(psi);
            digest.add(rho);
            digest.add(u);
            rec.begin(d, i, digest.hex());

            const Observable a(a_mat);
            const Observable b(b_mat);
            const OrthonormalBasis basis(u);
            check_state(rec, QuantumState::pure(psi), a, b, basis, cfg);
            check_state(rec, QuantumState::mixed(rho), a, b, basis, cfg);
            ++report.instances;
        }
    }
    return report;
}

}  // namespace varbounds
