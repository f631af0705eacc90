// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
//
//   varbounds_acceptance [path-to-varbounds-cli]
//
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "varbounds/basis_optimizer.hpp"
#include "varbounds/emit.hpp"
#include "varbounds/harness.hpp"
#include "varbounds/lower_bounds.hpp"
#include "varbounds/upper_bounds.hpp"
#include "varbounds/verification.hpp"

using namespace varbounds;

namespace {

constexpr double kSpotTol = 1e-9;
constexpr double kSpotSeconds = 1.0;
constexpr double kTheoremTol = 1e-10;
constexpr long kTheoremN = 10000;
constexpr double kTheoremSeconds = 60.0;
constexpr int kOptimizerInstances = 100;
constexpr double kScanTol = 1e-6;
constexpr double kEnvelopeTol = 1e-10;
constexpr double kOptimizerSeconds = 120.0;
constexpr double kOrderTol = 1e-10;
constexpr double kTangencyGap = 0.05;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)) {}

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            details_.push_back("failed: " + what);
        }
    }
    void note(const std::string& text) { details_.push_back(text); }

    bool report() const {
        std::printf("[%s] %s\n", pass_ ? "PASS" : "FAIL", name_.c_str());
        for (const auto& d : details_) std::printf("       %s\n", d.c_str());
        std::fflush(stdout);
        return pass_;
    }

private:
    std::string name_;
    bool pass_ = true;
    std::vector<std::string> details_;
};

std::string fmt(const char* pattern, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, args...);
    return buf;
}

bool close(double x, double y, double tol) { return std::abs(x - y) <= tol; }

QuantumState ket0() {
    CVector v(2);
    v << 1.0, 0.0;
    return QuantumState::pure(v);
}

const BoundResult& find(const SweepRow& row, BoundKind kind) {
    for (const auto& b : row.bounds)
        if (b.kind == kind) return b;
    std::fprintf(stderr, "bound %s missing from sweep row\n", std::string(bound_info(kind).id).c_str());
    std::abort();
}

SweepRow first_row(Preset p, double theta) {
    auto spec = SweepSpec::from_preset(p);
    spec.grid = {theta, theta + 1.0, 2};
    return run_sweep(spec).rows.front();
}

SweepRow last_row(Preset p, double theta) {
    auto spec = SweepSpec::from_preset(p);
    spec.grid = {theta - 1.0, theta, 2};
    return run_sweep(spec).rows.back();
}

bool spot_values() {
    Criterion c("1 spot values (tol 1e-9, < 1 s)");
    const auto t0 = Clock::now();

    const auto fig1 = first_row(Preset::Fig1, 0.0);
    c.check(close(fig1.exact.product, 0.25, kSpotTol), fmt("fig1 product %.17g", fig1.exact.product));
    c.check(close(find(fig1, BoundKind::RsProduct).value, 0.25, kSpotTol), "fig1 RS bound");
    c.check(close(find(fig1, BoundKind::FidelityProduct).value, 0.25, kSpotTol), "fig1 fidelity bound");

    const auto fig2 = first_row(Preset::Fig2, 0.0);
    c.check(close(fig2.exact.sum, 1.0, kSpotTol), fmt("fig2 sum %.17g", fig2.exact.sum));
    c.check(close(find(fig2, BoundKind::ParallelogramSum).value, 1.0, kSpotTol), "fig2 parallelogram bound");

    const auto p = pauli_operators();
    const auto s = ket0();
    const auto exact = exact_quantities(s, p.x, p.y);
    c.check(close(rs_product_bound(s, p.x, p.y).value, 1.0, kSpotTol), "qubit RS = 1");
    c.check(close(fidelity_product_bound(s, p.x, p.y).value, 1.0, kSpotTol), "qubit fidelity bound = 1");
    c.check(close(dw_deviation_sum_bound(s, p.x, p.y).value, 2.0, kSpotTol), "qubit DW deviation bound = 2");
    c.check(close(exact.deviation_sum, 2.0, kSpotTol), "qubit dA + dB = 2");
    c.check(close(dw_variance_sum_bound(s, p.x, p.y).value, 2.0, kSpotTol), "qubit DW variance bound = 2");
    c.check(close(exact.sum, 2.0, kSpotTol), "qubit sum = 2");

    const auto fig4 = last_row(Preset::Fig4, std::numbers::pi);
    c.check(close(fig4.exact.sum, 1.75, kSpotTol), fmt("fig4 sum %.17g", fig4.exact.sum));
    const double dw = find(fig4, BoundKind::DwVarianceSum).value;
    c.check(close(dw, 3.5 - std::sqrt(3.0), kSpotTol), fmt("fig4 DW variance bound %.17g", dw));

    const double elapsed = seconds_since(t0);
    c.check(elapsed < kSpotSeconds, fmt("runtime %.3f s", elapsed));
    c.note(fmt("runtime %.3f s", elapsed));
    return c.report();
}

bool theorem_suites() {
    Criterion c("2 theorem suites (n = 10000 per d in {2,3,4,6}, tol 1e-10, < 60 s)");
    VerifyConfig cfg;
    cfg.n = kTheoremN;
    cfg.dims = {2, 3, 4, 6};
    cfg.tol = kTheoremTol;
    const auto t0 = Clock::now();
    const auto report = run_verification(cfg);
    const double elapsed = seconds_since(t0);

    c.check(report.instances == kTheoremN * 4, fmt("instance count %ld", report.instances));
    const std::vector<std::string> required{
        "chain_basis_ge_rs", "rs_product", "basis_product", "fidelity_product", "parallelogram_sum",
        "basis_sum", "mp_sum_1", "mp_sum_2", "reverse_fidelity_product", "reverse_basis_product",
        "dw_deviation_sum", "dw_variance_sum", "sandwich_product", "sandwich_sum", "covariance_cs"};
    for (const auto& name : required) {
        const auto it = report.checks.find(name);
        if (it == report.checks.end()) {
            c.check(false, name + " not run");
            continue;
        }
        const auto& st = it->second;
        c.check(st.violations == 0, fmt("%s: %ld violations", name.c_str(), st.violations));
        c.note(fmt("%-26s checked %6ld  undefined %.4f  max slack %.3g", name.c_str(), st.checked,
                   st.undefined_fraction(), st.max_slack));
    }
    c.check(report.ok(), "report not ok");
    c.check(elapsed < kTheoremSeconds, fmt("runtime %.1f s", elapsed));
    c.note(fmt("runtime %.1f s", elapsed));
    return c.report();
}

bool optimizer_checks() {
    Criterion c("3 optimizer on 100 random d=2 instances (scan 1e-6, envelope 1e-10, < 120 s)");
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240601);
    double worst_scan = 0.0;
    double worst_envelope = -std::numeric_limits<double>::infinity();
    const OptimizerConfig cfg;
    for (int i = 0; i < kOptimizerInstances; ++i) {
        const Observable a(oracle::random_hermitian(rng, 2)), b(oracle::random_hermitian(rng, 2));
        const auto s = QuantumState::pure(oracle::random_state(rng, 2));
        const CMatrix id = CMatrix::Identity(2, 2);
        const CVector f = (a.matrix() - (s.vector().adjoint() * a.matrix() * s.vector())(0, 0).real() * id) * s.vector();
        const CVector g = (b.matrix() - (s.vector().adjoint() * b.matrix() * s.vector())(0, 0).real() * id) * s.vector();
        const double scan = oracle::scan_qubit_bases([&](const CMatrix& u) { return oracle::basis_product(f, g, u); });
        const auto r = optimize_product_bound(s, a, b, cfg);
        worst_scan = std::max(worst_scan, std::abs(r.best_value - scan));
        const double product = oracle::variance(s.density(), a.matrix()) * oracle::variance(s.density(), b.matrix());
        worst_envelope = std::max(worst_envelope, r.best_value - product);
    }
    c.check(worst_scan <= kScanTol, fmt("scan deviation %.3g", worst_scan));
    c.check(worst_envelope <= kEnvelopeTol, fmt("envelope excess %.3g", worst_envelope));
    c.note(fmt("max |optimizer - scan| %.3g, max (optimizer - product) %.3g", worst_scan, worst_envelope));

    // Monotonicity and determinism, also on larger dimensions where restarts matter.
    int monotone_failures = 0, determinism_failures = 0;
    for (int d : {2, 3, 4}) {
        for (int i = 0; i < 4; ++i) {
            const Observable a(oracle::random_hermitian(rng, d)), b(oracle::random_hermitian(rng, d));
            const auto s = QuantumState::pure(oracle::random_state(rng, d));
            double previous = -std::numeric_limits<double>::infinity();
            for (int restarts : {0, 1, 2, 4, 8}) {
                OptimizerConfig o;
                o.restarts = restarts;
                const auto r = optimize_product_bound(s, a, b, o);
                if (r.best_value < previous) ++monotone_failures;
                previous = r.best_value;
                const auto again = optimize_product_bound(s, a, b, o);
                if (again.best_value != r.best_value || again.best_basis.columns() != r.best_basis.columns() ||
                    again.trace != r.trace || again.evaluations != r.evaluations)
                    ++determinism_failures;
            }
        }
    }
    c.check(monotone_failures == 0, fmt("%d non-monotone restart steps", monotone_failures));
    c.check(determinism_failures == 0, fmt("%d non-identical reruns", determinism_failures));

    const double elapsed = seconds_since(t0);
    c.check(elapsed < kOptimizerSeconds, fmt("runtime %.1f s", elapsed));
    c.note(fmt("runtime %.1f s", elapsed));
    return c.report();
}

struct OrderCount {
    int points = 0;
    int failures = 0;
    double worst = 0.0;
    double first_theta = std::numeric_limits<double>::quiet_NaN();

    // Records whether hi >= lo at theta.
    void ge(double hi, double lo, double theta) {
        ++points;
        if (hi < lo - kOrderTol) {
            if (failures == 0) first_theta = theta;
            ++failures;
            worst = std::max(worst, lo - hi);
        }
    }
};

void expect_order(Criterion& c, const char* what, const OrderCount& o) {
    c.check(o.failures == 0, fmt("%s at %d of %d points (worst shortfall %.3g, first theta %.4f)", what,
                                 o.failures, o.points, o.worst, o.first_theta));
}

bool figure_shapes() {
    Criterion c("4 figure-shape orderings at every grid point (fig1-fig4, 181 points)");

    const auto fig1 = run_sweep(SweepSpec::from_preset(Preset::Fig1));
    OrderCount eq6_rs, rs_zero, opt_eq6, opt_rs, product_opt;
    for (const auto& row : fig1.rows) {
        const double rs = find(row, BoundKind::RsProduct).value;
        const double eq6 = find(row, BoundKind::FidelityProduct).value;
        const double opt = find(row, BoundKind::OptBasisProduct).value;
        eq6_rs.ge(eq6, rs, row.theta);
        rs_zero.ge(rs, 0.0, row.theta);
        opt_eq6.ge(opt, eq6, row.theta);
        opt_rs.ge(opt, rs, row.theta);
        product_opt.ge(row.exact.product, opt, row.theta);
    }
    expect_order(c, "fig1 fidelity bound < RS bound", eq6_rs);
    expect_order(c, "fig1 RS bound < 0", rs_zero);
    expect_order(c, "fig1 optimized < fidelity bound", opt_eq6);
    expect_order(c, "fig1 optimized < RS bound", opt_rs);
    expect_order(c, "fig1 product < optimized", product_opt);

    const auto fig2 = run_sweep(SweepSpec::from_preset(Preset::Fig2));
    OrderCount sum_par, sum_mp1, sum_mp2, par_mp2;
    int mp1_above_par = 0;
    for (const auto& row : fig2.rows) {
        const double par = find(row, BoundKind::ParallelogramSum).value;
        const double mp1 = find(row, BoundKind::MpSum1).value;
        const double mp2 = find(row, BoundKind::MpSum2).value;
        sum_par.ge(row.exact.sum, par, row.theta);
        sum_mp1.ge(row.exact.sum, mp1, row.theta);
        sum_mp2.ge(row.exact.sum, mp2, row.theta);
        par_mp2.ge(par, mp2, row.theta);
        if (mp1 > par + kOrderTol) ++mp1_above_par;
    }
    expect_order(c, "fig2 sum < parallelogram bound", sum_par);
    expect_order(c, "fig2 sum < mp_sum_1", sum_mp1);
    expect_order(c, "fig2 sum < mp_sum_2", sum_mp2);
    expect_order(c, "fig2 parallelogram < mp_sum_2", par_mp2);
    c.note(fmt("fig2: optimized mp_sum_1 exceeds the parallelogram bound at %d of %zu points", mp1_above_par,
               fig2.rows.size()));

    const auto fig3 = run_sweep(SweepSpec::from_preset(Preset::Fig3));
    OrderCount rev_product;
    int undefined3 = 0;
    for (const auto& row : fig3.rows) {
        const auto& r = find(row, BoundKind::ReverseFidelityProduct);
        if (!r.defined) {
            ++undefined3;
            continue;
        }
        rev_product.ge(r.value, row.exact.product, row.theta);
    }
    expect_order(c, "fig3 reverse bound < product", rev_product);
    c.check(rev_product.points > 0, "fig3 reverse bound never defined");
    c.note(fmt("fig3: reverse bound undefined at %d of %zu points", undefined3, fig3.rows.size()));

    const auto fig4 = run_sweep(SweepSpec::from_preset(Preset::Fig4));
    OrderCount dw_sum, dwdev_devsum;
    double min_gap = std::numeric_limits<double>::infinity(), gap_theta = 0.0;
    for (const auto& row : fig4.rows) {
        const auto& var = find(row, BoundKind::DwVarianceSum);
        const auto& dev = find(row, BoundKind::DwDeviationSum);
        if (var.defined) {
            dw_sum.ge(var.value, row.exact.sum, row.theta);
            if (var.value - row.exact.sum < min_gap) {
                min_gap = var.value - row.exact.sum;
                gap_theta = row.theta;
            }
        }
        if (dev.defined) dwdev_devsum.ge(dev.value, row.exact.deviation_sum, row.theta);
    }
    expect_order(c, "fig4 DW variance bound < sum", dw_sum);
    expect_order(c, "fig4 DW deviation bound < dA + dB", dwdev_devsum);
    c.check(min_gap < kTangencyGap, fmt("fig4 minimum gap %.3g", min_gap));
    c.note(fmt("fig4: minimum DW gap %.3g at theta %.4f", min_gap, gap_theta));
    return c.report();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool determinism(const char* cli) {
    Criterion c("5 verify --seed 7 twice gives byte-identical JSON");
    if (cli == nullptr) {
        c.check(false, "no CLI path given");
        return c.report();
    }
    const auto dir = std::filesystem::temp_directory_path() / "varbounds_acceptance";
    std::filesystem::create_directories(dir);
    const auto first = dir / "verify_1.json";
    const auto second = dir / "verify_2.json";
    int rc[2];
    int k = 0;
    for (const auto& out : {first, second}) {
        const std::string cmd = "\"" + std::string(cli) + "\" verify --seed 7 --format json --out \"" + out.string() + "\"";
        rc[k++] = std::system(cmd.c_str());
    }
    c.check(rc[0] == 0 && rc[1] == 0, fmt("exit codes %d, %d", rc[0], rc[1]));
    const std::string a = slurp(first), b = slurp(second);
    c.check(!a.empty(), "empty report");
    c.check(a == b, "reports differ");
    c.note(fmt("report size %zu bytes", a.size()));
    return c.report();
}

}  // namespace

int main(int argc, char** argv) {
    bool ok = true;
    ok &= spot_values();
    ok &= theorem_suites();
    ok &= optimizer_checks();
    ok &= figure_shapes();
    ok &= determinism(argc > 1 ? argv[1] : nullptr);
    std::printf("%s\n", ok ? "all criteria passed" : "some criteria failed");
    return ok ? 0 : 1;
}
