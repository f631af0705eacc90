// varbounds: compute, sweep, verify and optimize variance bounds.
//
//   varbounds compute  --config instance.cfg [--format json|csv] [--out path]
//   varbounds sweep    --preset fig1 | --config sweep.cfg [--theta-count 181] ...
//   varbounds verify   --n 1000 --dims 2,3 --seed 7
//   varbounds optimize --config instance.cfg --objective product|sum|reverse
//
// Exit status: 0 success, 1 invariant violation, 2 usage or config error.
// Without --out, output goes to $VARBOUNDS_OUT_DIR/<name> when that variable
// is set and to stdout otherwise.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "varbounds/config.hpp"
#include "varbounds/emit.hpp"
#include "varbounds/harness.hpp"
#include "varbounds/verification.hpp"

using namespace varbounds;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct OptimizerFlags {
    std::optional<int> restarts;
    std::optional<std::uint64_t> seed;
    std::optional<int> max_evals;
    std::optional<double> step_init;
    std::optional<double> step_min;
    std::optional<double> tol;

    void attach(CLI::App& app, bool with_seed) {
        app.add_option("--restarts", restarts, "Random restarts on top of the mandatory seeds");
        if (with_seed) app.add_option("--seed", seed, "Optimizer RNG seed");
        app.add_option("--max-evals", max_evals, "Objective evaluations per restart");
        app.add_option("--step-init", step_init, "Initial compass step (radians)");
        app.add_option("--step-min", step_min, "Smallest compass step (radians)");
        app.add_option("--tol", tol, "Minimum accepted improvement");
    }

    OptimizerConfig apply(OptimizerConfig cfg) const {
        if (restarts) cfg.restarts = *restarts;
        if (seed) cfg.seed = *seed;
        if (max_evals) cfg.max_evals = *max_evals;
        if (step_init) cfg.step_init = *step_init;
        if (step_min) cfg.step_min = *step_min;
        if (tol) cfg.tol = *tol;
        return cfg;
    }
};

struct OutputFlags {
    std::string format = "json";
    std::string out;

    void attach(CLI::App& app) {
        app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        app.add_option("--out", out, "Output file (default: stdout or $VARBOUNDS_OUT_DIR)");
    }

    std::optional<std::filesystem::path> path(const std::string& default_stem) const {
        if (!out.empty()) return std::filesystem::path(out);
        if (const char* dir = std::getenv("VARBOUNDS_OUT_DIR"); dir && *dir) {
            return std::filesystem::path(dir) / (default_stem + "." + format);
        }
        return std::nullopt;
    }
};

OrthonormalBasis instance_basis(const Instance& inst, const Observable& a, const Observable& b) {
    if (inst.basis) return OrthonormalBasis(*inst.basis);
    return choose_basis(inst.basis_choice, a, b);
}

int run_compute(const std::string& config_path, const OptimizerFlags& opt, const OutputFlags& out) {
    const auto cfg = ConfigFile::load(config_path);
    const auto inst = instance_from(cfg);
    const Observable a(inst.a);
    const Observable b(inst.b);
    const auto optimizer = opt.apply(optimizer_from(cfg));
    const auto report = compute_all(*inst.state, a, b, instance_basis(inst, a, b), optimizer);
    const auto format = parse_format(out.format);
    write_output(format == Format::Csv ? instance_csv(report) : dump(instance_json(report)), out.path("compute"));
    return 0;
}

struct SweepFlags {
    std::string preset;
    std::string config;
    std::optional<std::string> theta_start;
    std::optional<std::string> theta_stop;
    std::optional<int> theta_count;
    std::optional<std::string> bounds;
};

int run_sweep_cmd(const SweepFlags& flags, const OptimizerFlags& opt, const OutputFlags& out) {
    SweepSpec spec;
    if (!flags.config.empty()) {
        spec = sweep_from(ConfigFile::load(flags.config));
    } else {
        spec = SweepSpec::from_preset(parse_preset(flags.preset.empty() ? "fig1" : flags.preset));
        if (spec.preset == Preset::Custom) {
            throw Error(ErrorCode::ConfigError, "the custom preset needs --config");
        }
    }
    if (flags.theta_start) spec.grid.start = parse_angle(*flags.theta_start);
    if (flags.theta_stop) spec.grid.stop = parse_angle(*flags.theta_stop);
    if (flags.theta_count) spec.grid.count = *flags.theta_count;
    if (flags.bounds) spec.bounds = parse_bound_list(*flags.bounds);
    spec.optimizer = opt.apply(spec.optimizer.value_or(OptimizerConfig{}));

    const auto table = run_sweep(spec);
    emit(table, parse_format(out.format), out.path("sweep_" + std::string(to_string(spec.preset))));
    return 0;
}

int run_verify(const VerifyConfig& cfg, const OutputFlags& out) {
    const auto report = run_verification(cfg);
    emit(report, parse_format(out.format), out.path("verify"));
    if (!report.ok()) {
        std::cerr << "verify: " << report.violations.size() << " invariant violation(s)\n";
        return kExitViolation;
    }
    return 0;
}

int run_optimize(const std::string& config_path, const std::string& objective, const OptimizerFlags& opt,
                 const OutputFlags& out) {
    const auto cfg = ConfigFile::load(config_path);
    const auto inst = instance_from(cfg);
    const Observable a(inst.a);
    const Observable b(inst.b);
    const auto optimizer = opt.apply(optimizer_from(cfg));
    const QuantumState& s = *inst.state;
    OptimizationReport report;
    if (objective == "product") report = optimize_product_bound(s, a, b, optimizer);
    else if (objective == "sum") report = optimize_sum_bound(s, a, b, optimizer);
    else report = optimize_reverse_product_bound(s, a, b, optimizer);

    if (parse_format(out.format) == Format::Csv) {
        std::string csv = "restart,value\n";
        for (const auto& [restart, value] : report.trace) {
            csv += std::to_string(restart) + "," + format_double(value) + "\n";
        }
        write_output(csv, out.path("optimize_" + objective));
    } else {
        auto j = optimization_json(report, optimizer);
        j["objective"] = objective;
        write_output(dump(j), out.path("optimize_" + objective));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"State-dependent lower and upper bounds on variance products and sums"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    // compute
    auto* compute = app.add_subcommand("compute", "Every bound for one instance");
    std::string compute_config;
    OptimizerFlags compute_opt;
    OutputFlags compute_out;
    compute->add_option("--config", compute_config, "Instance file")->required()->check(CLI::ExistingFile);
    compute_opt.attach(*compute, true);
    compute_out.attach(*compute);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Figure presets or custom theta sweeps");
    SweepFlags sweep_flags;
    OptimizerFlags sweep_opt;
    OutputFlags sweep_out;
    sweep_out.format = "csv";
    auto* preset_opt = sweep->add_option("--preset", sweep_flags.preset, "fig1|fig2|fig3|fig4");
    sweep->add_option("--config", sweep_flags.config, "Sweep file")->check(CLI::ExistingFile)->excludes(preset_opt);
    sweep->add_option("--theta-start", sweep_flags.theta_start, "Grid start, e.g. 0 or pi/4");
    sweep->add_option("--theta-stop", sweep_flags.theta_stop, "Grid stop, e.g. pi");
    sweep->add_option("--theta-count", sweep_flags.theta_count, "Grid points (>= 2)");
    sweep->add_option("--bounds", sweep_flags.bounds, "Comma-separated bound ids");
    sweep_opt.attach(*sweep, true);
    sweep_out.attach(*sweep);

    // verify
    auto* verify = app.add_subcommand("verify", "Random-ensemble invariant checks");
    VerifyConfig verify_cfg;
    OutputFlags verify_out;
    verify->add_option("--n", verify_cfg.n, "Instances per dimension")->check(CLI::PositiveNumber);
    verify->add_option("--dims", verify_cfg.dims, "Dimensions")->delimiter(',')->check(CLI::Range(2, kMaxDim));
    verify->add_option("--seed", verify_cfg.seed, "Ensemble seed");
    verify->add_option("--tol", verify_cfg.tol, "Absolute tolerance");
    verify_out.attach(*verify);

    // optimize
    auto* optimize = app.add_subcommand("optimize", "Basis optimization for one instance");
    std::string optimize_config;
    std::string objective = "product";
    OptimizerFlags optimize_opt;
    OutputFlags optimize_out;
    optimize->add_option("--config", optimize_config, "Instance file")->required()->check(CLI::ExistingFile);
    optimize->add_option("--objective", objective, "product|sum|reverse")
        ->check(CLI::IsMember({"product", "sum", "reverse"}));
    optimize_opt.attach(*optimize, true);
    optimize_out.attach(*optimize);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*compute) return run_compute(compute_config, compute_opt, compute_out);
        if (*sweep) return run_sweep_cmd(sweep_flags, sweep_opt, sweep_out);
        if (*verify) return run_verify(verify_cfg, verify_out);
        if (*optimize) return run_optimize(optimize_config, objective, optimize_opt, optimize_out);
    } catch (const Error& e) {
        std::cerr << "varbounds: " << e.what() << "\n";
        return e.code() == ErrorCode::InternalConsistency ? kExitViolation : kExitUsage;
    }
    return kExitUsage;
}
