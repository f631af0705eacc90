#include "varbounds/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

namespace varbounds {

using json = nlohmann::ordered_json;

namespace {

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += csv_field(cells[i]);
    }
    out += '\n';
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string status_of(const BoundResult& r) { return r.defined ? "ok" : r.reason; }

const std::vector<std::string> kExactColumns{"var_a", "var_b", "product", "sum", "deviation_sum"};

std::vector<double> exact_values(const ExactQuantities& e) {
    return {e.var_a, e.var_b, e.product, e.sum, e.deviation_sum};
}

json intermediates_json(const BoundResult& r) {
    json j = json::object();
    for (const auto& [k, v] : r.intermediates) j[k] = number_or_null(v);
    return j;
}

void add_bounds(json& row, const std::vector<BoundResult>& bounds) {
    for (const auto& b : bounds) {
        row[std::string(b.id())] = number_or_null(b.defined ? b.value : kInfinity);
        row[std::string(b.id()) + "_status"] = status_of(b);
    }
    json extra = json::object();
    for (const auto& b : bounds) {
        json entry;
        entry["baseline"] = b.baseline;
        entry["intermediates"] = intermediates_json(b);
        extra[std::string(b.id())] = std::move(entry);
    }
    row["details"] = std::move(extra);
}

std::string basis_label(BasisChoice c) {
    switch (c) {
        case BasisChoice::Standard: return "standard";
        case BasisChoice::EigenA: return "eigen_a";
        case BasisChoice::EigenB: return "eigen_b";
    }
    return "standard";
}

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(name) + "'");
}

std::string format_double(double x) {
    if (!std::isfinite(x)) return {};
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string sweep_csv(const SweepTable& table) {
    std::string out;
    std::vector<std::string> header{"theta"};
    header.insert(header.end(), kExactColumns.begin(), kExactColumns.end());
    for (const BoundKind k : table.spec.bounds) {
        header.emplace_back(bound_info(k).id);
        header.push_back(std::string(bound_info(k).id) + "_status");
    }
    append_row(out, header);
    for (const auto& row : table.rows) {
        std::vector<std::string> cells{format_double(row.theta)};
        for (const double v : exact_values(row.exact)) cells.push_back(format_double(v));
        for (const auto& b : row.bounds) {
            cells.push_back(b.defined ? format_double(b.value) : std::string());
            cells.push_back(status_of(b));
        }
        append_row(out, cells);
    }
    return out;
}

json optimizer_json(const OptimizerConfig& cfg) {
    json j;
    j["restarts"] = cfg.restarts;
    j["seed"] = cfg.seed;
    j["max_evals"] = cfg.max_evals;
    j["step_init"] = cfg.step_init;
    j["step_min"] = cfg.step_min;
    j["tol"] = cfg.tol;
    return j;
}

json sweep_json(const SweepTable& table) {
    const auto& spec = table.spec;
    json meta;
    meta["tool"] = "varbounds";
    meta["version"] = kVersion;
    meta["preset"] = to_string(spec.preset);
    meta["observables"] = {{"A", spec.a_label}, {"B", spec.b_label}};
    meta["state_family"] = {{"id", to_string(spec.family)}, {"description", describe(spec.family)}};
    meta["theta_grid"] = {{"start", spec.grid.start}, {"stop", spec.grid.stop}, {"count", spec.grid.count}};
    meta["basis"] = basis_label(spec.basis);
    meta["optimizer"] = spec.optimizer ? optimizer_json(*spec.optimizer) : json(nullptr);
    json notes = json::array();
    if (spec.family == StateFamily::BlochFig3) notes.push_back(kSigma2Note);
    meta["notes"] = std::move(notes);
    json bounds = json::array();
    for (const BoundKind k : spec.bounds) {
        const auto& info = bound_info(k);
        bounds.push_back({{"id", info.id},
                          {"direction", info.direction == Direction::Lower   ? "lower"
                                        : info.direction == Direction::Upper ? "upper"
                                                                             : "comparison"},
                          {"baseline", info.baseline}});
    }
    meta["bounds"] = std::move(bounds);

    json rows = json::array();
    for (const auto& row : table.rows) {
        json r;
        r["theta"] = row.theta;
        const auto values = exact_values(row.exact);
        for (std::size_t i = 0; i < kExactColumns.size(); ++i) r[kExactColumns[i]] = values[i];
        add_bounds(r, row.bounds);
        rows.push_back(std::move(r));
    }
    json out;
    out["metadata"] = std::move(meta);
    out["rows"] = std::move(rows);
    return out;
}

std::string instance_csv(const InstanceReport& report) {
    std::string out;
    std::vector<std::string> header(kExactColumns.begin(), kExactColumns.end());
    for (const auto& b : report.bounds) {
        header.emplace_back(b.id());
        header.push_back(std::string(b.id()) + "_status");
    }
    append_row(out, header);
    std::vector<std::string> cells;
    for (const double v : exact_values(report.exact)) cells.push_back(format_double(v));
    for (const auto& b : report.bounds) {
        cells.push_back(b.defined ? format_double(b.value) : std::string());
        cells.push_back(status_of(b));
    }
    append_row(out, cells);
    return out;
}

json instance_json(const InstanceReport& report) {
    json j;
    j["tool"] = "varbounds";
    j["version"] = kVersion;
    const auto values = exact_values(report.exact);
    for (std::size_t i = 0; i < kExactColumns.size(); ++i) j[kExactColumns[i]] = values[i];
    add_bounds(j, report.bounds);
    return j;
}

std::string verification_csv(const VerificationReport& report) {
    std::string out;
    append_row(out, {"check", "checked", "undefined", "undefined_fraction", "violations", "max_slack"});
    for (const auto& [name, stats] : report.checks) {
        append_row(out, {name, std::to_string(stats.checked), std::to_string(stats.undefined),
                         format_double(stats.undefined_fraction()), std::to_string(stats.violations),
                         format_double(stats.max_slack)});
    }
    return out;
}

json verification_json(const VerificationReport& report) {
    const auto& cfg = report.config;
    json meta;
    meta["tool"] = "varbounds";
    meta["version"] = kVersion;
    meta["seed"] = cfg.seed;
    meta["n"] = cfg.n;
    meta["dims"] = cfg.dims;
    meta["tol"] = cfg.tol;
    meta["mp_search"] = optimizer_json(cfg.mp_search);

    json checks = json::object();
    for (const auto& [name, stats] : report.checks) {
        checks[name] = {{"checked", stats.checked},
                        {"undefined", stats.undefined},
                        {"undefined_fraction", stats.undefined_fraction()},
                        {"violations", stats.violations},
                        {"max_slack", number_or_null(stats.max_slack)}};
    }
    json violations = json::array();
    for (const auto& v : report.violations) {
        violations.push_back(
            {{"check", v.check}, {"digest", v.digest}, {"dim", v.dim}, {"index", v.index}, {"slack", v.slack}});
    }
    json out;
    out["metadata"] = std::move(meta);
    out["instances"] = report.instances;
    out["ok"] = report.ok();
    out["checks"] = std::move(checks);
    out["violations"] = std::move(violations);
    return out;
}

json optimization_json(const OptimizationReport& report, const OptimizerConfig& cfg) {
    json j;
    j["tool"] = "varbounds";
    j["version"] = kVersion;
    j["optimizer"] = optimizer_json(cfg);
    j["best_value"] = number_or_null(report.best_value);
    j["best_basis"] = matrix_json(report.best_basis.columns());
    j["restarts_used"] = report.restarts_used;
    j["evaluations"] = report.evaluations;
    j["converged"] = report.converged;
    json trace = json::array();
    for (const auto& [restart, value] : report.trace) trace.push_back(json::array({restart, number_or_null(value)}));
    j["trace"] = std::move(trace);
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_output(const std::string& content, const std::optional<std::filesystem::path>& path) {
    if (!path || path->empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::error_code ec;
    if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path(), ec);
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path->string());
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path->string());
}

void emit(const SweepTable& table, Format format, const std::optional<std::filesystem::path>& path) {
    write_output(format == Format::Csv ? sweep_csv(table) : dump(sweep_json(table)), path);
}

void emit(const VerificationReport& report, Format format, const std::optional<std::filesystem::path>& path) {
    write_output(format == Format::Csv ? verification_csv(report) : dump(verification_json(report)), path);
}

}  // namespace varbounds
