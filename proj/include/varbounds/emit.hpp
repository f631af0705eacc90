#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "varbounds/basis_optimizer.hpp"
#include "varbounds/harness.hpp"
#include "varbounds/verification.hpp"

namespace varbounds {

enum class Format { Csv, Json };

Format parse_format(std::string_view name);

/// "%.17g"; non-finite values render as an empty cell.
std::string format_double(double x);

/// Header: theta, var_a, var_b, product, sum, deviation_sum, then
/// `<bound>`, `<bound>_status` per requested bound. Undefined bounds leave the
/// value cell empty and put the reason in the status column.
std::string sweep_csv(const SweepTable& table);
nlohmann::ordered_json sweep_json(const SweepTable& table);

std::string instance_csv(const InstanceReport& report);
nlohmann::ordered_json instance_json(const InstanceReport& report);

std::string verification_csv(const VerificationReport& report);
nlohmann::ordered_json verification_json(const VerificationReport& report);

nlohmann::ordered_json optimization_json(const OptimizationReport& report, const OptimizerConfig& cfg);
nlohmann::ordered_json optimizer_json(const OptimizerConfig& cfg);

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

/// Writes `content` to `path`, or to stdout when path is empty. Throws IoError.
void write_output(const std::string& content, const std::optional<std::filesystem::path>& path);

void emit(const SweepTable& table, Format format, const std::optional<std::filesystem::path>& path);
void emit(const VerificationReport& report, Format format, const std::optional<std::filesystem::path>& path);

}  // namespace varbounds
