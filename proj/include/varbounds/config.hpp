#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "varbounds/harness.hpp"
#include "varbounds/linalg.hpp"
#include "varbounds/optimizer_config.hpp"

namespace varbounds {

/// Flat key/value experiment file with `[section]` headers.
///
///     # comment (anywhere on a line)
///     [observables]
///     A = pauli.x
///     B = 1, 0; 0, -1        # rows separated by ';', entries by ','
///     [state]
///     vector = 0.6, 0.8i
///
/// Keys before the first header belong to the section "". Duplicate keys
/// within a section are rejected.
class ConfigFile {
public:
    static ConfigFile parse(std::string_view text);
    static ConfigFile load(const std::filesystem::path& path);

    std::optional<std::string> get(std::string_view section, std::string_view key) const;
    bool has_section(std::string_view section) const;

    const std::map<std::string, std::map<std::string, std::string, std::less<>>, std::less<>>& sections() const {
        return sections_;
    }

private:
    std::map<std::string, std::map<std::string, std::string, std::less<>>, std::less<>> sections_;
};

/// `re`, `im i`, `re+im i` or `re-im i`; `j` is accepted for `i`.
Complex parse_complex(std::string_view text);

/// Decimal number, optionally scaled by pi: `0.5`, `pi`, `pi/2`, `3*pi/4`.
double parse_angle(std::string_view text);

/// Rows separated by ';', entries by ','. All rows must have equal length.
CMatrix parse_matrix_literal(std::string_view text);
CVector parse_vector_literal(std::string_view text);

/// Named operator (`pauli.x|y|z`, `spin1.x|y|z`) or a matrix literal.
CMatrix resolve_operator(std::string_view text);

/// Fields missing from the [optimizer] section keep the values in `defaults`.
OptimizerConfig optimizer_from(const ConfigFile& cfg, OptimizerConfig defaults = {});

struct Instance {
    CMatrix a;
    CMatrix b;
    std::optional<QuantumState> state;
    BasisChoice basis_choice = BasisChoice::Standard;
    std::optional<CMatrix> basis;  // explicit literal overrides basis_choice
};

/// [observables] A, B and [state] with one of: vector, density, bloch, or
/// family + theta. Optional [basis] choice = standard | eigen_a | eigen_b | <matrix>.
Instance instance_from(const ConfigFile& cfg);

/// [sweep] preset, theta_start, theta_stop, theta_count, bounds, family,
/// basis; observables from [observables] for the custom preset.
SweepSpec sweep_from(const ConfigFile& cfg);

std::vector<BoundKind> parse_bound_list(std::string_view text);

}  // namespace varbounds
