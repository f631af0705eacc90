#include "varbounds/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace varbounds {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

double parse_real(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        config_error("not a number: '" + std::string(text) + "'");
    }
    return value;
}

long parse_integer(std::string_view text) {
    text = trim(text);
    int base = 10;
    if (text.starts_with("0x") || text.starts_with("0X")) {
        text.remove_prefix(2);
        base = 16;
    }
    unsigned long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        config_error("not an integer: '" + std::string(text) + "'");
    }
    return static_cast<long>(value);
}

std::uint64_t parse_seed(std::string_view text) {
    text = trim(text);
    int base = 10;
    if (text.starts_with("0x") || text.starts_with("0X")) {
        text.remove_prefix(2);
        base = 16;
    }
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        config_error("not a seed: '" + std::string(text) + "'");
    }
    return value;
}

std::string require(const ConfigFile& cfg, std::string_view section, std::string_view key) {
    auto v = cfg.get(section, key);
    if (!v) config_error("missing key '" + std::string(key) + "' in [" + std::string(section) + "]");
    return *v;
}

}  // namespace

ConfigFile ConfigFile::parse(std::string_view text) {
    ConfigFile cfg;
    std::string current;
    cfg.sections_[current];
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') config_error(where + ": unterminated section header");
            current = std::string(trim(line.substr(1, line.size() - 2)));
            if (current.empty()) config_error(where + ": empty section name");
            cfg.sections_[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) config_error(where + ": expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) config_error(where + ": empty key");
        auto& section = cfg.sections_[current];
        if (section.contains(key)) config_error(where + ": duplicate key '" + key + "'");
        section.emplace(key, std::string(trim(line.substr(eq + 1))));
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::optional<std::string> ConfigFile::get(std::string_view section, std::string_view key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return std::nullopt;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
}

bool ConfigFile::has_section(std::string_view section) const { return sections_.contains(section); }

Complex parse_complex(std::string_view text) {
    std::string compact;
    for (const char c : text)
        if (c != ' ' && c != '\t') compact.push_back(c);
    std::string_view s = compact;
    if (s.empty()) config_error("empty complex literal");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s), 0.0};

    s.remove_suffix(1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split_at = std::string_view::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split_at = k;
            break;
        }
    }
    const auto imag_part = [](std::string_view t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t);
    };
    if (split_at == std::string_view::npos) return {0.0, imag_part(s)};
    return {parse_real(s.substr(0, split_at)), imag_part(s.substr(split_at))};
}

double parse_angle(std::string_view text) {
    std::string compact;
    for (const char c : text)
        if (c != ' ' && c != '\t') compact.push_back(c);
    std::string_view s = compact;
    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string_view::npos) return parse_real(s);

    double scale = 1.0;
    std::string_view before = s.substr(0, pi_pos);
    if (!before.empty()) {
        if (before == "-") {
            scale = -1.0;
        } else {
            if (before.back() != '*') config_error("bad angle '" + compact + "'");
            before.remove_suffix(1);
            scale = parse_real(before);
        }
    }
    std::string_view after = s.substr(pi_pos + 2);
    if (!after.empty()) {
        if (after.front() != '/') config_error("bad angle '" + compact + "'");
        after.remove_prefix(1);
        scale /= parse_real(after);
    }
    return scale * std::numbers::pi;
}

CMatrix parse_matrix_literal(std::string_view text) {
    const auto rows = split(text, ';');
    std::vector<std::vector<Complex>> entries;
    for (const auto row : rows) {
        if (row.empty()) continue;
        std::vector<Complex> values;
        for (const auto cell : split(row, ',')) values.push_back(parse_complex(cell));
        entries.push_back(std::move(values));
    }
    if (entries.empty()) config_error("empty matrix literal");
    const std::size_t cols = entries.front().size();
    CMatrix m(static_cast<Eigen::Index>(entries.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].size() != cols) config_error("ragged matrix literal");
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entries[i][j];
    }
    return m;
}

CVector parse_vector_literal(std::string_view text) {
    const auto cells = split(text, ',');
    CVector v(static_cast<Eigen::Index>(cells.size()));
    for (std::size_t i = 0; i < cells.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_complex(cells[i]);
    return v;
}

CMatrix resolve_operator(std::string_view text) {
    text = trim(text);
    if (text.starts_with("pauli.") || text.starts_with("spin1.")) {
        const auto ops = text.starts_with("pauli.") ? pauli_operators() : spin1_operators();
        const auto axis = text.substr(6);
        if (axis == "x") return ops.x.matrix();
        if (axis == "y") return ops.y.matrix();
        if (axis == "z") return ops.z.matrix();
        config_error("unknown operator '" + std::string(text) + "'");
    }
    return parse_matrix_literal(text);
}

OptimizerConfig optimizer_from(const ConfigFile& cfg, OptimizerConfig defaults) {
    OptimizerConfig out = defaults;
    if (auto v = cfg.get("optimizer", "restarts")) out.restarts = static_cast<int>(parse_integer(*v));
    if (auto v = cfg.get("optimizer", "seed")) out.seed = parse_seed(*v);
    if (auto v = cfg.get("optimizer", "max_evals")) out.max_evals = static_cast<int>(parse_integer(*v));
    if (auto v = cfg.get("optimizer", "step_init")) out.step_init = parse_angle(*v);
    if (auto v = cfg.get("optimizer", "step_min")) out.step_min = parse_real(*v);
    if (auto v = cfg.get("optimizer", "tol")) out.tol = parse_real(*v);
    return out;
}

Instance instance_from(const ConfigFile& cfg) {
    Instance inst;
    inst.a = resolve_operator(require(cfg, "observables", "A"));
    inst.b = resolve_operator(require(cfg, "observables", "B"));

    const auto vector = cfg.get("state", "vector");
    const auto density = cfg.get("state", "density");
    const auto bloch = cfg.get("state", "bloch");
    const auto family = cfg.get("state", "family");
    const int given = int(vector.has_value()) + int(density.has_value()) + int(bloch.has_value()) +
                      int(family.has_value());
    if (given != 1) config_error("[state] needs exactly one of vector, density, bloch, family");

    if (vector) {
        inst.state = QuantumState::pure_normalized(parse_vector_literal(*vector));
    } else if (density) {
        inst.state = QuantumState::mixed(parse_matrix_literal(*density));
    } else if (bloch) {
        const auto r = split(*bloch, ',');
        if (r.size() != 3) config_error("bloch vector needs 3 components");
        inst.state = qubit_state_from_bloch({parse_real(r[0]), parse_real(r[1]), parse_real(r[2])});
    } else {
        const double theta = parse_angle(require(cfg, "state", "theta"));
        inst.state = family_state(parse_state_family(*family), theta, static_cast<int>(inst.a.rows()));
    }

    if (auto choice = cfg.get("basis", "choice")) {
        if (*choice == "standard") inst.basis_choice = BasisChoice::Standard;
        else if (*choice == "eigen_a") inst.basis_choice = BasisChoice::EigenA;
        else if (*choice == "eigen_b") inst.basis_choice = BasisChoice::EigenB;
        else inst.basis = parse_matrix_literal(*choice);
    }
    return inst;
}

std::vector<BoundKind> parse_bound_list(std::string_view text) {
    std::vector<BoundKind> out;
    for (const auto id : split(text, ',')) {
        if (id.empty()) continue;
        out.push_back(bound_info(id).kind);
    }
    return out;
}

SweepSpec sweep_from(const ConfigFile& cfg) {
    const Preset preset = parse_preset(cfg.get("sweep", "preset").value_or("custom"));
    SweepSpec spec = SweepSpec::from_preset(preset);
    if (preset == Preset::Custom) {
        spec.a = resolve_operator(require(cfg, "observables", "A"));
        spec.b = resolve_operator(require(cfg, "observables", "B"));
        spec.a_label = require(cfg, "observables", "A");
        spec.b_label = require(cfg, "observables", "B");
        spec.family = parse_state_family(require(cfg, "sweep", "family"));
    }
    if (auto v = cfg.get("sweep", "theta_start")) spec.grid.start = parse_angle(*v);
    if (auto v = cfg.get("sweep", "theta_stop")) spec.grid.stop = parse_angle(*v);
    if (auto v = cfg.get("sweep", "theta_count")) spec.grid.count = static_cast<int>(parse_integer(*v));
    if (auto v = cfg.get("sweep", "bounds")) spec.bounds = parse_bound_list(*v);
    if (auto v = cfg.get("sweep", "basis")) {
        if (*v == "standard") spec.basis = BasisChoice::Standard;
        else if (*v == "eigen_a") spec.basis = BasisChoice::EigenA;
        else if (*v == "eigen_b") spec.basis = BasisChoice::EigenB;
        else config_error("unknown basis choice '" + *v + "'");
    }
    if (cfg.has_section("optimizer")) spec.optimizer = optimizer_from(cfg, spec.optimizer.value_or(OptimizerConfig{}));
    return spec;
}

}  // namespace varbounds
