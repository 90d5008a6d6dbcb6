#include "levnet/config_io.hpp"

#include <fstream>
#include <sstream>
#include <variant>

#include "levnet/errors.hpp"
#include "levnet/number_format.hpp"

namespace levnet {

namespace {

using FieldRef = std::variant<int SimConfig::*, double SimConfig::*, std::uint64_t SimConfig::*>;

struct Field {
    const char* key;
    FieldRef member;
};

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        {"n_banks", &SimConfig::n_banks},
        {"n_periods", &SimConfig::n_periods},
        {"assets_low", &SimConfig::assets_low},
        {"assets_high", &SimConfig::assets_high},
        {"equity_ratio_low", &SimConfig::equity_ratio_low},
        {"equity_ratio_high", &SimConfig::equity_ratio_high},
        {"liquidity_share", &SimConfig::liquidity_share},
        {"lambda", &SimConfig::lambda},
        {"loan_size", &SimConfig::loan_size},
        {"r_corporate", &SimConfig::r_corporate},
        {"r_interbank", &SimConfig::r_interbank},
        {"maturity", &SimConfig::maturity},
        {"deposit_bank_count", &SimConfig::deposit_bank_count},
        {"shock_probability", &SimConfig::shock_probability},
        {"shock_factor", &SimConfig::shock_factor},
        {"seed", &SimConfig::seed},
    };
    return table;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

const std::vector<std::string>& sim_config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& f : fields()) {
            out.emplace_back(f.key);
        }
        return out;
    }();
    return keys;
}

void apply_setting(SimConfig& config, std::string_view key, std::string_view value) {
    for (const auto& f : fields()) {
        if (key != f.key) {
            continue;
        }
        const bool ok = std::visit(
            [&](auto member) {
                auto& target = config.*member;
                std::remove_reference_t<decltype(target)> parsed{};
                if (!parse_number(value, parsed)) {
                    return false;
                }
                target = parsed;
                return true;
            },
            f.member);
        if (!ok) {
            throw ValidationError("config field '" + std::string(key) + "': cannot parse value '" +
                                  std::string(value) + "'");
        }
        return;
    }
    throw ValidationError("unknown config field '" + std::string(key) + "'");
}

SimConfig parse_sim_config(std::string_view text, SimConfig base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
        }
        apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

SimConfig load_sim_config(const std::filesystem::path& path, SimConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_sim_config(buffer.str(), base);
}

std::string format_sim_config(const SimConfig& config) {
    std::string out;
    for (const auto& f : fields()) {
        out += f.key;
        out += " = ";
        std::visit(
            [&](auto member) {
                const auto value = config.*member;
                if constexpr (std::is_same_v<std::remove_const_t<decltype(value)>, double>) {
                    out += format_double(value);
                } else {
                    out += std::to_string(value);
                }
            },
            f.member);
        out += '\n';
    }
    return out;
}

}  // namespace levnet
