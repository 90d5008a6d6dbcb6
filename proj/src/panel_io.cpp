#include "levnet/panel_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "levnet/errors.hpp"
#include "levnet/number_format.hpp"

namespace levnet {

namespace {

constexpr std::int64_t synthetic_epoch = 10957;  // 2000-01-01

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char c = line[k];
        if (quoted) {
            if (c == '"') {
                if (k + 1 < line.size() && line[k + 1] == '"') {
                    field += '"';
                    ++k;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted) {
        throw ValidationError("line " + std::to_string(line_no) + ": unterminated quoted field");
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string trimmed(std::string s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

struct RawRow {
    std::int64_t day = 0;
    std::string date;
    double assets = 0.0;
    double liabilities = 0.0;
    std::size_t line = 0;
};

struct RawBank {
    std::string id;
    std::vector<RawRow> rows;
};

// Empty string when the bank is valid; otherwise the first violation.
std::string check_bank(RawBank& bank, std::size_t& bad_line) {
    std::stable_sort(bank.rows.begin(), bank.rows.end(),
                     [](const RawRow& a, const RawRow& b) { return a.day < b.day; });
    for (std::size_t k = 0; k < bank.rows.size(); ++k) {
        const RawRow& r = bank.rows[k];
        bad_line = r.line;
        if (k > 0 && r.day == bank.rows[k - 1].day) {
            return "duplicate date " + r.date;
        }
        if (!(r.assets > 0.0)) {
            return "non-positive assets on " + r.date;
        }
        if (r.liabilities < 0.0) {
            return "negative liabilities on " + r.date;
        }
        if (r.liabilities >= r.assets) {
            return "liabilities >= assets on " + r.date;
        }
    }
    return {};
}

// Smallest gap in days between consecutive observations, 0 for single rows.
std::int64_t cadence_days(const RawBank& bank) {
    std::int64_t best = 0;
    for (std::size_t k = 1; k < bank.rows.size(); ++k) {
        const std::int64_t gap = bank.rows[k].day - bank.rows[k - 1].day;
        best = best == 0 ? gap : std::min(best, gap);
    }
    return best;
}

}  // namespace

std::int64_t days_from_civil(int year, unsigned month, unsigned day) {
    year -= month <= 2 ? 1 : 0;
    const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
    const auto yoe = static_cast<unsigned>(year - era * 400);
    const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::string format_iso_date(std::int64_t days) {
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const auto doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    std::int64_t year = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned day = doy - (153 * mp + 2) / 5 + 1;
    const unsigned month = mp < 10 ? mp + 3 : mp - 9;
    year += month <= 2 ? 1 : 0;
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%04lld-%02u-%02u", static_cast<long long>(year), month, day);
    return buffer;
}

bool parse_iso_date(std::string_view text, std::int64_t& days) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return false;
    }
    int year = 0;
    unsigned month = 0;
    unsigned day = 0;
    if (!parse_number(text.substr(0, 4), year) || !parse_number(text.substr(5, 2), month) ||
        !parse_number(text.substr(8, 2), day)) {
        return false;
    }
    if (month < 1 || month > 12 || day < 1) {
        return false;
    }
    static constexpr unsigned month_days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    const unsigned limit = month_days[month - 1] + (month == 2 && leap ? 1 : 0);
    if (day > limit) {
        return false;
    }
    days = days_from_civil(year, month, day);
    return true;
}

std::string synthetic_date(TimeIndex t) { return format_iso_date(synthetic_epoch + t); }

IngestResult ingest(std::istream& in, const ColumnMapping& columns, ValidationMode mode,
                    std::string label) {
    const std::set<std::string> distinct = {columns.bank_id, columns.date, columns.assets,
                                            columns.liabilities};
    if (distinct.size() != 4) {
        throw ValidationError("column mapping must name four distinct columns");
    }

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ValidationError("input is empty; expected a header row");
    }
    ++line_no;
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        line.erase(0, 3);
    }
    const auto header = split_csv_line(line, line_no);
    const auto column_index = [&](const std::string& name) {
        for (std::size_t k = 0; k < header.size(); ++k) {
            if (trimmed(header[k]) == name) {
                return k;
            }
        }
        throw ValidationError("header is missing column '" + name + "'");
    };
    const std::size_t c_bank = column_index(columns.bank_id);
    const std::size_t c_date = column_index(columns.date);
    const std::size_t c_assets = column_index(columns.assets);
    const std::size_t c_liab = column_index(columns.liabilities);

    IngestResult result;
    std::vector<RawBank> banks;
    std::map<std::string, std::size_t> bank_pos;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto fields = split_csv_line(line, line_no);
        const auto where = "line " + std::to_string(line_no) + ": ";
        if (fields.size() != header.size()) {
            throw ValidationError(where + "expected " + std::to_string(header.size()) +
                                  " fields, found " + std::to_string(fields.size()));
        }
        RawRow row;
        row.line = line_no;
        const std::string id = trimmed(fields[c_bank]);
        if (id.empty()) {
            throw ValidationError(where + "empty bank id");
        }
        row.date = trimmed(fields[c_date]);
        if (!parse_iso_date(row.date, row.day)) {
            throw ValidationError(where + "invalid date '" + row.date + "' (expected YYYY-MM-DD)");
        }
        if (!parse_number(fields[c_assets], row.assets) || !std::isfinite(row.assets)) {
            throw ValidationError(where + "cannot parse assets '" + fields[c_assets] + "'");
        }
        if (!parse_number(fields[c_liab], row.liabilities) || !std::isfinite(row.liabilities)) {
            throw ValidationError(where + "cannot parse liabilities '" + fields[c_liab] + "'");
        }
        auto [it, inserted] = bank_pos.try_emplace(id, banks.size());
        if (inserted) {
            banks.push_back({id, {}});
        }
        banks[it->second].rows.push_back(std::move(row));
        ++result.report.rows;
    }
    if (in.bad()) {
        throw IoError("read error on input");
    }

    std::vector<RawBank> kept;
    for (auto& bank : banks) {
        std::size_t bad_line = 0;
        const std::string problem = check_bank(bank, bad_line);
        if (problem.empty()) {
            kept.push_back(std::move(bank));
            continue;
        }
        if (mode == ValidationMode::strict) {
            throw ValidationError("line " + std::to_string(bad_line) + ": bank " + bank.id + ": " +
                                  problem);
        }
        result.report.dropped.push_back({bank.id, bad_line, problem});
    }

    std::int64_t min_cadence = 0;
    std::int64_t max_cadence = 0;
    for (const auto& bank : kept) {
        const std::int64_t c = cadence_days(bank);
        if (c == 0) {
            continue;
        }
        min_cadence = min_cadence == 0 ? c : std::min(min_cadence, c);
        max_cadence = std::max(max_cadence, c);
    }
    if (min_cadence > 0 && max_cadence > 2 * min_cadence) {
        result.report.mixed_frequency = true;
        const std::string msg = "mixed reporting frequency: bank cadences range from " +
                                std::to_string(min_cadence) + " to " +
                                std::to_string(max_cadence) + " days";
        if (mode == ValidationMode::strict) {
            throw ValidationError(msg);
        }
        result.report.warnings.push_back(msg + "; using the distinct-date grid");
    }

    std::map<std::int64_t, std::string> dates;
    for (const auto& bank : kept) {
        for (const auto& r : bank.rows) {
            dates.emplace(r.day, r.date);
        }
    }
    std::map<std::int64_t, TimeIndex> rank;
    Panel& panel = result.panel;
    panel.label = std::move(label);
    for (const auto& [day, text] : dates) {
        rank.emplace(day, static_cast<TimeIndex>(panel.grid.size()));
        panel.grid.push_back(static_cast<TimeIndex>(panel.grid.size()));
        panel.grid_dates.push_back(text);
    }
    for (const auto& bank : kept) {
        BankSeries series;
        series.bank_id = bank.id;
        for (const auto& r : bank.rows) {
            series.observations.push_back({rank.at(r.day), r.assets, r.liabilities});
        }
        panel.members.push_back(std::move(series));
    }

    if (panel.members.empty()) {
        result.report.warnings.push_back("no banks retained");
        result.complete = panel;
        return result;
    }
    Diagnostics diag;
    result.complete = filter_complete(panel, &diag);
    for (auto& w : diag.warnings) {
        result.report.warnings.push_back(std::move(w));
    }
    result.census = census(panel);
    return result;
}

IngestResult ingest(const IngestSpec& spec) {
    std::ifstream in(spec.input);
    if (!in) {
        throw IoError("cannot open input " + spec.input.string());
    }
    return ingest(in, spec.columns, spec.mode, spec.input.stem().string());
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    out += '"';
    return out;
}

void write_panel_csv(std::ostream& out, const Panel& panel) {
    const bool dated = panel.grid_dates.size() == panel.grid.size() && !panel.grid.empty();
    const auto date_of = [&](TimeIndex t) {
        if (dated) {
            auto it = std::lower_bound(panel.grid.begin(), panel.grid.end(), t);
            if (it != panel.grid.end() && *it == t) {
                return panel.grid_dates[static_cast<std::size_t>(it - panel.grid.begin())];
            }
        }
        return synthetic_date(t);
    };
    out << "bank_id,date,assets,liabilities\n";
    for (const auto& m : panel.members) {
        for (const auto& obs : m.observations) {
            out << csv_escape(m.bank_id) << ',' << date_of(obs.time_index) << ',' << format_double(obs.assets)
                << ',' << format_double(obs.liabilities) << '\n';
        }
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output " + path.string());
    }
    out << content;
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

}  // namespace levnet
