#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "levnet/balance_sheet.hpp"

namespace levnet {

/// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int year, unsigned month, unsigned day);

/// Parses YYYY-MM-DD into days since 1970-01-01. False if malformed or
/// not a real calendar date.
bool parse_iso_date(std::string_view text, std::int64_t& days);

std::string format_iso_date(std::int64_t days);

/// Date label written for grid position t when a panel carries no dates:
/// 2000-01-01 plus t days.
std::string synthetic_date(TimeIndex t);

enum class ValidationMode { strict, lenient };

struct ColumnMapping {
    std::string bank_id = "bank_id";
    std::string date = "date";
    std::string assets = "assets";
    std::string liabilities = "liabilities";
};

struct IngestSpec {
    std::filesystem::path input;
    ColumnMapping columns;
    ValidationMode mode = ValidationMode::strict;
};

struct DroppedBank {
    std::string bank_id;
    std::size_t line = 0;
    std::string reason;
};

struct ValidationReport {
    std::size_t rows = 0;
    std::vector<DroppedBank> dropped;
    bool mixed_frequency = false;
    std::vector<std::string> warnings;
};

struct IngestResult {
    Panel panel;     // every retained bank
    Panel complete;  // members observed at every grid point
    CensusReport census;
    ValidationReport report;
};

/// Parses `bank_id,date,assets,liabilities` rows (column names per the
/// mapping, extra columns ignored). Dates map to grid indices by rank
/// among the distinct sorted dates of the retained banks. Malformed rows
/// always abort with the line number; data-rule violations abort in strict
/// mode and drop the bank in lenient mode.
IngestResult ingest(std::istream& in, const ColumnMapping& columns, ValidationMode mode,
                    std::string label = {});

IngestResult ingest(const IngestSpec& spec);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_escape(const std::string& field);

/// Writes rows in ingestion format, members in panel order, each member's
/// observations in time order.
void write_panel_csv(std::ostream& out, const Panel& panel);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace levnet
