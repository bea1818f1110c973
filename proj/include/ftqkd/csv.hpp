#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ftqkd/analytics.hpp"
#include "ftqkd/protocol.hpp"

namespace ftqkd {

/// I/O failure; maps to exit code 2 in the CLI.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using CsvCell = std::variant<std::uint64_t, double>;

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<CsvCell>> rows;
};

/// Doubles with 9 significant digits; counts verbatim.
std::string format_cell(const CsvCell& cell);

/// Header plus rows, comma separated, final line newline-terminated.
std::string to_csv_string(const CsvTable& table);

/// Write to a file, or to stdout when destination is "-".
void write_csv(const CsvTable& table, const std::string& destination);

// Fixed column contracts. Negative key rates are reported as 0 here; the
// raw value stays available on RatePoint / ProtocolStats.
CsvTable sweep_table(const std::vector<RatePoint>& points);
CsvTable stats_table(const ProtocolStats& stats);

}  // namespace ftqkd
