#include "ftqkd/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ftqkd {

std::string format_cell(const CsvCell& cell) {
    if (std::holds_alternative<std::uint64_t>(cell))
        return std::to_string(std::get<std::uint64_t>(cell));
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", std::get<double>(cell));
    return buf;
}

std::string to_csv_string(const CsvTable& table) {
    std::ostringstream out;
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_cell(row[c]);
        out << '\n';
    }
    return out.str();
}

void write_csv(const CsvTable& table, const std::string& destination) {
    const std::string text = to_csv_string(table);
    if (destination == "-") {
        std::cout << text << std::flush;
        if (!std::cout) throw IoError("failed writing csv to stdout");
        return;
    }
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + destination + "' for writing");
    out << text << std::flush;
    if (!out) throw IoError("failed writing '" + destination + "'");
}

CsvTable sweep_table(const std::vector<RatePoint>& points) {
    CsvTable table;
    table.columns = {"jitter_ps", "delta", "qber_bound", "qber_exact", "key_rate"};
    for (const RatePoint& p : points)
        table.rows.push_back(
            {p.jitter_sigma, p.delta, p.qber_bound, p.qber_exact, std::max(0.0, p.key_rate)});
    return table;
}

CsvTable stats_table(const ProtocolStats& s) {
    CsvTable table;
    table.columns = {"pairs_emitted", "pairs_sifted",  "gain",
                     "qber_time",     "qber_freq",     "qber_overall",
                     "cond_variance", "delta_estimate", "key_rate"};
    table.rows.push_back({s.pairs_emitted, s.pairs_sifted, s.gain, s.qber_time, s.qber_freq,
                          s.qber_overall, s.cond_variance, s.delta_estimate,
                          std::max(0.0, s.key_rate)});
    return table;
}

}  // namespace ftqkd
