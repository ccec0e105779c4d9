#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vanet/montecarlo.hpp"

namespace vanet {

inline constexpr std::string_view kCsvHeader =
    "density_per_km,method,range_policy,p_hat,stderr,trials,master_seed";

// Density ascending, then method name, then range policy label.
void sort_table(std::vector<ConnectivityEstimate>& table);

// Floats carry six significant digits. Rows are written in the given order.
void write_csv(std::ostream& os, const std::vector<ConnectivityEstimate>& table);

// Sorts, then writes to path. Throws std::invalid_argument on an empty table
// and std::runtime_error when the file cannot be written.
void emit_csv(std::vector<ConnectivityEstimate> table, const std::string& path);

// Reads back a file produced by write_csv. connected_count is not stored and
// comes back as round(p_hat * trials).
std::vector<ConnectivityEstimate> read_csv(std::istream& is);

// Six-significant-digit rendering used for every float column.
std::string format_float(double x);

}  // namespace vanet
