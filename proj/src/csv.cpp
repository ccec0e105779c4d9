#include "vanet/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace vanet {

std::string format_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void sort_table(std::vector<ConnectivityEstimate>& table) {
  std::stable_sort(table.begin(), table.end(), [](const auto& a, const auto& b) {
    return std::tie(a.density_per_km, a.method, a.range_policy) <
           std::tie(b.density_per_km, b.method, b.range_policy);
  });
}

void write_csv(std::ostream& os, const std::vector<ConnectivityEstimate>& table) {
  os << kCsvHeader << '\n';
  for (const auto& e : table) {
    os << format_float(e.density_per_km) << ',' << to_string(e.method) << ',' << e.range_policy << ','
       << format_float(e.p_hat) << ',' << format_float(e.std_error) << ',' << e.trials << ','
       << e.master_seed << '\n';
  }
}

void emit_csv(std::vector<ConnectivityEstimate> table, const std::string& path) {
  if (table.empty()) throw std::invalid_argument("emit_csv: empty table");
  sort_table(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("emit_csv: cannot write '" + path + "'");
  write_csv(out, table);
  out.flush();
  if (!out) throw std::runtime_error("emit_csv: write to '" + path + "' failed");
}

std::vector<ConnectivityEstimate> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw std::runtime_error("read_csv: missing or unexpected header");
  }
  std::vector<ConnectivityEstimate> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) throw std::runtime_error("read_csv: expected 7 columns in '" + line + "'");
    ConnectivityEstimate e;
    e.density_per_km = std::stod(cells[0]);
    auto m = parse_method(cells[1]);
    if (!m) throw std::runtime_error("read_csv: unknown method '" + cells[1] + "'");
    e.method = *m;
    e.range_policy = cells[2];
    e.p_hat = std::stod(cells[3]);
    e.std_error = std::stod(cells[4]);
    e.trials = std::stoull(cells[5]);
    e.master_seed = std::stoull(cells[6]);
    e.connected_count = static_cast<std::size_t>(std::llround(e.p_hat * static_cast<double>(e.trials)));
    rows.push_back(std::move(e));
  }
  return rows;
}

}  // namespace vanet
