#include "lab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "slag/error.hpp"

namespace lab {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw slag::Error(slag::ErrorCode::InvalidInput, "CSV row has " + std::to_string(cells.size()) +
                                                         " cells, header has " + std::to_string(header_.size()));
  }
  rows_.push_back(std::move(cells));
}

void CsvTable::add_numbers(const std::vector<double>& cells) {
  std::vector<std::string> row;
  row.reserve(cells.size());
  for (double v : cells) row.push_back(format_double(v));
  add_row(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw slag::Error(slag::ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw slag::Error(slag::ErrorCode::IoError, "write failed for " + path.string());
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

CsvTable flow_table(const std::vector<slag::FlowRecord>& history) {
  CsvTable t({"t", "sup_theta", "inf_theta", "theta_l2", "meanH_l2", "volume", "solomon", "lobe1", "lobe2"});
  for (const auto& r : history) {
    t.add_numbers({r.t, r.sup_theta, r.inf_theta, r.theta_l2, r.meanH_l2, r.volume, r.solomon, r.lobe1, r.lobe2});
  }
  return t;
}

CsvTable wall_table(const slag::WallScan& scan) {
  CsvTable t({"t", "argZ1", "argZ2", "theta_t", "A_t", "side"});
  for (const auto& s : scan.samples) {
    t.add_row({format_double(s.t), format_double(s.arg_z1), format_double(s.arg_z2), format_double(s.theta),
               format_double(s.area), s.side});
  }
  return t;
}

}  // namespace lab
