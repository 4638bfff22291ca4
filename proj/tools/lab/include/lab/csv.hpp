#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "slag/flow.hpp"
#include "slag/stability.hpp"

namespace lab {

/// 17 significant digits: enough to round-trip any double.
std::string format_double(double v);

/// Column-ordered table; cells are preformatted strings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells);
  void add_numbers(const std::vector<double>& cells);
  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;
  void write(const std::filesystem::path& path) const;  // throws IoError

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// t, sup_theta, inf_theta, theta_l2, meanH_l2, volume, solomon, lobe1, lobe2
CsvTable flow_table(const std::vector<slag::FlowRecord>& history);

/// t, argZ1, argZ2, theta_t, A_t, side
CsvTable wall_table(const slag::WallScan& scan);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lab
