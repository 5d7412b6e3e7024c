#pragma once

#include <string>

#include "flp/bb.hpp"

namespace flp {

// One CSV result row of a solve run. Schema:
// instance,formulation,cuts,symmetry,status,incumbent,bound,gap_pct,nodes,time_ms
struct BenchRow {
  std::string instance;
  std::string formulation;
  std::string cuts;
  bool symmetry = false;
  std::string status;
  double incumbent = 0.0;
  double bound = 0.0;
  double gap_pct = 0.0;
  long nodes = 0;
  double time_ms = 0.0;

  static std::string csv_header();
  std::string csv() const;
  static BenchRow parse_csv(const std::string& line);
};

// Appends a row, writing the header first when the file is new or empty.
void append_bench_row(const BenchRow& row, const std::string& csv_path);

}  // namespace flp
