#include "flp/bench.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "flp/instance.hpp"  // format_number
#include "flp/model.hpp"

namespace flp {

std::string BenchRow::csv_header() {
  return "instance,formulation,cuts,symmetry,status,incumbent,bound,gap_pct,"
         "nodes,time_ms";
}

std::string BenchRow::csv() const {
  std::ostringstream os;
  os << instance << "," << formulation << "," << cuts << ","
     << (symmetry ? 1 : 0) << "," << status << "," << format_number(incumbent)
     << "," << format_number(bound) << "," << format_number(gap_pct) << ","
     << nodes << "," << format_number(time_ms);
  return os.str();
}

BenchRow BenchRow::parse_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  if (fields.size() != 10)
    throw ModelError("bench csv row must have 10 fields: " + line);
  BenchRow r;
  r.instance = fields[0];
  r.formulation = fields[1];
  r.cuts = fields[2];
  r.symmetry = fields[3] == "1";
  r.status = fields[4];
  r.incumbent = std::strtod(fields[5].c_str(), nullptr);
  r.bound = std::strtod(fields[6].c_str(), nullptr);
  r.gap_pct = std::strtod(fields[7].c_str(), nullptr);
  r.nodes = std::strtol(fields[8].c_str(), nullptr, 10);
  r.time_ms = std::strtod(fields[9].c_str(), nullptr);
  return r;
}

void append_bench_row(const BenchRow& row, const std::string& csv_path) {
  bool need_header = true;
  std::error_code ec;
  auto size = std::filesystem::file_size(csv_path, ec);
  if (!ec && size > 0) need_header = false;
  std::ofstream out(csv_path, std::ios::app);
  if (!out) throw ModelError("cannot open csv for append: " + csv_path);
  if (need_header) out << BenchRow::csv_header() << "\n";
  out << row.csv() << "\n";
}

}  // namespace flp
