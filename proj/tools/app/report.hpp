#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace fracspec::app {

/// One numeric claim with its tolerance and verdict.
struct Check {
  std::string name;
  double value = 0.0;
  std::optional<double> target;  // absent for upper-bound checks (value <= tolerance)
  double tolerance = 0.0;
  bool pass = false;
};

/// |value - target| <= tolerance.
Check near(std::string name, double value, double target, double tolerance);

/// value <= bound.
Check at_most(std::string name, double value, double bound);

/// A boolean verdict recorded as 1 / 0.
Check holds(std::string name, bool ok);

nlohmann::json to_json(const Check& c);

/// Rows of comma-separated values; numbers are written with %.17g.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& cell(double v);
  CsvTable& cell(long double v);
  CsvTable& cell(long long v);
  CsvTable& cell(unsigned long long v);
  CsvTable& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvTable& cell(std::size_t v) { return cell(static_cast<unsigned long long>(v)); }
  CsvTable& cell(const std::string& v);
  CsvTable& cell(const char* v) { return cell(std::string(v)); }
  void end_row();

  std::string str() const;

 private:
  std::string text_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

std::string format_number(double v);

/// Markdown summary with one table row per check.
std::string markdown_summary(const std::string& title, const std::vector<Check>& checks, bool pass);

}  // namespace fracspec::app
