#include "app/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace fracspec::app {

Check near(std::string name, double value, double target, double tolerance) {
  const bool ok = std::isfinite(value) && std::abs(value - target) <= tolerance;
  return {std::move(name), value, target, tolerance, ok};
}

Check at_most(std::string name, double value, double bound) {
  return {std::move(name), value, std::nullopt, bound, std::isfinite(value) && value <= bound};
}

Check holds(std::string name, bool ok) { return {std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, ok}; }

nlohmann::json to_json(const Check& c) {
  nlohmann::json j{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}};
  if (c.target) j["target"] = *c.target;
  return j;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (const std::string& h : header) cell(h);
  end_row();
}

CsvTable& CsvTable::cell(double v) { return cell(format_number(v)); }

CsvTable& CsvTable::cell(long double v) { return cell(static_cast<double>(v)); }

CsvTable& CsvTable::cell(long long v) { return cell(std::to_string(v)); }

CsvTable& CsvTable::cell(unsigned long long v) { return cell(std::to_string(v)); }

CsvTable& CsvTable::cell(const std::string& v) {
  if (filled_ > 0) text_ += ',';
  text_ += v;
  ++filled_;
  return *this;
}

void CsvTable::end_row() {
  if (filled_ != columns_) throw std::logic_error("csv row has the wrong number of cells");
  text_ += '\n';
  filled_ = 0;
}

std::string CsvTable::str() const { return text_; }

std::string markdown_summary(const std::string& title, const std::vector<Check>& checks, bool pass) {
  std::ostringstream out;
  out << "# " << title << "\n\n";
  out << "Overall: " << (pass ? "PASS" : "FAIL") << "\n\n";
  if (checks.empty()) {
    out << "No numeric checks for this run.\n";
    return out.str();
  }
  out << "| check | value | target | tolerance | result |\n";
  out << "|---|---|---|---|---|\n";
  for (const Check& c : checks) {
    out << "| " << c.name << " | " << format_number(c.value) << " | "
        << (c.target ? format_number(*c.target) : std::string("<= tolerance")) << " | "
        << format_number(c.tolerance) << " | " << (c.pass ? "pass" : "FAIL") << " |\n";
  }
  return out.str();
}

}  // namespace fracspec::app
