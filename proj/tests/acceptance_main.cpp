// Acceptance suite: runs every numbered claim check against the bundled
// fixtures and prints one verdict line per criterion.

#include <cstdlib>
#include <iostream>
#include <map>
#include <vector>

#include "qfalab/report.hpp"

int main(int argc, char** argv) {
  qfalab::ReproduceOptions options;
  if (const char* env = std::getenv("QFALAB_FIXTURES")) options.fixtures_dir = env;
  if (argc > 1) options.fixtures_dir = argv[1];
  if (const char* env = std::getenv("QFA_LAB_TOL")) {
    try {
      double v = std::stod(env);
      if (v > 0) options.tol = v;
    } catch (...) {
    }
  }

  std::vector<qfalab::ReportRow> rows;
  try {
    rows = qfalab::reproduce_paper(options);
  } catch (const std::exception& e) {
    std::cerr << "acceptance suite aborted: " << e.what() << "\n";
    return 2;
  }

  std::cout << qfalab::format_report_table(rows) << "\n";

  std::map<std::string, bool> by_criterion;
  std::vector<std::string> order;
  for (const auto& row : rows) {
    if (!by_criterion.count(row.criterion)) {
      by_criterion[row.criterion] = true;
      order.push_back(row.criterion);
    }
    by_criterion[row.criterion] = by_criterion[row.criterion] && row.pass;
  }
  std::cout << "criterion summary:\n";
  for (const auto& crit : order)
    std::cout << "  " << (by_criterion[crit] ? "[PASS] " : "[FAIL] ") << crit << "\n";

  bool ok = qfalab::all_rows_pass(rows);
  std::cout << (ok ? "ALL CRITERIA PASS\n" : "CRITERIA FAILED\n");
  return ok ? 0 : 1;
}
