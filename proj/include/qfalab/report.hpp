#pragma once

#include <string>
#include <vector>

#include "qfalab/types.hpp"

namespace qfalab {

struct ReportRow {
  std::string criterion;  // e.g. "C3"
  std::string claim;
  std::string expected;
  std::string computed;
  double tolerance = 0;
  bool pass = false;
};

struct ReproduceOptions {
  std::string fixtures_dir = "fixtures";
  double tol = 1e-9;       // default comparison tolerance (QFA_LAB_TOL)
  int margin_max_len = 12;
  int closure_max_len = 15;
  int union_max_len = 10;
  int invariance_max_len = 8;
};

/// Runs every probability and structure claim reproduced from the source
/// material against the bundled fixtures and returns one row per check,
/// grouped by criterion id. Criterion wall-clock budgets are reported as
/// ordinary rows. Throws if a fixture file is missing.
std::vector<ReportRow> reproduce_paper(const ReproduceOptions& options = {});

bool all_rows_pass(const std::vector<ReportRow>& rows);

/// Plain-text table, one line per row.
std::string format_report_table(const std::vector<ReportRow>& rows);

/// Machine-readable rows.
std::string format_report_json(const std::vector<ReportRow>& rows);

}  // namespace qfalab
