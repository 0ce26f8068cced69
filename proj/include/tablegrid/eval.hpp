#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tablegrid/dataset.hpp"
#include "tablegrid/ga.hpp"
#include "tablegrid/genotype.hpp"
#include "tablegrid/skeleton_source.hpp"
#include "tablegrid/xycut.hpp"

namespace tablegrid {

// Errors are truth minus prediction. Origin and extent errors exist only
// when both counts are right.
struct TableComparison {
  bool row_count_correct = false;
  bool col_count_correct = false;
  int row_count_error = 0;
  int col_count_error = 0;
  std::optional<int> x0_error;
  std::optional<int> y0_error;
  std::vector<double> row_height_rel_errors;
  std::vector<double> col_width_rel_errors;

  bool counts_correct() const { return row_count_correct && col_count_correct; }
};

// Absent optionals are the "-" cells: no table qualified for that average.
struct MetricsReport {
  std::string config_name;
  int n_tables = 0;
  double pct_correct_rows = 0.0;
  double pct_correct_cols = 0.0;
  std::optional<double> avg_row_count_error;  // over tables with a wrong row count
  std::optional<double> avg_col_count_error;  // over tables with a wrong column count
  std::optional<double> avg_x0_error;         // signed mean, px
  std::optional<double> avg_y0_error;
  std::optional<double> avg_col_width_rel_error;   // percent
  std::optional<double> avg_row_height_rel_error;  // percent
};

TableComparison compare(const TableGenotype& truth, const TableGenotype& predicted);

// Extent errors: each table contributes the mean of its per-extent relative
// errors. Throws InvalidArgument on empty input.
MetricsReport aggregate(const std::vector<TableComparison>& comparisons, const std::string& config_name);

struct EvalOptions {
  EstimateOptions estimate;
  // When set, <stem>.skel.png from this directory replaces the oracle
  // skeleton and is resampled to the manifest canvas.
  std::optional<std::filesystem::path> skeleton_dir;
  std::optional<NoiseParams> noise;
  std::optional<GAParams> refine;
};

struct EntryResult {
  TableComparison comparison;
  TableGenotype predicted;
  bool estimated = false;  // false when no table was found
  std::string error;
};

struct EvaluationRun {
  std::vector<EntryResult> entries;  // manifest order
  std::vector<MetricsReport> reports;  // one per config, first-seen order
  int skipped = 0;  // entries whose files failed to load
};

EvaluationRun evaluate_manifest(const DatasetManifest& manifest, const EvalOptions& options = {});

void write_metrics_csv(const std::vector<MetricsReport>& reports, const std::filesystem::path& path);

struct SweepRow {
  double angle = 0.0;
  bool deskew_enabled = false;
  double error_free_pct = 0.0;
  // Mean over tables of |mean true row height - mean predicted| +
  // |mean true column width - mean predicted|; a failed estimate predicts 0.
  double pixel_error = 0.0;
  int n_tables = 0;
  int skipped = 0;
  // Deskew mode only: |angle - applied correction|.
  double max_abs_residual = 0.0;
  double mean_abs_residual = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

struct SweepOptions {
  std::vector<double> angles;
  bool deskew = false;
  int passes = 5;
  double max_angle = 35.0;
  // Measure skew on the scan (the real input) and apply the same correction
  // to the skeleton; otherwise measure on the skeleton itself.
  bool skew_from_scan = true;
  EstimateOptions estimate;
};

// Rotates every scan/skeleton pair by each angle, optionally deskews and
// centre-crops back to the canvas, estimates and scores against truth.
SweepReport rotation_sweep(const DatasetManifest& manifest, const SweepOptions& options);

// Parses "start:stop:step" (inclusive) or a single angle.
std::vector<double> parse_angle_range(const std::string& text);

void write_sweep_csv(const SweepReport& report, const std::filesystem::path& path);
void write_sweep_svg(const SweepReport& report, const std::filesystem::path& path);

}  // namespace tablegrid
