#include "tablegrid/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "tablegrid/deskew.hpp"
#include "tablegrid/error.hpp"
#include "tablegrid/parallel.hpp"
#include "tablegrid/png_io.hpp"

namespace tablegrid {

namespace {

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double mean_or_zero(const std::vector<int>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::string stem_of(const std::string& skeleton_path) {
  const std::string suffix = ".skel.png";
  std::string name = std::filesystem::path(skeleton_path).filename().string();
  if (name.size() > suffix.size() && name.ends_with(suffix)) return name.substr(0, name.size() - suffix.size());
  return std::filesystem::path(skeleton_path).stem().string();
}

TableGenotype empty_prediction(const TableGenotype& truth) {
  TableGenotype g;
  g.max_rows = truth.max_rows;
  g.max_cols = truth.max_cols;
  g.row_heights.assign(static_cast<std::size_t>(truth.max_rows), 0);
  g.col_widths.assign(static_cast<std::size_t>(truth.max_cols), 0);
  return g;
}

std::string fmt1(std::optional<double> v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *v + 0.0);
  return buf;
}

double pixel_error(const TableGenotype& truth, const TableGenotype* predicted) {
  const double th = mean_or_zero(truth.present_heights());
  const double tw = mean_or_zero(truth.present_widths());
  const double ph = predicted ? mean_or_zero(predicted->present_heights()) : 0.0;
  const double pw = predicted ? mean_or_zero(predicted->present_widths()) : 0.0;
  return std::abs(th - ph) + std::abs(tw - pw);
}

}  // namespace

TableComparison compare(const TableGenotype& truth, const TableGenotype& predicted) {
  TableComparison c;
  c.row_count_error = truth.effective_rows() - predicted.effective_rows();
  c.col_count_error = truth.effective_cols() - predicted.effective_cols();
  c.row_count_correct = c.row_count_error == 0;
  c.col_count_correct = c.col_count_error == 0;
  if (!c.counts_correct()) return c;
  c.x0_error = truth.origin_x - predicted.origin_x;
  c.y0_error = truth.origin_y - predicted.origin_y;
  const auto th = truth.present_heights();
  const auto ph = predicted.present_heights();
  for (std::size_t i = 0; i < th.size(); ++i) {
    c.row_height_rel_errors.push_back(static_cast<double>(th[i] - ph[i]) / th[i]);
  }
  const auto tw = truth.present_widths();
  const auto pw = predicted.present_widths();
  for (std::size_t i = 0; i < tw.size(); ++i) {
    c.col_width_rel_errors.push_back(static_cast<double>(tw[i] - pw[i]) / tw[i]);
  }
  return c;
}

MetricsReport aggregate(const std::vector<TableComparison>& comparisons, const std::string& config_name) {
  if (comparisons.empty()) throw InvalidArgument("cannot aggregate an empty comparison list");
  MetricsReport r;
  r.config_name = config_name;
  r.n_tables = static_cast<int>(comparisons.size());
  std::vector<double> row_count_errors, col_count_errors, x0, y0, widths, heights;
  int rows_ok = 0;
  int cols_ok = 0;
  for (const auto& c : comparisons) {
    if (c.row_count_correct) {
      ++rows_ok;
    } else {
      row_count_errors.push_back(c.row_count_error);
    }
    if (c.col_count_correct) {
      ++cols_ok;
    } else {
      col_count_errors.push_back(c.col_count_error);
    }
    if (!c.counts_correct()) continue;
    if (c.x0_error) x0.push_back(*c.x0_error);
    if (c.y0_error) y0.push_back(*c.y0_error);
    if (auto m = mean_of(c.col_width_rel_errors)) widths.push_back(100.0 * *m);
    if (auto m = mean_of(c.row_height_rel_errors)) heights.push_back(100.0 * *m);
  }
  r.pct_correct_rows = 100.0 * rows_ok / r.n_tables;
  r.pct_correct_cols = 100.0 * cols_ok / r.n_tables;
  r.avg_row_count_error = mean_of(row_count_errors);
  r.avg_col_count_error = mean_of(col_count_errors);
  r.avg_x0_error = mean_of(x0);
  r.avg_y0_error = mean_of(y0);
  r.avg_col_width_rel_error = mean_of(widths);
  r.avg_row_height_rel_error = mean_of(heights);
  return r;
}

EvaluationRun evaluate_manifest(const DatasetManifest& manifest, const EvalOptions& options) {
  EvaluationRun run;
  run.entries.resize(manifest.entries.size());
  std::vector<char> loaded(manifest.entries.size(), 0);
  parallel_for(manifest.entries.size(), [&](std::size_t i) {
    const auto& e = manifest.entries[i];
    EntryResult& out = run.entries[i];
    TableGenotype truth;
    RasterImage skeleton;
    try {
      truth = load_genotype(manifest.resolve(e.genotype_path));
      if (options.skeleton_dir) {
        skeleton = load_external(*options.skeleton_dir / (stem_of(e.skeleton_path) + ".skel.png"),
                                 manifest.canvas.width, manifest.canvas.height);
      } else {
        skeleton = read_png(manifest.resolve(e.skeleton_path));
      }
    } catch (const DataError& err) {
      out.error = err.what();
      return;
    }
    loaded[i] = 1;
    if (options.noise) {
      NoiseParams noise = *options.noise;
      noise.seed = derive_seed(noise.seed, i);
      skeleton = degrade(skeleton, noise);
    }
    try {
      out.predicted = estimate_structure(skeleton, options.estimate);
      out.estimated = true;
      if (options.refine) {
        GAParams ga = *options.refine;
        ga.seed = derive_seed(ga.seed, i);
        out.predicted = evolve(out.predicted, skeleton, ga).best;
      }
    } catch (const DataError& err) {
      out.error = err.what();
      out.predicted = empty_prediction(truth);
    }
    out.comparison = compare(truth, out.predicted);
  });

  std::vector<std::string> order;
  std::map<std::string, std::vector<TableComparison>> groups;
  for (std::size_t i = 0; i < run.entries.size(); ++i) {
    if (!loaded[i]) {
      ++run.skipped;
      continue;
    }
    const auto& name = manifest.entries[i].config_name;
    if (!groups.count(name)) order.push_back(name);
    groups[name].push_back(run.entries[i].comparison);
  }
  for (const auto& name : order) run.reports.push_back(aggregate(groups[name], name));
  return run;
}

void write_metrics_csv(const std::vector<MetricsReport>& reports, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "config,n_tables,pct_correct_rows,pct_correct_cols,avg_row_count_error,"
         "avg_col_count_error,avg_x0_error,avg_y0_error,avg_col_width_rel_error_pct,"
         "avg_row_height_rel_error_pct\n";
  for (const auto& r : reports) {
    out << r.config_name << ',' << r.n_tables << ',' << fmt1(r.pct_correct_rows) << ','
        << fmt1(r.pct_correct_cols) << ',' << fmt1(r.avg_row_count_error) << ','
        << fmt1(r.avg_col_count_error) << ',' << fmt1(r.avg_x0_error) << ',' << fmt1(r.avg_y0_error)
        << ',' << fmt1(r.avg_col_width_rel_error) << ',' << fmt1(r.avg_row_height_rel_error) << '\n';
  }
  if (!out) throw DataError("failed writing " + path.string());
}

SweepReport rotation_sweep(const DatasetManifest& manifest, const SweepOptions& options) {
  struct Outcome {
    bool loaded = false;
    bool error_free = false;
    double pixel_error = 0.0;
    double residual = 0.0;
  };
  const std::size_t n_angles = options.angles.size();
  std::vector<std::vector<Outcome>> outcomes(manifest.entries.size(), std::vector<Outcome>(n_angles));
  const Canvas canvas = manifest.canvas;

  parallel_for(manifest.entries.size(), [&](std::size_t i) {
    const auto& e = manifest.entries[i];
    TableGenotype truth;
    RasterImage scan, skeleton;
    try {
      truth = load_genotype(manifest.resolve(e.genotype_path));
      skeleton = read_png(manifest.resolve(e.skeleton_path));
      if (options.deskew && options.skew_from_scan) scan = read_png(manifest.resolve(e.scan_path));
    } catch (const DataError&) {
      return;
    }
    for (std::size_t a = 0; a < n_angles; ++a) {
      Outcome& o = outcomes[i][a];
      o.loaded = true;
      const double angle = options.angles[a];
      RasterImage estimate_on = rotate(skeleton, angle);
      if (options.deskew) {
        try {
          double correction = 0.0;
          if (options.skew_from_scan) {
            correction = deskew_iterative(rotate(scan, angle), options.passes, options.max_angle)
                             .report.estimated_angle;
            estimate_on = rotate(estimate_on, -correction);
          } else {
            auto d = deskew_iterative(estimate_on, options.passes, options.max_angle);
            correction = d.report.estimated_angle;
            estimate_on = std::move(d.image);
          }
          o.residual = angle - correction;
          estimate_on = crop_center(estimate_on, canvas.width, canvas.height);
        } catch (const DataError&) {
          o.residual = angle;
          o.pixel_error = pixel_error(truth, nullptr);
          continue;
        }
      }
      try {
        const auto predicted = estimate_structure(estimate_on, options.estimate);
        const auto cmp = compare(truth, predicted);
        o.error_free = cmp.counts_correct();
        o.pixel_error = pixel_error(truth, &predicted);
      } catch (const DataError&) {
        o.pixel_error = pixel_error(truth, nullptr);
      }
    }
  });

  SweepReport report;
  for (std::size_t a = 0; a < n_angles; ++a) {
    SweepRow row;
    row.angle = options.angles[a];
    row.deskew_enabled = options.deskew;
    int ok = 0;
    double pixel_sum = 0.0;
    double residual_sum = 0.0;
    for (const auto& per_entry : outcomes) {
      const Outcome& o = per_entry[a];
      if (!o.loaded) {
        ++row.skipped;
        continue;
      }
      ++row.n_tables;
      ok += o.error_free ? 1 : 0;
      pixel_sum += o.pixel_error;
      residual_sum += std::abs(o.residual);
      row.max_abs_residual = std::max(row.max_abs_residual, std::abs(o.residual));
    }
    if (row.n_tables > 0) {
      row.error_free_pct = 100.0 * ok / row.n_tables;
      row.pixel_error = pixel_sum / row.n_tables;
      row.mean_abs_residual = residual_sum / row.n_tables;
    }
    report.rows.push_back(row);
  }
  return report;
}

std::vector<double> parse_angle_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ':')) {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw InvalidArgument("bad angle '" + item + "'");
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument("cannot parse angle range '" + text + "'");
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || parts[2] <= 0 || parts[1] < parts[0]) {
    throw InvalidArgument("angle range must be start:stop:step with step > 0 and stop >= start");
  }
  std::vector<double> angles;
  const auto steps = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (long k = 0; k <= steps; ++k) angles.push_back(parts[0] + static_cast<double>(k) * parts[2]);
  return angles;
}

void write_sweep_csv(const SweepReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "angle,deskew_enabled,error_free_pct,pixel_error\n";
  char buf[128];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%g,%s,%.1f,%.1f\n", r.angle, r.deskew_enabled ? "true" : "false",
                  r.error_free_pct, r.pixel_error);
    out << buf;
  }
  if (!out) throw DataError("failed writing " + path.string());
}

void write_sweep_svg(const SweepReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  if (report.rows.empty()) throw InvalidArgument("nothing to plot");
  double lo = report.rows.front().angle, hi = lo, max_pixel = 1.0;
  for (const auto& r : report.rows) {
    lo = std::min(lo, r.angle);
    hi = std::max(hi, r.angle);
    max_pixel = std::max(max_pixel, r.pixel_error);
  }
  if (hi == lo) hi = lo + 1;
  constexpr int kWidth = 640, kPanel = 220, kMargin = 50;
  auto x_of = [&](double angle) { return kMargin + (angle - lo) / (hi - lo) * (kWidth - 2 * kMargin); };
  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << 2 * kPanel + 2 * kMargin << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  struct Panel {
    const char* title;
    double top;
    double max;
    double SweepRow::*field;
  };
  const Panel panels[] = {{"error-free tables, %", 10.0, 100.0, &SweepRow::error_free_pct},
                          {"pixel error, px", 10.0 + kPanel + kMargin, max_pixel, &SweepRow::pixel_error}};
  for (const auto& panel : panels) {
    const double bottom = panel.top + kPanel - 20;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%.0f\">%s</text>\n<line x1=\"%d\" y1=\"%.0f\" x2=\"%d\" y2=\"%.0f\" stroke=\"black\"/>\n",
                  kMargin, panel.top + 10, panel.title, kMargin, bottom, kWidth - kMargin, bottom);
    out << buf;
    for (bool mode : {false, true}) {
      std::string points;
      for (const auto& r : report.rows) {
        if (r.deskew_enabled != mode) continue;
        const double y = bottom - (r.*panel.field) / panel.max * (kPanel - 40);
        std::snprintf(buf, sizeof buf, "%.1f,%.1f ", x_of(r.angle), y);
        points += buf;
      }
      if (points.empty()) continue;
      out << "<polyline fill=\"none\" stroke=\"" << (mode ? "steelblue" : "firebrick")
          << "\" stroke-width=\"2\" points=\"" << points << "\"/>\n";
    }
    std::snprintf(buf, sizeof buf, "<text x=\"%d\" y=\"%.0f\">%g</text><text x=\"%d\" y=\"%.0f\">%g</text>\n",
                  kMargin, bottom + 14, lo, kWidth - kMargin - 10, bottom + 14, hi);
    out << buf;
  }
  out << "<text x=\"" << kWidth - 170 << "\" y=\"20\" fill=\"firebrick\">no deskew</text>\n"
      << "<text x=\"" << kWidth - 170 << "\" y=\"34\" fill=\"steelblue\">deskew</text>\n</svg>\n";
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace tablegrid
