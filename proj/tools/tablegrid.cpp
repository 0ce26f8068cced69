#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tablegrid/dataset.hpp"
#include "tablegrid/deskew.hpp"
#include "tablegrid/error.hpp"
#include "tablegrid/eval.hpp"
#include "tablegrid/ga.hpp"
#include "tablegrid/png_io.hpp"
#include "tablegrid/render.hpp"
#include "tablegrid/skeleton_source.hpp"
#include "tablegrid/xycut.hpp"

namespace tg = tablegrid;

namespace {

tg::Canvas parse_canvas(const std::string& text) {
  int w = 0, h = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%dx%d%c", &w, &h, &tail) != 2 || w <= 0 || h <= 0) {
    throw tg::InvalidArgument("--canvas expects WxH, got '" + text + "'");
  }
  return {w, h};
}

tg::IntRange parse_int_range(const std::string& text) {
  int lo = 0, hi = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%d:%d%c", &lo, &hi, &tail) == 2) return {lo, hi};
  if (std::sscanf(text.c_str(), "%d%c", &lo, &tail) == 1) return {lo, lo};
  throw tg::InvalidArgument("expected N or LO:HI, got '" + text + "'");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw tg::DataError("cannot write " + path.string());
}

struct Common {
  std::string canvas = "595x842";
  std::optional<std::uint64_t> seed;
};

void add_canvas(CLI::App* sub, Common& c) {
  sub->add_option("--canvas", c.canvas, "Canvas size WxH")->capture_default_str();
}

void add_estimate_flags(CLI::App* sub, tg::EstimateOptions& e) {
  sub->add_option("--max-rows", e.max_rows)->capture_default_str();
  sub->add_option("--max-cols", e.max_cols)->capture_default_str();
  sub->add_option("--threshold", e.threshold, "Luminance threshold for black")->capture_default_str();
  sub->add_option("--min-frac", e.dividers.min_frac, "Minimum line length relative to the longest")
      ->capture_default_str();
}

void add_ga_flags(CLI::App* sub, tg::GAParams& p) {
  sub->add_option("--population", p.population_size)->capture_default_str();
  sub->add_option("--elitism", p.elitism)->capture_default_str();
  sub->add_option("--reproduce-frac", p.reproduce_frac)->capture_default_str();
  sub->add_option("--numeric-prob", p.numeric_mutation_prob)->capture_default_str();
  sub->add_option("--structural-prob", p.structural_mutation_prob)->capture_default_str();
  sub->add_option("--op-add", p.structural_ops.add)->capture_default_str();
  sub->add_option("--op-merge", p.structural_ops.merge)->capture_default_str();
  sub->add_option("--op-remove", p.structural_ops.remove)->capture_default_str();
  sub->add_option("--sigma", p.numeric_mutation_sigma)->capture_default_str();
  sub->add_option("--epsilon", p.convergence_epsilon)->capture_default_str();
  sub->add_option("--window", p.convergence_window)->capture_default_str();
  sub->add_option("--max-epochs", p.max_epochs)->capture_default_str();
}

nlohmann::json report_json(const tg::SkewReport& r) {
  return {{"estimated_angle", r.estimated_angle},
          {"passes_applied", r.passes_applied},
          {"residual_angle", r.residual_angle},
          {"pre_dims", {r.pre_dims.first, r.pre_dims.second}},
          {"post_dims", {r.post_dims.first, r.post_dims.second}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Table structure recognition from border skeletons"};
  app.require_subcommand(1);
  Common common;

  // gen
  std::vector<std::string> gen_configs{"base"};
  int gen_count = 10;
  std::string gen_style = "blurry";
  std::string gen_out;
  double gen_visibility = 0.5;
  auto* gen = app.add_subcommand("gen", "Generate scan/skeleton/genotype triples and a manifest");
  gen->add_option("--config", gen_configs, "Table family, repeatable, or 'all'")->capture_default_str();
  gen->add_option("--count", gen_count, "Tables per config")->capture_default_str();
  gen->add_option("--style", gen_style, "solid or blurry")->capture_default_str();
  gen->add_option("--visibility", gen_visibility, "Probability an interior divider shows in the scan")
      ->capture_default_str();
  gen->add_option("--out", gen_out)->required();
  gen->add_option("--seed", common.seed)->required();
  add_canvas(gen, common);

  // degrade
  std::string deg_in, deg_out, deg_artifacts = "5";
  tg::NoiseParams noise;
  auto* deg = app.add_subcommand("degrade", "Add artifacts and intensity noise to a skeleton");
  deg->add_option("--in", deg_in)->required();
  deg->add_option("--out", deg_out)->required();
  deg->add_option("--artifacts", deg_artifacts, "Artifact count N or LO:HI")->capture_default_str();
  deg->add_option("--length-frac", noise.artifact_len_frac)->capture_default_str();
  deg->add_option("--thickness", noise.artifact_thickness)->capture_default_str();
  deg->add_option("--jitter", noise.gray_jitter_sigma, "Gaussian intensity sigma")->capture_default_str();
  deg->add_option("--seed", common.seed)->required();
  add_canvas(deg, common);

  // estimate
  std::string est_in, est_out;
  bool est_resample = false;
  tg::EstimateOptions est_opts;
  auto* est = app.add_subcommand("estimate", "Recover the table genotype from a skeleton by xy-cut");
  est->add_option("--skeleton", est_in)->required();
  est->add_option("--out", est_out)->required();
  est->add_flag("--resample", est_resample, "Resample the skeleton to the canvas first");
  add_estimate_flags(est, est_opts);
  add_canvas(est, common);

  // optimize
  std::string opt_target, opt_initial, opt_out, opt_history, opt_style = "blurry";
  tg::GAParams ga;
  tg::EstimateOptions opt_est;
  auto* opt = app.add_subcommand("optimize", "Refine a genotype against a skeleton with the GA");
  opt->add_option("--target", opt_target)->required();
  opt->add_option("--initial", opt_initial, "Starting genotype; estimated from the target when omitted");
  opt->add_option("--out", opt_out)->required();
  opt->add_option("--history", opt_history, "CSV of best fitness per epoch");
  opt->add_option("--style", opt_style)->capture_default_str();
  opt->add_option("--seed", common.seed)->required();
  add_ga_flags(opt, ga);
  add_canvas(opt, common);

  // deskew
  std::string dsk_in, dsk_out, dsk_report;
  int dsk_passes = 5;
  double dsk_max_angle = 35.0;
  bool dsk_crop = false;
  auto* dsk = app.add_subcommand("deskew", "Iteratively estimate and undo skew");
  dsk->add_option("--in", dsk_in)->required();
  dsk->add_option("--out", dsk_out)->required();
  dsk->add_option("--report", dsk_report);
  dsk->add_option("--passes", dsk_passes)->capture_default_str();
  dsk->add_option("--max-angle", dsk_max_angle)->capture_default_str();
  dsk->add_flag("--crop", dsk_crop, "Centre-crop the result to the canvas");
  add_canvas(dsk, common);

  // eval
  std::string ev_manifest, ev_csv, ev_skeletons, ev_artifacts;
  bool ev_refine = false;
  tg::EstimateOptions ev_est;
  tg::GAParams ev_ga;
  auto* ev = app.add_subcommand("eval", "Estimate every manifest entry and aggregate metrics per config");
  ev->add_option("--manifest", ev_manifest)->required();
  ev->add_option("--csv", ev_csv)->required();
  ev->add_option("--skeletons", ev_skeletons, "Directory of externally produced <stem>.skel.png files");
  ev->add_option("--artifacts", ev_artifacts, "Degrade skeletons with N or LO:HI artifacts (needs --seed)");
  ev->add_flag("--refine", ev_refine, "Refine each estimate with the GA (needs --seed)");
  ev->add_option("--seed", common.seed);
  add_estimate_flags(ev, ev_est);
  add_ga_flags(ev, ev_ga);
  add_canvas(ev, common);

  // sweep
  std::string sw_manifest, sw_angles = "-30:30:5", sw_mode = "both", sw_csv, sw_svg;
  tg::SweepOptions sw;
  auto* swp = app.add_subcommand("sweep", "Rotation sweep with and without deskew");
  swp->add_option("--manifest", sw_manifest)->required();
  swp->add_option("--angles", sw_angles, "start:stop:step, inclusive")->capture_default_str();
  swp->add_option("--deskew", sw_mode)->check(CLI::IsMember({"on", "off", "both"}))->capture_default_str();
  swp->add_option("--csv", sw_csv)->required();
  swp->add_option("--svg", sw_svg);
  swp->add_option("--passes", sw.passes)->capture_default_str();
  swp->add_option("--max-angle", sw.max_angle)->capture_default_str();
  add_estimate_flags(swp, sw.estimate);
  add_canvas(swp, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    const tg::Canvas canvas = parse_canvas(common.canvas);

    if (*gen) {
      std::vector<tg::TableConfig> configs;
      for (const auto& name : gen_configs) {
        if (name == "all") {
          for (const auto& c : tg::builtin_configs()) configs.push_back(c);
        } else {
          configs.push_back(tg::builtin_config(name));
        }
      }
      if (gen_count <= 0) throw tg::InvalidArgument("--count must be positive");
      tg::DatasetOptions d;
      d.canvas = canvas;
      d.style = tg::parse_border_style(gen_style);
      d.scan.divider_visibility = gen_visibility;
      tg::generate_dataset(configs, gen_count, gen_out, *common.seed, d);
    } else if (*deg) {
      noise.artifact_count = parse_int_range(deg_artifacts);
      noise.seed = *common.seed;
      tg::write_png(tg::degrade(tg::read_png(deg_in), noise), deg_out);
    } else if (*est) {
      auto img = est_resample ? tg::load_external(est_in, canvas.width, canvas.height) : tg::read_png(est_in);
      tg::save_genotype(tg::estimate_structure(img, est_opts), est_out);
    } else if (*opt) {
      auto target = tg::read_png(opt_target);
      auto initial = opt_initial.empty() ? tg::estimate_structure(target, opt_est) : tg::load_genotype(opt_initial);
      ga.seed = *common.seed;
      ga.style = tg::parse_border_style(opt_style);
      auto result = tg::evolve(initial, target, ga);
      tg::save_genotype(result.best, opt_out);
      if (!opt_history.empty()) tg::write_history_csv(result.history, opt_history);
    } else if (*dsk) {
      auto result = tg::deskew_iterative(tg::read_png(dsk_in), dsk_passes, dsk_max_angle);
      if (dsk_crop) {
        result.image = tg::crop_center(result.image, canvas.width, canvas.height);
        result.report.post_dims = {result.image.width(), result.image.height()};
      }
      tg::write_png(result.image, dsk_out);
      if (!dsk_report.empty()) write_text(dsk_report, report_json(result.report).dump(2) + "\n");
    } else if (*ev) {
      auto manifest = tg::load_manifest(ev_manifest);
      tg::EvalOptions options;
      options.estimate = ev_est;
      if (!ev_skeletons.empty()) options.skeleton_dir = ev_skeletons;
      if ((!ev_artifacts.empty() || ev_refine) && !common.seed) {
        throw tg::InvalidArgument("--artifacts and --refine need --seed");
      }
      if (!ev_artifacts.empty()) {
        tg::NoiseParams n;
        n.artifact_count = parse_int_range(ev_artifacts);
        n.seed = *common.seed;
        options.noise = n;
      }
      if (ev_refine) {
        ev_ga.seed = *common.seed;
        options.refine = ev_ga;
      }
      auto run = tg::evaluate_manifest(manifest, options);
      if (run.reports.empty()) throw tg::DataError("no readable entries in " + ev_manifest);
      tg::write_metrics_csv(run.reports, ev_csv);
      if (run.skipped > 0) std::cerr << "skipped " << run.skipped << " unreadable entries\n";
    } else if (*swp) {
      auto manifest = tg::load_manifest(sw_manifest);
      sw.angles = tg::parse_angle_range(sw_angles);
      tg::SweepReport report;
      for (bool mode : {false, true}) {
        if ((mode && sw_mode == "off") || (!mode && sw_mode == "on")) continue;
        sw.deskew = mode;
        auto part = tg::rotation_sweep(manifest, sw);
        report.rows.insert(report.rows.end(), part.rows.begin(), part.rows.end());
      }
      tg::write_sweep_csv(report, sw_csv);
      if (!sw_svg.empty()) tg::write_sweep_svg(report, sw_svg);
    }
  } catch (const tg::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const tg::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
