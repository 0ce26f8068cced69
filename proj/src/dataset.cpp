#include "tablegrid/dataset.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "tablegrid/error.hpp"
#include "tablegrid/parallel.hpp"
#include "tablegrid/png_io.hpp"

namespace tablegrid {

namespace fs = std::filesystem;

DatasetManifest generate_dataset(const std::vector<TableConfig>& configs, int per_config,
                                 const fs::path& out_dir, std::uint64_t seed,
                                 const DatasetOptions& options) {
  if (per_config < 0) throw InvalidArgument("per-config count must be non-negative");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw DataError("cannot create " + out_dir.string() + ": " + ec.message());

  DatasetManifest manifest;
  manifest.canvas = options.canvas;
  manifest.root = out_dir;
  for (const auto& config : configs) {
    for (int k = 0; k < per_config; ++k) {
      char stem[256];
      std::snprintf(stem, sizeof stem, "%s_%04d", config.name.c_str(), k);
      const auto index = manifest.entries.size();
      manifest.entries.push_back({std::string(stem) + ".scan.png", std::string(stem) + ".skel.png",
                                  std::string(stem) + ".genotype.json", config.name,
                                  derive_seed(seed, index)});
    }
  }

  std::vector<const TableConfig*> entry_config;
  for (const auto& config : configs) {
    for (int k = 0; k < per_config; ++k) entry_config.push_back(&config);
  }

  parallel_for(manifest.entries.size(), [&](std::size_t i) {
    const auto& e = manifest.entries[i];
    const TableConfig& config = *entry_config[i];
    const auto g = sample_genotype(config, e.seed, options.canvas);
    const auto scan = render_scan(g, config, derive_seed(e.seed, 1), options.canvas, options.scan);
    const auto skeleton = render_skeleton(g, options.style, options.canvas);
    write_png(scan, out_dir / e.scan_path);
    write_png(skeleton, out_dir / e.skeleton_path);
    save_genotype(g, out_dir / e.genotype_path);
  });

  save_manifest(manifest, out_dir / "manifest.json");
  return manifest;
}

void save_manifest(const DatasetManifest& manifest, const fs::path& path) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : manifest.entries) {
    entries.push_back({{"scan", e.scan_path},
                       {"skeleton", e.skeleton_path},
                       {"genotype", e.genotype_path},
                       {"config", e.config_name},
                       {"seed", e.seed}});
  }
  nlohmann::json j{{"canvas", {{"width", manifest.canvas.width}, {"height", manifest.canvas.height}}},
                   {"entries", entries}};
  std::ofstream out(path);
  if (!out) throw DataError("cannot write manifest " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw DataError("failed writing manifest " + path.string());
}

DatasetManifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest " + path.string());
  DatasetManifest manifest;
  manifest.root = path.parent_path();
  try {
    nlohmann::json j;
    in >> j;
    manifest.canvas.width = j.at("canvas").at("width").get<int>();
    manifest.canvas.height = j.at("canvas").at("height").get<int>();
    for (const auto& e : j.at("entries")) {
      manifest.entries.push_back({e.at("scan").get<std::string>(),
                                  e.at("skeleton").get<std::string>(),
                                  e.at("genotype").get<std::string>(),
                                  e.at("config").get<std::string>(),
                                  e.at("seed").get<std::uint64_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed manifest " + path.string() + ": " + e.what());
  }
  for (const auto& e : manifest.entries) {
    for (const auto* rel : {&e.scan_path, &e.skeleton_path, &e.genotype_path}) {
      if (!fs::exists(manifest.resolve(*rel))) {
        throw DataError("manifest " + path.string() + " references missing file " + *rel);
      }
    }
  }
  return manifest;
}

}  // namespace tablegrid
