#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tablegrid/genotype.hpp"
#include "tablegrid/render.hpp"

namespace tablegrid {

struct ManifestEntry {
  // Relative to the manifest's directory.
  std::string scan_path;
  std::string skeleton_path;
  std::string genotype_path;
  std::string config_name;
  std::uint64_t seed = 0;
  bool operator==(const ManifestEntry&) const = default;
};

struct DatasetManifest {
  Canvas canvas;
  std::vector<ManifestEntry> entries;
  // Directory the relative paths resolve against; not serialised.
  std::filesystem::path root;

  std::filesystem::path resolve(const std::string& relative) const { return root / relative; }
};

struct DatasetOptions {
  Canvas canvas;
  BorderStyle style = BorderStyle::blurred();
  ScanOptions scan;
};

// Writes <config>_<index>.scan.png / .skel.png / .genotype.json per table
// plus manifest.json into out_dir. Entry k of the whole run uses the seed
// derive_seed(seed, k), so output does not depend on worker scheduling.
DatasetManifest generate_dataset(const std::vector<TableConfig>& configs, int per_config,
                                 const std::filesystem::path& out_dir, std::uint64_t seed,
                                 const DatasetOptions& options = {});

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

// Parses the manifest and checks that every referenced file exists.
DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace tablegrid
