#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace tablegrid {

struct Canvas {
  int width = 595;
  int height = 842;
  bool operator==(const Canvas&) const = default;
};

struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
  bool operator==(const Rect&) const = default;
};

// Thickness of the solid line core drawn for every divider.
inline constexpr int kBorderCore = 3;

// Latent table structure. Row heights and column widths are padded with
// zeros up to the declared maximum cardinality; a zero entry is an absent
// row or column.
struct TableGenotype {
  int max_rows = 0;
  int max_cols = 0;
  int origin_x = 0;
  int origin_y = 0;
  std::vector<int> row_heights;
  std::vector<int> col_widths;

  int effective_rows() const;
  int effective_cols() const;
  int total_height() const;
  int total_width() const;

  // Positive extents in table order.
  std::vector<int> present_heights() const;
  std::vector<int> present_widths() const;

  // Divider centre lines: origin followed by running sums of present extents.
  std::vector<int> horizontal_dividers() const;
  std::vector<int> vertical_dividers() const;

  bool operator==(const TableGenotype&) const = default;
};

// Builds a genotype from present extents, zero-padding to max_rows/max_cols
// (which default to the number of present extents).
TableGenotype make_genotype(int origin_x, int origin_y, std::vector<int> heights,
                            std::vector<int> widths, int max_rows = 0, int max_cols = 0);

struct ValidationResult {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

ValidationResult validate_genotype(const TableGenotype& g, Canvas canvas);

Rect bounding_box(const TableGenotype& g);

// Moves present extents to the front, keeping their order.
TableGenotype compacted(TableGenotype g);

void to_json(nlohmann::json& j, const TableGenotype& g);
void from_json(const nlohmann::json& j, TableGenotype& g);

TableGenotype load_genotype(const std::filesystem::path& path);
void save_genotype(const TableGenotype& g, const std::filesystem::path& path);

}  // namespace tablegrid
