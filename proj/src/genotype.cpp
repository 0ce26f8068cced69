#include "tablegrid/genotype.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "tablegrid/error.hpp"

namespace tablegrid {

namespace {

int count_present(const std::vector<int>& v) {
  return static_cast<int>(std::count_if(v.begin(), v.end(), [](int e) { return e > 0; }));
}

int sum_present(const std::vector<int>& v) {
  int total = 0;
  for (int e : v) {
    if (e > 0) total += e;
  }
  return total;
}

std::vector<int> present(const std::vector<int>& v) {
  std::vector<int> out;
  std::copy_if(v.begin(), v.end(), std::back_inserter(out), [](int e) { return e > 0; });
  return out;
}

std::vector<int> dividers(int origin, const std::vector<int>& extents) {
  std::vector<int> out{origin};
  for (int e : extents) {
    if (e > 0) out.push_back(out.back() + e);
  }
  return out;
}

}  // namespace

int TableGenotype::effective_rows() const { return count_present(row_heights); }
int TableGenotype::effective_cols() const { return count_present(col_widths); }
int TableGenotype::total_height() const { return sum_present(row_heights); }
int TableGenotype::total_width() const { return sum_present(col_widths); }
std::vector<int> TableGenotype::present_heights() const { return present(row_heights); }
std::vector<int> TableGenotype::present_widths() const { return present(col_widths); }
std::vector<int> TableGenotype::horizontal_dividers() const { return dividers(origin_y, row_heights); }
std::vector<int> TableGenotype::vertical_dividers() const { return dividers(origin_x, col_widths); }

TableGenotype make_genotype(int origin_x, int origin_y, std::vector<int> heights,
                            std::vector<int> widths, int max_rows, int max_cols) {
  TableGenotype g;
  g.max_rows = std::max<int>(max_rows, static_cast<int>(heights.size()));
  g.max_cols = std::max<int>(max_cols, static_cast<int>(widths.size()));
  g.origin_x = origin_x;
  g.origin_y = origin_y;
  g.row_heights = std::move(heights);
  g.col_widths = std::move(widths);
  g.row_heights.resize(static_cast<std::size_t>(g.max_rows), 0);
  g.col_widths.resize(static_cast<std::size_t>(g.max_cols), 0);
  return g;
}

ValidationResult validate_genotype(const TableGenotype& g, Canvas canvas) {
  auto reject = [](std::string why) { return ValidationResult{false, std::move(why)}; };
  if (g.max_rows < 1 || g.max_cols < 1) return reject("max_rows and max_cols must be positive");
  if (g.row_heights.size() != static_cast<std::size_t>(g.max_rows)) {
    return reject("row_heights length differs from max_rows");
  }
  if (g.col_widths.size() != static_cast<std::size_t>(g.max_cols)) {
    return reject("col_widths length differs from max_cols");
  }
  for (int h : g.row_heights) {
    if (h < 0) return reject("negative row height " + std::to_string(h));
  }
  for (int w : g.col_widths) {
    if (w < 0) return reject("negative column width " + std::to_string(w));
  }
  if (g.origin_x < 0 || g.origin_y < 0) return reject("origin lies outside the canvas");
  if (g.effective_rows() == 0) return reject("no effective rows");
  if (g.effective_cols() == 0) return reject("no effective columns");
  if (g.origin_x + g.total_width() + kBorderCore > canvas.width) {
    return reject("table overflows canvas width: " + std::to_string(g.origin_x) + " + " +
                  std::to_string(g.total_width()) + " + border > " + std::to_string(canvas.width));
  }
  if (g.origin_y + g.total_height() + kBorderCore > canvas.height) {
    return reject("table overflows canvas height: " + std::to_string(g.origin_y) + " + " +
                  std::to_string(g.total_height()) + " + border > " +
                  std::to_string(canvas.height));
  }
  return {};
}

Rect bounding_box(const TableGenotype& g) {
  return {g.origin_x, g.origin_y, g.total_width(), g.total_height()};
}

TableGenotype compacted(TableGenotype g) {
  auto compact = [](std::vector<int>& v) {
    std::stable_partition(v.begin(), v.end(), [](int e) { return e > 0; });
    for (int& e : v) e = std::max(e, 0);
  };
  compact(g.row_heights);
  compact(g.col_widths);
  return g;
}

void to_json(nlohmann::json& j, const TableGenotype& g) {
  j = nlohmann::json{{"max_rows", g.max_rows},     {"max_cols", g.max_cols},
                     {"origin_x", g.origin_x},     {"origin_y", g.origin_y},
                     {"row_heights", g.row_heights}, {"col_widths", g.col_widths}};
}

void from_json(const nlohmann::json& j, TableGenotype& g) {
  auto integer = [&](const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw DataError(std::string("genotype field '") + key + "' must be an integer");
    return v.get<int>();
  };
  auto integers = [&](const char* key) {
    const auto& v = j.at(key);
    if (!v.is_array()) throw DataError(std::string("genotype field '") + key + "' must be an array");
    std::vector<int> out;
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw DataError(std::string("genotype field '") + key + "' must hold integers");
      out.push_back(e.get<int>());
    }
    return out;
  };
  try {
    g.max_rows = integer("max_rows");
    g.max_cols = integer("max_cols");
    g.origin_x = integer("origin_x");
    g.origin_y = integer("origin_y");
    g.row_heights = integers("row_heights");
    g.col_widths = integers("col_widths");
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed genotype JSON: ") + e.what());
  }
}

TableGenotype load_genotype(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open genotype file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("cannot parse " + path.string() + ": " + e.what());
  }
  return j.get<TableGenotype>();
}

void save_genotype(const TableGenotype& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write genotype file " + path.string());
  out << nlohmann::json(g).dump(2) << '\n';
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace tablegrid
