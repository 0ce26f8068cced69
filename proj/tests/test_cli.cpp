#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>

#include "helpers.hpp"
#include "tablegrid/genotype.hpp"
#include "tablegrid/png_io.hpp"
#include "tablegrid/render.hpp"

namespace {

int run(const std::string& args, const std::filesystem::path& dir) {
  const std::string cmd = "cd '" + dir.string() + "' && '" TABLEGRID_CLI "' " + args + " >stdout.txt 2>stderr.txt";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("cli usage errors exit with 1 and print usage") {
  const auto dir = scratch_dir("cli_usage");
  CHECK(run("", dir) == 1);
  CHECK(run("frobnicate", dir) == 1);
  CHECK(read_file(dir / "stderr.txt").find("Usage") != std::string::npos);
  CHECK(run("gen --config base --count 2 --out d", dir) == 1);  // no seed
  CHECK(run("estimate --skeleton a.png --out g.json --bogus", dir) == 1);
  CHECK(run("gen --config nope --count 2 --seed 1 --out d", dir) == 1);
  CHECK(run("gen --config base --count 2 --seed 1 --out d --canvas 12by3", dir) == 1);
  CHECK(run("sweep --manifest m.json --csv s.csv --deskew maybe", dir) == 1);
}

TEST_CASE("cli data errors exit with 2") {
  const auto dir = scratch_dir("cli_data");
  CHECK(run("estimate --skeleton missing.png --out g.json", dir) == 2);
  tablegrid::write_png(tablegrid::RasterImage::white(595, 842), dir / "white.png");
  CHECK(run("estimate --skeleton white.png --out g.json", dir) == 2);
  CHECK(read_file(dir / "stderr.txt").find("no lines") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(dir / "g.json"));
  CHECK(run("eval --manifest missing.json --csv m.csv", dir) == 2);
}

TEST_CASE("cli gen, estimate, eval and sweep") {
  const auto dir = scratch_dir("cli_flow");
  REQUIRE(run("gen --config base --count 3 --seed 7 --style blurry --out d", dir) == 0);
  auto manifest = nlohmann::json::parse(read_file(dir / "d" / "manifest.json"));
  CHECK(manifest["entries"].size() == 3);

  const std::string skel = manifest["entries"][0]["skeleton"];
  const std::string geno = manifest["entries"][0]["genotype"];
  REQUIRE(run("estimate --skeleton d/" + skel + " --out g.json", dir) == 0);
  auto est = tablegrid::load_genotype(dir / "g.json");
  auto truth = tablegrid::load_genotype(dir / "d" / geno);
  CHECK(est.effective_rows() == truth.effective_rows());
  CHECK(est.effective_cols() == truth.effective_cols());

  REQUIRE(run("eval --manifest d/manifest.json --csv m.csv", dir) == 0);
  CHECK(read_file(dir / "m.csv").find("base,3,100.0,100.0") != std::string::npos);

  REQUIRE(run("sweep --manifest d/manifest.json --angles -30:30:5 --deskew on --csv s.csv", dir) == 0);
  std::ifstream in(dir / "s.csv");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 14);

  REQUIRE(run("deskew --in d/" + skel + " --out r.png --report r.json --passes 5 --max-angle 35", dir) == 0);
  auto report = nlohmann::json::parse(read_file(dir / "r.json"));
  for (const char* key : {"estimated_angle", "passes_applied", "residual_angle", "pre_dims", "post_dims"}) {
    CHECK(report.contains(key));
  }
}

TEST_CASE("cli honours a custom canvas") {
  const auto dir = scratch_dir("cli_canvas");
  REQUIRE(run("gen --config short_cells --count 2 --seed 3 --canvas 800x900 --out d", dir) == 0);
  auto manifest = nlohmann::json::parse(read_file(dir / "d" / "manifest.json"));
  const std::string skel = manifest["entries"][0]["skeleton"];
  auto img = tablegrid::read_png(dir / "d" / skel);
  CHECK(img.width() == 800);
  CHECK(img.height() == 900);
  REQUIRE(run("eval --manifest d/manifest.json --csv m.csv --canvas 800x900", dir) == 0);
}
