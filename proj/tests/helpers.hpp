#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

// Fresh scratch directory for one test case.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const char* root = std::getenv("TABLEGRID_TEST_TMP");
  std::filesystem::path dir = root ? std::filesystem::path(root) : std::filesystem::temp_directory_path() / "tablegrid_tests";
  dir /= name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}
