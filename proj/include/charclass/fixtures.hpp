#pragma once

// Fixture lookup: an explicit path wins; otherwise $CHARCLASS_FIXTURES, then
// the directory the library was configured with.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "charclass/invariants.hpp"
#include "charclass/steenrod.hpp"
#include "charclass/thom.hpp"

#ifndef CHARCLASS_DEFAULT_FIXTURE_DIR
#define CHARCLASS_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace charclass {

inline std::vector<std::filesystem::path> fixture_dirs() {
  std::vector<std::filesystem::path> dirs;
  if (const char* env = std::getenv("CHARCLASS_FIXTURES"); env && *env) dirs.emplace_back(env);
  dirs.emplace_back(CHARCLASS_DEFAULT_FIXTURE_DIR);
  return dirs;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw FixtureNotFound("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// `name` is a path to an existing file, or a bare name looked up as
// <dir>/<subdir>/<name><ext> (subdir may be empty).
inline std::filesystem::path find_fixture(const std::string& name, const std::string& subdir = {},
                                          const std::string& ext = {}) {
  namespace fs = std::filesystem;
  if (name.find('/') != std::string::npos || fs::path(name).has_extension()) {
    if (fs::is_regular_file(name)) return name;
    throw FixtureNotFound("fixture file " + name + " not found");
  }
  for (const auto& dir : fixture_dirs()) {
    const fs::path p = (subdir.empty() ? dir : dir / subdir) / (name + ext);
    if (fs::is_regular_file(p)) return p;
  }
  throw FixtureNotFound("fixture " + (subdir.empty() ? name : subdir + "/" + name) + ext + " not found");
}

inline BundleModel load_model(const std::string& name) {
  return parse_bundle_model(read_file(find_fixture(name, "models", ".model")));
}

// Files first; the two shipped tables are also compiled in.
inline SteenrodTable load_table(const std::string& name) {
  try {
    return parse_steenrod_table(read_file(find_fixture(name, "tables", ".table")));
  } catch (const FixtureNotFound&) {
    if (name == "paper-verbatim-p3" || name == "oracle-p3") return builtin_table(name);
    throw;
  }
}

inline BordismTable load_bordism(const std::string& name = "bordism") {
  return parse_bordism_table(read_file(find_fixture(name, {}, ".tsv")));
}

inline std::vector<ManifoldDescriptor> load_manifolds(const std::string& name = "manifolds") {
  return parse_manifolds(read_file(find_fixture(name, {}, ".tsv")));
}

inline ManifoldDescriptor find_manifold(const std::string& manifold, const std::string& file = "manifolds") {
  for (auto& m : load_manifolds(file))
    if (m.name == manifold) return m;
  throw FixtureNotFound("no manifold named " + manifold);
}

}  // namespace charclass
