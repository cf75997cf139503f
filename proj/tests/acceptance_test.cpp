// Acceptance gate: one line per criterion, nonzero exit on any FAIL.
// Criterion 9 additionally runs the installed CLI twice as a subprocess.

#include <array>
#include <cstdio>
#include <iostream>
#include <memory>

#include "charclass/acceptance.hpp"

namespace {

struct Spawned {
  std::string out;
  int exit = -1;
};

Spawned spawn(const std::string& cmd) {
  Spawned s;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return s;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) s.out.append(buf.data(), n);
  const int status = pclose(pipe);
  s.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return s;
}

}  // namespace

int main() {
  using namespace charclass;
  AcceptanceReport report;
  for (auto& row : acceptance::criteria_one_to_eight()) report.rows.push_back(std::move(row));

  const std::string cmd = std::string("\"") + CHARCLASS_CLI_PATH + "\" verify-paper";
  report.rows.push_back(acceptance::run(9, "CLI determinism", "verify-paper twice", [&](acceptance::Recorder& rec) {
    const auto a = spawn(cmd);
    const auto b = spawn(cmd);
    rec.check(a.exit == 0, "first run exit " + std::to_string(a.exit));
    rec.check(b.exit == 0, "second run exit " + std::to_string(b.exit));
    rec.check(!a.out.empty() && a.out == b.out, "outputs differ between runs");
    rec.note("two subprocess runs, exit codes " + std::to_string(a.exit) + " and " + std::to_string(b.exit) + ", " +
             std::to_string(a.out.size()) + " bytes, " + (a.out == b.out ? "identical" : "different"));
  }));

  for (const auto& row : report.rows)
    std::cout << "[" << to_string(row.status) << "] criterion " << row.id << ": " << row.title << "\n";
  std::cout << "\n" << report.render();
  return report.ok() ? 0 : 1;
}
