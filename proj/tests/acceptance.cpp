// Acceptance suite: runs every config in configs/ and prints one PASS/FAIL
// line per criterion. A criterion passes when every check tagged with it
// passes. Tolerances live in besov::harness::tol.
//
//   acceptance [config-dir] [--verbose]
#include <algorithm>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <map>

#include "besov/harness.hpp"

namespace fs = std::filesystem;
using namespace besov::harness;

namespace {

const std::map<int, const char*> kTitles = {
    {1, "spline system orthonormality and Haar case"},
    {2, "spline wavelet vanishing moments"},
    {3, "continuous wavelet transform tight frame"},
    {4, "small-scale decay of the local-means transform"},
    {5, "homogeneous dilation covariance"},
    {6, "cross-variant and cross-kernel equivalence"},
    {7, "exact translation scaling on group spaces"},
    {8, "sequence-space norms of tile indicators"},
    {9, "coorbit norms against direct norms"},
    {10, "frame analysis/synthesis round trip"},
    {11, "integrability window of the reproducing kernel"},
    {12, "frame smoothness window calculator"},
    {13, "chain smoother and Fefferman-Stein inequalities"},
};

struct Tally {
  int passed = 0, total = 0;
  std::vector<std::string> failures;
  std::vector<std::string> sources;
  double seconds = 0;
};

}  // namespace

int main(int argc, char** argv) {
  std::string dir = BESOV_CONFIG_DIR;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--verbose") == 0) verbose = true;
    else dir = argv[i];
  }

  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::map<int, Tally> tally;
  for (const auto& [k, title] : kTitles) tally[k];
  int errors = 0;
  for (const auto& f : files) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto cfg = load_config(f.string());
      const auto report = run(cfg);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      for (const auto& c : report.checks) {
        auto& t = tally[c.criterion];
        ++t.total;
        if (c.pass) ++t.passed;
        else t.failures.push_back(c.name + ": " + c.detail);
        if (verbose) std::cout << "  " << format_check(c) << "\n";
      }
      if (cfg.criterion) {
        tally[cfg.criterion].sources.push_back(f.filename().string());
        tally[cfg.criterion].seconds += secs;
      }
    } catch (const std::exception& e) {
      ++errors;
      std::cout << "ERROR " << f.filename().string() << ": " << e.what() << "\n";
    }
  }

  bool all = errors == 0;
  for (const auto& [k, t] : tally) {
    const auto it = kTitles.find(k);
    const bool ok = t.total > 0 && t.passed == t.total;
    all = all && ok;
    std::printf("%s  criterion %2d: %-50s %d/%d checks  %.1fs", ok ? "PASS" : "FAIL", k,
                it == kTitles.end() ? "(untitled)" : it->second, t.passed, t.total, t.seconds);
    if (t.total == 0) std::printf("  (no config)");
    std::printf("\n");
    for (const auto& msg : t.failures) std::printf("        %s\n", msg.c_str());
  }
  std::printf("%s\n", all ? "acceptance: all criteria pass" : "acceptance: FAILED");
  return all ? 0 : 1;
}
