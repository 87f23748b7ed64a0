// besovlab: run the function-space experiments from the command line.
//
//   besovlab decay
//   besovlab norms --config configs/c05_dilation.json --out out/c05
//   besovlab all --config configs            (every *.json in the directory)
//
// Exit status is 0 iff every asserted check passed, 1 if a check failed and
// 2 on a configuration or input error.
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "besov/harness.hpp"
#include "besov/io.hpp"

namespace fs = std::filesystem;
using besov::harness::json;

namespace {

struct Overrides {
  std::optional<int> dim, variant, order;
  std::optional<std::string> s, p, q, a;
  std::optional<double> beta, alpha;
  std::optional<std::uint64_t> seed;
};

json number_or_inf(const std::string& v) {
  if (v == "inf" || v == "infinity") return "inf";
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    throw besov::Error(besov::ErrorKind::Configuration, "command line: '" + v + "' is not a number");
  }
}

void apply_overrides(json& j, const Overrides& o) {
  if (!j.contains("params")) j["params"] = json::object();
  auto& P = j["params"];
  if (o.dim) {
    if (!j.contains("grid")) j["grid"] = {{"extent", 32.0}, {"n", *o.dim == 2 ? 512 : 4096}};
    j["grid"]["dim"] = *o.dim;
    if (*o.dim == 2 && j["grid"].value("n", 0) > 1024) j["grid"]["n"] = 1024;
  }
  if (o.s) P["s"] = number_or_inf(*o.s);
  if (o.p) P["p"] = number_or_inf(*o.p);
  if (o.q) P["q"] = number_or_inf(*o.q);
  if (o.a) P["a"] = number_or_inf(*o.a);
  if (o.variant) P["variant"] = *o.variant;
  if (o.order) {
    P["order"] = *o.order;
    P["orders"] = json::array({*o.order});
  }
  if (o.beta || o.alpha) {
    if (!j.contains("lattice")) j["lattice"] = json::object();
    if (o.beta) j["lattice"]["beta"] = *o.beta;
    if (o.alpha) j["lattice"]["alpha"] = *o.alpha;
  }
  if (o.seed) j["seed"] = *o.seed;
}

int run_one(const json& cfg, const std::string& out_dir, const std::string& format) {
  const auto config = besov::harness::parse_config(cfg);
  const auto report = besov::harness::run(config);
  for (const auto& c : report.checks) std::cout << besov::harness::format_check(c) << "\n";
  std::string dir = out_dir.empty() ? (config.out.empty() ? "besov_out/" + config.experiment : config.out) : out_dir;
  besov::harness::write_report(report, dir, format);
  std::cout << (report.passed() ? "ok" : "FAILED") << "  " << config.experiment << "/" << config.mode << " -> " << dir
            << "\n";
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"besovlab: Besov/Triebel-Lizorkin norms, wavelet transforms and frames"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format = "csv";
  Overrides o;
  int dim = 0, variant = 0, order = 0;
  double beta = 0, alpha = 0;
  std::uint64_t seed = 0;
  std::string s, p, q, a;

  std::vector<std::string> names = besov::harness::experiment_ids();
  names.push_back("all");
  for (const auto& name : names) {
    auto* sub = app.add_subcommand(name, name == "all" ? "run every config in a directory" : "run the " + name + " experiment");
    sub->add_option("--config", config_path, name == "all" ? "directory of *.json configs" : "JSON config file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--dim", dim, "dimension")->check(CLI::IsMember({1, 2}));
    sub->add_option("--s", s, "smoothness");
    sub->add_option("--p", p, "integrability (or inf)");
    sub->add_option("--q", q, "fine index (or inf)");
    sub->add_option("--a", a, "Peetre exponent");
    sub->add_option("--variant", variant, "norm variant");
    sub->add_option("--beta", beta, "lattice dilation base");
    sub->add_option("--alpha", alpha, "lattice translation step");
    sub->add_option("--order", order, "spline order m");
    sub->add_option("--seed", seed, "random seed");
  }
  CLI11_PARSE(app, argc, argv);
  auto* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  if (sub->count("--dim")) o.dim = dim;
  if (sub->count("--variant")) o.variant = variant;
  if (sub->count("--order")) o.order = order;
  if (sub->count("--beta")) o.beta = beta;
  if (sub->count("--alpha")) o.alpha = alpha;
  if (sub->count("--seed")) o.seed = seed;
  if (sub->count("--s")) o.s = s;
  if (sub->count("--p")) o.p = p;
  if (sub->count("--q")) o.q = q;
  if (sub->count("--a")) o.a = a;

  try {
    if (cmd == "all") {
      const std::string dir = config_path.empty() ? std::string(BESOV_CONFIG_DIR) : config_path;
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      if (files.empty()) throw besov::Error(besov::ErrorKind::Configuration, "no *.json configs in " + dir);
      int status = 0;
      for (const auto& f : files) {
        json j = json::parse(besov::io::read_text(f.string()));
        apply_overrides(j, o);
        const std::string od = out_dir.empty() ? "" : out_dir + "/" + f.stem().string();
        status = std::max(status, run_one(j, od, format));
      }
      return status;
    }
    json j = config_path.empty() ? json{{"experiment", cmd}} : json::parse(besov::io::read_text(config_path));
    if (j.value("experiment", cmd) != cmd)
      throw besov::Error(besov::ErrorKind::Configuration,
                         "experiment: config names '" + j.value("experiment", std::string()) + "' but the subcommand is '" +
                             cmd + "'");
    j["experiment"] = cmd;
    apply_overrides(j, o);
    return run_one(j, out_dir, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
