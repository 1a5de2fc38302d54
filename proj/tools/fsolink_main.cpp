// Command-line front end for the free-space optical link-budget library.
// Talks to the core exclusively through the C API in fsolink.h.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fsolink.h"

namespace {

int status_to_exit(fsl_status st) {
  switch (st) {
    case FSL_OK:
      return 0;
    case FSL_ERR_SCHEMA:
    case FSL_ERR_IO:  // unreadable scenario input counts as a schema failure
      return 2;
    case FSL_ERR_DOMAIN:
      return 3;
    case FSL_ERR_CONVERGENCE:
      return 4;
    default:
      return 1;
  }
}

int report(fsl_status st) {
  std::cerr << "error: " << fsl_last_error() << "\n";
  return status_to_exit(st);
}

std::string default_out_dir() {
  const char* env = std::getenv("FSOLINK_OUT_DIR");
  return (env && *env) ? std::string(env) : std::string(".");
}

bool write_file(const std::filesystem::path& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

struct ScenarioHandle {
  fsl_scenario* ptr = nullptr;
  ~ScenarioHandle() { fsl_scenario_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-space optical quantum link budgets and key rates"};
  app.require_subcommand(1);

  unsigned jobs = 0;
  std::uint64_t seed = 1;
  double tolerance = 1.0;
  app.add_option("--jobs", jobs,
                 "Worker threads (0 = hardware concurrency)");
  app.add_option("--seed", seed, "Base seed for stochastic helpers");
  app.add_option("--tolerance", tolerance,
                 "Quadrature tolerance scale (1.0 = default)")
      ->check(CLI::PositiveNumber);

  std::string eval_file;
  CLI::App* eval = app.add_subcommand(
      "eval", "Evaluate one scenario and print a JSON report");
  eval->add_option("file", eval_file, "Scenario JSON file")->required();

  std::string sweep_file;
  std::string sweep_axis;
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Sweep a declared axis and write a CSV table");
  sweep->add_option("file", sweep_file, "Scenario JSON file")->required();
  sweep->add_option("--axis", sweep_axis, "Sweep axis declared in the file")
      ->required();
  sweep->add_option("--out", sweep_out,
                    "Output CSV path (default: <out-dir>/<stem>_<axis>.csv)");

  std::string figure_name;
  std::string figure_dir;
  CLI::App* figure = app.add_subcommand(
      "figure", "Write the data series behind one reference figure");
  figure->add_option("name", figure_name, "Figure name: fig1..fig6")
      ->required();
  figure->add_option("--out-dir", figure_dir,
                     "Output directory (default: $FSOLINK_OUT_DIR or .)");

  CLI11_PARSE(app, argc, argv);

  const fsl_options opt{jobs, seed, tolerance};

  if (*eval) {
    ScenarioHandle s;
    fsl_status st = fsl_scenario_load(eval_file.c_str(), &s.ptr);
    if (st != FSL_OK) return report(st);
    char* json = nullptr;
    st = fsl_eval(s.ptr, &opt, &json);
    if (st != FSL_OK) return report(st);
    std::cout << json;
    fsl_string_free(json);
    return 0;
  }

  if (*sweep) {
    ScenarioHandle s;
    fsl_status st = fsl_scenario_load(sweep_file.c_str(), &s.ptr);
    if (st != FSL_OK) return report(st);
    char* csv = nullptr;
    st = fsl_sweep_csv(s.ptr, sweep_axis.c_str(), &opt, &csv);
    if (st != FSL_OK) return report(st);
    std::filesystem::path out_path;
    if (!sweep_out.empty()) {
      out_path = sweep_out;
    } else {
      const std::string stem =
          std::filesystem::path(sweep_file).stem().string();
      out_path = std::filesystem::path(default_out_dir()) /
                 (stem + "_" + sweep_axis + ".csv");
    }
    const bool ok = write_file(out_path, csv);
    fsl_string_free(csv);
    if (!ok) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
    std::cout << out_path.string() << "\n";
    return 0;
  }

  if (*figure) {
    char** names = nullptr;
    char** contents = nullptr;
    size_t count = 0;
    fsl_status st = fsl_figure(figure_name.c_str(), &opt, &names, &contents,
                               &count);
    if (st != FSL_OK) return report(st);
    const std::filesystem::path dir =
        figure_dir.empty() ? std::filesystem::path(default_out_dir())
                           : std::filesystem::path(figure_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    int rc = 0;
    for (size_t i = 0; i < count; ++i) {
      const std::filesystem::path out_path = dir / names[i];
      if (!write_file(out_path, contents[i])) {
        std::cerr << "error: cannot write " << out_path << "\n";
        rc = 1;
        break;
      }
      std::cout << out_path.string() << "\n";
    }
    fsl_figure_free(names, contents, count);
    return rc;
  }

  return 0;
}
