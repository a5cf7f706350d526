// Command-line harness: verify | sweep <experiment> | flow-check, driven by a
// key = value config file. Exit codes: 0 pass, 1 invariant failure, 2 config
// error.
#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "walab/runner.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"walab: STFT / Wiener-amalgam / Hamiltonian-flow laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", experiment;
  int threads = 0;
  app.add_option("--config", config_path, "config file path")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker thread count (0 = default)");

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  CLI::App* sweep = app.add_subcommand("sweep", "run a measurement sweep");
  sweep->add_option("experiment", experiment,
                    "dispersive | strichartz | duhamel | lemmas")
      ->required();
  CLI::App* flowcheck = app.add_subcommand("flow-check", "run the flow checks");

  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    const walab::ExperimentConfig cfg = walab::load_config(config_path);
    fs::create_directories(out_dir);

    if (verify->parsed() || flowcheck->parsed()) {
      const walab::VerifyReport rep = verify->parsed()
                                          ? walab::run_verify(cfg)
                                          : walab::run_flow_check(cfg);
      walab::write_report_json((fs::path(out_dir) / "report.json").string(), cfg, rep);
      for (const auto& r : rep.results)
        std::printf("%-22s %s  value=%.6g tol=%.6g %s\n", r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.value, r.tolerance, r.note.c_str());
      if (!rep.pass()) {
        std::fprintf(stderr, "first failing invariant: %s\n",
                     rep.first_failure()->name.c_str());
        return 1;
      }
      return 0;
    }

    // sweep
    const auto recs = walab::run_sweep(cfg, experiment);
    walab::write_records_csv((fs::path(out_dir) / "results.csv").string(), recs);
    walab::write_records_jsonl((fs::path(out_dir) / "records.jsonl").string(), recs);
    std::vector<std::pair<double, double>> pts;
    if (experiment == "dispersive") {
      for (const auto& r : recs)
        if (r.id.rfind("t=", 0) == 0)
          pts.emplace_back(std::log10(std::stod(r.id.substr(2))),
                           std::log10(r.value));
    } else if (experiment == "duhamel") {
      for (const auto& r : recs)
        if (r.id.rfind("N=", 0) == 0) {
          const auto kpos = r.id.find(";K=");
          pts.emplace_back(std::log10(std::stod(r.id.substr(kpos + 3))),
                           std::log10(r.value));
        }
    }
    if (!pts.empty())
      walab::write_plotdata_csv(
          (fs::path(out_dir) / ("plotdata_" + experiment + ".csv")).string(),
          "log10_x", "log10_y", pts);
    std::printf("%s sweep: %zu records -> %s\n", experiment.c_str(), recs.size(),
                out_dir.c_str());
    return 0;
  } catch (const walab::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
