#pragma once

#include <string>
#include <vector>

#include "walab/config.hpp"
#include "walab/strichartz.hpp"

namespace walab {

struct InvariantResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct VerifyReport {
  std::vector<InvariantResult> results;
  bool pass() const;
  const InvariantResult* first_failure() const;
};

// Invariant suites: parseval, plancherel, inversion, adjoint bound, window
// evolution, free covariance, Liouville, separation, determinant window,
// defect bound. Exit-0 semantics are pass() on the returned report.
VerifyReport run_verify(const ExperimentConfig& cfg);

// Flow-only checks: Liouville, group/inverse laws, energy bound, separation,
// determinant window.
VerifyReport run_flow_check(const ExperimentConfig& cfg);

// experiment in {dispersive, strichartz, duhamel, lemmas}; deterministic
// record order, one summary row per aggregate.
std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& cfg,
                                        const std::string& experiment);

// Output writers. Floating-point values are serialized with 17 significant
// digits (round-trip exact); sweep outputs carry no timestamps.
std::string format_g17(double v);
void write_report_json(const std::string& path, const ExperimentConfig& cfg,
                       const VerifyReport& rep);
void write_records_csv(const std::string& path,
                       const std::vector<ExperimentRecord>& recs);
void write_records_jsonl(const std::string& path,
                         const std::vector<ExperimentRecord>& recs);
void write_plotdata_csv(const std::string& path, const std::string& xlabel,
                        const std::string& ylabel,
                        const std::vector<std::pair<double, double>>& pts);

// Fixed Gaussian families behind the sweep and acceptance suites.
std::vector<ClosedForm> gaussian_family_1d();
std::vector<ClosedForm> gaussian_family_2d();

// Per-snapshot inner/outer amalgam norms for several pairs from one STFT pass.
std::vector<double> multi_pair_amalgam_norms(const SampledField& u,
                                             const Window& window,
                                             const std::vector<AdmissiblePair>& pairs,
                                             bool endpoint_mode, double tail_tol);

}  // namespace walab
