#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "igbayes/gibbs_sampler.hpp"
#include "igbayes/intervals.hpp"
#include "igbayes/kde.hpp"

namespace igb {

// Full factorial design of the long-run comparison: sample sizes times
// replications, every estimator and every interval method per cell.
struct SimDesign {
  IgParams true_params{3.0, 4.0};
  std::vector<std::size_t> sample_sizes{15, 20, 30, 50};
  PriorHyper prior{6.0, 2.0, 5.0, 1.25};
  std::size_t replications = 1000;
  double level = 0.95;
  GibbsConfig mcmc;
  BootConfig boot;
  std::uint64_t master_seed = 20200828;

  void validate() const;
};

struct EstimatorCell {
  double average = 0.0;
  double mse = 0.0;
};

struct IntervalCell {
  double avg_lower = 0.0;   // over bounded intervals only
  double avg_upper = 0.0;
  double avg_shape = 0.0;   // over intervals with a defined shape
  double coverage = 0.0;
  double miss_left = 0.0;
  double miss_right = 0.0;
  std::size_t unbounded_count = 0;
};

constexpr std::size_t kNumEstimators = 4;       // Method enum order
constexpr std::size_t kNumIntervalMethods = 4;  // IntervalMethod enum order
constexpr std::size_t kNumParameters = 2;       // mu, lambda

struct SimCell {
  std::size_t n = 0;
  std::size_t replications_used = 0;
  std::size_t failed_replications = 0;
  std::array<std::array<EstimatorCell, kNumParameters>, kNumEstimators> estimators{};
  std::array<std::array<IntervalCell, kNumParameters>, kNumIntervalMethods> intervals{};
};

struct SimReport {
  std::vector<SimCell> cells;  // one per sample size, design order
};

// Replications run independently, each owning RngStream(master_seed,
// replication index), and are reduced in index order, so the report is
// identical for any thread count.
SimReport run_simulation(const SimDesign& design);

// Single-threaded reference path; must produce a byte-identical report.
SimReport run_simulation_serial(const SimDesign& design);

// One row per (n, estimator-or-method, parameter, metric).
void write_report_csv(const SimReport& report, std::ostream& out);
void write_report_json(const SimReport& report, std::ostream& out);

const char* method_name(Method m);
const char* interval_method_name(IntervalMethod m);
const char* parameter_name(Parameter p);

// ---------------------------------------------------------------------------
// Single-dataset analysis

struct AnalysisConfig {
  PriorHyper prior{1.0, 0.0, 0.0, 0.0};  // vague by default
  GibbsConfig mcmc;
  BootConfig boot;
  double level = 0.95;
  std::uint64_t seed = 20200828;
  std::size_t kde_points = 512;
};

struct CdfCurveRow {
  double x;
  double ecdf;
  double fit_mle;        // IG(mu-hat, lambda-hat)
  double fit_post_mean;  // IG(mu_B, lambda_B)
  double fit_hybrid;     // IG(posterior mode of mu, lambda_B)
};

struct AnalysisResult {
  PointEstimates mle_est;
  PointEstimates umvue_est;
  LindleyEstimates lindley_est;
  double gibbs_mu = 0.0;      // posterior means (Bayes estimates)
  double gibbs_lambda = 0.0;
  ChainSummary posterior;
  McmcChain chain;
  IntervalPair exact;
  IntervalPair boot_p;
  IntervalPair boot_t;
  IntervalPair hpd;
  std::vector<KdePoint> kde_mu;
  std::vector<KdePoint> kde_lambda;
  std::vector<CdfCurveRow> cdf_rows;
};

AnalysisResult analyze_dataset(const Sample& data, const AnalysisConfig& cfg);

// ---------------------------------------------------------------------------
// Plain-text key=value configuration

std::map<std::string, std::string> read_key_value_file(const std::string& path);
SimDesign sim_design_from_config(const std::map<std::string, std::string>& kv);
AnalysisConfig analysis_config_from_config(
    const std::map<std::string, std::string>& kv);

}  // namespace igb
