#include "igbayes/study_harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "igbayes/errors.hpp"

namespace igb {
namespace {

constexpr std::uint64_t kGibbsKey = 2;
constexpr std::uint64_t kBootPKey = 3;
constexpr std::uint64_t kBootTKey = 4;
constexpr std::uint64_t kRetryKey = 0x5e7;

struct RepResult {
  bool ok = false;
  // Method enum order x (mu, lambda). Lindley's lambda is kept raw even
  // when negative so the long-run MSE reflects the estimator as defined.
  std::array<std::array<double, kNumParameters>, kNumEstimators> estimates{};
  std::array<std::array<IntervalResult, kNumParameters>, kNumIntervalMethods>
      intervals{};
};

RepResult run_replication_once(const SimDesign& design, std::size_t n,
                               RngStream rng) {
  std::vector<double> xs(n);
  for (double& x : xs) x = ig_sample(design.true_params, rng);
  Sample sample(std::move(xs));
  SufficientStats ss = sufficient_stats(sample);

  RepResult rep;
  PointEstimates m = mle(ss);
  PointEstimates u = umvue(ss);
  LindleyEstimates lin = lindley_estimates(m, n, design.prior);

  auto& est = rep.estimates;
  est[static_cast<std::size_t>(Method::kMle)] = {m.mu_hat, m.lambda_hat};
  est[static_cast<std::size_t>(Method::kUmvue)] = {u.mu_hat, u.lambda_hat};
  est[static_cast<std::size_t>(Method::kLindley)] = {lin.mu, lin.lambda};

  RngStream gibbs_rng = rng.child(kGibbsKey);
  McmcChain chain = run_gibbs(sample, design.prior, design.mcmc, gibbs_rng);
  double mu_b = 0.0, lambda_b = 0.0;
  for (double v : chain.mu) mu_b += v;
  for (double v : chain.lambda) lambda_b += v;
  mu_b /= static_cast<double>(chain.mu.size());
  lambda_b /= static_cast<double>(chain.lambda.size());
  est[static_cast<std::size_t>(Method::kGibbs)] = {mu_b, lambda_b};

  auto& iv = rep.intervals;
  auto put = [&](IntervalMethod method, const IntervalResult& mu_iv,
                 const IntervalResult& lambda_iv) {
    iv[static_cast<std::size_t>(method)][0] = mu_iv;
    iv[static_cast<std::size_t>(method)][1] = lambda_iv;
  };
  put(IntervalMethod::kHpd, hpd_interval(chain.mu, design.level),
      hpd_interval(chain.lambda, design.level));
  put(IntervalMethod::kExact, exact_mu_ci(ss, design.level),
      exact_lambda_ci(ss, design.level));
  IntervalPair bp = boot_p_ci_both(sample, design.level, design.boot,
                                   rng.child(kBootPKey));
  put(IntervalMethod::kBootP, bp.mu, bp.lambda);
  IntervalPair bt = boot_t_ci_both(sample, design.level, design.boot,
                                   rng.child(kBootTKey));
  put(IntervalMethod::kBootT, bt.mu, bt.lambda);

  rep.ok = true;
  return rep;
}

RepResult run_replication(const SimDesign& design, std::size_t n,
                          std::uint64_t stream_id) {
  RngStream rng(design.master_seed, stream_id);
  try {
    return run_replication_once(design, n, rng);
  } catch (const std::exception&) {
    // One retry on a fresh stream, then record the failure.
  }
  try {
    return run_replication_once(design, n, rng.child(kRetryKey));
  } catch (const std::exception&) {
    return {};
  }
}

SimCell aggregate_cell(const SimDesign& design, std::size_t n,
                       const std::vector<RepResult>& reps) {
  SimCell cell;
  cell.n = n;
  const double truth[kNumParameters] = {design.true_params.mu,
                                        design.true_params.lambda};
  std::array<std::array<std::size_t, kNumParameters>, kNumIntervalMethods>
      bounded{}, shaped{}, covered{}, miss_l{}, miss_r{};

  for (const RepResult& rep : reps) {
    if (!rep.ok) {
      ++cell.failed_replications;
      continue;
    }
    ++cell.replications_used;
    for (std::size_t e = 0; e < kNumEstimators; ++e) {
      for (std::size_t p = 0; p < kNumParameters; ++p) {
        double v = rep.estimates[e][p];
        cell.estimators[e][p].average += v;
        cell.estimators[e][p].mse += (v - truth[p]) * (v - truth[p]);
      }
    }
    for (std::size_t m = 0; m < kNumIntervalMethods; ++m) {
      for (std::size_t p = 0; p < kNumParameters; ++p) {
        const IntervalResult& iv = rep.intervals[m][p];
        IntervalCell& agg = cell.intervals[m][p];
        if (iv.upper_unbounded) {
          ++agg.unbounded_count;
        } else {
          agg.avg_lower += iv.lower;
          agg.avg_upper += iv.upper;
          ++bounded[m][p];
        }
        if (iv.shape) {
          agg.avg_shape += *iv.shape;
          ++shaped[m][p];
        }
        switch (classify_coverage(iv, truth[p])) {
          case Coverage::kCovered: ++covered[m][p]; break;
          case Coverage::kMissLeft: ++miss_l[m][p]; break;
          case Coverage::kMissRight: ++miss_r[m][p]; break;
        }
      }
    }
  }

  double used = static_cast<double>(cell.replications_used);
  if (used > 0.0) {
    for (std::size_t e = 0; e < kNumEstimators; ++e)
      for (std::size_t p = 0; p < kNumParameters; ++p) {
        cell.estimators[e][p].average /= used;
        cell.estimators[e][p].mse /= used;
      }
    for (std::size_t m = 0; m < kNumIntervalMethods; ++m)
      for (std::size_t p = 0; p < kNumParameters; ++p) {
        IntervalCell& agg = cell.intervals[m][p];
        if (bounded[m][p] > 0) {
          agg.avg_lower /= static_cast<double>(bounded[m][p]);
          agg.avg_upper /= static_cast<double>(bounded[m][p]);
        }
        if (shaped[m][p] > 0) agg.avg_shape /= static_cast<double>(shaped[m][p]);
        agg.coverage = static_cast<double>(covered[m][p]) / used;
        agg.miss_left = static_cast<double>(miss_l[m][p]) / used;
        agg.miss_right = static_cast<double>(miss_r[m][p]) / used;
      }
  }
  return cell;
}

std::uint64_t stream_id_for(std::size_t n_index, std::size_t rep) {
  return (static_cast<std::uint64_t>(n_index) << 32) |
         static_cast<std::uint64_t>(rep);
}

SimReport run_simulation_impl(const SimDesign& design, bool parallel) {
  design.validate();
  std::size_t num_sizes = design.sample_sizes.size();
  std::size_t reps = design.replications;
  std::vector<std::vector<RepResult>> results(num_sizes,
                                              std::vector<RepResult>(reps));

  auto total = static_cast<long long>(num_sizes * reps);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long t = 0; t < total; ++t) {
      auto ni = static_cast<std::size_t>(t) / reps;
      auto r = static_cast<std::size_t>(t) % reps;
      results[ni][r] =
          run_replication(design, design.sample_sizes[ni], stream_id_for(ni, r));
    }
  } else {
    for (long long t = 0; t < total; ++t) {
      auto ni = static_cast<std::size_t>(t) / reps;
      auto r = static_cast<std::size_t>(t) % reps;
      results[ni][r] =
          run_replication(design, design.sample_sizes[ni], stream_id_for(ni, r));
    }
  }

  SimReport report;
  report.cells.reserve(num_sizes);
  for (std::size_t ni = 0; ni < num_sizes; ++ni)
    report.cells.push_back(
        aggregate_cell(design, design.sample_sizes[ni], results[ni]));
  return report;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text);

template <>
double parse_number<double>(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: '" + text + "'");
  }
  if (pos != text.size())
    throw ConfigError("config key '" + key + "': trailing junk in '" + text + "'");
  return v;
}

template <>
std::uint64_t parse_number<std::uint64_t>(const std::string& key,
                                          const std::string& text) {
  std::size_t pos = 0;
  unsigned long long v;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a nonnegative integer: '" +
                      text + "'");
  }
  if (pos != text.size())
    throw ConfigError("config key '" + key + "': trailing junk in '" + text + "'");
  return v;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Applies the keys shared by simulate and analyze configs; consumes
// recognized entries from kv.
template <typename Cfg>
void apply_common_keys(std::map<std::string, std::string>& kv, Cfg& cfg) {
  auto take = [&kv](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  if (auto v = take("prior_a")) cfg.prior.a = parse_number<double>("prior_a", *v);
  if (auto v = take("prior_b")) cfg.prior.b = parse_number<double>("prior_b", *v);
  if (auto v = take("prior_c")) cfg.prior.c = parse_number<double>("prior_c", *v);
  if (auto v = take("prior_d")) cfg.prior.d = parse_number<double>("prior_d", *v);
  if (auto v = take("level")) cfg.level = parse_number<double>("level", *v);
  if (auto v = take("burn_in"))
    cfg.mcmc.burn_in = parse_number<std::uint64_t>("burn_in", *v);
  if (auto v = take("thin")) cfg.mcmc.thin = parse_number<std::uint64_t>("thin", *v);
  if (auto v = take("n_keep"))
    cfg.mcmc.n_keep = parse_number<std::uint64_t>("n_keep", *v);
  if (auto v = take("grid_points"))
    cfg.mcmc.grid_points = parse_number<std::uint64_t>("grid_points", *v);
  if (auto v = take("truncate"))
    cfg.mcmc.mu_truncation = parse_number<double>("truncate", *v);
  if (auto v = take("boot_b")) cfg.boot.b = parse_number<std::uint64_t>("boot_b", *v);
  if (auto v = take("boot_b1"))
    cfg.boot.b1 = parse_number<std::uint64_t>("boot_b1", *v);
  if (auto v = take("boot_b2"))
    cfg.boot.b2 = parse_number<std::uint64_t>("boot_b2", *v);
}

void reject_unknown(const std::map<std::string, std::string>& kv) {
  if (!kv.empty()) throw ConfigError("unknown config key: '" + kv.begin()->first + "'");
}

}  // namespace

void SimDesign::validate() const {
  if (replications < 2) throw ConfigError("SimDesign: replications must be >= 2");
  if (sample_sizes.empty())
    throw ConfigError("SimDesign: at least one sample size is required");
  for (std::size_t n : sample_sizes)
    if (n < 4) throw ConfigError("SimDesign: sample sizes must be >= 4");
  if (!(level > 0.0 && level < 1.0))
    throw ConfigError("SimDesign: level must lie in (0, 1)");
  prior.validate();
  mcmc.validate();
  boot.validate();
}

SimReport run_simulation(const SimDesign& design) {
  return run_simulation_impl(design, true);
}

SimReport run_simulation_serial(const SimDesign& design) {
  return run_simulation_impl(design, false);
}

const char* method_name(Method m) {
  switch (m) {
    case Method::kMle: return "MLE";
    case Method::kUmvue: return "UMVUE";
    case Method::kLindley: return "LINDLEY";
    case Method::kGibbs: return "GIBBS";
  }
  return "?";
}

const char* interval_method_name(IntervalMethod m) {
  switch (m) {
    case IntervalMethod::kHpd: return "HPD";
    case IntervalMethod::kExact: return "EXACT";
    case IntervalMethod::kBootP: return "BOOT_P";
    case IntervalMethod::kBootT: return "BOOT_T";
  }
  return "?";
}

const char* parameter_name(Parameter p) {
  return p == Parameter::kMu ? "mu" : "lambda";
}

void write_report_csv(const SimReport& report, std::ostream& out) {
  out << "n,estimator_or_method,parameter,metric,value\n";
  out.precision(10);
  for (const SimCell& cell : report.cells) {
    out << cell.n << ",CELL,-,replications_used," << cell.replications_used << '\n';
    out << cell.n << ",CELL,-,failed_replications," << cell.failed_replications
        << '\n';
    for (std::size_t e = 0; e < kNumEstimators; ++e) {
      const char* name = method_name(static_cast<Method>(e));
      for (std::size_t p = 0; p < kNumParameters; ++p) {
        const char* par = parameter_name(static_cast<Parameter>(p));
        out << cell.n << ',' << name << ',' << par << ",average,"
            << cell.estimators[e][p].average << '\n';
        out << cell.n << ',' << name << ',' << par << ",mse,"
            << cell.estimators[e][p].mse << '\n';
      }
    }
    for (std::size_t m = 0; m < kNumIntervalMethods; ++m) {
      const char* name = interval_method_name(static_cast<IntervalMethod>(m));
      for (std::size_t p = 0; p < kNumParameters; ++p) {
        const char* par = parameter_name(static_cast<Parameter>(p));
        const IntervalCell& iv = cell.intervals[m][p];
        out << cell.n << ',' << name << ',' << par << ",avg_lower," << iv.avg_lower
            << '\n';
        out << cell.n << ',' << name << ',' << par << ",avg_upper," << iv.avg_upper
            << '\n';
        out << cell.n << ',' << name << ',' << par << ",avg_shape," << iv.avg_shape
            << '\n';
        out << cell.n << ',' << name << ',' << par << ",coverage," << iv.coverage
            << '\n';
        out << cell.n << ',' << name << ',' << par << ",miss_left," << iv.miss_left
            << '\n';
        out << cell.n << ',' << name << ',' << par << ",miss_right,"
            << iv.miss_right << '\n';
        out << cell.n << ',' << name << ',' << par << ",unbounded_count,"
            << iv.unbounded_count << '\n';
      }
    }
  }
}

void write_report_json(const SimReport& report, std::ostream& out) {
  nlohmann::json root = nlohmann::json::array();
  for (const SimCell& cell : report.cells) {
    nlohmann::json jc;
    jc["n"] = cell.n;
    jc["replications_used"] = cell.replications_used;
    jc["failed_replications"] = cell.failed_replications;
    for (std::size_t e = 0; e < kNumEstimators; ++e)
      for (std::size_t p = 0; p < kNumParameters; ++p) {
        auto& je = jc["estimators"][method_name(static_cast<Method>(e))]
                     [parameter_name(static_cast<Parameter>(p))];
        je["average"] = cell.estimators[e][p].average;
        je["mse"] = cell.estimators[e][p].mse;
      }
    for (std::size_t m = 0; m < kNumIntervalMethods; ++m)
      for (std::size_t p = 0; p < kNumParameters; ++p) {
        const IntervalCell& iv = cell.intervals[m][p];
        auto& ji = jc["intervals"][interval_method_name(static_cast<IntervalMethod>(m))]
                     [parameter_name(static_cast<Parameter>(p))];
        ji["avg_lower"] = iv.avg_lower;
        ji["avg_upper"] = iv.avg_upper;
        ji["avg_shape"] = iv.avg_shape;
        ji["coverage"] = iv.coverage;
        ji["miss_left"] = iv.miss_left;
        ji["miss_right"] = iv.miss_right;
        ji["unbounded_count"] = iv.unbounded_count;
      }
    root.push_back(std::move(jc));
  }
  out << root.dump(2) << '\n';
}

AnalysisResult analyze_dataset(const Sample& data, const AnalysisConfig& cfg) {
  cfg.prior.validate();
  cfg.mcmc.validate();
  cfg.boot.validate();

  AnalysisResult res;
  SufficientStats ss = sufficient_stats(data);
  res.mle_est = mle(ss);
  res.umvue_est = umvue(ss);
  res.lindley_est = lindley_estimates(res.mle_est, ss.n, cfg.prior);

  res.chain = run_gibbs(data, cfg.prior, cfg.mcmc, RngStream(cfg.seed, 0));
  res.posterior = posterior_summary(res.chain);
  res.gibbs_mu = res.posterior.mu.mean;
  res.gibbs_lambda = res.posterior.lambda.mean;

  res.exact = {exact_mu_ci(ss, cfg.level), exact_lambda_ci(ss, cfg.level)};
  res.boot_p = boot_p_ci_both(data, cfg.level, cfg.boot, RngStream(cfg.seed, 1));
  res.boot_t = boot_t_ci_both(data, cfg.level, cfg.boot, RngStream(cfg.seed, 2));
  res.hpd = {hpd_interval(res.chain.mu, cfg.level),
             hpd_interval(res.chain.lambda, cfg.level)};

  res.kde_mu = kde_curve(res.chain.mu, cfg.kde_points);
  res.kde_lambda = kde_curve(res.chain.lambda, cfg.kde_points);

  IgParams fit_mle(res.mle_est.mu_hat, res.mle_est.lambda_hat);
  IgParams fit_mean(res.gibbs_mu, res.gibbs_lambda);
  IgParams fit_hybrid(res.posterior.mu.mode, res.gibbs_lambda);
  std::vector<double> sorted = data.values();
  std::sort(sorted.begin(), sorted.end());
  res.cdf_rows.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double x = sorted[i];
    res.cdf_rows.push_back({x,
                            static_cast<double>(i + 1) /
                                static_cast<double>(sorted.size()),
                            ig_cdf(x, fit_mle), ig_cdf(x, fit_mean),
                            ig_cdf(x, fit_hybrid)});
  }
  return res;
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": empty key or value");
    if (!kv.emplace(key, value).second)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key '" +
                        key + "'");
  }
  return kv;
}

SimDesign sim_design_from_config(const std::map<std::string, std::string>& kv_in) {
  auto kv = kv_in;
  SimDesign design;
  if (auto it = kv.find("mu"); it != kv.end()) {
    design.true_params = IgParams(parse_number<double>("mu", it->second),
                                  design.true_params.lambda);
    kv.erase(it);
  }
  if (auto it = kv.find("lambda"); it != kv.end()) {
    design.true_params = IgParams(design.true_params.mu,
                                  parse_number<double>("lambda", it->second));
    kv.erase(it);
  }
  if (auto it = kv.find("sample_sizes"); it != kv.end()) {
    design.sample_sizes.clear();
    std::istringstream parts(it->second);
    std::string tok;
    while (std::getline(parts, tok, ','))
      design.sample_sizes.push_back(
          static_cast<std::size_t>(parse_number<std::uint64_t>("sample_sizes", trim(tok))));
    kv.erase(it);
  }
  if (auto it = kv.find("replications"); it != kv.end()) {
    design.replications =
        static_cast<std::size_t>(parse_number<std::uint64_t>("replications", it->second));
    kv.erase(it);
  }
  if (auto it = kv.find("seed"); it != kv.end()) {
    design.master_seed = parse_number<std::uint64_t>("seed", it->second);
    kv.erase(it);
  }
  apply_common_keys(kv, design);
  reject_unknown(kv);
  design.validate();
  return design;
}

AnalysisConfig analysis_config_from_config(
    const std::map<std::string, std::string>& kv_in) {
  auto kv = kv_in;
  AnalysisConfig cfg;
  if (auto it = kv.find("seed"); it != kv.end()) {
    cfg.seed = parse_number<std::uint64_t>("seed", it->second);
    kv.erase(it);
  }
  if (auto it = kv.find("kde_points"); it != kv.end()) {
    cfg.kde_points =
        static_cast<std::size_t>(parse_number<std::uint64_t>("kde_points", it->second));
    kv.erase(it);
  }
  apply_common_keys(kv, cfg);
  reject_unknown(kv);
  cfg.prior.validate();
  cfg.mcmc.validate();
  cfg.boot.validate();
  if (!(cfg.level > 0.0 && cfg.level < 1.0))
    throw ConfigError("level must lie in (0, 1)");
  return cfg;
}

}  // namespace igb
