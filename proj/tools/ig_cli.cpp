// Command-line front end: point estimates, Gibbs chains, interval
// estimates, the simulation study, and single-dataset analysis.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "igbayes/errors.hpp"
#include "igbayes/study_harness.hpp"

namespace {

using namespace igb;

PriorHyper parse_prior(const std::string& text) {
  std::istringstream parts(text);
  std::string tok;
  std::vector<double> vals;
  while (std::getline(parts, tok, ',')) {
    try {
      vals.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("--prior: expected four comma-separated numbers");
    }
  }
  if (vals.size() != 4)
    throw ConfigError("--prior: expected four comma-separated numbers a,b,c,d");
  PriorHyper prior{vals[0], vals[1], vals[2], vals[3]};
  prior.validate();
  return prior;
}

void print_interval(std::ostream& out, const std::string& name, Parameter param,
                    const IntervalResult& iv) {
  out << name << ' ' << parameter_name(param) << ": (" << iv.lower << ", ";
  if (iv.upper_unbounded)
    out << "inf";
  else
    out << iv.upper;
  out << ")  shape=";
  if (iv.shape)
    out << *iv.shape;
  else
    out << "undefined";
  out << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write output file: " + path.string());
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Classical and Bayesian estimation for the inverse Gaussian distribution"};
  app.require_subcommand(1);

  std::string datafile, config_file, prior_text = "1,0,0,0";
  std::string method = "exact", out_prefix = "sim_report", out_dir = ".";
  std::string chain_out;
  double level = 0.95;
  std::uint64_t seed = 20200828;
  GibbsConfig gibbs_cfg;
  BootConfig boot_cfg;
  double truncate = 0.0;
  bool serial = false;

  auto add_data_arg = [&](CLI::App* cmd) {
    cmd->add_option("datafile", datafile, "one positive value per line, '#' comments")
        ->required();
  };
  auto add_gibbs_opts = [&](CLI::App* cmd) {
    cmd->add_option("--prior", prior_text, "a,b,c,d gamma hyperparameters");
    cmd->add_option("--burn-in", gibbs_cfg.burn_in);
    cmd->add_option("--thin", gibbs_cfg.thin);
    cmd->add_option("--keep", gibbs_cfg.n_keep);
    cmd->add_option("--grid-points", gibbs_cfg.grid_points);
    cmd->add_option("--truncate", truncate, "mu-conditional truncation bound");
    cmd->add_option("--seed", seed);
  };

  auto* fit = app.add_subcommand("fit", "MLE and UMVUE point estimates");
  add_data_arg(fit);

  auto* lindley_cmd = app.add_subcommand("lindley", "Lindley approximate Bayes estimates");
  add_data_arg(lindley_cmd);
  lindley_cmd->add_option("--prior", prior_text, "a,b,c,d gamma hyperparameters");

  auto* gibbs_cmd = app.add_subcommand("gibbs", "posterior sampling via the Gibbs chain");
  add_data_arg(gibbs_cmd);
  add_gibbs_opts(gibbs_cmd);
  gibbs_cmd->add_option("--chain-out", chain_out, "write kept draws as CSV");

  auto* iv_cmd = app.add_subcommand("intervals", "interval estimates");
  add_data_arg(iv_cmd);
  iv_cmd->add_option("--method", method, "hpd|exact|boot-p|boot-t")->required();
  iv_cmd->add_option("--level", level);
  add_gibbs_opts(iv_cmd);
  iv_cmd->add_option("--boot-b", boot_cfg.b);
  iv_cmd->add_option("--boot-b1", boot_cfg.b1);
  iv_cmd->add_option("--boot-b2", boot_cfg.b2);

  auto* sim_cmd = app.add_subcommand("simulate", "long-run simulation study");
  sim_cmd->add_option("--config", config_file, "key=value design file")->required();
  sim_cmd->add_option("--out", out_prefix, "output prefix for .csv and .json");
  sim_cmd->add_flag("--serial", serial, "use the single-threaded reference path");

  auto* an_cmd = app.add_subcommand("analyze", "full single-dataset analysis");
  add_data_arg(an_cmd);
  an_cmd->add_option("--config", config_file, "key=value analysis file");
  an_cmd->add_option("--out-dir", out_dir, "directory for chain/KDE/CDF exports");

  CLI11_PARSE(app, argc, argv);

  std::cout.precision(10);

  if (*fit) {
    Sample s = Sample::from_file(datafile);
    PointEstimates m = mle(s);
    std::cout << "MLE: mu=" << m.mu_hat << " lambda=" << m.lambda_hat << '\n';
    PointEstimates u = umvue(s);
    std::cout << "UMVUE: mu=" << u.mu_hat << " lambda=" << u.lambda_hat << '\n';
  } else if (*lindley_cmd) {
    Sample s = Sample::from_file(datafile);
    PriorHyper prior = parse_prior(prior_text);
    LindleyEstimates lin = lindley_estimates(mle(s), s.n(), prior);
    std::cout << "Lindley: mu=" << lin.mu << " lambda=" << lin.lambda;
    if (!lin.lambda_valid) std::cout << "  (lambda outside parameter space)";
    std::cout << '\n';
  } else if (*gibbs_cmd) {
    Sample s = Sample::from_file(datafile);
    PriorHyper prior = parse_prior(prior_text);
    if (truncate > 0.0) gibbs_cfg.mu_truncation = truncate;
    McmcChain chain = run_gibbs(s, prior, gibbs_cfg, RngStream(seed, 0));
    ChainSummary summary = posterior_summary(chain);
    std::cout << "posterior means: mu=" << summary.mu.mean
              << " lambda=" << summary.lambda.mean << '\n';
    std::cout << "posterior modes: mu=" << summary.mu.mode
              << " lambda=" << summary.lambda.mode << '\n';
    std::cout << "lag-1 autocorrelation: mu=" << chain.lag1_autocorr_mu
              << " lambda=" << chain.lag1_autocorr_lambda << '\n';
    if (chain.truncation_active)
      std::cout << "note: improper vague-prior conditional truncated at mu <= "
                << chain.truncation_bound << "; results are for the truncated posterior\n";
    if (!chain_out.empty()) {
      auto out = open_out(chain_out);
      write_chain_csv(chain, out);
    }
  } else if (*iv_cmd) {
    Sample s = Sample::from_file(datafile);
    SufficientStats ss = sufficient_stats(s);
    IntervalPair pair;
    std::string name;
    if (method == "exact") {
      pair = {exact_mu_ci(ss, level), exact_lambda_ci(ss, level)};
      name = "exact";
    } else if (method == "boot-p") {
      pair = boot_p_ci_both(s, level, boot_cfg, RngStream(seed, 1));
      name = "boot-p";
    } else if (method == "boot-t") {
      pair = boot_t_ci_both(s, level, boot_cfg, RngStream(seed, 2));
      name = "boot-t";
    } else if (method == "hpd") {
      PriorHyper prior = parse_prior(prior_text);
      if (truncate > 0.0) gibbs_cfg.mu_truncation = truncate;
      McmcChain chain = run_gibbs(s, prior, gibbs_cfg, RngStream(seed, 0));
      pair = {hpd_interval(chain.mu, level), hpd_interval(chain.lambda, level)};
      name = "hpd";
    } else {
      throw ConfigError("--method must be one of hpd|exact|boot-p|boot-t");
    }
    print_interval(std::cout, name, Parameter::kMu, pair.mu);
    print_interval(std::cout, name, Parameter::kLambda, pair.lambda);
  } else if (*sim_cmd) {
    SimDesign design = sim_design_from_config(read_key_value_file(config_file));
    SimReport report = serial ? run_simulation_serial(design) : run_simulation(design);
    {
      auto csv = open_out(out_prefix + ".csv");
      write_report_csv(report, csv);
    }
    {
      auto json = open_out(out_prefix + ".json");
      write_report_json(report, json);
    }
    std::cout << "wrote " << out_prefix << ".csv and " << out_prefix << ".json\n";
  } else if (*an_cmd) {
    Sample s = Sample::from_file(datafile);
    AnalysisConfig cfg;
    if (!config_file.empty())
      cfg = analysis_config_from_config(read_key_value_file(config_file));
    AnalysisResult res = analyze_dataset(s, cfg);

    std::cout << "MLE: mu=" << res.mle_est.mu_hat << " lambda=" << res.mle_est.lambda_hat
              << '\n';
    std::cout << "UMVUE: lambda=" << res.umvue_est.lambda_hat << '\n';
    std::cout << "Lindley: mu=" << res.lindley_est.mu << " lambda="
              << res.lindley_est.lambda << '\n';
    std::cout << "Gibbs: mu=" << res.gibbs_mu << " lambda=" << res.gibbs_lambda << '\n';
    auto print_summary = [](const char* par, const PosteriorSummary& ps) {
      std::cout << "posterior " << par << ": mean=" << ps.mean << " var=" << ps.variance
                << " mode=" << ps.mode << " q1=" << ps.q1 << " median=" << ps.median
                << " q3=" << ps.q3 << " min=" << ps.min << " max=" << ps.max << '\n';
    };
    print_summary("mu", res.posterior.mu);
    print_summary("lambda", res.posterior.lambda);
    for (auto p : {Parameter::kMu, Parameter::kLambda}) {
      const bool is_mu = p == Parameter::kMu;
      print_interval(std::cout, "exact", p, is_mu ? res.exact.mu : res.exact.lambda);
      print_interval(std::cout, "boot-p", p, is_mu ? res.boot_p.mu : res.boot_p.lambda);
      print_interval(std::cout, "boot-t", p, is_mu ? res.boot_t.mu : res.boot_t.lambda);
      print_interval(std::cout, "hpd", p, is_mu ? res.hpd.mu : res.hpd.lambda);
    }
    if (res.chain.truncation_active)
      std::cout << "note: improper vague-prior conditional truncated at mu <= "
                << res.chain.truncation_bound << "; results are for the truncated posterior\n";

    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    {
      auto out = open_out(dir / "chain.csv");
      write_chain_csv(res.chain, out);
    }
    auto write_kde = [&](const char* name, const std::vector<KdePoint>& curve) {
      auto out = open_out(dir / name);
      out.precision(10);
      out << "x,density\n";
      for (const KdePoint& pt : curve) out << pt.x << ',' << pt.density << '\n';
    };
    write_kde("kde_mu.csv", res.kde_mu);
    write_kde("kde_lambda.csv", res.kde_lambda);
    {
      auto out = open_out(dir / "cdf.csv");
      out.precision(10);
      out << "x,ecdf,fit_mle,fit_post_mean,fit_hybrid\n";
      for (const CdfCurveRow& r : res.cdf_rows)
        out << r.x << ',' << r.ecdf << ',' << r.fit_mle << ',' << r.fit_post_mean
            << ',' << r.fit_hybrid << '\n';
    }
    std::cout << "wrote chain.csv, kde_mu.csv, kde_lambda.csv, cdf.csv to " << out_dir
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const igb::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const igb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 4;
  }
}
