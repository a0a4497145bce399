// Command line front end: generate, sample, learn, evaluate, precision, sweep, verify.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "polytree/errors.hpp"
#include "polytree/generator.hpp"
#include "polytree/graph_io.hpp"
#include "polytree/harness.hpp"
#include "polytree/learner.hpp"
#include "polytree/matrix_io.hpp"
#include "polytree/metrics.hpp"
#include "polytree/precision.hpp"

namespace fs = std::filesystem;
using namespace polytree;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-")
    std::cout << text;
  else
    write_text_file(out_path, text);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

template <class F>
std::string metric_or_empty(F&& f) {
  try {
    return fmt(f());
  } catch (const EmptyEstimate&) {
  } catch (const EmptyUnion&) {
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polytree structure learning from correlations"};
  app.require_subcommand(1);

  // generate
  GenConfig gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Random standardized polytree SEM");
  generate->add_option("-p,--nodes", gen.p, "Number of variables")->capture_default_str();
  generate->add_option("-d,--d-in-max", gen.d_in_max, "Forced maximum in-degree")->capture_default_str();
  generate->add_option("--rho-min", gen.rho_min)->capture_default_str();
  generate->add_option("--rho-max", gen.rho_max)->capture_default_str();
  generate->add_option("--omega-min", gen.omega_min)->capture_default_str();
  generate->add_option("-s,--seed", gen.seed)->capture_default_str();
  generate->add_option("-o,--out", gen_out, "Output SEM file (default stdout)");

  // sample
  std::string sem_path, sample_out, noise_name = "gaussian";
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  auto* sample_cmd = app.add_subcommand("sample", "Draw i.i.d. rows from a SEM file");
  sample_cmd->add_option("sem", sem_path, "SEM file")->required();
  sample_cmd->add_option("-n,--samples", sample_n, "Number of rows")->required();
  sample_cmd->add_option("-s,--seed", sample_seed)->capture_default_str();
  sample_cmd->add_option("--noise", noise_name, "gaussian, uniform or rademacher")->capture_default_str();
  sample_cmd->add_option("-o,--out", sample_out, "Output CSV (default stdout)");

  // learn
  std::string learn_data, learn_out;
  LearnConfig learn_cfg;
  double learn_crit = 0.0;
  auto* learn_cmd = app.add_subcommand("learn", "Estimate a CPDAG from a data CSV");
  learn_cmd->add_option("data", learn_data, "Headerless CSV, one sample per row")->required();
  learn_cmd->add_option("-a,--alpha", learn_cfg.alpha, "Level of the zero-correlation test")->capture_default_str();
  auto* crit_opt = learn_cmd->add_option("--rho-crit", learn_crit, "Fixed threshold, overrides --alpha");
  learn_cmd->add_option("-o,--out", learn_out, "Output edge list (default stdout)");

  // evaluate
  std::string truth_path, est_path;
  bool truth_is_dag = false, truth_is_sem = false;
  auto* evaluate = app.add_subcommand("evaluate", "Compare an estimated CPDAG with the truth");
  evaluate->add_option("truth", truth_path, "True CPDAG")->required();
  evaluate->add_option("estimate", est_path, "Estimated CPDAG")->required();
  auto* dag_flag = evaluate->add_flag("--truth-is-dag", truth_is_dag, "Truth file is a polytree; use its CPDAG");
  evaluate->add_flag("--truth-is-sem", truth_is_sem, "Truth file is a SEM; use its CPDAG")->excludes(dag_flag);

  // precision
  std::string prec_data, prec_cpdag, prec_out, layout_name = "dense";
  auto* precision = app.add_subcommand("precision", "Inverse correlation estimate given a CPDAG");
  precision->add_option("data", prec_data, "Data CSV")->required();
  precision->add_option("cpdag", prec_cpdag, "CPDAG edge list")->required();
  precision->add_option("--layout", layout_name, "dense or triplets")
      ->check(CLI::IsMember({"dense", "triplets"}))
      ->capture_default_str();
  precision->add_option("-o,--out", prec_out, "Output file (default stdout)");

  // sweep
  std::string sweep_config, sweep_out;
  std::size_t sweep_threads = 0;
  bool no_timing = false;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep from a key=value config file");
  sweep->add_option("config", sweep_config, "Config file")->required();
  sweep->add_option("-o,--out", sweep_out, "Trial CSV; the summary goes to <stem>.summary.csv")->required();
  auto* threads_opt = sweep->add_option("-j,--threads", sweep_threads, "Worker threads (0 = all cores)");
  sweep->add_flag("--no-timing", no_timing, "Write 0 / empty timing columns");

  // verify
  std::string verify_path, verify_summary;
  auto* verify = app.add_subcommand("verify", "Check a sweep CSV and its summary for consistency");
  verify->add_option("trials", verify_path, "Trial CSV")->required();
  verify->add_option("--summary", verify_summary, "Summary CSV (default <stem>.summary.csv if present)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*generate) {
      emit(gen_out, format_sem(generate_polytree_sem(gen)));
    } else if (*sample_cmd) {
      const LinearSem m = parse_sem(read_text_file(sem_path));
      emit(sample_out, format_data_csv(sample(m, sample_n, parse_noise_family(noise_name), sample_seed)));
    } else if (*learn_cmd) {
      if (*crit_opt) learn_cfg.rho_crit_override = learn_crit;
      const LearnResult r = learn(parse_data_csv(read_text_file(learn_data)), learn_cfg);
      std::string text = "# rho_crit=" + fmt(r.rho_crit) + '\n';
      if (r.conflicts > 0) text += "# orientation conflicts=" + std::to_string(r.conflicts) + '\n';
      emit(learn_out, text + format_cpdag(r.cpdag));
    } else if (*evaluate) {
      const std::string truth_text = read_text_file(truth_path);
      const Cpdag truth = truth_is_dag   ? cpdag_of_polytree(parse_dag(truth_text))
                          : truth_is_sem ? cpdag_of_polytree(parse_sem(truth_text).dag())
                                         : parse_cpdag(truth_text);
      const EdgeClassification ec = classify_edges(truth, parse_cpdag(read_text_file(est_path)));
      std::cout << "correct,wrong_dir,missing,extra,fdr_sk,ji_sk,fdr_cpdag,ji_cpdag\n"
                << ec.correct << ',' << ec.wrong_direction << ',' << ec.missing << ',' << ec.extra << ','
                << metric_or_empty([&] { return fdr_skeleton(ec); }) << ','
                << metric_or_empty([&] { return jaccard_skeleton(ec); }) << ','
                << metric_or_empty([&] { return fdr_cpdag(ec); }) << ','
                << metric_or_empty([&] { return jaccard_cpdag(ec); }) << '\n';
    } else if (*precision) {
      const CorrelationMatrix corr = sample_correlations(parse_data_csv(read_text_file(prec_data)));
      const PrecisionMatrix theta = estimate_inverse_correlation(parse_cpdag(read_text_file(prec_cpdag)), corr);
      emit(prec_out,
           format_precision(theta, layout_name == "dense" ? PrecisionLayout::dense : PrecisionLayout::triplets));
    } else if (*sweep) {
      SweepConfig cfg = parse_sweep_config(read_text_file(sweep_config));
      if (*threads_opt) cfg.threads = sweep_threads;
      if (no_timing) cfg.timing = false;
      const SweepResult result = run_sweep(cfg, sweep_out);
      std::size_t failed = 0;
      for (const auto& row : result.summary) failed += row.failed;
      std::cerr << result.trials.size() << " trials, " << failed << " failed; summary in "
                << summary_path(sweep_out).string() << '\n';
    } else if (*verify) {
      std::optional<std::string> summary;
      if (!verify_summary.empty())
        summary = read_text_file(verify_summary);
      else if (fs::exists(summary_path(verify_path)))
        summary = read_text_file(summary_path(verify_path));
      const VerifyReport report =
          verify_sweep_csv(read_text_file(verify_path), summary ? std::optional<std::string_view>(*summary)
                                                                : std::nullopt);
      std::cout << report.rows << " rows, " << report.failed_trials << " failed trials, "
                << (summary ? "summary checked" : "no summary") << '\n';
      for (const auto& p : report.problems) std::cout << "problem: " << p << '\n';
      std::cout << (report.ok() ? "consistent" : "INCONSISTENT") << '\n';
      return report.ok() ? kOk : kData;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
