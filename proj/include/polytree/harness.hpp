#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polytree/metrics.hpp"
#include "polytree/sem.hpp"

namespace polytree {

enum class SweepMode { standard, hardness_skeleton, hardness_cpdag, precision };

std::string_view to_string(SweepMode m);
SweepMode parse_sweep_mode(std::string_view name);

/**
 * Experiment grid. Every (p, rho_min, d_in_max) combination gets one model,
 * shared by all sample sizes and repeats at that combination. In the
 * hardness modes rho_min is the common edge correlation and repeat t uses
 * ensemble member t mod (ensemble size).
 */
struct SweepConfig {
  SweepMode mode = SweepMode::standard;
  std::vector<std::size_t> p_values{100};
  std::vector<double> rho_min_values{0.1, 0.2, 0.3};
  std::vector<std::size_t> d_in_max_values{10};
  double rho_max = 0.8;
  double omega_min = 0.1;
  std::vector<std::size_t> n_values{50, 100, 200, 400, 600, 800, 1000};
  std::size_t repeats = 100;
  double alpha = 0.1;
  std::optional<double> rho_crit;  // fixed threshold instead of alpha
  NoiseFamily noise = NoiseFamily::gaussian;
  std::uint64_t master_seed = 0;
  bool timing = true;       // false writes 0 / empty into wall_ms and timestamp
  std::size_t threads = 0;  // 0 = hardware concurrency

  void validate() const;  // Throws InvalidArgument.
};

/**
 * Flat `key = value` text, `#` comments. Keys: mode, p, rho_min, d_in_max,
 * n_values (comma lists), rho_max, omega_min, repeats, alpha, rho_crit,
 * noise, master_seed, timing, threads. Throws ParseError.
 */
SweepConfig parse_sweep_config(std::string_view text);

// One model of the grid and one sample size.
struct GridPoint {
  std::size_t p = 0;
  double rho_min = 0.0;
  std::size_t d_in_max = 0;
  std::size_t n = 0;
  std::size_t model_index = 0;  // position of (p, rho_min, d_in_max) in the grid
  std::size_t n_index = 0;
};

// Models in the order p, rho_min, d_in_max; sample sizes innermost.
std::vector<GridPoint> grid_points(const SweepConfig& cfg);

struct TrialRecord {
  SweepMode mode = SweepMode::standard;
  std::size_t p = 0;
  std::size_t n = 0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  std::size_t d_in_max = 0;
  double omega_min = 0.0;
  double alpha = 0.0;
  std::uint64_t seed = 0;  // data seed of this trial
  std::size_t trial = 0;
  EdgeClassification edges;
  std::optional<double> fdr_sk;
  std::optional<double> ji_sk;
  std::optional<double> fdr_cpdag;
  std::optional<double> ji_cpdag;
  bool exact_sk = false;
  bool exact_cpdag = false;
  std::optional<double> theta_diag_l1;
  std::optional<double> theta_offdiag_l1;
  std::string status = "ok";
  double wall_ms = 0.0;
  std::string timestamp;

  bool ok() const { return status == "ok"; }
};

// Truth model of a grid point for a given repeat.
LinearSem trial_model(const SweepConfig& cfg, const GridPoint& point, std::size_t trial);

// Never throws on model or learner errors; they land in `status`.
TrialRecord run_trial(const SweepConfig& cfg, const GridPoint& point, std::size_t trial);

// Per (model, sample size) aggregate over the successful trials.
struct SummaryRow {
  SweepMode mode = SweepMode::standard;
  std::size_t p = 0;
  std::size_t n = 0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  std::size_t d_in_max = 0;
  double omega_min = 0.0;
  double alpha = 0.0;
  std::size_t trials = 0;
  std::size_t failed = 0;

  struct Stat {
    double mean = 0.0;
    double half_width = 0.0;  // 1.96 * standard error of the mean
    std::size_t count = 0;
  };
  Stat fdr_sk, ji_sk, fdr_cpdag, ji_cpdag, exact_sk, exact_cpdag, theta_diag_l1, theta_offdiag_l1;
};

struct SweepResult {
  std::vector<TrialRecord> trials;  // canonical (point, trial) order
  std::vector<SummaryRow> summary;
};

SweepResult run_sweep(const SweepConfig& cfg);

// Writes `path` (trial rows) and `<stem>.summary.csv` next to it. Throws IoError.
SweepResult run_sweep(const SweepConfig& cfg, const std::filesystem::path& path);

std::string trial_csv_header();
std::string format_trial_row(const TrialRecord& r);
TrialRecord parse_trial_row(std::string_view line);  // Throws ParseError.
std::string format_trials_csv(std::span<const TrialRecord> rows);
std::string format_summary_csv(std::span<const SummaryRow> rows);
// Groups consecutive rows that share (mode, p, n, rho_min, d_in_max).
std::vector<SummaryRow> summarize(std::span<const TrialRecord> rows);
std::filesystem::path summary_path(const std::filesystem::path& trials_path);

struct VerifyReport {
  std::size_t rows = 0;
  std::size_t failed_trials = 0;
  std::vector<std::string> problems;  // empty when consistent

  bool ok() const { return problems.empty(); }
};

/**
 * Re-derives every metric from the counts in a trial CSV and, when a summary
 * CSV is given, every summary row from the trials.
 */
VerifyReport verify_sweep_csv(std::string_view trials_csv, std::optional<std::string_view> summary_csv);

}  // namespace polytree
