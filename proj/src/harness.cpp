#include "polytree/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <map>
#include <thread>

#include "polytree/errors.hpp"
#include "polytree/generator.hpp"
#include "polytree/graph_io.hpp"
#include "polytree/learner.hpp"
#include "polytree/precision.hpp"
#include "polytree/rng.hpp"

namespace polytree {
namespace {

constexpr std::uint64_t kModelStream = 1;
constexpr std::uint64_t kDataStream = 2;
constexpr std::size_t kColumns = 25;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <class T>
T parse_value(std::string_view s, std::string_view what) {
  s = trim(s);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("bad value for " + std::string(what) + ": '" + std::string(s) + "'");
  return value;
}

template <class T>
std::vector<T> parse_list(std::string_view s, std::string_view what) {
  std::vector<T> out;
  for (std::string_view item : split(s, ',')) out.push_back(parse_value<T>(item, what));
  return out;
}

bool parse_bool(std::string_view s, std::string_view what) {
  s = trim(s);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ParseError("bad boolean for " + std::string(what) + ": '" + std::string(s) + "'");
}

// Shortest text that reads back to the same double.
std::string num(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

std::optional<double> parse_opt(std::string_view s, std::string_view what) {
  if (trim(s).empty()) return std::nullopt;
  return parse_value<double>(s, what);
}

// Keeps free text from breaking the CSV layout.
std::string sanitize(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
    if (c == '"') c = '\'';
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// The truth models of one grid model, built once and shared by its trials.
struct ModelSet {
  std::vector<LinearSem> members;
  std::vector<Cpdag> truths;
  std::string error;  // nonempty when construction failed
};

std::vector<LinearSem> build_members(const SweepConfig& cfg, const GridPoint& point) {
  switch (cfg.mode) {
    case SweepMode::hardness_skeleton:
      return hardness_ensemble_skeleton(point.p, point.rho_min);
    case SweepMode::hardness_cpdag:
      return hardness_ensemble_cpdag(point.p, point.rho_min);
    case SweepMode::standard:
    case SweepMode::precision:
      break;
  }
  GenConfig gen;
  gen.p = point.p;
  gen.d_in_max = point.d_in_max;
  gen.rho_min = point.rho_min;
  gen.rho_max = cfg.rho_max;
  gen.omega_min = cfg.omega_min;
  gen.seed = derive_seed(cfg.master_seed, {kModelStream, point.model_index});
  return {generate_polytree_sem(gen)};
}

ModelSet build_model_set(const SweepConfig& cfg, const GridPoint& point) {
  ModelSet set;
  try {
    set.members = build_members(cfg, point);
    set.truths.reserve(set.members.size());
    for (const LinearSem& m : set.members) set.truths.push_back(cpdag_of_polytree(m.dag()));
  } catch (const std::exception& e) {
    set.members.clear();
    set.truths.clear();
    set.error = sanitize(std::string("model error: ") + e.what());
  }
  return set;
}

TrialRecord blank_record(const SweepConfig& cfg, const GridPoint& point, std::size_t trial) {
  TrialRecord r;
  r.mode = cfg.mode;
  r.p = point.p;
  r.n = point.n;
  r.rho_min = point.rho_min;
  r.rho_max = cfg.rho_max;
  r.d_in_max = point.d_in_max;
  r.omega_min = cfg.omega_min;
  r.alpha = cfg.alpha;
  r.seed = derive_seed(cfg.master_seed, {kDataStream, point.model_index, point.n_index, trial});
  r.trial = trial;
  return r;
}

void fill_metrics(TrialRecord& r) {
  const EdgeClassification& ec = r.edges;
  if (ec.est_size > 0) {
    r.fdr_sk = fdr_skeleton(ec);
    r.fdr_cpdag = fdr_cpdag(ec);
  }
  if (ec.missing + ec.est_size > 0) r.ji_sk = jaccard_skeleton(ec);
  if (ec.true_size + ec.est_size > ec.correct) r.ji_cpdag = jaccard_cpdag(ec);
  r.exact_sk = ec.missing == 0 && ec.extra == 0;
  r.exact_cpdag = r.exact_sk && ec.wrong_direction == 0;
}

TrialRecord run_trial_with(const SweepConfig& cfg, const GridPoint& point, std::size_t trial,
                           const ModelSet& models) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord r = blank_record(cfg, point, trial);
  try {
    if (!models.error.empty()) throw InvalidModel(models.error);
    const std::size_t member = trial % models.members.size();
    const LinearSem& truth = models.members[member];
    const Cpdag& truth_cpdag = models.truths[member];

    const DataMatrix data = sample(truth, point.n, cfg.noise, r.seed);
    const CorrelationMatrix corr = sample_correlations(data);
    const double crit = cfg.rho_crit ? *cfg.rho_crit : rho_crit(point.n, cfg.alpha);
    const LearnResult learned = learn_from_correlations(corr, crit);

    r.edges = classify_edges(truth_cpdag, learned.cpdag);
    fill_metrics(r);

    if (cfg.mode == SweepMode::precision && r.exact_cpdag) {
      try {
        const PrecisionMatrix estimate = estimate_inverse_correlation(learned.cpdag, corr);
        const L1Errors err = l1_errors(estimate, true_inverse_correlation(truth));
        r.theta_diag_l1 = err.diagonal;
        r.theta_offdiag_l1 = err.off_diagonal;
      } catch (const DegenerateVariance&) {
        // Left empty: the structure metrics of this trial are still valid.
      }
    }
  } catch (const Error& e) {
    r.status = sanitize(std::string("error: ") + e.what());
  } catch (const std::exception& e) {
    r.status = sanitize(std::string("internal: ") + e.what());
  }
  if (cfg.timing) {
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.timestamp = utc_timestamp();
  }
  return r;
}

template <class F>
void parallel_for(std::size_t count, std::size_t threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
}

SummaryRow::Stat make_stat(const std::vector<double>& xs) {
  SummaryRow::Stat s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    s.half_width = 1.96 * sd / std::sqrt(static_cast<double>(xs.size()));
  }
  return s;
}

bool same_group(const TrialRecord& a, const TrialRecord& b) {
  return a.mode == b.mode && a.p == b.p && a.n == b.n && a.rho_min == b.rho_min && a.d_in_max == b.d_in_max;
}

constexpr std::string_view kStatNames[] = {"fdr_sk",      "ji_sk",         "fdr_cpdag",     "ji_cpdag",
                                           "exact_sk",    "exact_cpdag",   "theta_diag_l1", "theta_offdiag_l1"};

std::vector<SummaryRow::Stat*> stats_of(SummaryRow& row) {
  return {&row.fdr_sk,   &row.ji_sk,       &row.fdr_cpdag,     &row.ji_cpdag,
          &row.exact_sk, &row.exact_cpdag, &row.theta_diag_l1, &row.theta_offdiag_l1};
}

std::string summary_header() {
  std::string h = "mode,p,n,rho_min,rho_max,d_in_max,omega_min,alpha,trials,failed";
  for (std::string_view name : kStatNames) {
    h += ',';
    h += name;
    h += "_mean,";
    h += name;
    h += "_ci95,";
    h += name;
    h += "_count";
  }
  return h;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

std::vector<std::string_view> data_lines(std::string_view text) {
  std::vector<std::string_view> out;
  for (std::string_view line : split(text, '\n')) {
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

std::string_view to_string(SweepMode m) {
  switch (m) {
    case SweepMode::standard:
      return "standard";
    case SweepMode::hardness_skeleton:
      return "hardness_skeleton";
    case SweepMode::hardness_cpdag:
      return "hardness_cpdag";
    case SweepMode::precision:
      return "precision";
  }
  throw InternalError("unknown sweep mode");
}

SweepMode parse_sweep_mode(std::string_view name) {
  name = trim(name);
  for (SweepMode m :
       {SweepMode::standard, SweepMode::hardness_skeleton, SweepMode::hardness_cpdag, SweepMode::precision})
    if (to_string(m) == name) return m;
  throw ParseError("unknown mode '" + std::string(name) + "'");
}

void SweepConfig::validate() const {
  if (p_values.empty() || rho_min_values.empty() || d_in_max_values.empty())
    throw InvalidArgument("p, rho_min and d_in_max need at least one value each");
  if (n_values.empty()) throw InvalidArgument("n_values must not be empty");
  for (std::size_t n : n_values)
    if (n < 3) throw InvalidArgument("every sample size must be at least 3");
  if (repeats < 1) throw InvalidArgument("repeats must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (rho_crit && !(*rho_crit > 0.0 && *rho_crit < 1.0)) throw InvalidArgument("rho_crit must lie in (0, 1)");
}

SweepConfig parse_sweep_config(std::string_view text) {
  SweepConfig cfg;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected key=value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "mode")
      cfg.mode = parse_sweep_mode(value);
    else if (key == "p")
      cfg.p_values = parse_list<std::size_t>(value, key);
    else if (key == "rho_min")
      cfg.rho_min_values = parse_list<double>(value, key);
    else if (key == "d_in_max")
      cfg.d_in_max_values = parse_list<std::size_t>(value, key);
    else if (key == "n_values")
      cfg.n_values = parse_list<std::size_t>(value, key);
    else if (key == "rho_max")
      cfg.rho_max = parse_value<double>(value, key);
    else if (key == "omega_min")
      cfg.omega_min = parse_value<double>(value, key);
    else if (key == "repeats")
      cfg.repeats = parse_value<std::size_t>(value, key);
    else if (key == "alpha")
      cfg.alpha = parse_value<double>(value, key);
    else if (key == "rho_crit")
      cfg.rho_crit = value.empty() ? std::nullopt : std::optional(parse_value<double>(value, key));
    else if (key == "noise") {
      try {
        cfg.noise = parse_noise_family(value);
      } catch (const Error& e) {
        throw ParseError(e.what());
      }
    } else if (key == "master_seed")
      cfg.master_seed = parse_value<std::uint64_t>(value, key);
    else if (key == "timing")
      cfg.timing = parse_bool(value, key);
    else if (key == "threads")
      cfg.threads = parse_value<std::size_t>(value, key);
    else
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
  }
  return cfg;
}

std::vector<GridPoint> grid_points(const SweepConfig& cfg) {
  std::vector<GridPoint> out;
  std::size_t model = 0;
  for (std::size_t p : cfg.p_values)
    for (double rho : cfg.rho_min_values)
      for (std::size_t d : cfg.d_in_max_values) {
        for (std::size_t k = 0; k < cfg.n_values.size(); ++k) out.push_back({p, rho, d, cfg.n_values[k], model, k});
        ++model;
      }
  return out;
}

LinearSem trial_model(const SweepConfig& cfg, const GridPoint& point, std::size_t trial) {
  const auto members = build_members(cfg, point);
  return members[trial % members.size()];
}

TrialRecord run_trial(const SweepConfig& cfg, const GridPoint& point, std::size_t trial) {
  return run_trial_with(cfg, point, trial, build_model_set(cfg, point));
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::vector<GridPoint> points = grid_points(cfg);

  std::map<std::size_t, GridPoint> model_points;
  for (const GridPoint& g : points) model_points.emplace(g.model_index, g);
  std::vector<ModelSet> models(model_points.size());
  parallel_for(models.size(), cfg.threads,
               [&](std::size_t i) { models[i] = build_model_set(cfg, model_points.at(i)); });

  SweepResult result;
  result.trials.resize(points.size() * cfg.repeats);
  parallel_for(result.trials.size(), cfg.threads, [&](std::size_t i) {
    const GridPoint& g = points[i / cfg.repeats];
    result.trials[i] = run_trial_with(cfg, g, i % cfg.repeats, models[g.model_index]);
  });
  result.summary = summarize(result.trials);
  return result;
}

SweepResult run_sweep(const SweepConfig& cfg, const std::filesystem::path& path) {
  SweepResult result = run_sweep(cfg);
  write_text_file(path, format_trials_csv(result.trials));
  write_text_file(summary_path(path), format_summary_csv(result.summary));
  return result;
}

std::filesystem::path summary_path(const std::filesystem::path& trials_path) {
  std::filesystem::path out = trials_path;
  out.replace_filename(trials_path.stem().string() + ".summary.csv");
  return out;
}

std::string trial_csv_header() {
  return "mode,p,n,rho_min,rho_max,d_in_max,omega_min,alpha,seed,trial,correct,wrong_dir,missing,extra,"
         "fdr_sk,ji_sk,fdr_cpdag,ji_cpdag,exact_sk,exact_cpdag,theta_diag_l1,theta_offdiag_l1,status,wall_ms,"
         "timestamp";
}

std::string format_trial_row(const TrialRecord& r) {
  std::string s;
  s += to_string(r.mode);
  for (const std::string& field :
       {std::to_string(r.p), std::to_string(r.n), num(r.rho_min), num(r.rho_max), std::to_string(r.d_in_max),
        num(r.omega_min), num(r.alpha), std::to_string(r.seed), std::to_string(r.trial),
        std::to_string(r.edges.correct), std::to_string(r.edges.wrong_direction), std::to_string(r.edges.missing),
        std::to_string(r.edges.extra), opt_num(r.fdr_sk), opt_num(r.ji_sk), opt_num(r.fdr_cpdag),
        opt_num(r.ji_cpdag), std::string(r.exact_sk ? "1" : "0"), std::string(r.exact_cpdag ? "1" : "0"),
        opt_num(r.theta_diag_l1), opt_num(r.theta_offdiag_l1), sanitize(r.status), num(r.wall_ms),
        r.timestamp}) {
    s += ',';
    s += field;
  }
  return s;
}

TrialRecord parse_trial_row(std::string_view line) {
  const auto f = split(trim(line), ',');
  if (f.size() != kColumns)
    throw ParseError("expected " + std::to_string(kColumns) + " fields, got " + std::to_string(f.size()));
  TrialRecord r;
  r.mode = parse_sweep_mode(f[0]);
  r.p = parse_value<std::size_t>(f[1], "p");
  r.n = parse_value<std::size_t>(f[2], "n");
  r.rho_min = parse_value<double>(f[3], "rho_min");
  r.rho_max = parse_value<double>(f[4], "rho_max");
  r.d_in_max = parse_value<std::size_t>(f[5], "d_in_max");
  r.omega_min = parse_value<double>(f[6], "omega_min");
  r.alpha = parse_value<double>(f[7], "alpha");
  r.seed = parse_value<std::uint64_t>(f[8], "seed");
  r.trial = parse_value<std::size_t>(f[9], "trial");
  r.edges.correct = parse_value<std::size_t>(f[10], "correct");
  r.edges.wrong_direction = parse_value<std::size_t>(f[11], "wrong_dir");
  r.edges.missing = parse_value<std::size_t>(f[12], "missing");
  r.edges.extra = parse_value<std::size_t>(f[13], "extra");
  r.edges.true_size = r.edges.correct + r.edges.wrong_direction + r.edges.missing;
  r.edges.est_size = r.edges.correct + r.edges.wrong_direction + r.edges.extra;
  r.fdr_sk = parse_opt(f[14], "fdr_sk");
  r.ji_sk = parse_opt(f[15], "ji_sk");
  r.fdr_cpdag = parse_opt(f[16], "fdr_cpdag");
  r.ji_cpdag = parse_opt(f[17], "ji_cpdag");
  r.exact_sk = parse_bool(f[18], "exact_sk");
  r.exact_cpdag = parse_bool(f[19], "exact_cpdag");
  r.theta_diag_l1 = parse_opt(f[20], "theta_diag_l1");
  r.theta_offdiag_l1 = parse_opt(f[21], "theta_offdiag_l1");
  r.status = std::string(f[22]);
  r.wall_ms = parse_value<double>(f[23], "wall_ms");
  r.timestamp = std::string(f[24]);
  return r;
}

std::string format_trials_csv(std::span<const TrialRecord> rows) {
  std::string out = trial_csv_header() + '\n';
  for (const TrialRecord& r : rows) out += format_trial_row(r) + '\n';
  return out;
}

std::vector<SummaryRow> summarize(std::span<const TrialRecord> rows) {
  std::vector<SummaryRow> out;
  std::size_t begin = 0;
  while (begin < rows.size()) {
    std::size_t end = begin + 1;
    while (end < rows.size() && same_group(rows[begin], rows[end])) ++end;

    const TrialRecord& first = rows[begin];
    SummaryRow row;
    row.mode = first.mode;
    row.p = first.p;
    row.n = first.n;
    row.rho_min = first.rho_min;
    row.rho_max = first.rho_max;
    row.d_in_max = first.d_in_max;
    row.omega_min = first.omega_min;
    row.alpha = first.alpha;
    row.trials = end - begin;

    std::vector<std::vector<double>> values(std::size(kStatNames));
    for (std::size_t i = begin; i < end; ++i) {
      const TrialRecord& r = rows[i];
      if (!r.ok()) {
        ++row.failed;
        continue;
      }
      const std::optional<double> fields[] = {r.fdr_sk,
                                              r.ji_sk,
                                              r.fdr_cpdag,
                                              r.ji_cpdag,
                                              r.exact_sk ? 1.0 : 0.0,
                                              r.exact_cpdag ? 1.0 : 0.0,
                                              r.theta_diag_l1,
                                              r.theta_offdiag_l1};
      for (std::size_t k = 0; k < values.size(); ++k)
        if (fields[k]) values[k].push_back(*fields[k]);
    }
    const auto stats = stats_of(row);
    for (std::size_t k = 0; k < values.size(); ++k) *stats[k] = make_stat(values[k]);
    out.push_back(row);
    begin = end;
  }
  return out;
}

std::string format_summary_csv(std::span<const SummaryRow> rows) {
  std::string out = summary_header() + '\n';
  for (SummaryRow row : rows) {
    out += std::string(to_string(row.mode)) + ',' + std::to_string(row.p) + ',' + std::to_string(row.n) + ',' +
           num(row.rho_min) + ',' + num(row.rho_max) + ',' + std::to_string(row.d_in_max) + ',' +
           num(row.omega_min) + ',' + num(row.alpha) + ',' + std::to_string(row.trials) + ',' +
           std::to_string(row.failed);
    for (const SummaryRow::Stat* s : stats_of(row))
      out += ',' + num(s->mean) + ',' + num(s->half_width) + ',' + std::to_string(s->count);
    out += '\n';
  }
  return out;
}

VerifyReport verify_sweep_csv(std::string_view trials_csv, std::optional<std::string_view> summary_csv) {
  VerifyReport report;
  const auto lines = data_lines(trials_csv);
  if (lines.empty() || lines.front() != trial_csv_header()) {
    report.problems.push_back("trial CSV header does not match the expected schema");
    return report;
  }

  std::vector<TrialRecord> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "row " + std::to_string(i) + ": ";
    TrialRecord r;
    try {
      r = parse_trial_row(lines[i]);
    } catch (const Error& e) {
      report.problems.push_back(where + e.what());
      continue;
    }
    ++report.rows;
    if (!r.ok()) ++report.failed_trials;

    TrialRecord expect = r;
    expect.fdr_sk = expect.ji_sk = expect.fdr_cpdag = expect.ji_cpdag = std::nullopt;
    if (r.ok()) fill_metrics(expect);
    auto check = [&](const char* name, const std::optional<double>& got, const std::optional<double>& want) {
      if (!r.ok()) return;
      if (got.has_value() != want.has_value() || (got && !close(*got, *want)))
        report.problems.push_back(where + name + " does not match the edge counts");
    };
    check("fdr_sk", r.fdr_sk, expect.fdr_sk);
    check("ji_sk", r.ji_sk, expect.ji_sk);
    check("fdr_cpdag", r.fdr_cpdag, expect.fdr_cpdag);
    check("ji_cpdag", r.ji_cpdag, expect.ji_cpdag);
    if (r.ok() && (r.exact_sk != expect.exact_sk || r.exact_cpdag != expect.exact_cpdag))
      report.problems.push_back(where + "exactness flags do not match the edge counts");
    rows.push_back(std::move(r));
  }

  if (!summary_csv) return report;
  const auto summary_lines = data_lines(*summary_csv);
  if (summary_lines.empty() || summary_lines.front() != summary_header()) {
    report.problems.push_back("summary CSV header does not match the expected schema");
    return report;
  }
  const auto expected_lines = data_lines(format_summary_csv(summarize(rows)));
  if (expected_lines.size() != summary_lines.size()) {
    report.problems.push_back("summary has " + std::to_string(summary_lines.size() - 1) + " rows, trials give " +
                              std::to_string(expected_lines.size() - 1));
    return report;
  }
  for (std::size_t i = 1; i < summary_lines.size(); ++i) {
    const auto got = split(summary_lines[i], ',');
    const auto want = split(expected_lines[i], ',');
    bool same = got.size() == want.size();
    for (std::size_t k = 0; same && k < got.size(); ++k) {
      if (got[k] == want[k]) continue;
      double a = 0.0;
      double b = 0.0;
      try {
        a = parse_value<double>(got[k], "summary");
        b = parse_value<double>(want[k], "summary");
      } catch (const ParseError&) {
        same = false;
        break;
      }
      same = close(a, b);
    }
    if (!same) report.problems.push_back("summary row " + std::to_string(i) + " differs from the trials");
  }
  return report;
}

}  // namespace polytree
