#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "venuerec/collection.hpp"
#include "venuerec/config.hpp"
#include "venuerec/cross_validation.hpp"
#include "venuerec/error.hpp"
#include "venuerec/features.hpp"
#include "venuerec/random.hpp"
#include "venuerec/stats.hpp"
#include "venuerec/sweeps.hpp"
#include "venuerec/synthetic.hpp"

namespace venuerec::cli {

namespace fs = std::filesystem;

namespace {

constexpr Metric kMetrics[] = {Metric::precision5, Metric::ndcg5, Metric::mrr};

/// Verbosity from VENUEREC_LOG: quiet, info (default), debug.
class Log {
 public:
  explicit Log(std::ostream& err) : err_(err) {
    const char* env = std::getenv("VENUEREC_LOG");
    const std::string level = env ? env : "info";
    level_ = level == "quiet" ? 0 : level == "debug" ? 2 : 1;
  }
  void info(const std::string& message) const {
    if (level_ >= 1) err_ << message << '\n';
  }
  void debug(const std::string& message) const {
    if (level_ >= 2) err_ << message << '\n';
  }

 private:
  std::ostream& err_;
  int level_ = 1;
};

std::ofstream create(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cli", "cannot write '" + path.string() + "'");
  return out;
}

std::string header_line(const std::string& hash) { return "config-hash: " + hash; }

void apply_overrides(KeyValueConfig& config, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("cli", "--set expects key=value, got '" + o + "'");
    config.set(o.substr(0, eq), o.substr(eq + 1));
  }
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string delta_percent(double value, double reference) {
  if (reference == 0.0) return "-";
  return fixed(100.0 * (value - reference) / reference, 2);
}

struct Comparison {
  TTestResult by_metric[3];
};

Comparison compare(const MetricReport& a, const MetricReport& b) {
  Comparison c;
  for (std::size_t i = 0; i < 3; ++i) {
    c.by_metric[i] = paired_ttest(a.per_user(kMetrics[i]), b.per_user(kMetrics[i]));
  }
  return c;
}

const MetricReport& find_report(const std::vector<MetricReport>& reports, const std::string& name) {
  for (const auto& r : reports) {
    if (r.model == name) return r;
  }
  throw ValidationError("cli", "no report for variant '" + name + "'");
}

void write_metrics_csv(const fs::path& path, const std::vector<MetricReport>& reports, int folds,
                       const std::string& hash) {
  auto out = create(path);
  out << "# " << header_line(hash) << '\n';
  out << "model,fold,metric,value\n";
  for (const auto& r : reports) {
    const bool has_folds = !r.users.empty() && r.users.front().fold >= 0;
    if (has_folds) {
      for (int f = 0; f < folds; ++f) {
        for (const auto m : kMetrics) {
          out << r.model << ',' << f << ',' << to_string(m) << ',' << format_score(r.fold_mean(f, m))
              << '\n';
        }
      }
    }
    for (const auto m : kMetrics) {
      out << r.model << ",all," << to_string(m) << ',' << format_score(r.mean(m)) << '\n';
    }
  }
}

int cmd_generate(const fs::path& spec_file, const std::vector<std::string>& overrides,
                 const std::string& output_flag, std::ostream& out, const Log& log) {
  KeyValueConfig config = KeyValueConfig::from_file(spec_file);
  apply_overrides(config, overrides);
  const SyntheticSpec spec = synthetic_spec_from(config);
  const fs::path dir = output_flag.empty() ? config.get_string("output_dir", "dataset") : output_flag;
  fs::create_directories(dir);
  log.info("generating " + std::to_string(spec.n_users) + " users, " +
           std::to_string(spec.n_venues) + " venues (seed " + std::to_string(spec.seed) + ")");
  const Collection collection = generate_synthetic(spec);
  save_collection(collection, CollectionPaths::in_directory(dir), header_line(config.hash_hex()));
  out << "wrote dataset to " << dir.string() << '\n';
  return kExitOk;
}

struct LoadedExperiment {
  ExperimentConfig config;
  Collection collection;
};

LoadedExperiment load_experiment(const fs::path& config_file,
                                 const std::vector<std::string>& overrides,
                                 const std::string& output_flag, const Log& log) {
  KeyValueConfig kv = KeyValueConfig::from_file(config_file);
  apply_overrides(kv, overrides);
  if (!output_flag.empty()) kv.set("output_dir", output_flag);
  log.debug("config " + kv.hash_hex() + ":\n" + kv.canonical_text());
  ExperimentConfig config = ExperimentConfig::from(kv);
  config.validate_paths();
  log.info("loading dataset");
  Collection collection = load_collection(config.dataset);
  fs::create_directories(config.output_dir);
  return {std::move(config), std::move(collection)};
}

int cmd_run(const fs::path& config_file, const std::vector<std::string>& overrides,
            const std::string& output_flag, std::ostream& out, const Log& log) {
  auto [config, collection] = load_experiment(config_file, overrides, output_flag, log);
  const std::string& hash = config.config_hash;

  std::vector<FeatureSpec> specs;
  for (const auto& v : config.variants) specs.push_back(FeatureSpec::variant(v));
  log.info("computing relevance scores for " + std::to_string(collection.requests.size()) +
           " requests");
  const auto raw = compute_raw_scores(collection, config.features);

  std::vector<MetricReport> reports;
  for (const auto& spec : specs) {
    log.info("cross-validating " + spec.name);
    const auto queries = select_features(raw, spec);
    {
      auto features = create(config.output_dir / (spec.name + ".features"));
      write_feature_file(features, queries, header_line(hash));
    }
    CrossValidationOptions cv = config.cv;
    if (spec.name == "LinearCatRev") cv.kind = RankerKind::linear_interpolation;
    reports.push_back(cross_validate_queries(queries, collection, spec.name, cv));
    auto run_file = create(config.output_dir / (spec.name + ".run"));
    write_run(run_file, reports.back().runs, spec.name, header_line(hash));
  }

  const MetricReport random =
      random_baseline(collection, config.random_permutations, derive_seed(config.seed, "random"));
  std::vector<MetricReport> all = reports;
  all.push_back(random);
  write_metrics_csv(config.output_dir / "metrics.csv", all, config.cv.folds, hash);

  const MetricReport& reference = find_report(reports, config.reference);
  std::map<std::string, Comparison> comparisons;
  for (const auto& r : reports) comparisons.emplace(r.model, compare(r, reference));
  {
    auto sig = create(config.output_dir / "significance.csv");
    sig << "# " << header_line(hash) << '\n';
    sig << "variant,reference,n";
    for (const auto m : kMetrics) {
      sig << ',' << to_string(m) << ",ref_" << to_string(m) << ",t_" << to_string(m) << ",p_"
          << to_string(m) << ",significant_" << to_string(m);
    }
    sig << '\n';
    for (const auto& r : reports) {
      // The reference only appears against itself when it is the sole variant.
      if (r.model == reference.model && reports.size() > 1) continue;
      const auto& c = comparisons.at(r.model);
      sig << r.model << ',' << reference.model << ',' << c.by_metric[0].n;
      for (std::size_t i = 0; i < 3; ++i) {
        sig << ',' << format_score(r.mean(kMetrics[i])) << ','
            << format_score(reference.mean(kMetrics[i])) << ','
            << format_score(c.by_metric[i].t) << ',' << format_score(c.by_metric[i].p) << ','
            << (c.by_metric[i].significant ? 1 : 0);
      }
      sig << '\n';
    }
  }

  {
    auto report = create(config.output_dir / "report.txt");
    report << "# " << header_line(hash) << '\n';
    report << "Held-out " << config.cv.folds << "-fold results, ranker "
           << to_string(config.ranker) << ", reference " << reference.model
           << " (* = p < 0.05, paired two-tailed t-test)\n\n";
    report << std::left << std::setw(14) << "model";
    for (const auto m : kMetrics) {
      report << std::setw(10) << to_string(m) << std::setw(9) << "delta%";
    }
    report << '\n';
    for (const auto& r : all) {
      report << std::left << std::setw(14) << r.model;
      const auto it = comparisons.find(r.model);
      for (std::size_t i = 0; i < 3; ++i) {
        const bool starred = it != comparisons.end() && r.model != reference.model &&
                             it->second.by_metric[i].significant;
        report << std::setw(10) << (fixed(r.mean(kMetrics[i])) + (starred ? "*" : ""))
               << std::setw(9)
               << (r.model == reference.model ? std::string("-")
                                              : delta_percent(r.mean(kMetrics[i]),
                                                              reference.mean(kMetrics[i])));
      }
      report << '\n';
    }
  }

  if (!config.ranker_table.empty()) {
    auto table = create(config.output_dir / "rankers.csv");
    table << "# " << header_line(hash) << '\n';
    table << "ranker,variant,nDCG@5,delta_percent,p,significant\n";
    for (const auto kind : config.ranker_table) {
      for (const auto& spec : specs) {
        if (spec.name == "LinearCatRev") continue;
        log.info("ranker table: " + std::string(to_string(kind)) + " / " + spec.name);
        CrossValidationOptions cv = config.cv;
        cv.kind = kind;
        const auto r = cross_validate_queries(select_features(raw, spec), collection, spec.name, cv);
        const auto t = paired_ttest(r.per_user(Metric::ndcg5), reference.per_user(Metric::ndcg5));
        table << to_string(kind) << ',' << spec.name << ',' << format_score(r.mean_ndcg5) << ','
              << delta_percent(r.mean_ndcg5, reference.mean_ndcg5) << ',' << format_score(t.p)
              << ',' << (t.significant ? 1 : 0) << '\n';
      }
    }
  }

  for (const auto& r : all) {
    out << r.model << " P@5=" << fixed(r.mean_precision5) << " nDCG@5=" << fixed(r.mean_ndcg5)
        << " MRR=" << fixed(r.mean_mrr) << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const fs::path& config_file, const std::vector<std::string>& overrides,
              const std::string& output_flag, std::ostream& out, const Log& log) {
  auto [config, collection] = load_experiment(config_file, overrides, output_flag, log);
  SweepSettings settings{config.cv, config.features};
  for (const auto& sc : config.sweep_configs()) {
    log.info("sweeping " + std::string(to_string(sc.axis)) + " / " +
             std::string(to_string(sc.criterion)));
    const SweepCurve curve = run_sweep(collection, sc, settings);
    const fs::path path = config.output_dir / ("sweep-" + std::string(to_string(sc.axis)) + "-" +
                                               std::string(to_string(sc.criterion)) + ".csv");
    auto csv = create(path);
    csv << "# " << header_line(config.config_hash) << '\n';
    csv << "criterion,k,nDCG@5\n";
    for (const auto& p : curve.points) {
      csv << to_string(sc.criterion) << ',' << p.k << ',' << format_score(p.ndcg5) << '\n';
    }
    out << "wrote " << path.string() << '\n';
  }
  return kExitOk;
}

int cmd_eval_run(const fs::path& run_path, const fs::path& qrels_path, bool per_user,
                 std::ostream& out) {
  std::ifstream run_in(run_path);
  if (!run_in) throw ConfigError("cli", "cannot read run file '" + run_path.string() + "'");
  std::ifstream qrels_in(qrels_path);
  if (!qrels_in) throw ConfigError("cli", "cannot read qrels file '" + qrels_path.string() + "'");
  const auto runs = read_run(run_in);
  std::map<std::string, Judgments, std::less<>> judgments;
  for (const auto& [key, rating] : read_qrels(qrels_in)) judgments[key.first].emplace(key.second, rating);
  const MetricReport report = evaluate_runs(runs, judgments, run_path.filename().string());
  if (per_user) {
    for (const auto& u : report.users) {
      for (const auto m : kMetrics) {
        out << to_string(m) << '\t' << u.user_id << '\t' << fixed(u.get(m)) << '\n';
      }
    }
  }
  for (const auto m : kMetrics) out << to_string(m) << "\tall\t" << fixed(report.mean(m)) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Venue recommendation experiments from LBSN signals"};
  app.require_subcommand(1);

  std::string file;
  std::string output_dir;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;

  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset from a spec file");
  generate->add_option("spec", file, "Synthetic spec (key = value)")->required();
  generate->add_option("-o,--output-dir", output_dir, "Dataset directory");
  generate->add_option("--set", overrides, "Override a spec key (key=value)");
  generate->add_option("--seed", seed, "Override the seed");

  auto* run_cmd = app.add_subcommand("run", "Cross-validate model variants and write runs");
  run_cmd->add_option("config", file, "Experiment config (key = value)")->required();
  run_cmd->add_option("-o,--output-dir", output_dir, "Output directory");
  run_cmd->add_option("--set", overrides, "Override a config key (key=value)");
  run_cmd->add_option("--seed", seed, "Override the seed");

  auto* sweep = app.add_subcommand("sweep", "Review-count or keyword-count sweep curves");
  sweep->add_option("config", file, "Experiment config (key = value)")->required();
  sweep->add_option("-o,--output-dir", output_dir, "Output directory");
  sweep->add_option("--set", overrides, "Override a config key (key=value)");
  sweep->add_option("--seed", seed, "Override the seed");

  std::string run_file;
  std::string qrels_file;
  bool per_user = false;
  auto* eval = app.add_subcommand("eval-run", "Score a TREC run file against qrels");
  eval->add_option("run", run_file, "Run file")->required();
  eval->add_option("qrels", qrels_file, "Qrels file")->required();
  eval->add_flag("-q,--per-user", per_user, "Print per-user values");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  const Log log(err);
  std::vector<std::string> all_overrides = overrides;
  for (auto* cmd : {generate, run_cmd, sweep}) {
    if (cmd->parsed() && cmd->count("--seed") > 0) all_overrides.push_back("seed=" + std::to_string(seed));
  }
  try {
    if (generate->parsed()) return cmd_generate(file, all_overrides, output_dir, out, log);
    if (run_cmd->parsed()) return cmd_run(file, all_overrides, output_dir, out, log);
    if (sweep->parsed()) return cmd_sweep(file, all_overrides, output_dir, out, log);
    if (eval->parsed()) return cmd_eval_run(run_file, qrels_file, per_user, out);
  } catch (const ConfigError& e) {
    err << "error [" << e.module() << "]: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error [" << e.module() << "]: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace venuerec::cli
