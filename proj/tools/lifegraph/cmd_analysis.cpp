// stats, regress and learn subcommands. All read a feature table CSV.

#include <iostream>

#include "cli.hpp"
#include "lifegraph/analysis.hpp"
#include "lifegraph/csv.hpp"
#include "lifegraph/error.hpp"
#include "lifegraph/learn/classifier.hpp"
#include "lifegraph/learn/evaluation.hpp"
#include "lifegraph/learn/info_gain.hpp"
#include "lifegraph/stats.hpp"

namespace lifegraph::cli {
namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

// ---- stats -------------------------------------------------------------------

struct DistributionOptions {
  std::string input = "-";
  DatasetOptions dataset;
  std::optional<int> quarter;
  std::string out = "-";
  std::string out_dir;
  Format format = Format::Csv;
};

struct TrendOptions {
  std::string input = "-";
  DatasetOptions dataset;
  std::string gender = "all";
  int first = 1650;
  int last = 1900;
  std::string out = "-";
  std::string out_dir;
  Format format = Format::Csv;
};

void write_distribution(std::ostream& out, const DistributionSeries& s, Format format) {
  if (format == Format::Csv) {
    write_distribution_csv(out, s);
    return;
  }
  nlohmann::ordered_json j;
  j["quarter_start"] = s.quarter_start;
  j["n"] = s.n;
  auto bins = nlohmann::ordered_json::array();
  for (int age = 0; age <= kMaxAgeBin; ++age) {
    bins.push_back({{"age", age}, {"count", s.counts[static_cast<std::size_t>(age)]},
                    {"percent", s.percents[static_cast<std::size_t>(age)]}});
  }
  j["bins"] = bins;
  out << j.dump(2) << '\n';
}

void write_trend(std::ostream& out, const TrendSeries& s, Format format) {
  if (format == Format::Csv) {
    write_trend_csv(out, s);
    return;
  }
  nlohmann::ordered_json j;
  j["gender"] = s.gender ? nlohmann::ordered_json(gender_name(*s.gender)) : nullptr;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"year", r.year}, {"n", r.n}, {"mean", optional_number(r.mean)},
                    {"median", optional_number(r.median)}});
  }
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

std::string extension(Format f) { return f == Format::Csv ? ".csv" : ".json"; }

void add_stats(CLI::App& app, Context& ctx) {
  auto* stats = app.add_subcommand("stats", "Lifespan distributions and yearly trends");
  stats->require_subcommand(1);

  auto d = std::make_shared<DistributionOptions>();
  auto* dist = stats->add_subcommand("distribution", "Age-of-death histogram of quarter-century birth cohorts");
  dist->add_option("input", d->input, "Feature table CSV, - for standard input")->capture_default_str();
  add_dataset_options(dist, d->dataset, "all");
  auto* q = dist->add_option("--quarter", d->quarter, "Cohort start year: 1650, 1675, ..., 1875");
  auto* out_opt = dist->add_option("--out", d->out, "Output file for --quarter")->capture_default_str();
  auto* dir_opt = dist->add_option("--out-dir", d->out_dir, "Write distribution_<quarter> files for every cohort");
  dir_opt->excludes(q)->excludes(out_opt);
  add_format_option(dist, d->format, Format::Csv);
  set_action(dist, ctx, "stats distribution", [&ctx, d] {
    if (!d->quarter && d->out_dir.empty()) {
      throw CLI::ValidationError("--quarter", "give --quarter or --out-dir");
    }
    const auto ds = resolve_dataset(d->dataset);
    auto run = ctx.invocation();
    run.set_dataset(ds.to_json());
    const auto table = filter_dataset(read_table(run, d->input), ds.spec);
    if (d->quarter) {
      write_distribution(run.open_output(d->out), lifespan_distribution(table, *d->quarter), d->format);
    } else {
      std::filesystem::create_directories(d->out_dir);
      for (int year = kFirstQuarter; year <= kLastQuarter; year += 25) {
        const auto path = std::filesystem::path(d->out_dir) /
                          ("distribution_" + std::to_string(year) + extension(d->format));
        write_distribution(run.open_output(path.string()), lifespan_distribution(table, year), d->format);
      }
    }
    run.finish(ctx.common.manifest);
  });

  auto t = std::make_shared<TrendOptions>();
  auto* trend = stats->add_subcommand("trend", "Mean and median age of death per birth year");
  trend->add_option("input", t->input, "Feature table CSV, - for standard input")->capture_default_str();
  add_dataset_options(trend, t->dataset, "all");
  trend->add_option("--gender", t->gender, "male, female or all; with --out-dir, all writes the three series")
      ->check(CLI::IsMember({"male", "female", "all"}))
      ->capture_default_str();
  trend->add_option("--first", t->first, "First birth year")->capture_default_str();
  trend->add_option("--last", t->last, "Last birth year")->capture_default_str();
  auto* tout = trend->add_option("--out", t->out, "Output file")->capture_default_str();
  trend->add_option("--out-dir", t->out_dir, "Write trend_<gender> files")->excludes(tout);
  add_format_option(trend, t->format, Format::Csv);
  set_action(trend, ctx, "stats trend", [&ctx, t] {
    const auto ds = resolve_dataset(t->dataset);
    auto run = ctx.invocation();
    run.set_dataset(ds.to_json());
    const auto table = filter_dataset(read_table(run, t->input), ds.spec);
    auto series_for = [&](const std::string& g) {
      std::optional<Gender> gender;
      if (g != "all") gender = parse_gender(g);
      return yearly_central_tendency(table, t->first, t->last, gender);
    };
    if (t->out_dir.empty()) {
      write_trend(run.open_output(t->out), series_for(t->gender), t->format);
    } else {
      std::filesystem::create_directories(t->out_dir);
      const std::vector<std::string> genders =
          t->gender == "all" ? std::vector<std::string>{"all", "male", "female"}
                             : std::vector<std::string>{t->gender};
      for (const auto& g : genders) {
        const auto path = std::filesystem::path(t->out_dir) / ("trend_" + g + extension(t->format));
        write_trend(run.open_output(path.string()), series_for(g), t->format);
      }
    }
    run.finish(ctx.common.manifest);
  });
}

// ---- regress -----------------------------------------------------------------

struct SimpleOptions {
  std::string input = "-";
  std::string x;
  std::string dataset;
  Format format = Format::Csv;
  std::string out = "-";
};

struct StepwiseOptions {
  std::string input = "-";
  std::string set = "all-numeric";
  DatasetOptions dataset;
  double alpha = 0.05;
  bool drop_aliased = false;
  Format format = Format::Json;
  std::string out = "-";
};

nlohmann::ordered_json coefficient_json(const Coefficient& c) {
  return {{"name", c.name}, {"estimate", c.estimate}, {"std_error", c.std_error},
          {"t_value", c.t_value}, {"p_value", c.p_value}};
}

void add_regress(CLI::App& app, Context& ctx) {
  auto* regress = app.add_subcommand("regress", "Linear regression of age_of_death");
  regress->require_subcommand(1);

  auto s = std::make_shared<SimpleOptions>();
  auto* simple = regress->add_subcommand(
      "simple", "Single-feature regressions; without --x runs the standard feature sweep");
  simple->add_option("input", s->input, "Full feature table CSV, - for standard input")->capture_default_str();
  simple->add_option("--x", s->x, "Predictor feature");
  simple->add_option("--dataset", s->dataset, "Dataset for --x (default <x>-10)");
  add_format_option(simple, s->format, Format::Csv);
  simple->add_option("--out", s->out, "Output file")->capture_default_str();
  simple->footer(dataset_help());
  set_action(simple, ctx, "regress simple", [&ctx, s] {
    std::vector<SweepEntry> entries;
    if (s->x.empty()) {
      if (!s->dataset.empty()) throw CLI::ValidationError("--dataset", "--dataset needs --x");
      entries = simple_regression_sweep();
    } else {
      const auto f = parse_feature(s->x);
      if (!f || !is_numeric(*f) || *f == Feature::AgeOfDeath) {
        throw CLI::ValidationError("--x", "'" + s->x + "' is not a numeric predictor");
      }
      const std::string name = s->dataset.empty() ? std::string(feature_name(*f)) + "-10" : s->dataset;
      if (!dataset_by_name(name)) throw CLI::ValidationError("--dataset", "unknown dataset '" + name + "'");
      entries.push_back({*f, name});
    }
    auto run = ctx.invocation();
    if (entries.size() == 1) {
      run.set_dataset({{"name", entries[0].dataset}, {"predicates", describe(*dataset_by_name(entries[0].dataset))}});
    }
    const auto table = read_table(run, s->input);
    const auto results = run_simple_sweep(table, entries, ctx.common.threads);
    auto& out = run.open_output(s->out);
    if (s->format == Format::Csv) {
      CsvWriter w(out);
      w.row({"feature", "dataset", "n", "slope", "intercept", "r_squared", "p_value"});
      for (const auto& r : results) {
        w.field(feature_name(r.feature)).field(r.dataset).field(static_cast<long long>(r.n));
        if (r.fit) {
          w.field(r.fit->beta).field(r.fit->alpha).field(r.fit->r_squared).field(r.fit->p_value);
        } else {
          w.empty().empty().empty().empty();
        }
        w.end_row();
      }
    } else {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& r : results) {
        nlohmann::ordered_json j{{"feature", feature_name(r.feature)}, {"dataset", r.dataset}, {"n", r.n}};
        if (r.fit) {
          j["slope"] = r.fit->beta;
          j["intercept"] = r.fit->alpha;
          j["r_squared"] = r.fit->r_squared;
          j["p_value"] = r.fit->p_value;
          j["slope_std_error"] = r.fit->beta_std_error;
          j["t_statistic"] = r.fit->t_statistic;
        } else {
          j["error"] = r.error;
        }
        arr.push_back(j);
      }
      out << arr.dump(2) << '\n';
    }
    for (const auto& r : results) {
      if (!r.fit) std::cerr << feature_name(r.feature) << " on " << r.dataset << ": " << r.error << '\n';
    }
    run.finish(ctx.common.manifest);
  });

  auto w = std::make_shared<StepwiseOptions>();
  auto* stepwise = regress->add_subcommand("stepwise", "Backward-elimination multiple regression");
  stepwise->add_option("input", w->input, "Full feature table CSV, - for standard input")->capture_default_str();
  stepwise->add_option("--set", w->set, "Predictor set: all-numeric, heritage or nuclear")
      ->check([](const std::string& v) {
        const auto s = parse_feature_set(v);
        return s && *s != FeatureSet::Full ? std::string() : "expected all-numeric, heritage or nuclear";
      })
      ->capture_default_str();
  add_dataset_options(stepwise, w->dataset, "");
  stepwise->add_option("--alpha", w->alpha, "Removal threshold on coefficient p-values")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  stepwise->add_flag("--drop-aliased", w->drop_aliased,
                     "Drop predictors that are linear combinations of others instead of failing");
  add_format_option(stepwise, w->format, Format::Json);
  stepwise->add_option("--out", w->out, "Output file")->capture_default_str();
  set_action(stepwise, ctx, "regress stepwise", [&ctx, w] {
    const auto set = *parse_feature_set(w->set);
    auto options = w->dataset;
    if (options.name.empty()) options.name = default_stepwise_dataset(set);
    const auto ds = resolve_dataset(options);
    auto run = ctx.invocation();
    run.set_dataset(ds.to_json());
    const auto table = read_table(run, w->input);
    const auto result = stepwise_for_set(table, set, ds.spec, w->alpha, w->drop_aliased);
    auto& out = run.open_output(w->out);
    const auto& fit = result.fit;
    if (w->format == Format::Json) {
      nlohmann::ordered_json j;
      j["set"] = feature_set_name(set);
      j["dataset"] = ds.to_json();
      j["n"] = fit.n;
      j["alpha"] = w->alpha;
      j["intercept"] = coefficient_json(fit.intercept);
      auto coefs = nlohmann::ordered_json::array();
      for (const auto& c : fit.predictors) coefs.push_back(coefficient_json(c));
      j["coefficients"] = coefs;
      j["multiple_r_squared"] = fit.multiple_r_squared;
      j["adjusted_r_squared"] = fit.adjusted_r_squared;
      j["residual_standard_error"] = fit.rse;
      j["df_residual"] = fit.df_residual;
      j["f_statistic"] = fit.f_statistic;
      j["f_p_value"] = fit.f_p_value;
      auto trace = nlohmann::ordered_json::array();
      for (const auto& step : result.trace) {
        trace.push_back({{"removed", step.removed}, {"p_value", step.p_value}});
      }
      j["eliminated"] = trace;
      j["aliased"] = result.aliased;
      out << j.dump(2) << '\n';
    } else {
      CsvWriter csv(out);
      csv.row({"term", "estimate", "std_error", "t_value", "p_value"});
      auto row = [&csv](const Coefficient& c) {
        csv.field(c.name).field(c.estimate).field(c.std_error).field(c.t_value).field(c.p_value);
        csv.end_row();
      };
      row(fit.intercept);
      for (const auto& c : fit.predictors) row(c);
    }
    std::cerr << "n=" << fit.n << " R2=" << fit.multiple_r_squared
              << " adjusted R2=" << fit.adjusted_r_squared << " F p=" << format_p_value(fit.f_p_value)
              << ", " << result.trace.size() << " predictors eliminated\n";
    for (const auto& name : result.aliased) std::cerr << "dropped aliased predictor " << name << '\n';
    run.finish(ctx.common.manifest);
  });
}

// ---- learn -------------------------------------------------------------------

struct LearnOptions {
  std::string input = "-";
  DatasetOptions dataset;
  std::string classifier = "random-forest";
  int k = 3;
  int trees = 10;
  int min_bucket = 6;
  std::optional<int> split_candidates;
  bool no_bootstrap = false;
  std::uint64_t seed = 1;
  double threshold = kLongevityAge;
  std::size_t folds = 10;
  std::string model;
  Format format = Format::Json;
  std::string out = "-";
};

void add_classifier_options(CLI::App* cmd, LearnOptions& o) {
  cmd->add_option("--classifier", o.classifier,
                  "one-r, c45, knn, naive-bayes, random-forest or bagging")
      ->check([](const std::string& v) {
        return parse_classifier_kind(v) ? std::string() : "unknown classifier '" + v + "'";
      })
      ->capture_default_str();
  cmd->add_option("--k", o.k, "KNN neighbours")->capture_default_str();
  cmd->add_option("--trees", o.trees, "Ensemble size")->capture_default_str();
  cmd->add_option("--min-bucket", o.min_bucket, "OneR minimum bucket size")->capture_default_str();
  cmd->add_option("--split-candidates", o.split_candidates,
                  "Random forest features per split (default ceil(sqrt(p)))");
  cmd->add_flag("--no-bootstrap", o.no_bootstrap, "Train ensemble members on the full training data");
  cmd->add_option("--seed", o.seed, "Seed for folds, bootstrap samples and feature draws")
      ->capture_default_str();
}

ClassifierSpec spec_from(const LearnOptions& o) {
  ClassifierSpec spec;
  spec.kind = *parse_classifier_kind(o.classifier);
  spec.k = o.k;
  spec.tree_count = o.trees;
  spec.min_bucket = o.min_bucket;
  spec.split_candidates = o.split_candidates;
  spec.bootstrap = !o.no_bootstrap;
  spec.seed = o.seed;
  try {
    spec.validate();
  } catch (const DataError& e) {
    throw CLI::ValidationError("--classifier", e.what());
  }
  return spec;
}

void add_table_and_dataset(CLI::App* cmd, LearnOptions& o) {
  cmd->add_option("input", o.input, "Feature table CSV with the all-numeric columns, - for standard input")
      ->capture_default_str();
  add_dataset_options(cmd, o.dataset, "us-50");
  cmd->add_option("--threshold", o.threshold, "Positive class: age_of_death >= threshold")
      ->capture_default_str();
}

LabeledTable labeled_from(Invocation& run, const LearnOptions& o, const ResolvedDataset& ds) {
  const auto table = materialize(read_table(run, o.input), ds.spec, FeatureSet::AllNumeric);
  auto data = make_labeled_table(table, o.threshold);
  std::cerr << data.rows() << " rows, " << data.positives() << " positive\n";
  return data;
}

void add_learn(CLI::App& app, Context& ctx) {
  auto* learn = app.add_subcommand("learn", "Longevity classifiers");
  learn->require_subcommand(1);

  auto c = std::make_shared<LearnOptions>();
  auto* cv = learn->add_subcommand("cv", "Stratified cross-validation of a classifier");
  add_table_and_dataset(cv, *c);
  add_classifier_options(cv, *c);
  cv->add_option("--folds", c->folds, "Fold count")->check(CLI::PositiveNumber)->capture_default_str();
  add_format_option(cv, c->format, Format::Json);
  cv->add_option("--out", c->out, "Output file")->capture_default_str();
  set_action(cv, ctx, "learn cv", [&ctx, c] {
    const auto spec = spec_from(*c);
    const auto ds = resolve_dataset(c->dataset);
    auto run = ctx.invocation();
    run.set_dataset(ds.to_json());
    run.set_seed(spec.seed);
    const auto data = labeled_from(run, *c, ds);
    const auto metrics = cross_validate(spec, data, c->folds, ctx.common.threads);
    auto& out = run.open_output(c->out);
    if (c->format == Format::Json) {
      nlohmann::ordered_json j;
      j["classifier"] = to_json(spec);
      j["dataset"] = ds.to_json();
      j["threshold"] = c->threshold;
      j["rows"] = data.rows();
      j["positives"] = data.positives();
      j["folds"] = c->folds;
      j["metrics"] = to_json(metrics);
      out << j.dump(2) << '\n';
    } else {
      CsvWriter w(out);
      w.row({"fold", "rows", "positives", "tp_rate", "fp_rate", "f_measure", "auc"});
      for (const auto& f : metrics.folds) {
        w.field(static_cast<long long>(f.fold)).field(static_cast<long long>(f.rows))
            .field(static_cast<long long>(f.positives)).field(f.counts.tp_rate())
            .field(f.counts.fp_rate()).field(f.counts.f_measure());
        if (f.auc) {
          w.field(*f.auc);
        } else {
          w.empty();
        }
        w.end_row();
      }
      w.field("all").field(static_cast<long long>(data.rows()))
          .field(static_cast<long long>(data.positives())).field(metrics.tp_rate)
          .field(metrics.fp_rate).field(metrics.f_measure).field(metrics.auc);
      w.end_row();
    }
    run.finish(ctx.common.manifest);
  });

  auto r = std::make_shared<LearnOptions>();
  auto* rank = learn->add_subcommand("rank", "Information-gain ranking of the predictors");
  add_table_and_dataset(rank, *r);
  add_format_option(rank, r->format, Format::Csv);
  rank->add_option("--out", r->out, "Output file")->capture_default_str();
  set_action(rank, ctx, "learn rank", [&ctx, r] {
    const auto ds = resolve_dataset(r->dataset);
    auto run = ctx.invocation();
    run.set_dataset(ds.to_json());
    const auto ranking = information_gain_ranking(labeled_from(run, *r, ds));
    auto& out = run.open_output(r->out);
    if (r->format == Format::Csv) {
      CsvWriter w(out);
      w.row({"rank", "feature", "gain"});
      long long position = 1;
      for (const auto& f : ranking) w.field(position++).field(f.name).field(f.gain).end_row();
    } else {
      auto arr = nlohmann::ordered_json::array();
      std::size_t position = 1;
      for (const auto& f : ranking) arr.push_back({{"rank", position++}, {"feature", f.name}, {"gain", f.gain}});
      out << arr.dump(2) << '\n';
    }
    run.finish(ctx.common.manifest);
  });

  auto t = std::make_shared<LearnOptions>();
  auto* train_cmd = learn->add_subcommand("train", "Train a classifier on a dataset and save it as JSON");
  add_table_and_dataset(train_cmd, *t);
  add_classifier_options(train_cmd, *t);
  train_cmd->add_option("--out", t->out, "Model file")->capture_default_str();
  set_action(train_cmd, ctx, "learn train", [&ctx, t] {
    const auto spec = spec_from(*t);
    const auto ds = resolve_dataset(t->dataset);
    auto run = ctx.invocation();
    run.set_dataset(ds.to_json());
    run.set_seed(spec.seed);
    const auto data = labeled_from(run, *t, ds);
    const auto model = train(spec, data);
    run.open_output(t->out) << save_model(*model, spec, data.feature_names).dump() << '\n';
    run.finish(ctx.common.manifest);
  });

  auto p = std::make_shared<LearnOptions>();
  auto* predict = learn->add_subcommand("predict", "Score the rows of a dataset with a saved model");
  add_table_and_dataset(predict, *p);
  predict->add_option("--model", p->model, "Model file written by learn train")->required();
  predict->add_option("--out", p->out, "Output file")->capture_default_str();
  set_action(predict, ctx, "learn predict", [&ctx, p] {
    const auto ds = resolve_dataset(p->dataset);
    auto run = ctx.invocation();
    run.set_dataset(ds.to_json());
    nlohmann::json document;
    try {
      run.open_input(p->model) >> document;
    } catch (const nlohmann::json::exception& e) {
      throw DataError("model file: " + std::string(e.what()));
    }
    const auto loaded = load_model(document);
    const auto table = materialize(read_table(run, p->input), ds.spec, FeatureSet::AllNumeric);
    const auto data = make_labeled_table(table, p->threshold);
    if (data.feature_names != loaded.feature_names) {
      throw DataError("model features do not match the table's predictors");
    }
    CsvWriter w(run.open_output(p->out));
    w.row({"id", "score", "predicted", "actual"});
    for (std::size_t i = 0; i < data.rows(); ++i) {
      const double score = loaded.model->score(data.row(i));
      w.field(table.rows()[i].id).field(score)
          .field(static_cast<long long>(score >= kDecisionThreshold))
          .field(static_cast<long long>(data.labels[i]));
      w.end_row();
    }
    run.finish(ctx.common.manifest);
  });
}

}  // namespace

void register_analysis_commands(CLI::App& app, Context& ctx) {
  add_stats(app, ctx);
  add_regress(app, ctx);
  add_learn(app, ctx);
}

}  // namespace lifegraph::cli
