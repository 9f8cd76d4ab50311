// Acceptance harness: runs each criterion and prints one PASS/FAIL line.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lifegraph/datasets.hpp"
#include "lifegraph/error.hpp"
#include "lifegraph/features.hpp"
#include "lifegraph/graph.hpp"
#include "lifegraph/ingest.hpp"
#include "lifegraph/learn/classifier.hpp"
#include "lifegraph/learn/evaluation.hpp"
#include "lifegraph/learn/info_gain.hpp"
#include "lifegraph/manifest.hpp"
#include "lifegraph/random.hpp"
#include "lifegraph/regress.hpp"
#include "lifegraph/synth.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace lifegraph;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Kolmogorov-Smirnov test of a sample against U(0, 1). Returns the
// asymptotic p-value with the Stephens small-sample correction.
double ks_uniform_p(std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double x = sample[i];
    d = std::max({d, static_cast<double>(i + 1) / n - x, x - static_cast<double>(i) / n});
  }
  const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  double q = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    q += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(q, 0.0, 1.0);
}

// ---- 1 -------------------------------------------------------------------

Outcome ols_oracle() {
  Rng rng(1001);
  double worst = 0.0;
  int checked = 0;
  const auto start = Clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 3 + rng.below(48);
    const std::size_t p = 1 + rng.below(std::min<std::size_t>(4, n - 2));
    std::vector<Predictor> preds;
    std::vector<std::vector<double>> cols;
    for (std::size_t j = 0; j < p; ++j) {
      std::vector<double> c(n);
      for (auto& v : c) v = rng.normal() * (1.0 + 3.0 * rng.uniform()) + 2.0 * rng.uniform();
      cols.push_back(c);
      preds.push_back({"x" + std::to_string(j), c});
    }
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = rng.normal() + 1.5;
      for (std::size_t j = 0; j < p; ++j) y[i] += (static_cast<double>(j) - 1.0) * cols[j][i];
    }
    const auto fit = multiple_ols(preds, y);
    const auto oracle = testing::normal_equations(cols, y);
    worst = std::max(worst, std::fabs(fit.intercept.estimate - oracle[0]));
    for (std::size_t j = 0; j < p; ++j) worst = std::max(worst, std::fabs(fit.predictors[j].estimate - oracle[j + 1]));
    ++checked;
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-9 && elapsed < 5.0,
          fmt("%d datasets, max |coef - oracle| = %.3g (limit 1e-9), %.2f s (limit 5 s)", checked, worst, elapsed)};
}

// ---- 2 -------------------------------------------------------------------

Outcome r_squared_identity() {
  Rng rng(2002);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 3 + rng.below(500);
    std::vector<double> x(n);
    std::vector<double> y(n);
    const double slope = rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.normal() * 10 + 50;
      y[i] = slope * x[i] + rng.normal() * 5;
    }
    const auto fit = simple_ols(x, y);
    const double r = testing::pearson(x, y);
    worst = std::max(worst, std::fabs(fit.r_squared - r * r));
  }
  return {worst <= 1e-12, fmt("1000 samples, max |R2 - r^2| = %.3g (limit 1e-12)", worst)};
}

// ---- 3 -------------------------------------------------------------------

struct PairFit {
  SimpleFit fit;
  std::size_t pairs = 0;
};

// Child lifespan on midparent lifespan over the first `pairs` adult children
// of a two-generation population. Infant deaths are drawn independently of
// the parents, so leaving them out does not bias the slope.
PairFit heritability_fit(double slope, std::uint64_t seed, std::size_t pairs) {
  SynthConfig cfg;
  cfg.generations = 2;
  cfg.founders = 60000;
  cfg.parent_child_slope = slope;
  cfg.seed = seed;
  const auto pop = simulate_population(cfg);
  std::vector<double> midparent;
  std::vector<double> child;
  for (const auto& p : pop.people) {
    if (p.father == kNoPerson || p.lifespan < 10.0) continue;
    midparent.push_back((pop.people[static_cast<std::size_t>(p.father)].lifespan +
                         pop.people[static_cast<std::size_t>(p.mother)].lifespan) / 2.0);
    child.push_back(p.lifespan);
    if (child.size() == pairs) break;
  }
  if (child.size() < pairs) throw DataError("population yielded only " + std::to_string(child.size()) + " pairs");
  return {simple_ols(midparent, child), child.size()};
}

Outcome heritability() {
  constexpr std::size_t kPairs = 50000;
  const auto with = heritability_fit(0.2, 1, kPairs);
  const auto without = heritability_fit(0.0, 1, kPairs);
  std::vector<double> p_values;
  double max_abs_slope = 0.0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto f = heritability_fit(0.0, 1000 + seed, kPairs);
    p_values.push_back(f.fit.p_value);
    max_abs_slope = std::max(max_abs_slope, std::fabs(f.fit.beta));
  }
  const double ks = ks_uniform_p(p_values);
  const bool pass = std::fabs(with.fit.beta - 0.2) <= 0.02 && with.fit.p_value < 1e-6 &&
                    std::fabs(without.fit.beta) <= 0.02 && ks > 0.01;
  return {pass, fmt("beta=0.2: slope %.4f p %.2g; beta=0: slope %.4f; KS p over 200 seeds %.3f "
                    "(max |slope| %.4f); %zu pairs each",
                    with.fit.beta, with.fit.p_value, without.fit.beta, ks, max_abs_slope, with.pairs)};
}

// ---- 4 -------------------------------------------------------------------

Outcome spouse_correlation() {
  constexpr std::size_t kCouples = 50000;
  SynthConfig cfg;
  cfg.generations = 2;
  cfg.founders = 115000;
  cfg.spouse_corr = 0.3;
  cfg.seed = 4;
  auto g = build_multigraph(generate_population(cfg));
  clean_inconsistent(g);
  const auto table = feature_matrix(g, FeatureSet::Full);
  auto spec = *dataset_by_name("married");
  spec.gender = Gender::Male;  // one row per couple
  spec.require_feature_present = Feature::AvgSpouseAgeOfDeath;
  const auto husbands = filter_dataset(table, spec);
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& row : husbands.rows()) {
    x.push_back(*row.features.avg_spouse_age_of_death);
    y.push_back(*row.features.age_of_death);
    if (x.size() == kCouples) break;
  }
  if (x.size() < kCouples) return {false, fmt("only %zu couples generated", x.size())};
  const auto fit = simple_ols(x, y);
  return {std::fabs(fit.r_squared - 0.09) <= 0.015,
          fmt("%zu couples, R2 = %.4f (target 0.09 +- 0.015), slope %.4f", x.size(), fit.r_squared, fit.beta)};
}

// ---- 5 -------------------------------------------------------------------

Outcome stepwise() {
  constexpr std::size_t n = 2000;
  constexpr std::size_t kInformative = 3;
  constexpr std::size_t kNoise = 5;
  const double coef[kInformative] = {0.5, -0.4, 0.3};
  int clean_runs = 0;
  int informative_kept = 0;
  std::vector<int> noise_dropped(kNoise, 0);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(derive_seed(5005, seed));
    std::vector<Predictor> preds;
    for (std::size_t j = 0; j < kInformative + kNoise; ++j) {
      Predictor p{(j < kInformative ? "signal" : "noise") + std::to_string(j), std::vector<double>(n)};
      for (auto& v : p.values) v = rng.normal();
      preds.push_back(std::move(p));
    }
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = 1.0 + rng.normal();
      for (std::size_t j = 0; j < kInformative; ++j) y[i] += coef[j] * preds[j].values[i];
    }
    const auto result = backward_stepwise(preds, y, 0.05);
    std::set<std::string> kept;
    for (const auto& c : result.fit.predictors) kept.insert(c.name);
    bool all_signal = true;
    for (std::size_t j = 0; j < kInformative; ++j) all_signal &= kept.count(preds[j].name) == 1;
    bool all_noise_gone = true;
    for (std::size_t j = 0; j < kNoise; ++j) {
      const bool gone = kept.count(preds[kInformative + j].name) == 0;
      noise_dropped[j] += gone;
      all_noise_gone &= gone;
    }
    informative_kept += all_signal;
    clean_runs += all_signal && all_noise_gone;
  }
  const int worst_noise = *std::min_element(noise_dropped.begin(), noise_dropped.end());
  std::string per_noise;
  for (int d : noise_dropped) per_noise += (per_noise.empty() ? "" : ",") + std::to_string(d);
  return {clean_runs >= 95,
          fmt("alpha 0.05: exact model recovered in %d/100 seeds (need 95); informative kept in %d/100; "
              "per-noise elimination counts %s (min %d)",
              clean_runs, informative_kept, per_noise.c_str(), worst_noise)};
}

// ---- 6 -------------------------------------------------------------------

LabeledTable separable(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  LabeledTable t;
  t.feature_names = {"signal", "companion", "noise"};
  for (std::size_t i = 0; i < n; ++i) {
    const bool positive = rng.bernoulli(0.4);
    const double signal = positive ? 10.0 + rng.uniform() * 5 : rng.uniform() * 8;
    const double companion = signal * 0.5 + rng.normal();
    t.add_row(std::vector<double>{signal, companion, rng.normal()}, positive);
  }
  return t;
}

Outcome classifier_sanity() {
  const auto data = separable(5000, 6006);
  double min_sep = 1.0;
  double min_null = 1.0;
  double max_null = 0.0;
  std::string worst;
  for (auto kind : kAllClassifierKinds) {
    ClassifierSpec spec;
    spec.kind = kind;
    spec.seed = 6;
    const double a = cross_validate(spec, data).auc;
    if (a < min_sep) {
      min_sep = a;
      worst = std::string(classifier_name(kind));
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto shuffled = data;
      Rng rng(derive_seed(6060, seed));
      rng.shuffle(shuffled.labels.begin(), shuffled.labels.end());
      spec.seed = seed;
      const double b = cross_validate(spec, shuffled).auc;
      min_null = std::min(min_null, b);
      max_null = std::max(max_null, b);
    }
  }
  return {min_sep >= 0.95 && min_null >= 0.45 && max_null <= 0.55,
          fmt("separable: min AUC %.4f (%s); shuffled: AUC range [%.4f, %.4f] over 6 kinds x 10 seeds", min_sep,
              worst.c_str(), min_null, max_null)};
}

// ---- 7 -------------------------------------------------------------------

Outcome hand_oracles() {
  const std::vector<ScoredLabel> perfect{{0.9, true}, {0.7, true}, {0.3, false}, {0.1, false}};
  const std::vector<ScoredLabel> mixed{{0.9, true}, {0.8, false}, {0.7, true}, {0.6, false}};
  const std::vector<ScoredLabel> ties{{0.5, true}, {0.5, false}, {0.5, false}, {0.5, true}};
  const double e1 = std::fabs(auc(perfect) - 1.0);
  const double e2 = std::fabs(auc(mixed) - 0.75);
  const double e3 = std::fabs(auc(ties) - 0.5);
  const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<std::uint8_t> y{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  const double gain = information_gain(x, y);
  const double worst_auc = std::max({e1, e2, e3});
  return {worst_auc <= 1e-12 && std::fabs(gain - 1.0) <= 1e-9,
          fmt("AUC examples max error %.3g; perfect-split gain %.12f bits", worst_auc, gain)};
}

// ---- 8 -------------------------------------------------------------------

Outcome cleaning_fixture() {
  using testing::person;
  std::vector<ProfileRecord> profiles;
  auto gf = person("GF", Gender::Male, "1790-02-01", "1860-06-01");
  auto gm = person("GM", Gender::Female, "1795-03-12", "1870-01-30");
  auto pa = person("PA", Gender::Male, "1820-07-04", "1890-11-11");
  auto ma = person("MA", Gender::Female, "1824", "1880");
  auto backwards = person("BACKWARDS", Gender::Female, "1850-05-01", "1849-01-01");  // (a)
  auto ancient = person("ANCIENT", Gender::Male, "1700", "1850");                    // (b)
  auto young = person("YOUNG", Gender::Male, "1840-01-01", "1843-06-01");            // (c)
  auto kid = person("KID", Gender::Female, "1843-01-01", "1900-01-01");
  auto s1 = person("S1", Gender::Male, "1822", "1870");
  auto s2 = person("S2", Gender::Female, "1826-08-08", "1911-02-02");
  auto w = person("W", Gender::Female, "1823", "1888");
  auto c = person("C", Gender::Male, "1848", "1920");
  gf.spouse_ids = {"GM"};
  pa.parent_ids = {"GF", "GM"};
  s1.parent_ids = {"GF", "GM"};
  s2.parent_ids = {"GF", "GM"};
  pa.sibling_ids = {"S1", "S2"};
  pa.spouse_ids = {"MA"};
  c.parent_ids = {"PA", "MA"};
  backwards.parent_ids = {"PA"};
  young.child_ids = {"KID"};
  s1.spouse_ids = {"W"};
  ancient.child_ids = {"S1"};
  profiles = {gf, gm, pa, ma, backwards, ancient, young, kid, s1, s2, w, c};

  auto g = build_multigraph(profiles);
  const auto report = clean_inconsistent(g);
  const std::set<std::string> expected{"BACKWARDS", "ANCIENT", "YOUNG"};
  bool dates_ok = true;
  for (const auto& v : g.vertices()) {
    const bool erased = !v.birth && !v.death;
    if (erased != (expected.count(v.id) == 1)) dates_ok = false;
  }
  const bool ids_ok = report.negative_age_ids == std::vector<std::string>{"BACKWARDS"} &&
                      report.over_max_age_ids == std::vector<std::string>{"ANCIENT"} &&
                      report.child_under_five_ids == std::vector<std::string>{"YOUNG"};

  std::multiset<std::tuple<VertexIndex, VertexIndex, LinkType, std::optional<PartialDate>>> links;
  for (const auto& l : g.links()) links.emplace(l.u, l.v, l.type, l.created);
  std::size_t unmatched = 0;
  for (const auto& l : g.links()) unmatched += links.count({l.v, l.u, reciprocal(l.type), l.created}) == 0;

  const bool pass = profiles.size() == 12 && report.negative_age_count == 1 && report.over_max_age_count == 1 &&
                    report.child_under_five_count == 1 && dates_ok && ids_ok && unmatched == 0;
  return {pass, fmt("counts (%zu,%zu,%zu); erased set %s; %zu links, %zu without reciprocal",
                    report.negative_age_count, report.over_max_age_count, report.child_under_five_count,
                    dates_ok && ids_ok ? "exact" : "WRONG", g.link_count(), unmatched)};
}

// ---- 9 -------------------------------------------------------------------

Outcome feature_oracle() {
  std::size_t compared = 0;
  std::string first_bad;
  auto check_graph = [&](Multigraph& g) {
    clean_inconsistent(g);
    const auto table = feature_matrix(g, FeatureSet::Full);
    const testing::NaiveFeatures oracle(g);
    for (const auto& row : table.rows()) {
      const auto mismatch = testing::first_mismatch(row.features, oracle.compute(*g.find(row.id)), 1e-12);
      if (!mismatch.empty() && first_bad.empty()) first_bad = row.id + ":" + mismatch;
      ++compared;
    }
  };
  auto random = testing::random_graph(1000, 9009);
  check_graph(random);
  SynthConfig cfg;
  cfg.founders = 250;
  cfg.generations = 3;
  cfg.missing_rate = 0.1;
  cfg.private_rate = 0.05;
  cfg.seed = 9;
  auto synthetic = build_multigraph(generate_population(cfg));
  check_graph(synthetic);
  return {first_bad.empty() && compared > 1000,
          fmt("%zu vertices (random 1000-vertex graph plus a synthetic family graph) compared on all %zu features%s%s",
              compared, kFeatureCount, first_bad.empty() ? "" : ", first mismatch ", first_bad.c_str())};
}

// ---- 10 ------------------------------------------------------------------

long peak_rss_kb() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

Outcome scale() {
  const fs::path dir = fs::temp_directory_path() / ("lifegraph_scale_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto jsonl = dir / "profiles.jsonl";
  std::size_t generated = 0;
  {
    SynthConfig cfg;
    cfg.founders = 215000;
    cfg.generations = 4;
    cfg.missing_rate = 0.05;
    cfg.private_rate = 0.02;
    cfg.seed = 10;
    const auto profiles = generate_population(cfg);
    generated = profiles.size();
    std::ofstream out(jsonl, std::ios::binary);
    write_json_lines(out, profiles);
  }

  const auto start = Clock::now();
  std::ifstream in(jsonl, std::ios::binary);
  auto parsed = parse_profiles(in, SourceFormat::JsonLines);
  const double t_ingest = seconds_since(start);
  auto g = build_multigraph(parsed.profiles);
  parsed.profiles.clear();
  parsed.profiles.shrink_to_fit();
  clean_inconsistent(g);
  const double t_graph = seconds_since(start);
  const auto table = feature_matrix(g, FeatureSet::Full);
  {
    std::ofstream out(dir / "features.csv", std::ios::binary);
    write_feature_csv(out, table);
  }
  const double total = seconds_since(start);
  const double rss_gb = static_cast<double>(peak_rss_kb()) / (1024.0 * 1024.0);
  fs::remove_all(dir);

  return {generated >= 1000000 && total < 120.0 && rss_gb < 8.0,
          fmt("%zu profiles, %zu vertices, %zu links, %zu feature rows; ingest %.1f s, graph+clean %.1f s, "
              "total %.1f s (limit 120 s); peak RSS %.2f GB (limit 8 GB)",
              generated, g.vertex_count(), g.link_count(), table.size(), t_ingest, t_graph - t_ingest, total,
              rss_gb)};
}

// ---- 11 ------------------------------------------------------------------

int shell(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const std::string cli = LIFEGRAPH_CLI;
  const std::vector<std::pair<std::string, std::string>> stages = {
      {"synth", "synth --founders 600 --generations 4 --seed 5 --missing-rate 0.05 --private-rate 0.02 --out p.jsonl"},
      {"ingest", "ingest p.jsonl --out i.jsonl"},
      {"graph-build", "graph build i.jsonl --out g.bundle"},
      {"graph-build-dir", "graph build i.jsonl --out-dir gdir"},
      {"graph-stats", "graph stats g.bundle --out s.json"},
      {"features", "features extract g.bundle --set full --out f.csv"},
      {"distribution", "stats distribution f.csv --out-dir dist"},
      {"trend", "stats trend f.csv --dataset us-10 --out-dir trend"},
      {"regress-simple", "regress simple f.csv --out r.csv"},
      {"regress-stepwise", "regress stepwise f.csv --set heritage --drop-aliased --out sw.json"},
      {"learn-rank", "learn rank f.csv --dataset all-50 --out rank.csv"},
      {"learn-cv", "learn cv f.csv --dataset all-50 --classifier random-forest --seed 7 --out cv.json"},
      {"learn-train", "learn train f.csv --dataset all-50 --classifier c45 --out m.json"},
      {"learn-predict", "learn predict f.csv --dataset all-50 --model m.json --out pred.csv"},
  };
  const fs::path root = fs::temp_directory_path() / ("lifegraph_determinism_" + std::to_string(::getpid()));
  std::size_t outputs = 0;
  std::string problem;
  for (const char* run : {"run1", "run2"}) {
    fs::create_directories(root / run);
    for (const auto& [name, args] : stages) {
      const std::string cmd = "cd '" + (root / run).string() + "' && " + cli + " " + args + " --manifest " + name +
                              ".manifest.json 2>/dev/null";
      if (shell(cmd) != 0 && problem.empty()) problem = std::string(run) + " " + name + " failed";
    }
  }
  for (const auto& [name, args] : stages) {
    const auto a = slurp(root / "run1" / (name + ".manifest.json"));
    const auto b = slurp(root / "run2" / (name + ".manifest.json"));
    if ((a.empty() || a != b) && problem.empty()) problem = name + " manifests differ";
    if (!a.empty()) {
      const auto j = nlohmann::json::parse(a);
      outputs += j["outputs"].size();
      for (const auto& o : j["outputs"]) {
        const auto path = root / "run2" / o["path"].get<std::string>();
        if (sha256_file(path) != o["sha256"] && problem.empty()) problem = name + " checksum does not match file";
      }
    }
  }
  // Thread count must not change any output either.
  const std::string threaded = "cd '" + (root / "run1").string() + "' && " + cli +
                               " learn cv f.csv --dataset all-50 --classifier bagging --seed 3 --threads 1 --out t1.json"
                               " 2>/dev/null && " +
                               cli + " learn cv f.csv --dataset all-50 --classifier bagging --seed 3 --out t0.json 2>/dev/null";
  if (shell(threaded) != 0 || slurp(root / "run1" / "t1.json") != slurp(root / "run1" / "t0.json")) {
    if (problem.empty()) problem = "learn cv output depends on the thread count";
  }
  fs::remove_all(root);
  return {problem.empty(), fmt("%zu stages run twice, %zu output checksums compared%s%s", stages.size(), outputs,
                               problem.empty() ? "" : ": ", problem.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"OLS oracle equivalence", ols_oracle},
      {"simple regression R2 identity", r_squared_identity},
      {"synthetic heritability recovery", heritability},
      {"spouse correlation recovery", spouse_correlation},
      {"stepwise correctness", stepwise},
      {"classifier sanity", classifier_sanity},
      {"AUC and information gain hand oracles", hand_oracles},
      {"graph cleaning fixture", cleaning_fixture},
      {"feature oracle", feature_oracle},
      {"scale and performance", scale},
      {"determinism", determinism},
  };
  // Criteria that cannot hold as stated. They are still run and reported as
  // FAIL, but do not affect the exit status. See README.md.
  const std::set<std::size_t> unattainable = {5};

  std::set<std::size_t> selected;
  for (int i = 1; i < argc; ++i) selected.insert(static_cast<std::size_t>(std::stoul(argv[i])));

  int failures = 0;
  int expected_failures = 0;
  int passes = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected.empty() && selected.count(i + 1) == 0) continue;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const bool known = unattainable.count(i + 1) == 1;
    if (o.pass) {
      ++passes;
    } else if (known) {
      ++expected_failures;
    } else {
      ++failures;
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << ". " << criteria[i].first << ": " << o.detail
              << fmt(" [%.1f s]", seconds_since(start)) << (!o.pass && known ? " (known unattainable)" : "")
              << std::endl;
  }
  std::cout << passes << " passed, " << failures + expected_failures << " failed";
  if (expected_failures > 0) std::cout << " (" << expected_failures << " known unattainable)";
  std::cout << std::endl;
  return failures == 0 ? 0 : 1;
}
