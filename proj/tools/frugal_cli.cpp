// Copyright 2026 The frugalml Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: fit, predict and replay.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "frugal/controller.hpp"
#include "frugal/error.hpp"
#include "frugal/proposers.hpp"
#include "frugal/surrogate.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace frugal;

namespace {

struct FitArgs {
  std::string train;
  std::string test;
  std::string task;
  std::string label;
  std::string metric;
  double budget_secs = 60;
  std::vector<std::string> learners;
  std::uint64_t seed = 0;
  std::string log;
  std::string resample = "auto";
  long min_sample = kInitialSampleSize;
  double sample_factor = kDefaultSampleFactor;
  double gap_factor = kDefaultGapFactor;
  std::string config;
  bool surrogate = false;
  std::string policy = "frugal";
  long max_trials = 0;
  std::string summary;
};

struct PredictArgs {
  std::string summary;
  std::string train;
  std::string data;
  std::string out;
};

struct ReplayArgs {
  std::vector<std::string> policies{"frugal", "roundrobin", "fulldata", "cv"};
  double budget = 1e4;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string config;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_config(const std::string& path) {
  if (path.empty()) return json::object();
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw Error(path + ": invalid JSON configuration: " + e.what());
  }
}

SurrogateLandscape landscape_from_config(const json& config) {
  if (!config.contains("landscape")) return SurrogateLandscape::default_suite();
  try {
    return landscape_from_json(config.at("landscape").dump());
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid landscape configuration: ") + e.what());
  }
}

std::map<std::string, std::map<std::string, DimOverride>> space_overrides(const json& config) {
  std::map<std::string, std::map<std::string, DimOverride>> out;
  if (!config.contains("space")) return out;
  try {
    for (const auto& [learner, dims] : config.at("space").items()) {
      for (const auto& [dim, spec] : dims.items()) {
        DimOverride o;
        o.low = spec.at("low").get<double>();
        o.high = spec.at("high").get<double>();
        o.scale = parse_scale(spec.value("scale", std::string("linear")));
        o.init = spec.value("init", o.low);
        out[learner][dim] = o;
      }
    }
  } catch (const json::exception& e) {
    throw Error(std::string("invalid space override: ") + e.what());
  }
  return out;
}

// Column count of the header line; the default label is the last column.
std::size_t header_columns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(path + ": cannot open file");
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  }
  throw Error(path + ": empty file");
}

ColumnSelector label_selector(const std::string& label, const std::string& path) {
  if (label.empty()) return header_columns(path) - 1;
  return label;
}

// "classification" picks binary or multiclass from the label column.
Dataset load_for_task(const std::string& path, const std::string& task,
                      const ColumnSelector& label) {
  if (task != "classification") return load_csv(path, parse_task(task), label);
  Dataset d = load_csv(path, Task::kMulticlass, label);
  if (d.n_classes <= 2) {
    d.task = Task::kBinary;
    d.n_classes = 2;
    if (d.class_names.size() == 1) d.class_names.push_back("<absent>");
  }
  return d;
}

std::string describe(const LearningConfiguration& c, const SearchSpace* space) {
  std::string out = c.learner + " {";
  bool first = true;
  for (const auto& [k, v] : c.h) {
    out += (first ? "" : ", ") + k + "=" + (space && space->has(k) ? space->format_value(k, v)
                                                                    : std::to_string(v));
    first = false;
  }
  return out + "} s=" + std::to_string(c.s) + " " + std::string(to_string(c.r.kind));
}

json config_json(const LearningConfiguration& c) {
  json h = json::object();
  for (const auto& [k, v] : c.h) h[k] = v;
  return {{"learner", c.learner},
          {"config", h},
          {"sample_size", c.s},
          {"resample", std::string(to_string(c.r.kind))}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot write file");
  out << text;
}

int run_fit_surrogate(const FitArgs& a, const json& config) {
  const auto landscape = landscape_from_config(config);
  SearchOptions base;
  base.min_sample = a.min_sample;
  base.sample_factor = a.sample_factor;
  base.gap_factor = a.gap_factor;
  if (a.max_trials > 0) base.max_trials = a.max_trials;
  Policy policy = parse_policy(a.policy);
  if (a.resample == "cv") policy = Policy::kCv;
  const auto r = surrogate_search(policy, landscape, a.budget_secs, a.seed, base);
  if (!a.log.empty()) write_log(r.trials, a.log);
  const auto& best = r.trials.at(r.best_index.value_or(0));
  std::printf("surrogate search: %zu trials, %.3f synthetic s, stopped by %s\n", r.trials.size(),
              r.elapsed, r.stop_reason.c_str());
  std::printf("best: %s\n", describe(best.config, nullptr).c_str());
  std::printf("best validation error: %.6g\n", best.validation_error);
  if (!a.summary.empty()) {
    json s = {{"mode", "surrogate"}, {"policy", a.policy}, {"seed", a.seed}};
    s["best"] = config_json(best.config);
    s["best_validation_error"] = best.validation_error;
    s["trials"] = r.trials.size();
    s["stop_reason"] = r.stop_reason;
    s["elapsed"] = r.elapsed;
    write_text(a.summary, s.dump(2) + "\n");
  }
  return 0;
}

int run_fit(const FitArgs& a) {
  const json config = read_config(a.config);
  if (!(a.budget_secs > 0)) throw Error("--budget-secs must be positive");
  if (a.surrogate) return run_fit_surrogate(a, config);
  if (a.train.empty()) throw Error("fit needs --train (or --surrogate)");
  if (a.task.empty()) throw Error("fit needs --task");

  const auto label = label_selector(a.label, a.train);
  const Dataset train = load_for_task(a.train, a.task, label);
  const auto registry = LearnerRegistry::with_builtins();

  FitOptions o;
  o.search.budget_secs = a.budget_secs;
  o.search.seed = a.seed;
  o.search.min_sample = a.min_sample;
  o.search.sample_factor = a.sample_factor;
  o.search.gap_factor = a.gap_factor;
  if (a.max_trials > 0) o.search.max_trials = a.max_trials;
  o.learners = a.learners;
  for (const auto& name : o.learners) {
    if (!registry.contains(name)) throw Error("unknown learner '" + name + "'");
  }
  const MetricKind metric = a.metric.empty() ? default_metric(train.task) : parse_metric(a.metric);
  o.metric = Metric(metric);
  if (a.resample == "cv") {
    o.resample = ResamplingPlan::cv();
  } else if (a.resample == "holdout") {
    o.resample = ResamplingPlan::holdout();
  } else if (a.resample != "auto") {
    throw Error("--resample must be auto, cv or holdout");
  }
  o.space_overrides = space_overrides(config);

  auto result = fit(train, registry, o);
  std::optional<double> test_error;
  if (!a.test.empty()) {
    const Dataset test = load_for_task(a.test, a.task, label);
    if (test.n_features() != train.n_features()) {
      throw Error(a.test + ": has " + std::to_string(test.n_features()) +
                  " feature columns, training data has " + std::to_string(train.n_features()));
    }
    if (is_classification(train.task) && test.class_names != train.class_names) {
      throw Error(a.test + ": class labels differ from the training file");
    }
    test_error = error(metric, predict(result, test.features), test.labels);
  }
  if (!a.log.empty()) write_log(result.trials, a.log);

  const auto space = registry.get(result.best_config.learner).space(train.n_instances());
  std::printf("task %s, %ld rows, %ld features, metric %s\n",
              std::string(to_string(train.task)).c_str(), static_cast<long>(train.n_instances()),
              static_cast<long>(train.n_features()), std::string(to_string(metric)).c_str());
  std::printf("search: %zu trials in %.2f s, stopped by %s\n", result.trials.size(),
              result.elapsed, result.stop_reason.c_str());
  for (const auto& w : result.warnings) std::printf("warning: %s\n", w.c_str());
  std::printf("best: %s\n", describe(result.best_config, &space).c_str());
  std::printf("best validation error: %.6g\n", result.best_validation_error);
  if (test_error) std::printf("test error: %.6g\n", *test_error);

  if (!a.summary.empty()) {
    json s = {{"mode", "data"}, {"task", std::string(to_string(train.task))}};
    if (const auto* name = std::get_if<std::string>(&label)) {
      s["label"] = *name;
    } else {
      s["label"] = std::get<std::size_t>(label);
    }
    s["metric"] = std::string(to_string(metric));
    s["seed"] = a.seed;
    s["n_features"] = train.n_features();
    s["class_names"] = train.class_names;
    s["best"] = config_json(result.best_config);
    s["best_validation_error"] = result.best_validation_error;
    if (test_error) s["test_error"] = *test_error;
    s["trials"] = result.trials.size();
    s["stop_reason"] = result.stop_reason;
    s["elapsed"] = result.elapsed;
    s["warnings"] = result.warnings;
    write_text(a.summary, s.dump(2) + "\n");
  }
  return 0;
}

int run_predict(const PredictArgs& a) {
  json s;
  try {
    s = json::parse(read_text(a.summary));
    if (s.value("mode", "") != "data") throw Error(a.summary + ": not a data-mode fit summary");
    const Task task = parse_task(s.at("task").get<std::string>());
    const ColumnSelector label = s.at("label").is_string()
                                     ? ColumnSelector(s.at("label").get<std::string>())
                                     : ColumnSelector(s.at("label").get<std::size_t>());
    const Dataset train = load_csv(a.train, task, label);
    if (is_classification(task) &&
        train.class_names != s.at("class_names").get<std::vector<std::string>>()) {
      throw Error(a.train + ": class labels differ from the fitted summary");
    }
    const auto& best = s.at("best");
    Assignment h;
    for (const auto& [k, v] : best.at("config").items()) h[k] = v.get<double>();
    const auto registry = LearnerRegistry::with_builtins();
    const auto model = registry.get(best.at("learner").get<std::string>())
                           .train(h, train, s.at("seed").get<std::uint64_t>());

    // Prediction input: same columns as training, label column optional.
    const std::string text = read_text(a.data);
    Dataset input;
    const auto cols = header_columns(a.data);
    if (static_cast<Index>(cols) == train.n_features()) {
      // No label column: parse with a synthetic zero label appended.
      std::istringstream lines(text);
      std::string line, with_label;
      bool header = true;
      while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        with_label += line + (header ? ",__label__\n" : ",0\n");
        header = false;
      }
      input = parse_csv(with_label, Task::kMulticlass, std::string("__label__"), a.data);
    } else {
      // The label column is read as class text whatever it holds, then dropped.
      input = parse_csv(text, Task::kMulticlass, label, a.data);
    }
    const Eigen::MatrixXd p = model->predict(input.features);

    std::ostringstream out;
    out.precision(17);
    if (is_classification(task)) {
      for (std::size_t c = 0; c < train.class_names.size(); ++c) {
        out << "p_" << train.class_names[c] << ",";
      }
      out << "prediction\n";
      for (Index r = 0; r < p.rows(); ++r) {
        Index arg = 0;
        for (Index c = 0; c < p.cols(); ++c) {
          out << p(r, c) << ",";
          if (p(r, c) > p(r, arg)) arg = c;
        }
        out << train.class_names[static_cast<std::size_t>(arg)] << "\n";
      }
    } else {
      out << "prediction\n";
      for (Index r = 0; r < p.rows(); ++r) out << p(r, 0) << "\n";
    }
    write_text(a.out, out.str());
    std::printf("wrote %ld predictions to %s\n", static_cast<long>(p.rows()), a.out.c_str());
  } catch (const json::exception& e) {
    throw Error(a.summary + ": malformed summary: " + e.what());
  }
  return 0;
}

int run_replay(const ReplayArgs& a) {
  if (!(a.budget > 0)) throw Error("--budget must be positive");
  const auto landscape = landscape_from_config(read_config(a.config));
  std::vector<Policy> policies;
  for (const auto& name : a.policies) policies.push_back(parse_policy(name));
  fs::create_directories(a.out_dir);
  for (std::size_t i = 0; i < policies.size(); ++i) {
    const auto curve = replay(policies[i], landscape, a.budget, a.seed);
    std::ostringstream out;
    out.precision(17);
    out << "elapsed,best_error\n";
    for (const auto& [t, e] : curve) out << t << "," << e << "\n";
    const auto path = fs::path(a.out_dir) / ("curve_" + a.policies[i] + ".csv");
    write_text(path.string(), out.str());
    std::printf("%s: %zu trials, final best error %.6g -> %s\n", a.policies[i].c_str(),
                curve.size(), curve.empty() ? kInfinity : curve.back().second,
                path.string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frugal: cost-frugal AutoML search"};
  app.require_subcommand(1);

  FitArgs fa;
  auto* fit_cmd = app.add_subcommand("fit", "search for a learner and hyperparameters");
  fit_cmd->add_option("--train", fa.train, "training CSV with a header row");
  fit_cmd->add_option("--test", fa.test, "optional test CSV scored with the final model");
  fit_cmd->add_option("--task", fa.task, "binary, multiclass, classification or regression")
      ->check(CLI::IsMember({"binary", "multiclass", "classification", "regression"}));
  fit_cmd->add_option("--label", fa.label, "label column name (default: last column)");
  fit_cmd->add_option("--metric", fa.metric,
                      "one_minus_auc, log_loss, one_minus_r2, mse or qerror_p95");
  fit_cmd->add_option("--budget-secs", fa.budget_secs, "time budget in seconds")
      ->capture_default_str();
  fit_cmd->add_option("--learners", fa.learners, "comma-separated learner list")->delimiter(',');
  fit_cmd->add_option("--seed", fa.seed, "random seed")->capture_default_str();
  fit_cmd->add_option("--log", fa.log, "write the trial log (one JSON object per line)");
  fit_cmd->add_option("--resample", fa.resample, "auto, cv or holdout")
      ->check(CLI::IsMember({"auto", "cv", "holdout"}))
      ->capture_default_str();
  fit_cmd->add_option("--min-sample", fa.min_sample, "initial sample size")->capture_default_str();
  fit_cmd->add_option("--sample-factor", fa.sample_factor, "sample size growth factor")
      ->capture_default_str();
  fit_cmd->add_option("--gap-factor", fa.gap_factor, "multiplier on the error-gap cost")
      ->capture_default_str();
  fit_cmd->add_option("--config", fa.config, "JSON file with space overrides or a landscape");
  fit_cmd->add_flag("--surrogate", fa.surrogate, "search a synthetic landscape instead of data");
  fit_cmd->add_option("--policy", fa.policy, "surrogate policy (frugal, roundrobin, fulldata, cv, random)")
      ->capture_default_str();
  fit_cmd->add_option("--max-trials", fa.max_trials, "stop after this many trials (0: no limit)");
  fit_cmd->add_option("--summary", fa.summary, "write a JSON summary of the best configuration");

  PredictArgs pa;
  auto* predict_cmd = app.add_subcommand("predict", "retrain the best configuration and predict");
  predict_cmd->add_option("--summary", pa.summary, "summary written by fit")->required();
  predict_cmd->add_option("--train", pa.train, "the training CSV used by fit")->required();
  predict_cmd->add_option("--data", pa.data, "CSV of rows to predict")->required();
  predict_cmd->add_option("--out", pa.out, "output CSV")->required();

  ReplayArgs ra;
  auto* replay_cmd = app.add_subcommand("replay", "compare search policies on a surrogate landscape");
  replay_cmd->add_option("--policies", ra.policies, "comma-separated policies")
      ->delimiter(',')
      ->capture_default_str();
  replay_cmd->add_option("--budget", ra.budget, "synthetic budget in seconds")->capture_default_str();
  replay_cmd->add_option("--seed", ra.seed, "random seed")->capture_default_str();
  replay_cmd->add_option("--out-dir", ra.out_dir, "directory for curve_<policy>.csv files")
      ->capture_default_str();
  replay_cmd->add_option("--config", ra.config, "JSON file with a landscape section");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit_cmd->parsed()) return run_fit(fa);
    if (predict_cmd->parsed()) return run_predict(pa);
    if (replay_cmd->parsed()) return run_replay(ra);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
