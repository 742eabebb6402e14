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

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "frugal/controller.hpp"
#include "frugal/error.hpp"

namespace frugal {
namespace {

using json = nlohmann::ordered_json;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& j) {
  return j.is_null() ? kInfinity : j.get<double>();
}

}  // namespace

std::string to_json_line(const TrialRecord& r) {
  json config = json::object();
  for (const auto& [name, value] : r.config.h) config[name] = value;
  json j;
  j["iter"] = r.index;
  j["time"] = r.elapsed;
  j["learner"] = r.config.learner;
  j["config"] = std::move(config);
  j["sample_size"] = r.config.s;
  j["resample"] = std::string(to_string(r.config.r.kind));
  j["error"] = r.validation_error;
  j["cost"] = r.cost;
  j["improved"] = r.improved;
  if (r.test_error) j["test_error"] = *r.test_error;
  if (r.eci) {
    j["eci"] = {{"eci1", number_or_null(r.eci->eci1)},
                {"eci2", number_or_null(r.eci->eci2)},
                {"eci", number_or_null(r.eci->eci)}};
  }
  return j.dump();
}

TrialRecord parse_json_line(const std::string& line) {
  const json j = json::parse(line);
  TrialRecord r;
  r.index = j.at("iter").get<long>();
  r.elapsed = j.at("time").get<double>();
  r.config.learner = j.at("learner").get<std::string>();
  for (const auto& [name, value] : j.at("config").items()) r.config.h[name] = value.get<double>();
  r.config.s = j.at("sample_size").get<long>();
  const auto resample = j.at("resample").get<std::string>();
  if (resample == "cv") {
    r.config.r = ResamplingPlan::cv();
  } else if (resample == "holdout") {
    r.config.r = ResamplingPlan::holdout();
  } else {
    throw Error("unknown resample '" + resample + "'");
  }
  r.validation_error = j.at("error").get<double>();
  r.cost = j.at("cost").get<double>();
  r.improved = j.at("improved").get<bool>();
  if (j.contains("test_error")) r.test_error = j.at("test_error").get<double>();
  if (j.contains("eci")) {
    const auto& e = j.at("eci");
    r.eci = EciEstimate{};
    r.eci->eci1 = number_or_inf(e.at("eci1"));
    r.eci->eci2 = number_or_inf(e.at("eci2"));
    r.eci->eci = number_or_inf(e.at("eci"));
  }
  return r;
}

void write_log(const std::vector<TrialRecord>& trials, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  for (const auto& t : trials) out << to_json_line(t) << '\n';
  if (!out) throw Error(path.string() + ": write failed");
}

std::vector<TrialRecord> read_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path.string() + ": cannot open file");
  std::vector<TrialRecord> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(parse_json_line(line));
    } catch (const std::exception& e) {
      throw Error(path.string() + ": malformed trial record at line " + std::to_string(line_no) +
                  ": " + e.what());
    }
  }
  return out;
}

}  // namespace frugal
