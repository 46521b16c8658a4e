//
// Copyright 2026 The pmknn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmknn/pmknn.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

int ExitFor(pmknn_status s) {
  if (s == PMKNN_OK) return kExitOk;
  return s == PMKNN_ERR_INVALID_ARGUMENT ? kExitUsage : kExitRuntime;
}

int Report(pmknn_status s, const std::string& context) {
  std::fprintf(stderr, "pmknn: %s: %s (%s)\n", context.c_str(),
               pmknn_last_error(), pmknn_status_name(s));
  return ExitFor(s);
}

int Usage(const std::string& message) {
  std::fprintf(stderr, "pmknn: %s\n", message.c_str());
  return kExitUsage;
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Dataset =
    std::unique_ptr<pmknn_dataset, Deleter<pmknn_dataset, pmknn_dataset_free>>;
using Index =
    std::unique_ptr<pmknn_index, Deleter<pmknn_index, pmknn_index_free>>;
using Response = std::unique_ptr<pmknn_response,
                                 Deleter<pmknn_response, pmknn_response_free>>;
using Trajectories =
    std::unique_ptr<pmknn_trajectories,
                    Deleter<pmknn_trajectories, pmknn_trajectories_free>>;
using Config =
    std::unique_ptr<pmknn_config, Deleter<pmknn_config, pmknn_config_free>>;

bool ParseRect(const std::string& text, pmknn_rect* out) {
  std::istringstream in(text);
  double v[4];
  char comma;
  for (int i = 0; i < 4; ++i) {
    if (!(in >> v[i])) return false;
    if (i < 3 && !(in >> comma && comma == ',')) return false;
  }
  in >> std::ws;
  if (!in.eof()) return false;
  *out = {v[0], v[1], v[2], v[3]};
  return true;
}

struct GenDataArgs {
  std::string kind = "uniform";
  int64_t n = 20000;
  uint64_t seed = 1;
  double zipf_exponent = 1.0;
  std::string path;
  bool rescale = false;
  std::string out;
};

int RunGenData(const GenDataArgs& a) {
  pmknn_dataset* raw = nullptr;
  pmknn_status s;
  if (a.kind == "csv") {
    if (a.path.empty()) return Usage("gen-data: --kind csv requires --path");
    s = pmknn_dataset_load_csv(a.path.c_str(), a.rescale ? 1 : 0, &raw);
  } else {
    s = pmknn_dataset_generate(a.kind.c_str(), a.n, a.seed, a.zipf_exponent,
                               &raw);
  }
  Dataset data(raw);
  if (s != PMKNN_OK) return Report(s, "gen-data");
  s = pmknn_dataset_save_csv(data.get(), a.out.c_str());
  if (s != PMKNN_OK) return Report(s, "gen-data");
  std::printf("wrote %zu objects to %s\n", pmknn_dataset_size(data.get()),
              a.out.c_str());
  return kExitOk;
}

struct GenTrajArgs {
  int count = 20;
  double length = 5000.0;
  double segment_min = 1.0;
  double segment_max = 10.0;
  uint64_t seed = 1;
  std::string out;
};

int RunGenTraj(const GenTrajArgs& a) {
  pmknn_trajectories* raw = nullptr;
  pmknn_status s = pmknn_trajectories_generate(
      a.count, a.length, a.segment_min, a.segment_max, a.seed, &raw);
  Trajectories t(raw);
  if (s != PMKNN_OK) return Report(s, "gen-traj");
  s = pmknn_trajectories_save_csv(t.get(), a.out.c_str());
  if (s != PMKNN_OK) return Report(s, "gen-traj");
  std::printf("wrote %zu trajectories to %s\n", pmknn_trajectories_count(t.get()),
              a.out.c_str());
  return kExitOk;
}

struct QueryArgs {
  std::string data;
  bool rescale = false;
  std::string rect;
  double cl = 1.0;
  int k = 1;
  std::string dump;
  std::string baseline;
};

void PrintCost(const char* label, const pmknn_response* r) {
  const pmknn_query_stats st = pmknn_response_stats(r);
  std::printf("%s: objects=%zu page_ios=%llu elapsed_s=%.6f\n", label,
              pmknn_response_size(r),
              static_cast<unsigned long long>(st.pages_read),
              st.elapsed_seconds);
}

int RunQuery(const QueryArgs& a) {
  pmknn_rect rect;
  if (!ParseRect(a.rect, &rect)) {
    return Usage("query: --rect expects x0,y0,x1,y1");
  }
  std::optional<int> grid;
  if (!a.baseline.empty()) {
    const std::string prefix = "grid=";
    char* end = nullptr;
    const std::string num = a.baseline.rfind(prefix, 0) == 0
                                ? a.baseline.substr(prefix.size())
                                : a.baseline;
    const long g = std::strtol(num.c_str(), &end, 10);
    if (num.empty() || *end != '\0' || g < 1) {
      return Usage("query: --baseline expects grid=N with N >= 1");
    }
    grid = static_cast<int>(g);
  }

  pmknn_dataset* raw_data = nullptr;
  pmknn_status s =
      pmknn_dataset_load_csv(a.data.c_str(), a.rescale ? 1 : 0, &raw_data);
  Dataset data(raw_data);
  if (s != PMKNN_OK) return Report(s, "query");
  pmknn_index* raw_index = nullptr;
  s = pmknn_index_build(data.get(), 0, &raw_index);
  Index index(raw_index);
  if (s != PMKNN_OK) return Report(s, "query");

  pmknn_response* raw_resp = nullptr;
  s = pmknn_query(index.get(), rect, a.cl, a.k, &raw_resp);
  Response resp(raw_resp);
  if (s != PMKNN_OK) return Report(s, "query");

  const pmknn_circle c = pmknn_response_known_region(resp.get());
  const pmknn_query_stats st = pmknn_response_stats(resp.get());
  std::printf("objects: %zu\n", pmknn_response_size(resp.get()));
  std::printf("known_region: center=(%.17g, %.17g) radius=%.17g\n",
              c.center_x, c.center_y, c.radius);
  std::printf("page_ios: %llu\n",
              static_cast<unsigned long long>(st.pages_read));
  std::printf("elapsed_s: %.6f\n", st.elapsed_seconds);
  if (st.exhausted) std::printf("note: every object was retrieved\n");

  if (!a.dump.empty()) {
    s = pmknn_response_save_csv(resp.get(), a.dump.c_str());
    if (s != PMKNN_OK) return Report(s, "query --dump");
  }
  if (grid) {
    pmknn_response* raw_base = nullptr;
    s = pmknn_query_baseline(index.get(), rect, a.k, *grid, &raw_base);
    Response base(raw_base);
    if (s != PMKNN_OK) return Report(s, "query --baseline");
    PrintCost("clappinq", resp.get());
    const std::string label = "baseline(grid=" + std::to_string(*grid) + ")";
    PrintCost(label.c_str(), base.get());
    const pmknn_query_stats bs = pmknn_response_stats(base.get());
    if (st.pages_read > 0) {
      std::printf("io_ratio: %.3f\n", static_cast<double>(bs.pages_read) /
                                          static_cast<double>(st.pages_read));
    }
  }
  return kExitOk;
}

struct ExperimentArgs {
  std::string config;
  std::string out;
  std::string attack;
  std::optional<int> repeats;
  std::optional<int> trajectories;
  std::optional<int> threads;
  std::optional<uint64_t> seed;
  std::vector<std::string> set;
  bool quiet = false;
};

void PrintProgress(size_t done, size_t total, void*) {
  std::fprintf(stderr, "\r[%zu/%zu] cells", done, total);
  if (done == total) std::fprintf(stderr, "\n");
}

int RunExperiment(const ExperimentArgs& a) {
  pmknn_config* raw = nullptr;
  pmknn_status s = pmknn_config_create(&raw);
  Config cfg(raw);
  if (s != PMKNN_OK) return Report(s, "experiment");
  if (!a.config.empty()) {
    s = pmknn_config_load_file(cfg.get(), a.config.c_str());
    if (s != PMKNN_OK) return Report(s, "experiment");
  }
  auto set = [&](const char* key, const std::string& value,
                 const char* origin) {
    pmknn_config_set(cfg.get(), key, value.c_str(), origin);
  };
  for (const std::string& kv : a.set) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      return Usage("experiment: --set expects key=value, got '" + kv + "'");
    }
    set(kv.substr(0, eq).c_str(), kv.substr(eq + 1), "--set");
  }
  if (!a.attack.empty()) set("sweep.attack", a.attack, "--attack");
  if (a.repeats) set("run.repeats", std::to_string(*a.repeats), "--repeats");
  if (a.trajectories) {
    set("traj.count", std::to_string(*a.trajectories), "--trajectories");
  }
  if (a.threads) set("run.threads", std::to_string(*a.threads), "--threads");
  if (a.seed) set("run.seed", std::to_string(*a.seed), "--seed");
  if (!a.out.empty()) set("output.results", a.out, "--out");

  s = pmknn_config_validate(cfg.get());
  if (s != PMKNN_OK) {
    std::fprintf(stderr, "pmknn: experiment: invalid configuration:\n");
    std::istringstream lines(pmknn_last_error());
    for (std::string line; std::getline(lines, line);) {
      std::fprintf(stderr, "  %s\n", line.c_str());
    }
    return ExitFor(s);
  }
  s = pmknn_experiment_run(cfg.get(), nullptr,
                           a.quiet ? nullptr : PrintProgress, nullptr);
  if (s != PMKNN_OK) return Report(s, "experiment");
  return kExitOk;
}

std::string ConfigKeysHelp() {
  std::string text = "Configuration keys:\n";
  for (size_t i = 0; const char* key = pmknn_config_key(i); ++i) {
    text += "  ";
    text += key;
    text += "\n";
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private moving k-nearest-neighbor queries"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pmknn_version());

  GenDataArgs gd;
  CLI::App* gen_data = app.add_subcommand("gen-data", "Write a points CSV");
  gen_data->add_option("--kind", gd.kind, "uniform, zipf or csv")
      ->check(CLI::IsMember({"uniform", "zipf", "csv"}))
      ->capture_default_str();
  gen_data->add_option("--n", gd.n, "Number of objects")->capture_default_str();
  gen_data->add_option("--seed", gd.seed, "Random seed")->capture_default_str();
  gen_data->add_option("--zipf-exponent", gd.zipf_exponent,
                       "Cell popularity exponent (zipf)")
      ->capture_default_str();
  gen_data->add_option("--path", gd.path, "Input CSV (csv kind)");
  gen_data->add_flag("--rescale", gd.rescale,
                     "Map csv input onto the data space");
  gen_data->add_option("--out", gd.out, "Output CSV")->required();

  GenTrajArgs gt;
  CLI::App* gen_traj =
      app.add_subcommand("gen-traj", "Write a trajectory CSV");
  gen_traj->add_option("--count", gt.count, "Number of trajectories")
      ->capture_default_str();
  gen_traj->add_option("--length", gt.length, "Arc length per trajectory")
      ->capture_default_str();
  gen_traj->add_option("--segment-min", gt.segment_min, "Shortest segment")
      ->capture_default_str();
  gen_traj->add_option("--segment-max", gt.segment_max, "Longest segment")
      ->capture_default_str();
  gen_traj->add_option("--seed", gt.seed, "Random seed")->capture_default_str();
  gen_traj->add_option("--out", gt.out, "Output CSV")->required();

  QueryArgs q;
  CLI::App* query =
      app.add_subcommand("query", "Answer one obfuscation rectangle");
  query->add_option("--data", q.data, "Points CSV")->required();
  query->add_flag("--rescale", q.rescale, "Map the input onto the data space");
  query->add_option("--rect", q.rect, "x0,y0,x1,y1")->required();
  query->add_option("--cl", q.cl, "Confidence level in (0, 1]")
      ->capture_default_str();
  query->add_option("--k", q.k, "Number of neighbors")->capture_default_str();
  query->add_option("--dump", q.dump, "Write the candidate set as CSV");
  query->add_option("--baseline", q.baseline,
                    "Also run the per-point baseline, e.g. grid=20");

  ExperimentArgs e;
  CLI::App* experiment =
      app.add_subcommand("experiment", "Run a parameter sweep");
  experiment->add_option("--config", e.config, "Configuration file");
  experiment->add_option("--out", e.out, "Results CSV");
  experiment->add_option("--attack", e.attack,
                         "Attack modes: overlap, mmb, combined (comma list)");
  experiment->add_option("--repeats", e.repeats, "Repeats per trajectory");
  experiment->add_option("--trajectories", e.trajectories,
                         "Number of generated trajectories");
  experiment->add_option("--threads", e.threads, "Worker threads");
  experiment->add_option("--seed", e.seed, "Run seed");
  experiment->add_option("--set", e.set, "Override any key: key=value");
  experiment->add_flag("--quiet", e.quiet, "No progress output");
  experiment->footer(ConfigKeysHelp());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*gen_data) return RunGenData(gd);
  if (*gen_traj) return RunGenTraj(gt);
  if (*query) return RunQuery(q);
  if (*experiment) return RunExperiment(e);
  return kExitUsage;
}
