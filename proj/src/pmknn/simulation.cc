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

#include "pmknn/simulation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "pmknn/csv_io.h"
#include "pmknn/errors.h"
#include "pmknn/random.h"
#include "pmknn/server.h"

namespace pmknn {
namespace {

constexpr double kAuditSlack = 1e-9;
constexpr uint64_t kClientStream = 1;
constexpr uint64_t kAreaStream = 2;
constexpr uint64_t kAuditStream = 3;

absl::Status AtPosition(const absl::Status& s, Point q) {
  if (s.ok()) return s;
  return absl::Status(s.code(), absl::StrCat(s.message(), " (at ", q.x, ", ",
                                             q.y, ")"));
}

// First point of segment a->b outside `rect`, walking from a (inside).
Point BoundaryCrossing(const Rect& rect, Point a, Point b) {
  double t_exit = 1.0;
  auto clip = [&](double p0, double d, double lo, double hi) {
    if (d > 0.0) t_exit = std::min(t_exit, (hi - p0) / d);
    if (d < 0.0) t_exit = std::min(t_exit, (lo - p0) / d);
  };
  clip(a.x, b.x - a.x, rect.min_x, rect.max_x);
  clip(a.y, b.y - a.y, rect.min_y, rect.max_y);
  t_exit = std::clamp(t_exit, 0.0, 1.0);
  Point p{a.x + t_exit * (b.x - a.x), a.y + t_exit * (b.y - a.y)};
  // Keep the crossing on the closed rectangle despite rounding.
  p.x = std::clamp(p.x, rect.min_x, rect.max_x);
  p.y = std::clamp(p.y, rect.min_y, rect.max_y);
  return p;
}

struct Audit {
  size_t checked = 0;
  size_t violations = 0;
  double worst = 0.0;

  void Check(const RTree& index, Point q, const std::vector<Neighbor>& answers,
             const PrivacyProfile& p) {
    ++checked;
    const std::vector<Neighbor> truth =
        BruteForceKnn(index.objects(), q, p.k_r);
    if (answers.size() < static_cast<size_t>(p.k_r) || truth.empty()) {
      ++violations;
      return;
    }
    const double got = answers.back().distance;
    const double best = truth.back().distance;
    if (got > best / p.cl_r + kAuditSlack) ++violations;
    if (best > 0.0) worst = std::max(worst, got / best);
  }
};

}  // namespace

absl::string_view SchedulerName(Scheduler s) {
  return s == Scheduler::kNaive ? "naive" : "pmknn";
}

absl::StatusOr<Scheduler> ParseScheduler(absl::string_view name) {
  if (name == "pmknn") return Scheduler::kPmknn;
  if (name == "naive") return Scheduler::kNaive;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown scheduler '", name, "' (expected pmknn or naive)"));
}

std::vector<SamplePoint> SampleTrajectory(const Trajectory& t, double step) {
  std::vector<SamplePoint> out;
  if (t.empty()) return out;
  out.push_back({t[0], 0.0});
  double arc = 0.0;
  double next = step;
  for (size_t i = 1; i < t.size(); ++i) {
    const Point a = t[i - 1];
    const Point b = t[i];
    const double len = Dist(a, b);
    while (next < arc + len) {
      const double f = (next - arc) / len;
      out.push_back({{a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)}, next});
      next += step;
    }
    arc += len;
    if (arc > out.back().arc) out.push_back({b, arc});
    while (next <= arc) next += step;
  }
  return out;
}

absl::Status RunOptions::Validate() const {
  PMKNN_RETURN_IF_ERROR(profile.Validate());
  if (!(speed > 0.0) || !std::isfinite(speed)) {
    return absl::InvalidArgumentError("speed must be > 0");
  }
  if (!(sample_step > 0.0)) {
    return absl::InvalidArgumentError("sample step must be > 0");
  }
  if (!(audit_fraction >= 0.0 && audit_fraction <= 1.0)) {
    return absl::InvalidArgumentError("audit fraction must be in [0, 1]");
  }
  if (area_samples < 0) {
    return absl::InvalidArgumentError("area samples must be >= 0");
  }
  return absl::OkStatus();
}

absl::StatusOr<RunResult> RunPmknn(const RTree& index,
                                   const Trajectory& trajectory,
                                   const RunOptions& options) {
  PMKNN_RETURN_IF_ERROR(options.Validate());
  if (trajectory.empty()) {
    return absl::InvalidArgumentError("trajectory has no vertices");
  }
  const bool knows_speed = options.attack != AttackMode::kOverlap;
  const std::vector<SamplePoint> samples =
      SampleTrajectory(trajectory, options.sample_step);

  ClientOptions client_options;
  client_options.profile = options.profile;
  if (knows_speed) client_options.max_speed = options.speed;
  Server server(index, client_options.data_space);

  RunResult result;
  result.warnings = options.profile.Warnings();
  const Point start = samples[0].position;
  absl::StatusOr<Client> client =
      Client::Initiate(start, 0.0, client_options, server,
                       MixSeed({options.seed, kClientStream}));
  if (!client.ok()) return AtPosition(client.status(), start);

  Rng audit_rng(MixSeed({options.seed, kAuditStream}));
  Audit audit;
  std::vector<Point> send_positions = {start};
  std::vector<size_t> send_samples = {0};
  if (options.scheduler == Scheduler::kPmknn &&
      audit_rng.Uniform() < options.audit_fraction) {
    audit.Check(index, start, client->answers(), options.profile);
  }

  for (size_t i = 1; i < samples.size(); ++i) {
    const Point q = samples[i].position;
    const double time = samples[i].arc / options.speed;
    if (options.scheduler == Scheduler::kPmknn) {
      absl::StatusOr<MoveResult> moved = client->OnMove(q, time);
      if (!moved.ok()) return AtPosition(moved.status(), q);
      if (moved->requested) {
        send_positions.push_back(q);
        send_samples.push_back(i);
      }
      if (audit_rng.Uniform() < options.audit_fraction) {
        audit.Check(index, q, moved->answers, options.profile);
      }
      continue;
    }
    const Rect& current = client->request_log().back().rect;
    if (current.Contains(q)) continue;
    const Point prev = samples[i - 1].position;
    const Point b = BoundaryCrossing(current, prev, q);
    double t_b = (samples[i - 1].arc + Dist(prev, b)) / options.speed;
    t_b = std::max(t_b, std::nextafter(client->request_log().back().time,
                                       INFINITY));
    absl::StatusOr<MoveResult> moved = client->ForceRequest(b, t_b);
    if (!moved.ok()) return AtPosition(moved.status(), b);
    send_positions.push_back(b);
    send_samples.push_back(i);
  }

  const std::vector<RequestRecord>& log = client->request_log();
  AdversaryView& view = result.view;
  view.specified = options.profile.specified();
  if (knows_speed) view.max_speed = options.speed;
  for (const RequestRecord& r : log) {
    view.observations.push_back({r.rect, r.known_region, r.time});
    result.metrics.elapsed_seconds +=
        options.record_timing ? r.stats.elapsed_seconds : 0.0;
    result.metrics.page_ios += r.stats.io.pages_read;
    result.metrics.answer_size += r.stats.answer_size;
    if (r.degraded) ++result.metrics.degraded_requests;
  }
  PMKNN_ASSIGN_OR_RETURN(std::vector<RefinedRegion> refined,
                         Refine(view, options.attack));

  for (size_t w = 0; w < log.size(); ++w) {
    RequestEvent e;
    e.sample = send_samples[w];
    e.time = log[w].time;
    e.position = send_positions[w];
    e.rect = log[w].rect;
    e.known_region = log[w].known_region;
    e.degraded = log[w].degraded;
    e.attack_contains_position = refined[w].region.Contains(e.position);
    if (w > 0) {
      const Rect& prev = log[w - 1].rect;
      e.in_previous_rect = prev.Contains(e.position);
      e.path_in_overlap = true;
      for (size_t s = send_samples[w - 1]; s <= send_samples[w]; ++s) {
        const Point p = samples[s].position;
        if (!prev.Contains(p) || !e.rect.Contains(p)) {
          e.path_in_overlap = false;
          break;
        }
      }
    }
    result.events.push_back(e);
  }

  result.metrics.frequency = Frequency(view);
  result.metrics.trajectory_area_pct =
      TrajectoryAreaPercent(view, options.area_samples,
                            MixSeed({options.seed, kAreaStream}));
  result.audits = audit.checked;
  result.audit_violations = audit.violations;
  result.worst_audit_ratio = audit.worst;
  return result;
}

std::vector<NamedProfile> SweepConfig::ExpandProfiles() const {
  if (!profiles.empty()) return profiles;
  std::vector<NamedProfile> out;
  for (double c : cl) {
    const std::vector<double> crs = cl_r.empty() ? std::vector<double>{c} : cl_r;
    for (double cr : crs) {
      for (int kk : k) {
        const std::vector<int> krs = k_r.empty() ? std::vector<int>{kk} : k_r;
        for (int kr : krs) out.push_back({c, cr, kk, kr});
      }
    }
  }
  return out;
}

size_t SweepConfig::CellCount() const {
  return area_pct.size() * ratio.size() * ExpandProfiles().size() *
         delta.size() * attacks.size();
}

std::vector<std::string> SweepConfig::Validate() const {
  std::vector<std::string> errors;
  auto check = [&](const absl::Status& s, absl::string_view what) {
    if (!s.ok()) errors.push_back(absl::StrCat(what, ": ", s.message()));
  };
  check(data.Validate(), "data");
  if (trajectory_path.empty()) check(trajectories.Validate(), "trajectories");

  auto nonempty = [&](size_t n, absl::string_view axis) {
    if (n == 0) errors.push_back(absl::StrCat("axis ", axis, " is empty"));
  };
  nonempty(area_pct.size(), "area_pct");
  nonempty(ratio.size(), "ratio");
  nonempty(delta.size(), "delta");
  nonempty(attacks.size(), "attack");
  if (profiles.empty()) {
    nonempty(cl.size(), "cl");
    nonempty(k.size(), "k");
  }
  for (double a : area_pct) {
    if (!(a > 0.0 && a <= 100.0)) {
      errors.push_back(
          absl::StrCat("area_pct must be in (0, 100], got ", a));
    }
  }
  for (double r : ratio) {
    if (!(r >= 1.0) || !std::isfinite(r)) {
      errors.push_back(absl::StrCat("ratio must be >= 1, got ", r));
    }
  }
  for (double d : delta) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      errors.push_back(absl::StrCat("delta must be >= 0, got ", d));
    }
  }
  for (const NamedProfile& p : ExpandProfiles()) {
    PrivacyProfile profile;
    profile.cl = p.cl;
    profile.cl_r = p.cl_r;
    profile.k = p.k;
    profile.k_r = p.k_r;
    check(profile.Validate(), "profile");
  }
  if (repeats < 1) {
    errors.push_back(absl::StrCat("repeats must be >= 1, got ", repeats));
  }
  if (!(speed_kmh > 0.0) || !std::isfinite(speed_kmh)) {
    errors.push_back(absl::StrCat("speed_kmh must be > 0, got ", speed_kmh));
  }
  if (!(meters_per_unit > 0.0) || !std::isfinite(meters_per_unit)) {
    errors.push_back(
        absl::StrCat("meters_per_unit must be > 0, got ", meters_per_unit));
  }
  if (!(sample_step > 0.0) || !std::isfinite(sample_step)) {
    errors.push_back(
        absl::StrCat("sample_step must be > 0, got ", sample_step));
  }
  if (!(audit_fraction >= 0.0 && audit_fraction <= 1.0)) {
    errors.push_back(
        absl::StrCat("audit_fraction must be in [0, 1], got ", audit_fraction));
  }
  if (area_samples < 10000) {
    errors.push_back(
        absl::StrCat("area_samples must be >= 10000, got ", area_samples));
  }
  if (threads < 1) {
    errors.push_back(absl::StrCat("threads must be >= 1, got ", threads));
  }
  return errors;
}

absl::Status RunSweep(const SweepConfig& config, const RecordSink& sink) {
  if (std::vector<std::string> errors = config.Validate(); !errors.empty()) {
    return absl::InvalidArgumentError(absl::StrJoin(errors, "; "));
  }
  PMKNN_ASSIGN_OR_RETURN(std::vector<DataObject> objects,
                         GenerateData(config.data));
  PMKNN_ASSIGN_OR_RETURN(RTree index, RTree::Build(std::move(objects)));
  std::vector<Trajectory> trajectories;
  if (config.trajectory_path.empty()) {
    PMKNN_ASSIGN_OR_RETURN(trajectories,
                           GenerateTrajectories(config.trajectories));
  } else {
    PMKNN_ASSIGN_OR_RETURN(trajectories,
                           ReadTrajectoriesCsv(config.trajectory_path));
  }
  return RunSweep(config, index, trajectories, sink);
}

absl::Status RunSweep(const SweepConfig& config, const RTree& index,
                      const std::vector<Trajectory>& trajectories,
                      const RecordSink& sink) {
  if (std::vector<std::string> errors = config.Validate(); !errors.empty()) {
    return absl::InvalidArgumentError(absl::StrJoin(errors, "; "));
  }
  if (trajectories.empty()) {
    return absl::InvalidArgumentError("sweep needs at least one trajectory");
  }
  if (index.size() < 1) {
    return absl::FailedPreconditionError("sweep needs a nonempty dataset");
  }
  const std::vector<NamedProfile> profiles = config.ExpandProfiles();
  const size_t runs = trajectories.size() * config.repeats;
  const int threads =
      static_cast<int>(std::min<size_t>(config.threads, runs));

  for (double area : config.area_pct) {
    for (double ratio : config.ratio) {
      for (const NamedProfile& p : profiles) {
        for (double delta : config.delta) {
          for (AttackMode attack : config.attacks) {
            RunOptions options;
            options.profile.cl = p.cl;
            options.profile.cl_r = p.cl_r;
            options.profile.k = p.k;
            options.profile.k_r = p.k_r;
            options.profile.delta = delta;
            options.profile.rect_area = area / 100.0;
            options.profile.rect_ratio = ratio;
            options.attack = attack;
            options.scheduler = config.scheduler;
            options.speed =
                SpeedInUnits(config.speed_kmh, config.meters_per_unit);
            options.sample_step = config.sample_step;
            options.audit_fraction = config.audit_fraction;
            options.area_samples = config.area_samples;
            options.record_timing = config.record_timing;

            std::vector<absl::StatusOr<RunResult>> results(
                runs, absl::UnknownError("not run"));
            std::atomic<size_t> next{0};
            auto work = [&] {
              for (size_t r; (r = next.fetch_add(1)) < runs;) {
                const size_t t = r / config.repeats;
                const size_t rep = r % config.repeats;
                RunOptions local = options;
                local.seed = MixSeed({config.seed, t, rep});
                results[r] = RunPmknn(index, trajectories[t], local);
              }
            };
            if (threads <= 1) {
              work();
            } else {
              std::vector<std::thread> pool;
              for (int i = 0; i < threads; ++i) pool.emplace_back(work);
              for (std::thread& th : pool) th.join();
            }

            ExperimentRecord rec;
            rec.dataset = std::string(DataKindName(config.data.kind));
            rec.n = static_cast<int64_t>(index.size());
            rec.attack = attack;
            rec.scheduler = config.scheduler;
            rec.area_pct = area;
            rec.ratio = ratio;
            rec.cl = p.cl;
            rec.cl_r = p.cl_r;
            rec.k = p.k;
            rec.k_r = p.k_r;
            rec.delta = delta;
            rec.trajectories = static_cast<int>(trajectories.size());
            rec.repeats = config.repeats;
            double elapsed = 0.0;
            for (const absl::StatusOr<RunResult>& r : results) {
              if (!r.ok()) return r.status();
              const RunMetrics& m = r->metrics;
              rec.frequency += m.frequency;
              rec.trajectory_area_pct += m.trajectory_area_pct;
              elapsed += m.elapsed_seconds;
              rec.page_ios += m.page_ios;
              rec.answer_size += m.answer_size;
              rec.degraded_requests += m.degraded_requests;
              rec.audits += r->audits;
              rec.audit_violations += r->audit_violations;
              bool unsound = false, missed = false;
              for (const RequestEvent& e : r->events) {
                if (&e != &r->events.front() && !e.in_previous_rect) {
                  unsound = true;
                }
                if (!e.attack_contains_position) missed = true;
              }
              rec.overlap_unsound_runs += unsound;
              rec.attack_miss_runs += missed;
            }
            const double n = static_cast<double>(runs);
            rec.frequency /= n;
            rec.trajectory_area_pct /= n;
            rec.page_ios /= n;
            rec.answer_size /= n;
            if (config.record_timing) rec.elapsed_seconds = elapsed / n;
            PMKNN_RETURN_IF_ERROR(sink(rec));
          }
        }
      }
    }
  }
  return absl::OkStatus();
}

}  // namespace pmknn
