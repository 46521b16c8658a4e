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

#include "pmknn/results.h"

#include <charconv>
#include <cmath>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "pmknn/csv_io.h"

namespace pmknn {
namespace {

absl::Status RowError(size_t line, absl::string_view what) {
  return absl::DataLossError(absl::StrCat("line ", line, ": ", what));
}

template <typename T>
bool ParseNumber(absl::string_view s, T* out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

const std::vector<absl::string_view>& ResultsColumns() {
  static const std::vector<absl::string_view> kColumns = {
      "dataset",
      "n",
      "scheduler",
      "attack",
      "area_pct",
      "ratio",
      "cl",
      "cl_r",
      "k",
      "k_r",
      "delta",
      "trajectories",
      "repeats",
      "frequency",
      "trajectory_area_pct",
      "elapsed_s",
      "page_ios",
      "answer_size",
      "degraded_requests",
      "audits",
      "audit_violations",
      "overlap_unsound_runs",
      "attack_miss_runs",
  };
  return kColumns;
}

std::string ResultsPreamble() {
  return absl::StrCat("# schema=", kResultsSchemaVersion, "\n",
                      absl::StrJoin(ResultsColumns(), ","), "\n");
}

std::string ResultsRow(const ExperimentRecord& r) {
  const std::vector<std::string> fields = {
      r.dataset,
      absl::StrCat(r.n),
      std::string(SchedulerName(r.scheduler)),
      std::string(AttackModeName(r.attack)),
      FormatDouble(r.area_pct),
      FormatDouble(r.ratio),
      FormatDouble(r.cl),
      FormatDouble(r.cl_r),
      absl::StrCat(r.k),
      absl::StrCat(r.k_r),
      FormatDouble(r.delta),
      absl::StrCat(r.trajectories),
      absl::StrCat(r.repeats),
      FormatDouble(r.frequency),
      FormatDouble(r.trajectory_area_pct),
      r.elapsed_seconds ? FormatDouble(*r.elapsed_seconds) : "",
      FormatDouble(r.page_ios),
      FormatDouble(r.answer_size),
      absl::StrCat(r.degraded_requests),
      absl::StrCat(r.audits),
      absl::StrCat(r.audit_violations),
      absl::StrCat(r.overlap_unsound_runs),
      absl::StrCat(r.attack_miss_runs),
  };
  return absl::StrCat(absl::StrJoin(fields, ","), "\n");
}

absl::StatusOr<std::vector<ExperimentRecord>> ParseResultsCsv(
    absl::string_view text) {
  const std::string schema = absl::StrCat("# schema=", kResultsSchemaVersion);
  const std::string header = absl::StrJoin(ResultsColumns(), ",");
  std::vector<ExperimentRecord> out;
  size_t line_no = 0;
  int stage = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    if (stage == 0) {
      if (line != schema) {
        return RowError(line_no, absl::StrCat("expected '", schema, "'"));
      }
      stage = 1;
      continue;
    }
    if (stage == 1) {
      if (line != header) return RowError(line_no, "unexpected column header");
      stage = 2;
      continue;
    }
    const std::vector<absl::string_view> f = SplitCsvLine(line);
    if (f.size() != ResultsColumns().size()) {
      return RowError(line_no, absl::StrCat("expected ",
                                            ResultsColumns().size(),
                                            " fields, got ", f.size()));
    }
    ExperimentRecord r;
    r.dataset = std::string(f[0]);
    absl::StatusOr<Scheduler> scheduler = ParseScheduler(f[2]);
    absl::StatusOr<AttackMode> attack = ParseAttackMode(f[3]);
    if (!scheduler.ok() || !attack.ok()) {
      return RowError(line_no, "bad scheduler or attack");
    }
    r.scheduler = *scheduler;
    r.attack = *attack;
    double elapsed = 0.0;
    const bool ok =
        ParseNumber(f[1], &r.n) && ParseNumber(f[4], &r.area_pct) &&
        ParseNumber(f[5], &r.ratio) && ParseNumber(f[6], &r.cl) &&
        ParseNumber(f[7], &r.cl_r) && ParseNumber(f[8], &r.k) &&
        ParseNumber(f[9], &r.k_r) && ParseNumber(f[10], &r.delta) &&
        ParseNumber(f[11], &r.trajectories) &&
        ParseNumber(f[12], &r.repeats) && ParseNumber(f[13], &r.frequency) &&
        ParseNumber(f[14], &r.trajectory_area_pct) &&
        (f[15].empty() || ParseNumber(f[15], &elapsed)) &&
        ParseNumber(f[16], &r.page_ios) && ParseNumber(f[17], &r.answer_size) &&
        ParseNumber(f[18], &r.degraded_requests) &&
        ParseNumber(f[19], &r.audits) &&
        ParseNumber(f[20], &r.audit_violations) &&
        ParseNumber(f[21], &r.overlap_unsound_runs) &&
        ParseNumber(f[22], &r.attack_miss_runs);
    if (!ok) return RowError(line_no, "bad numeric field");
    if (!f[15].empty()) r.elapsed_seconds = elapsed;
    out.push_back(std::move(r));
  }
  if (stage < 2) {
    return absl::DataLossError("results file lacks the schema line or header");
  }
  return out;
}

absl::StatusOr<ResultsWriter> ResultsWriter::Open(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) {
    return absl::UnavailableError(
        absl::StrCat(path, ": cannot open for writing"));
  }
  ResultsWriter w(f, path);
  const std::string pre = ResultsPreamble();
  if (std::fwrite(pre.data(), 1, pre.size(), f) != pre.size() ||
      std::fflush(f) != 0) {
    return absl::UnavailableError(absl::StrCat(path, ": write failed"));
  }
  return w;
}

ResultsWriter::ResultsWriter(ResultsWriter&& other) noexcept
    : file_(other.file_), path_(std::move(other.path_)) {
  other.file_ = nullptr;
}

ResultsWriter::~ResultsWriter() {
  if (file_ != nullptr) std::fclose(file_);
}

absl::Status ResultsWriter::Write(const ExperimentRecord& r) {
  if (file_ == nullptr) {
    return absl::FailedPreconditionError("results writer is closed");
  }
  const std::string row = ResultsRow(r);
  if (std::fwrite(row.data(), 1, row.size(), file_) != row.size() ||
      std::fflush(file_) != 0) {
    return absl::UnavailableError(absl::StrCat(path_, ": write failed"));
  }
  return absl::OkStatus();
}

absl::Status ResultsWriter::Close() {
  if (file_ == nullptr) return absl::OkStatus();
  const int rc = std::fclose(file_);
  file_ = nullptr;
  if (rc != 0) {
    return absl::UnavailableError(absl::StrCat(path_, ": close failed"));
  }
  return absl::OkStatus();
}

}  // namespace pmknn
