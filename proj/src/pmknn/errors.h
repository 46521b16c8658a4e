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

#ifndef PMKNN_ERRORS_H_
#define PMKNN_ERRORS_H_

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

// Status conventions shared by the library and the C API:
//   InvalidArgument     bad input or configuration
//   FailedPrecondition  not enough data objects / candidates
//   OutOfRange          privacy constraints unsatisfiable
//   NotFound, Unavailable  file I/O
//   DataLoss            malformed input file

namespace pmknn {

inline absl::Status UnsatisfiableError(absl::string_view detail) {
  return absl::OutOfRangeError(
      absl::StrCat("privacy constraints unsatisfiable: ", detail));
}

}  // namespace pmknn

#define PMKNN_RETURN_IF_ERROR(expr)              \
  do {                                           \
    if (::absl::Status _st = (expr); !_st.ok()) { \
      return _st;                                \
    }                                            \
  } while (0)

#define PMKNN_CONCAT_INNER_(a, b) a##b
#define PMKNN_CONCAT_(a, b) PMKNN_CONCAT_INNER_(a, b)

#define PMKNN_ASSIGN_OR_RETURN(lhs, expr) \
  PMKNN_ASSIGN_OR_RETURN_IMPL_(PMKNN_CONCAT_(_statusor_, __LINE__), lhs, expr)

#define PMKNN_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                 \
  if (!tmp.ok()) return tmp.status();                \
  lhs = std::move(tmp).value()

#endif  // PMKNN_ERRORS_H_
