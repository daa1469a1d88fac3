//  Copyright 2026 The mfix Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mfix {

enum class ErrorKind {
  non_cancellative,
  ambiguous,
  negative_term,
  sup_unavailable,
  index_out_of_range,
  not_separating,
  not_entourage,
  grid_mismatch,
  non_monotone,
  invalid_argument,
  parse_error,
  unknown_instance,
  invalid_mode,
  not_converged,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::non_cancellative: return "NonCancellative";
    case ErrorKind::ambiguous: return "Ambiguous";
    case ErrorKind::negative_term: return "NegativeTerm";
    case ErrorKind::sup_unavailable: return "SupUnavailable";
    case ErrorKind::index_out_of_range: return "IndexOutOfRange";
    case ErrorKind::not_separating: return "NotSeparating";
    case ErrorKind::not_entourage: return "NotEntourage";
    case ErrorKind::grid_mismatch: return "GridMismatch";
    case ErrorKind::non_monotone: return "NonMonotone";
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::unknown_instance: return "UnknownInstance";
    case ErrorKind::invalid_mode: return "InvalidMode";
    case ErrorKind::not_converged: return "NotConverged";
  }
  return "Unknown";
}

/// Precondition and contract violations. Solver outcomes (divergence,
/// certificate refusal, ...) are reported through the trace instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mfix
