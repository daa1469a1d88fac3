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

#include <algorithm>
#include <cstddef>
#include <deque>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace mfix {

struct PropertyResult {
  std::string property;
  bool passed = true;
  std::size_t checked = 0;
  std::string counterexample;  // empty when passed
};

/// Per-property pass/fail record produced by the axiom suites.
class Report {
 public:
  explicit Report(std::string subject = {}) : subject_(std::move(subject)) {}

  const std::string& subject() const { return subject_; }
  const std::deque<PropertyResult>& results() const { return results_; }

  PropertyResult& add(std::string property) {
    results_.push_back({std::move(property), true, 0, {}});
    return results_.back();
  }

  void append(const Report& other) {
    for (const auto& r : other.results_) {
      results_.push_back(r);
      if (!other.subject_.empty()) results_.back().property = other.subject_ + "/" + r.property;
    }
  }

  bool all_passed() const {
    return std::all_of(results_.begin(), results_.end(),
                       [](const PropertyResult& r) { return r.passed; });
  }

  const PropertyResult* find(const std::string& property) const {
    for (const auto& r : results_)
      if (r.property == property) return &r;
    return nullptr;
  }

  nlohmann::json to_json() const {
    nlohmann::json out;
    out["subject"] = subject_;
    out["status"] = all_passed() ? "pass" : "fail";
    auto& props = out["properties"] = nlohmann::json::array();
    for (const auto& r : results_) {
      nlohmann::json entry;
      entry["property"] = r.property;
      entry["status"] = r.passed ? "pass" : "fail";
      entry["checked"] = r.checked;
      entry["counterexample"] = r.passed ? nlohmann::json(nullptr) : nlohmann::json(r.counterexample);
      props.push_back(std::move(entry));
    }
    return out;
  }

 private:
  std::string subject_;
  std::deque<PropertyResult> results_;  // add() hands out stable references
};

/// Records a failure only once; later failures keep the first witness.
inline void fail(PropertyResult& r, const std::string& witness) {
  if (r.passed) {
    r.passed = false;
    r.counterexample = witness;
  }
}

}  // namespace mfix
