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


// A relation-valued distance on five points built from a chain of partitions.

#include <cstdio>

#include "mfix/mfix.hpp"

int main() {
  auto base = mfix::partition_chain_base(5);
  auto report = mfix::verify_entourage_metric(base);
  std::printf("%s\n", report.to_json().dump(2).c_str());

  mfix::EntourageMonoid m(base.ground_size());
  for (std::size_t y = 1; y < base.ground_size(); ++y)
    std::printf("d(0, %zu) = %s\n", y, m.encode(mfix::entourage_distance(0, y, base)).dump().c_str());
  return report.all_passed() ? 0 : 1;
}
