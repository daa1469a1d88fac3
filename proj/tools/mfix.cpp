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


#include <iostream>

#include "CLI11.hpp"
#include "mfix/cli.hpp"

int main(int argc, char** argv) {
  mfix::cli::RunConfig cfg;
  CLI::App app{"Fixed-point solver over monoid-valued distance spaces"};
  app.add_option("--mode", cfg.mode,
                 "solve | solve-monotone | solve-multiple | fredholm | verify-axioms | fw-probe")
      ->required();
  app.add_option("--problem", cfg.problem, "problem file (JSON)");
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--eps-level", cfg.eps_level, "stop when distances drop below 2^-k");
  app.add_option("--max-iter", cfg.max_iter, "iteration cap");
  app.add_flag("--override-certificate", cfg.override_certificate,
               "iterate even when the convergence certificate is not established");
  std::size_t horizon = 0;
  auto* h = app.add_option("--horizon", horizon, "number of terms inspected by series and null checks");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : mfix::cli::ExitCode::input_error;
  }
  if (h->count() > 0) cfg.horizon = horizon;

  const int code = mfix::cli::run(cfg, std::cerr);
  std::cout << "exit " << code << ", summary in " << cfg.out << "/summary.json\n";
  return code;
}
