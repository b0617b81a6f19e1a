// Copyright 2026 The sqthermo Authors
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


#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sqthermo/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamics of a bosonic mode in a squeezed thermal reservoir"};
  app.require_subcommand(1);

  sqt::CommonOptions opts;
  std::string config, out, format;
  std::uint64_t seed = 0;
  int threads = 0;

  for (const auto& name : sqt::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "JSON config file");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", threads, "OpenMP threads")->check(CLI::NonNegativeNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sqt::kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--config")) opts.config_path = config;
  if (sub->count("--out")) opts.out_dir = out;
  if (sub->count("--seed")) opts.seed = seed;
  if (sub->count("--format")) opts.format = format;
  if (sub->count("--threads")) opts.threads = threads;
  return sqt::run_command(sub->get_name(), opts, std::cerr);
}
