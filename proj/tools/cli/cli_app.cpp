// Copyright 2026 The fkpressure Authors
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

#include "cli_app.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "fkp/errors.hpp"
#include "runner.hpp"

namespace fkp::cli {
namespace {

// A flag that sets one config key. `transform` rewrites each list item.
struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
  std::string (*transform)(const std::string&) = nullptr;
};

std::string reciprocal_items(const std::string& value) {
  std::string out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    const std::string item = value.substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start);
    if (!out.empty()) out += ", ";
    out += "1/" + item;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

const std::vector<FlagSpec>& flag_specs() {
  static const std::vector<FlagSpec> specs = {
      {"--system", "system.kind",
       "doubling, rotation, tent, logistic, full-shift, sft, golden or finite"},
      {"--theta", "system.theta", "rotation angle"},
      {"--slope", "system.slope", "tent slope"},
      {"--r", "system.r", "logistic parameter"},
      {"--symbols", "system.symbols", "full shift alphabet size"},
      {"--matrix", "system.matrix", "sft transitions, rows separated by ';'"},
      {"--distances", "system.distances", "finite distance table, rows separated by ';'"},
      {"--map", "system.map", "finite map table"},
      {"--potential-values", "potential.values", "potential values or coefficients"},
      {"--n", "grid.n", "horizons, e.g. 4..12 or 4,8,16"},
      {"--epsilon", "grid.epsilon", "separation scales"},
      {"--alpha", "grid.alpha", "pseudo-orbit tolerances"},
      {"--delta", "grid.delta", "FK density defects"},
      {"--n-delta", "grid.n_delta", "FKPO checkpoint bounds"},
      {"--scale", "grid.scale", "scale functions: one, log, powlog:<p>"},
      {"--mode", "grid.mode", "scaled mode: direct, po or ppo"},
      {"--net", "grid.net", "net sizes N (resolution 1/N)", reciprocal_items},
      {"--net-resolution", "grid.net", "net resolutions"},
      {"--cells", "grid.partition", "coarse cell count C (resolution 1/C)", reciprocal_items},
      {"--partition", "grid.partition", "coarse partition resolution"},
      {"--eps-sep", "grid.eps_sep", "FKPO separation scales"},
      {"--tail", "grid.tail", "FKPO sequence length beyond n"},
      {"--tail-fraction", "grid.tail_fraction", "extrapolation tail window"},
      {"--reference", "grid.reference", "reference pressure"},
      {"--x", "states.x", "first state"},
      {"--y", "states.y", "second state"},
      {"--suite", "verify.suite", "invariant suite"},
      {"--seed", "seed", "random seed"},
      {"--csv", "output.csv", "CSV output path (default stdout)"},
      {"--json", "output.json", "JSON report path"},
      {"--emit-plot-data", "output.plot_dir", "directory for (n, per_n) plot files"},
      {"--edges", "output.edges_dir", "directory for edge-list dumps"},
      {"--net-cap", "caps.net", "net size cap"},
      {"--state-cap", "caps.states", "determinization state cap"},
      {"--enum-cap", "caps.enumeration", "enumeration cap"},
  };
  return specs;
}

struct Command {
  CLI::App* app = nullptr;
  const char* route = nullptr;  // nullptr: taken from the config
  std::string config_path;
  std::string potential;
  std::map<std::string, std::string> values;
};

void add_common(Command& cmd) {
  cmd.app->add_option("--config", cmd.config_path, "config file (block text or JSON)");
  cmd.app->add_option("--potential", cmd.potential,
                      "zero, symbols:<v0,v1,...> or polynomial:<c0,c1,...>");
  for (const FlagSpec& f : flag_specs()) {
    cmd.app->add_option(f.flag, cmd.values[f.flag], f.help);
  }
}

EntryMap collect_flags(const Command& cmd) {
  EntryMap flags;
  auto put = [&](const std::string& key, const std::string& value, const std::string& source) {
    if (const auto it = flags.find(key); it != flags.end()) {
      throw UsageError(source + " and " + it->second.source + " both set " + key);
    }
    flags[key] = Entry{value, source};
  };
  if (cmd.route != nullptr) {
    put("route", cmd.route, std::string("subcommand ") + cmd.app->get_name());
  }
  if (!cmd.potential.empty()) {
    const auto colon = cmd.potential.find(':');
    put("potential.kind", cmd.potential.substr(0, colon), "flag --potential");
    if (colon != std::string::npos) {
      put("potential.values", cmd.potential.substr(colon + 1), "flag --potential");
    }
  }
  for (const FlagSpec& f : flag_specs()) {
    if (cmd.app->count(f.flag) == 0) continue;
    const std::string& raw = cmd.values.at(f.flag);
    put(f.key, f.transform ? f.transform(raw) : raw, std::string("flag ") + f.flag);
  }
  return flags;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pressure estimators: Bowen, Feldman-Katok, pseudo-orbit and scaled routes",
               "fkp"};
  app.require_subcommand(1);
  const std::vector<std::pair<const char*, const char*>> subcommands = {
      {"pressure-bowen", "bowen"}, {"pressure-fk", "fk"},         {"pressure-po", "po"},
      {"pressure-fkpo", "fkpo"},   {"pressure-scaled", "scaled"}, {"fk-dist", "fkdist"},
      {"verify", "verify"},        {"report", "report"}};
  std::vector<Command> commands(subcommands.size() + 1);
  for (std::size_t i = 0; i < subcommands.size(); ++i) {
    commands[i].app = app.add_subcommand(subcommands[i].first,
                                         std::string("route ") + subcommands[i].second);
    commands[i].route = subcommands[i].second;
    add_common(commands[i]);
  }
  Command& run_cmd = commands.back();
  run_cmd.app = app.add_subcommand("run", "run the route named in the config");
  add_common(run_cmd);
  run_cmd.app->get_option("--config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (const Command& cmd : commands) {
      if (!cmd.app->parsed()) continue;
      EntryMap entries = cmd.config_path.empty() ? EntryMap{} : read_config_file(cmd.config_path);
      entries = merge_flags(entries, collect_flags(cmd));
      if (cmd.route != nullptr && std::string(cmd.route) == "verify" &&
          !entries.contains("verify.suite")) {
        entries["verify.suite"] = Entry{"all", "default"};
      }
      const ExperimentConfig config = build_config(entries);
      return run(config, out, err);
    }
  } catch (const UsageError& e) {
    err << "fkp: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "fkp: domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "fkp: resource cap: " << e.what() << '\n';
    return kExitResource;
  } catch (const ConvergenceError& e) {
    err << "fkp: no convergence: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    err << "fkp: error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fkp::cli
