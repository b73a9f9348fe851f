// Copyright 2026 The kshapiq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kshapiq/bench.h"
#include "kshapiq/conjectures.h"
#include "kshapiq/estimators.h"
#include "kshapiq/exact.h"
#include "kshapiq/game.h"
#include "kshapiq/interaction_values.h"
#include "kshapiq/json_io.h"

namespace kshapiq::cli {
namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GameSource {
  std::string game_path;
  std::string soum;
  std::uint64_t seed = 0;
};

struct LoadedGame {
  std::unique_ptr<Game> game;
  const SoumGame* soum = nullptr;  // set when the game is a SOUM
};

bool IsSoumSpec(const std::string& s) { return s.find('=') != std::string::npos; }

unsigned ParseSpecUnsigned(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(value, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || v > 1000000) {
    throw std::invalid_argument("invalid SOUM spec: bad value for '" + key + "'");
  }
  return static_cast<unsigned>(v);
}

// "n=20,M=50,max=4,dummy=2[,seed=7]"
std::pair<SoumSpec, std::optional<std::uint64_t>> ParseSoumSpec(
    const std::string& text) {
  std::map<std::string, std::string> fields;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("invalid SOUM spec: expected key=value, got '" +
                                  item + "'");
    }
    const std::string key = item.substr(0, eq);
    if (!fields.emplace(key, item.substr(eq + 1)).second) {
      throw std::invalid_argument("invalid SOUM spec: duplicate key '" + key + "'");
    }
  }
  for (const auto& [key, value] : fields) {
    if (key != "n" && key != "M" && key != "max" && key != "dummy" &&
        key != "seed") {
      throw std::invalid_argument("invalid SOUM spec: unknown key '" + key + "'");
    }
  }
  if (!fields.count("n") || !fields.count("M")) {
    throw std::invalid_argument("invalid SOUM spec: 'n' and 'M' are required");
  }
  SoumSpec spec;
  spec.n = ParseSpecUnsigned("n", fields["n"]);
  spec.m_terms = ParseSpecUnsigned("M", fields["M"]);
  spec.max_interaction_size =
      fields.count("max") ? ParseSpecUnsigned("max", fields["max"]) : spec.n;
  spec.n_dummy = fields.count("dummy") ? ParseSpecUnsigned("dummy", fields["dummy"]) : 0;
  std::optional<std::uint64_t> seed;
  if (fields.count("seed")) {
    try {
      std::size_t used = 0;
      seed = std::stoull(fields["seed"], &used);
      if (used != fields["seed"].size()) throw std::invalid_argument("");
    } catch (const std::logic_error&) {
      throw std::invalid_argument("invalid SOUM spec: bad value for 'seed'");
    }
  }
  return {spec, seed};
}

void RequireReadable(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw IoError("cannot read file '" + path + "'");
}

LoadedGame Load(const GameSource& src) {
  if (src.game_path.empty() == src.soum.empty()) {
    throw std::invalid_argument("exactly one of --game or --soum is required");
  }
  LoadedGame loaded;
  if (!src.game_path.empty()) {
    RequireReadable(src.game_path);
    loaded.game = LoadGame(src.game_path);
  } else if (IsSoumSpec(src.soum)) {
    const auto [spec, seed] = ParseSoumSpec(src.soum);
    loaded.game = std::make_unique<SoumGame>(GenerateSoum(spec, seed.value_or(src.seed)));
  } else {
    RequireReadable(src.soum);
    loaded.game = std::make_unique<SoumGame>(LoadSoumGame(src.soum));
  }
  loaded.soum = dynamic_cast<const SoumGame*>(loaded.game.get());
  return loaded;
}

void Emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write file '" + out_path + "'");
  file << text;
  if (!file.flush()) throw IoError("failed writing '" + out_path + "'");
}

std::string ValuesCsv(const InteractionValues& values) {
  std::string text = "subset,value\n";
  for (const auto& [s, v] : values.entries()) {
    std::string players;
    for (unsigned p : s.players()) {
      if (!players.empty()) players += ' ';
      players += std::to_string(p);
    }
    text += players + ',' + FormatDouble(v) + '\n';
  }
  return text;
}

std::string RenderValues(const nlohmann::json& j, const InteractionValues& values,
                         const std::string& format) {
  return format == "csv" ? ValuesCsv(values) : DumpJson(j) + "\n";
}

IndexKind ParseIndexFlag(const std::string& index) {
  return index == "ksii" ? IndexKind::kKSII : IndexKind::kSII;
}

template <typename T>
std::vector<T> SplitList(const std::string& text, const std::string& what,
                         T (*parse)(const std::string&)) {
  std::vector<T> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      items.push_back(parse(item));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("invalid " + what + " entry '" + item + "'");
    }
  }
  if (items.empty()) throw std::invalid_argument("empty " + what + " list");
  return items;
}

std::uint64_t ToU64(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument(s);
  return v;
}

unsigned ToUnsigned(const std::string& s) {
  const std::uint64_t v = ToU64(s);
  if (v > 64) throw std::out_of_range(s);
  return static_cast<unsigned>(v);
}

Method ToMethod(const std::string& s) { return ParseMethod(s); }

void AddGameOptions(CLI::App* cmd, GameSource& src) {
  cmd->add_option("--game", src.game_path, "Game file (lookup table or SOUM JSON)");
  cmd->add_option("--soum", src.soum,
                  "SOUM spec n=..,M=..,max=..,dummy=..[,seed=..] or SOUM JSON path");
}

std::string ConjectureTable(const ConjectureReport& report) {
  std::ostringstream t;
  for (const ConjectureCase& c : report.cases) {
    t << report.id << " n=" << c.n << " k=" << c.k;
    if (!c.error.empty()) {
      t << " error: " << c.error;
    } else {
      t << " mse=" << FormatDouble(c.mse) << " raw_mse=" << FormatDouble(c.raw_mse);
    }
    t << (c.pass ? " PASS" : " FAIL") << '\n';
  }
  t << report.id << " max_mse=" << FormatDouble(report.max_mse)
    << (report.pass ? " PASS" : " FAIL") << '\n';
  return t.str();
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Shapley interaction indices: exact values, estimators and benchmarks",
               "kshapiq");
  app.require_subcommand(1);

  GameSource src;
  unsigned order = 2;
  std::string index = "sii";
  std::string format;
  std::string out_path;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  double mu_inf = kDefaultMuInf;
  bool force = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--out", out_path, "Output path (default: stdout)");
  };

  CLI::App* exact = app.add_subcommand("exact", "Exact SII or k-SII");
  AddGameOptions(exact, src);
  exact->add_option("--order", order, "Maximum interaction order")->check(CLI::Range(1, 64));
  exact->add_option("--index", index)->check(CLI::IsMember({"sii", "ksii"}));
  exact->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  exact->add_flag("--force", force, "Allow brute force beyond 20 players");
  add_common(exact);

  std::string method = "kernelshapiq";
  CLI::App* estimate = app.add_subcommand("estimate", "Approximate SII / k-SII");
  AddGameOptions(estimate, src);
  estimate->add_option("--method", method,
                       "kernelshapiq, inconsistent, permutation or shapiq");
  estimate->add_option("--order", order)->check(CLI::Range(1, 64));
  estimate->add_option("--budget", budget, "Game evaluations")->required();
  estimate->add_option("--index", index)->check(CLI::IsMember({"sii", "ksii"}));
  estimate->add_option("--mu-inf", mu_inf);
  estimate->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  add_common(estimate);

  std::string methods = "kernelshapiq,inconsistent,permutation,shapiq";
  std::string orders = "2";
  std::string budgets;
  unsigned runs = 1;
  bool timing = false;
  CLI::App* bench = app.add_subcommand("benchmark", "MSE / Prec@10 sweep");
  AddGameOptions(bench, src);
  bench->add_option("--methods", methods, "Comma-separated methods");
  bench->add_option("--orders", orders, "Comma-separated orders");
  bench->add_option("--budgets", budgets, "Comma-separated budgets")->required();
  bench->add_option("--runs", runs)->check(CLI::Range(1U, 1000000U));
  bench->add_option("--index", index)->check(CLI::IsMember({"sii", "ksii"}));
  bench->add_option("--mu-inf", mu_inf);
  bench->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  bench->add_flag("--timing", timing, "Record estimator wall-clock time");
  add_common(bench);

  unsigned n_min = 2;
  unsigned n_max = 11;
  std::string which = "all";
  unsigned soums = 10;
  unsigned terms = 1000;
  double conj_mu = kConjectureMuInf;
  CLI::App* validate =
      app.add_subcommand("validate-conjectures", "Check the precision-matrix and split conjectures");
  validate->add_option("--n-min", n_min)->check(CLI::Range(2, 20));
  validate->add_option("--n-max", n_max)->check(CLI::Range(2, 20));
  validate->add_option("--conjecture", which)->check(CLI::IsMember({"inverse", "sii", "all"}));
  validate->add_option("--soums", soums)->check(CLI::Range(1U, 100000U));
  validate->add_option("--terms", terms)->check(CLI::Range(1U, 100000000U));
  validate->add_option("--mu-inf", conj_mu);
  add_common(validate);

  CLI::App* gen = app.add_subcommand("gen-soum", "Generate a random SOUM");
  gen->add_option("--soum", src.soum, "n=..,M=..,max=..,dummy=..[,seed=..]")->required();
  add_common(gen);

  CLI::App* precompute =
      app.add_subcommand("precompute", "Tabulate a game into a lookup file");
  AddGameOptions(precompute, src);
  precompute->add_flag("--force", force, "Allow more than 20 players");
  add_common(precompute);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  src.seed = seed;

  try {
    if (*exact) {
      const LoadedGame g = Load(src);
      if (order > g.game->n()) throw std::invalid_argument("--order exceeds the player count");
      const InteractionValues sii =
          g.soum ? g.soum->ExactSii(order) : ExactSii(*g.game, order, force);
      const InteractionValues values =
          ParseIndexFlag(index) == IndexKind::kKSII ? AggregateSiiToKsii(sii, order) : sii;
      Emit(RenderValues(values.ToJson(), values, format), out_path, out);
    } else if (*estimate) {
      const LoadedGame g = Load(src);
      EstimatorConfig config;
      config.order = order;
      config.budget = budget;
      config.mu_inf = mu_inf;
      config.seed = seed;
      config.Validate(g.game->n());
      const IndexKind kind = ParseIndexFlag(index);
      const Estimate est = RunEstimator(ParseMethod(method), *g.game, config);
      const InteractionValues& values = kind == IndexKind::kKSII ? est.ksii : est.sii;
      Emit(RenderValues(est.ToJson(kind), values, format), out_path, out);
    } else if (*bench) {
      const LoadedGame g = Load(src);
      BenchmarkConfig config;
      config.methods = SplitList<Method>(methods, "method", ToMethod);
      config.orders = SplitList<unsigned>(orders, "order", ToUnsigned);
      config.budgets = SplitList<std::uint64_t>(budgets, "budget", ToU64);
      config.n_runs = runs;
      config.seed0 = seed;
      config.index = ParseIndexFlag(index);
      config.mu_inf = mu_inf;
      config.timing = timing;
      const std::vector<BenchmarkRow> rows = RunBenchmark(*g.game, config);
      if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const BenchmarkRow& r : rows) {
          nlohmann::json row = {{"method", r.method},   {"order", r.order},
                                {"budget", r.budget},   {"run_seed", r.run_seed},
                                {"status", r.status}};
          row["mse"] = r.ok() ? nlohmann::json(r.mse) : nlohmann::json(nullptr);
          row["prec_at_10"] =
              r.ok() ? nlohmann::json(r.prec_at_10) : nlohmann::json(nullptr);
          row["runtime_ms"] = r.runtime_ms;
          j.push_back(row);
        }
        Emit(DumpJson({{"rows", j}}) + "\n", out_path, out);
      } else {
        std::ostringstream csv;
        WriteBenchmarkCsv(csv, rows);
        Emit(csv.str(), out_path, out);
      }
    } else if (*validate) {
      if (n_min > n_max) throw std::invalid_argument("--n-min exceeds --n-max");
      std::vector<ConjectureReport> reports;
      if (which != "sii") reports.push_back(ValidateConjectureInverse(n_min, n_max, conj_mu));
      if (which != "inverse") {
        reports.push_back(
            ValidateConjectureSii(n_min, n_max, soums, terms, seed, conj_mu));
      }
      bool pass = true;
      nlohmann::json j = nlohmann::json::array();
      for (const ConjectureReport& r : reports) {
        out << ConjectureTable(r);
        pass = pass && r.pass;
        j.push_back(r.ToJson());
      }
      if (!out_path.empty()) Emit(DumpJson(j) + "\n", out_path, out);
      return pass ? kExitOk : kExitCheckFailed;
    } else if (*gen) {
      if (!IsSoumSpec(src.soum)) throw std::invalid_argument("gen-soum needs a SOUM spec");
      const auto [spec, spec_seed] = ParseSoumSpec(src.soum);
      const SoumGame game = GenerateSoum(spec, spec_seed.value_or(seed));
      Emit(DumpJson(game.ToJson()) + "\n", out_path, out);
    } else if (*precompute) {
      const LoadedGame g = Load(src);
      const LookupGame table = LookupGame::Tabulate(*g.game, force);
      Emit(DumpJson(table.ToJson()) + "\n", out_path, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace kshapiq::cli
