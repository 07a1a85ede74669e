// Copyright 2026 The eoa Authors
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
#include "eoa/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "eoa/io.hpp"
#include "eoa/measure.hpp"
#include "eoa/qstate.hpp"
#include "eoa/rates.hpp"
#include "eoa/typicality.hpp"

namespace eoa {
namespace {

constexpr std::uint64_t kDefaultSeed = 42;

struct RoleFlags {
  std::string a;
  std::string b;
  std::string r;
  std::vector<std::string> helpers;
  std::vector<CLI::Option*> helpersOpts;
};

void addRoleFlags(CLI::App* sub, RoleFlags& flags) {
  sub->add_option("--a", flags.a, "Override recipient A");
  sub->add_option("--b", flags.b, "Override recipient B");
  flags.helpersOpts.push_back(sub->add_option("--helpers", flags.helpers, "Override helpers (comma separated)")->delimiter(','));
}

void applyRoleFlags(ExampleState& s, const RoleFlags& flags) {
  if (!flags.a.empty()) s.roles.a = flags.a;
  if (!flags.b.empty()) s.roles.b = flags.b;
  if (!flags.r.empty()) s.roles.reference = flags.r;
  const bool helpers_set = std::any_of(flags.helpersOpts.begin(), flags.helpersOpts.end(),
                                       [](const CLI::Option* o) { return o->count() > 0; });
  if (helpers_set) {
    s.roles.helpers = flags.helpers;
    s.roles.groups.clear();
  }
}

ExampleState readState(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parseState(text);
  }
  return loadState(path);
}

std::string joined(const Labels& labels) {
  std::string out;
  for (const auto& l : labels) out += l;
  return out;
}

// A report plus boolean verdicts that do not fit the numeric table.
struct Output {
  RateReport report;
  std::vector<std::pair<std::string, bool>> flags;
};

Json outputJson(const Output& o) {
  Json j = reportToJson(o.report);
  Json notes = j["notes"];
  j.erase("notes");
  for (const auto& [name, value] : o.flags) j[name] = value;
  j["notes"] = notes;
  return j;
}

void emit(std::ostream& out, const Output& o, bool csv) {
  if (csv) {
    out << reportToCsv(o.report);
    for (const auto& [name, value] : o.flags) out << name << ',' << (value ? "true" : "false") << '\n';
  } else {
    out << outputJson(o).dump(2) << '\n';
  }
}

void addLinkRates(const ExampleState& s, RateReport& report) {
  if (s.links.empty()) return;
  const std::vector<ChainLink> links = chainLinksFrom(s.state, s.links);
  const ChainRate chain = chainHierarchicalRate(links);
  for (std::size_t k = 0; k < links.size(); ++k) {
    report.set("I(" + joined(links[k].sender) + ">" + joined(links[k].receiver) + ")", chain.perLink[k]);
  }
  report.set("R_hier_raw", chain.raw);
  report.set(kKeyHier, chain.rate);
}

Output ratesOutput(const ExampleState& s) {
  Output o;
  o.report = assistedLowerBoundL(s.state, s.roles);
  if (!s.roles.helpers.empty()) {
    const HashingVerdict v = beatsHashing(s.state, s.roles);
    o.report.set("I(C>AB)", v.coherentCToAB);
    o.report.set("S(A|BC)", v.condAGivenBC);
    o.report.set("S(A|B)", v.condAGivenB);
    o.flags.emplace_back("beats_hashing", v.beats);
  } else {
    o.flags.emplace_back("beats_hashing", false);
  }
  addLinkRates(s, o.report);
  return o;
}

Output mincutOutput(const ExampleState& s) {
  Output o;
  o.report = minCutCoherentInfo(s.state, s.roles);
  if (!s.roles.helpers.empty()) {
    const RateReport upper = cutUpperBoundReport(s.state, s.roles);
    o.report.set(kKeyCutUpper, upper.at(kKeyCutUpper));
    for (const auto& n : upper.notes) o.report.notes.push_back(n);
  }
  return o;
}

Output measureOutput(const ExampleState& s, const POVM& povm) {
  s.roles.validate(s.state.reg());
  const MeasurementEnsemble ens = measureHelper(s.state, povm.system, povm);
  Output o;
  const Labels a = {s.roles.a};
  const Labels b = {s.roles.b};
  for (const auto& out : ens.outcomes) {
    const std::string tag = "[" + std::to_string(out.index) + "]";
    o.report.set("p" + tag, out.prob);
    o.report.set("I(A>B)" + tag, coherentInfo(out.state, a, b));
  }
  o.report.set("avg_hashing", avgHashingRate(ens, a, b));
  o.report.set("discarded", ens.discardedMass);
  return o;
}

MultiState twoQubit(const std::string& name) {
  return MultiState::fromAmplitudes(Register({{"X", 2}, {"Y", 2}}), namedTwoQubitState(name));
}

struct ExampleFlags {
  std::string name;
  bool emitState = false;
  bool rates = false;
  std::vector<double> p;
  std::vector<std::string> psi;
  std::vector<std::string> links;
  std::size_t m = 2;
};

ExampleState buildExample(const ExampleFlags& f) {
  if (f.name == "cq" && (!f.p.empty() || !f.psi.empty())) {
    std::vector<double> p = f.p.empty() ? std::vector<double>{0.5, 0.5} : f.p;
    std::vector<std::string> names = f.psi.empty() ? std::vector<std::string>{"bell", "product"} : f.psi;
    if (p.size() != names.size()) throw Error(ErrorCode::kInvalidArgument, "--p and --psi must have equal length");
    std::vector<std::vector<Complex>> states;
    for (const auto& n : names) states.push_back(namedTwoQubitState(n));
    return cqExample(p, states);
  }
  if (f.name == "maximally-entangled") return maximallyEntangledExample(f.m);
  if (f.name == "chain-2-repeaters" && !f.links.empty()) {
    std::vector<MultiState> links;
    for (const auto& n : f.links) links.push_back(twoQubit(n));
    return chainTwoRepeatersExample(links);
  }
  return namedExample(f.name);
}

Output exampleRates(const ExampleFlags& f, const ExampleState& s) {
  Output o = ratesOutput(s);
  if (f.name == "cq") {
    o.report.set("cq_assistance", cqAssistance(s.state, s.roles));
    const MeasurementEnsemble ens = measureHelper(s.state, s.roles.helpers, basisPOVM(s.roles.helpers, s.state.reg().dimOf(s.roles.helpers)));
    const Labels a = {s.roles.a};
    const Labels b = {s.roles.b};
    o.report.set("avg_hashing_basis", avgHashingRate(ens, a, b));
  }
  return o;
}

struct DecoupleFlags {
  std::string state;
  std::vector<std::size_t> n;
  long long trials = 20;
  double delta = 0.2;
  double xi1 = 0.5;
  double xi2 = 0.5;
  std::uint64_t seed = kDefaultSeed;
  bool projectAll = false;
};

std::uint64_t seedFromEnv() {
  const char* env = std::getenv("EOA_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') throw Error(ErrorCode::kInvalidArgument, "EOA_SEED must be an unsigned integer");
  return v;
}

}  // namespace

int exitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian:
    case ErrorCode::kNoConvergence:
    case ErrorCode::kNotPSD:
    case ErrorCode::kInvalidState:
    case ErrorCode::kNotUnitary:
    case ErrorCode::kInvalidPOVM:
    case ErrorCode::kNotClassicalQuantum:
    case ErrorCode::kDecompositionMismatch:
    case ErrorCode::kDegenerateProjection:
      return kExitInvariant;
    case ErrorCode::kTooManyHelpers:
    case ErrorCode::kTooLarge:
      return kExitResource;
    default:
      return kExitUsage;
  }
}

int runCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app("Assisted entanglement distillation rates and decoupling experiments", "eoa");
  app.require_subcommand(1);
  bool csv = false;
  app.add_flag("--csv", csv, "Emit CSV instead of JSON");

  std::string state_path;
  RoleFlags roles;
  auto* rates = app.add_subcommand("rates", "Coherent informations, L and the random-measurement bound");
  rates->add_option("state", state_path, "State description (JSON, - for stdin)")->required();
  addRoleFlags(rates, roles);
  rates->add_flag("--csv", csv, "Emit CSV instead of JSON");

  auto* mincut = app.add_subcommand("mincut", "Minimum-cut coherent information over helper bipartitions");
  mincut->add_option("state", state_path, "State description (JSON, - for stdin)")->required();
  addRoleFlags(mincut, roles);
  mincut->add_flag("--csv", csv, "Emit CSV instead of JSON");

  std::string povm_path;
  auto* measure = app.add_subcommand("measure", "Measure the helper and report outcome rates");
  measure->add_option("state", state_path, "State description (JSON, - for stdin)")->required();
  measure->add_option("--povm", povm_path, "POVM description (JSON)")->required();
  addRoleFlags(measure, roles);
  measure->add_flag("--csv", csv, "Emit CSV instead of JSON");

  ExampleFlags ex;
  auto* example = app.add_subcommand("example", "Built-in example states");
  example->add_option("name", ex.name,
                      "factorized-chain, cnot-corrupted, decoupling, maximally-entangled, chain-2-repeaters, cq")
      ->required();
  example->add_flag("--emit-state", ex.emitState, "Print the state description");
  example->add_flag("--rates", ex.rates, "Print the rate report");
  example->add_option("--p", ex.p, "cq: outcome probabilities")->delimiter(',');
  example->add_option("--psi", ex.psi, "cq: bell, product or schmidt:x per outcome")->delimiter(',');
  example->add_option("--links", ex.links, "chain-2-repeaters: three link states")->delimiter(',');
  example->add_option("--m", ex.m, "maximally-entangled: number of helpers");
  example->add_flag("--csv", csv, "Emit CSV instead of JSON");

  DecoupleFlags dec;
  auto* decouple = app.add_subcommand("decouple", "Random typical measurement decoupling experiment");
  decouple->add_option("state", dec.state, "Pure state description (JSON, - for stdin)")->required();
  decouple->add_option("--n", dec.n, "Block lengths (comma separated)")->delimiter(',')->required();
  decouple->add_option("--trials", dec.trials, "Haar trials per block length");
  decouple->add_option("--delta", dec.delta, "Typicality slack");
  decouple->add_option("--xi1", dec.xi1, "Reference distance threshold");
  decouple->add_option("--xi2", dec.xi2, "B distance threshold");
  auto* seed_opt = decouple->add_option("--seed", dec.seed, "Master seed (default EOA_SEED or 42)");
  decouple->add_flag("--project-all", dec.projectAll, "Also project B and R onto their typical subspaces");
  decouple->add_option("--r", roles.r, "Override the reference system");
  addRoleFlags(decouple, roles);
  decouple->add_flag("--csv", csv, "Emit CSV instead of JSON");

  auto* selftest = app.add_subcommand("selftest", "Run the embedded golden suite");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (rates->parsed() || mincut->parsed() || measure->parsed()) {
      ExampleState s = readState(state_path, in);
      applyRoleFlags(s, roles);
      Output o;
      if (rates->parsed()) o = ratesOutput(s);
      else if (mincut->parsed()) o = mincutOutput(s);
      else o = measureOutput(s, loadPOVM(povm_path));
      emit(out, o, csv);
      return kExitOk;
    }
    if (example->parsed()) {
      const ExampleState s = buildExample(ex);
      const bool want_state = ex.emitState || !ex.rates;
      if (want_state && ex.rates) {
        Json j;
        j["state"] = stateToJson(s);
        j["report"] = outputJson(exampleRates(ex, s));
        out << j.dump(2) << '\n';
      } else if (want_state) {
        out << emitState(s);
      } else {
        emit(out, exampleRates(ex, s), csv);
      }
      return kExitOk;
    }
    if (decouple->parsed()) {
      if (dec.trials < 1) throw Error(ErrorCode::kInvalidArgument, "--trials must be >= 1");
      ExampleState s = readState(dec.state, in);
      applyRoleFlags(s, roles);
      if (s.roles.helpers.empty() || s.roles.b.empty() || !s.roles.reference) {
        throw Error(ErrorCode::kRoleMissing, "decouple needs helpers, b and reference roles");
      }
      DecouplingOptions opts;
      opts.nList = dec.n;
      opts.trials = static_cast<std::size_t>(dec.trials);
      opts.delta = dec.delta;
      opts.xi1 = dec.xi1;
      opts.xi2 = dec.xi2;
      opts.seed = seed_opt->count() > 0 ? dec.seed : seedFromEnv();
      opts.projectAll = dec.projectAll;
      const DecouplingRoles dr{s.roles.helpers, {s.roles.b}, {*s.roles.reference}};
      const std::vector<DecouplingStats> stats = decouplingExperiment(s.state, dr, opts);
      if (csv) out << decouplingToCsv(stats);
      else out << decouplingToJson(stats).dump(2) << '\n';
      return kExitOk;
    }
    if (selftest->parsed()) return runSelftest(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace eoa
