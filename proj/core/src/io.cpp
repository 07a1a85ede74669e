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
#include "eoa/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "eoa/error.hpp"

namespace eoa {
namespace {

[[noreturn]] void parseFail(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

const Json& field(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) parseFail(std::string("missing field '") + key + "'");
  return *it;
}

std::string asString(const Json& j, const char* what) {
  if (!j.is_string()) parseFail(std::string(what) + " must be a string");
  return j.get<std::string>();
}

double asNumber(const Json& j, const char* what) {
  if (!j.is_number()) parseFail(std::string(what) + " must be a number");
  return j.get<double>();
}

Complex asComplex(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) parseFail("complex entries must be [re, im]");
  return {asNumber(j[0], "real part"), asNumber(j[1], "imaginary part")};
}

Labels asLabels(const Json& j, const char* what) {
  if (j.is_string()) return {j.get<std::string>()};
  if (!j.is_array()) parseFail(std::string(what) + " must be a label or a list of labels");
  Labels out;
  for (const auto& x : j) out.push_back(asString(x, what));
  return out;
}

CMatrix asMatrix(const Json& j, std::size_t dim, const char* what) {
  if (!j.is_array() || j.size() != dim) parseFail(std::string(what) + " must have " + std::to_string(dim) + " rows");
  CMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!j[r].is_array() || j[r].size() != dim) {
      parseFail(std::string(what) + " must have " + std::to_string(dim) + " columns");
    }
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = asComplex(j[r][c]);
  }
  return m;
}

Json parseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parseFail(std::string("malformed JSON: ") + e.what());
  }
}

std::string formatExact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json complexJson(Complex z, bool exact) {
  // Adding 0.0 maps -0.0 to 0.0.
  auto conv = [exact](double x) { return (exact ? std::stod(formatExact(x)) : roundSignificant(x)) + 0.0; };
  return Json::array({conv(z.real()), conv(z.imag())});
}

}  // namespace

double roundSignificant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::stod(buf);
}

std::string formatNumber(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExampleState parseState(const std::string& text) {
  const Json j = parseJson(text);
  if (!j.is_object()) parseFail("state description must be an object");

  const Json& systems = field(j, "systems");
  if (!systems.is_array() || systems.empty()) parseFail("'systems' must be a nonempty array");
  std::vector<Subsystem> subs;
  for (const auto& s : systems) {
    if (!s.is_object()) parseFail("each system must be an object");
    const Json& dim = field(s, "dim");
    if (!dim.is_number_integer() || dim.get<long long>() < 1) parseFail("system dims must be positive integers");
    subs.push_back({asString(field(s, "label"), "system label"), dim.get<std::size_t>()});
  }
  Register reg(std::move(subs));

  const std::string kind = j.contains("kind") ? asString(j["kind"], "kind") : std::string("pure");
  std::optional<MultiState> state;
  if (kind == "pure") {
    const Json& amps = field(j, "amplitudes");
    if (!amps.is_array() || amps.size() != reg.totalDim()) {
      parseFail("'amplitudes' must have " + std::to_string(reg.totalDim()) + " entries");
    }
    std::vector<Complex> v;
    for (const auto& a : amps) v.push_back(asComplex(a));
    state = MultiState::fromAmplitudes(reg, v);
  } else if (kind == "mixed") {
    state = MultiState(reg, asMatrix(field(j, "matrix"), reg.totalDim(), "'matrix'"));
  } else {
    parseFail("'kind' must be \"pure\" or \"mixed\"");
  }

  RoleMap roles;
  if (j.contains("roles")) {
    const Json& r = j["roles"];
    if (!r.is_object()) parseFail("'roles' must be an object");
    if (r.contains("a") && !r["a"].is_null()) roles.a = asString(r["a"], "roles.a");
    if (r.contains("b") && !r["b"].is_null()) roles.b = asString(r["b"], "roles.b");
    if (r.contains("helpers") && !r["helpers"].is_null()) roles.helpers = asLabels(r["helpers"], "roles.helpers");
    if (r.contains("reference") && !r["reference"].is_null()) {
      roles.reference = asString(r["reference"], "roles.reference");
    }
    if (r.contains("helper_groups") && !r["helper_groups"].is_null()) {
      if (!r["helper_groups"].is_array()) parseFail("roles.helper_groups must be an array");
      for (const auto& g : r["helper_groups"]) roles.groups.push_back(asLabels(g, "roles.helper_groups"));
    }
  }

  std::vector<std::pair<Labels, Labels>> links;
  if (j.contains("links") && !j["links"].is_null()) {
    if (!j["links"].is_array()) parseFail("'links' must be an array");
    for (const auto& l : j["links"]) {
      if (!l.is_object()) parseFail("each link must be an object");
      links.emplace_back(asLabels(field(l, "sender"), "link sender"), asLabels(field(l, "receiver"), "link receiver"));
    }
  }
  return ExampleState{std::move(*state), std::move(roles), std::move(links)};
}

ExampleState loadState(const std::string& path) { return parseState(readFile(path)); }

Json stateToJson(const ExampleState& s) {
  Json j;
  Json systems = Json::array();
  for (const auto& sub : s.state.reg().subsystems()) systems.push_back(Json{{"label", sub.label}, {"dim", sub.dim}});
  j["systems"] = systems;
  if (s.state.isPure()) {
    j["kind"] = "pure";
    Json amps = Json::array();
    for (const auto& z : s.state.amplitudes()) amps.push_back(complexJson(z, true));
    j["amplitudes"] = amps;
  } else {
    j["kind"] = "mixed";
    Json rows = Json::array();
    const CMatrix& rho = s.state.rho();
    for (std::size_t r = 0; r < rho.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < rho.cols(); ++c) row.push_back(complexJson(rho(r, c), true));
      rows.push_back(row);
    }
    j["matrix"] = rows;
  }
  Json roles;
  roles["a"] = s.roles.a.empty() ? Json(nullptr) : Json(s.roles.a);
  roles["b"] = s.roles.b.empty() ? Json(nullptr) : Json(s.roles.b);
  roles["helpers"] = s.roles.helpers;
  roles["reference"] = s.roles.reference ? Json(*s.roles.reference) : Json(nullptr);
  if (!s.roles.groups.empty()) roles["helper_groups"] = s.roles.groups;
  j["roles"] = roles;
  if (!s.links.empty()) {
    Json links = Json::array();
    for (const auto& [sender, receiver] : s.links) links.push_back(Json{{"sender", sender}, {"receiver", receiver}});
    j["links"] = links;
  }
  return j;
}

std::string emitState(const ExampleState& s) { return stateToJson(s).dump(2) + "\n"; }

POVM parsePOVM(const std::string& text) {
  const Json j = parseJson(text);
  if (!j.is_object()) parseFail("POVM description must be an object");
  POVM povm;
  povm.system = asLabels(field(j, "system"), "POVM system");
  const Json& elements = field(j, "elements");
  if (!elements.is_array() || elements.empty()) parseFail("'elements' must be a nonempty array");
  const std::size_t dim = elements[0].is_array() ? elements[0].size() : 0;
  if (dim == 0) parseFail("POVM elements must be square matrices");
  for (const auto& e : elements) povm.elements.push_back(asMatrix(e, dim, "POVM element"));
  return povm;
}

POVM loadPOVM(const std::string& path) { return parsePOVM(readFile(path)); }

Json reportToJson(const RateReport& report) {
  Json j;
  for (const auto& [name, value] : report.quantities) j[name] = roundSignificant(value);
  if (report.minimizingCut) j["minimizing_cut"] = *report.minimizingCut;
  j["notes"] = report.notes;
  return j;
}

std::string reportToCsv(const RateReport& report) {
  std::string out = "name,value\n";
  for (const auto& [name, value] : report.quantities) out += name + "," + formatNumber(value) + "\n";
  return out;
}

Json decouplingToJson(const std::vector<DecouplingStats>& stats) {
  Json runs = Json::array();
  for (const auto& s : stats) {
    Json run;
    run["n"] = s.n;
    run["trials"] = s.trials;
    run["seed"] = s.seed;
    run["delta"] = roundSignificant(s.delta);
    run["xi1"] = roundSignificant(s.xi1);
    run["xi2"] = roundSignificant(s.xi2);
    run["typicalDim"] = s.typicalDim;
    run["discardedMass"] = roundSignificant(s.discardedMass);
    run["meanR"] = roundSignificant(s.meanR);
    run["stddevR"] = roundSignificant(s.stddevR);
    run["meanB"] = roundSignificant(s.meanB);
    run["stddevB"] = roundSignificant(s.stddevB);
    run["meanJoint"] = roundSignificant(s.meanJoint);
    run["stddevJoint"] = roundSignificant(s.stddevJoint);
    Json trials = Json::array();
    for (const auto& t : s.perTrial) {
      trials.push_back(Json{{"trial", t.trial},
                            {"outcomes", t.outcomes},
                            {"avgTraceDistR", roundSignificant(t.avgTraceDistR)},
                            {"avgTraceDistB", roundSignificant(t.avgTraceDistB)},
                            {"jointSuccessFraction", roundSignificant(t.jointSuccessFraction)}});
    }
    run["perTrial"] = trials;
    run["notes"] = s.notes;
    runs.push_back(run);
  }
  return Json{{"runs", runs}};
}

std::string decouplingToCsv(const std::vector<DecouplingStats>& stats) {
  std::string out = "n,trial,avgTraceDistR,avgTraceDistB,jointSuccessFraction\n";
  for (const auto& s : stats) {
    for (const auto& t : s.perTrial) {
      out += std::to_string(s.n) + "," + std::to_string(t.trial) + "," + formatNumber(t.avgTraceDistR) + "," +
             formatNumber(t.avgTraceDistB) + "," + formatNumber(t.jointSuccessFraction) + "\n";
    }
  }
  return out;
}

}  // namespace eoa
