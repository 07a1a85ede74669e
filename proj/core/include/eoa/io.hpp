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
#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eoa/measure.hpp"
#include "eoa/qstate.hpp"
#include "eoa/rates.hpp"
#include "eoa/typicality.hpp"

namespace eoa {

using Json = nlohmann::ordered_json;

/// Rounds to 9 significant digits so that serialized reports are diff-stable.
double roundSignificant(double x, int digits = 9);
/// printf("%.9g") of x.
std::string formatNumber(double x);

/// State description: systems, pure amplitudes or a density matrix, roles and
/// optional chain links. Structural problems throw ParseError; physical ones
/// (normalization, positivity) throw the corresponding invariant error.
ExampleState parseState(const std::string& text);
ExampleState loadState(const std::string& path);
/// Canonical form: pure states as amplitudes with 17 significant digits,
/// everything else as a matrix.
Json stateToJson(const ExampleState& s);
std::string emitState(const ExampleState& s);

POVM parsePOVM(const std::string& text);
POVM loadPOVM(const std::string& path);

Json reportToJson(const RateReport& report);
/// "name,value" header followed by one row per quantity.
std::string reportToCsv(const RateReport& report);

Json decouplingToJson(const std::vector<DecouplingStats>& stats);
/// Columns n,trial,avgTraceDistR,avgTraceDistB,jointSuccessFraction.
std::string decouplingToCsv(const std::vector<DecouplingStats>& stats);

std::string readFile(const std::string& path);

}  // namespace eoa
