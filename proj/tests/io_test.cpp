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
#include <gtest/gtest.h>

#include "eoa/error.hpp"
#include "eoa/io.hpp"
#include "generators.hpp"

namespace eoa {
namespace {

ErrorCode parseCode(const std::string& text) {
  try {
    parseState(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorCode::kInvalidArgument;
}

TEST(StateJson, ParsesPureState) {
  const ExampleState s = parseState(R"({"systems":[{"label":"A","dim":2},{"label":"B","dim":2}],
    "kind":"pure","amplitudes":[[0.7071067811865476,0],[0,0],[0,0],[0.7071067811865476,0]],
    "roles":{"a":"A","b":"B","helpers":[],"reference":null}})");
  EXPECT_TRUE(s.state.isPure());
  EXPECT_EQ(s.roles.a, "A");
  EXPECT_FALSE(s.roles.reference.has_value());
}

TEST(StateJson, ParsesMixedState) {
  const ExampleState s = parseState(R"({"systems":[{"label":"Q","dim":2}],"kind":"mixed",
    "matrix":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]})");
  EXPECT_FALSE(s.state.isPure());
}

TEST(StateJson, Errors) {
  EXPECT_EQ(parseCode("{"), ErrorCode::kParseError);
  EXPECT_EQ(parseCode(R"({"kind":"pure"})"), ErrorCode::kParseError);
  EXPECT_EQ(parseCode(R"({"systems":[{"label":"A","dim":2}],"amplitudes":[[1,0]]})"), ErrorCode::kParseError);
  EXPECT_EQ(parseCode(R"({"systems":[{"label":"A","dim":2}],"amplitudes":[[1,0],[1,0]]})"), ErrorCode::kInvalidState);
  EXPECT_EQ(parseCode(R"({"systems":[{"label":"A","dim":2}],"kind":"mixed","matrix":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]})"),
            ErrorCode::kNotPSD);
  EXPECT_EQ(parseCode(R"({"systems":[{"label":"A","dim":2},{"label":"A","dim":2}],"amplitudes":[1,0,0,0]})"),
            ErrorCode::kLabelClash);
}

TEST(StateJson, RoundTripIsExact) {
  for (const char* name : {"factorized-chain", "cnot-corrupted", "cq", "chain-2-repeaters", "decoupling"}) {
    const ExampleState a = namedExample(name);
    const std::string text = emitState(a);
    const ExampleState b = parseState(text);
    EXPECT_EQ(emitState(b), text) << name;
    EXPECT_LT(maxAbsDiff(a.state.rho(), b.state.rho()), 1e-14) << name;
    EXPECT_EQ(a.roles.helpers, b.roles.helpers);
    EXPECT_EQ(a.roles.groups, b.roles.groups);
    EXPECT_EQ(a.links, b.links);
  }
}

TEST(PovmJson, Parses) {
  const POVM p = parsePOVM(R"({"system":"C","elements":[[[[1,0],[0,0]],[[0,0],[0,0]]],[[[0,0],[0,0]],[[0,0],[1,0]]]]})");
  EXPECT_EQ(p.system, Labels{"C"});
  ASSERT_EQ(p.elements.size(), 2u);
  EXPECT_NO_THROW(p.validate());
}

TEST(ReportFormat, NineSignificantDigits) {
  RateReport r;
  r.set("L", 0.39912396312345);
  EXPECT_EQ(reportToCsv(r), "name,value\nL,0.399123963\n");
  EXPECT_EQ(reportToJson(r).dump(), R"({"L":0.399123963,"notes":[]})");
}

TEST(DecouplingFormat, CsvColumns) {
  DecouplingStats s;
  s.n = 2;
  TrialStats t;
  t.avgTraceDistR = 0.5;
  t.avgTraceDistB = 1.0 / 3.0;
  s.perTrial.push_back(t);
  EXPECT_EQ(decouplingToCsv({s}), "n,trial,avgTraceDistR,avgTraceDistB,jointSuccessFraction\n2,0,0.5,0.333333333,0\n");
}

}  // namespace
}  // namespace eoa
