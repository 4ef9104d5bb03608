// Copyright 2026 The pimkit Authors
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

#include "pim/dsl/parser.hpp"
#include "pim/dsl/printer.hpp"
#include "pim/dsl/regions.hpp"
#include "pim/dsl/workload.hpp"
#include "support/fixtures.hpp"
#include "support/program_gen.hpp"

namespace pim::dsl {
namespace {

TEST(ParserTest, RunningExample) {
  const auto p = testing::load_program("fig2.cpl");
  ASSERT_EQ(p.functions().size(), 3u);
  EXPECT_TRUE(p.has_function("main"));
  EXPECT_TRUE(p.has_function("foo"));
  EXPECT_TRUE(p.has_function("bar"));
  EXPECT_EQ(list_options(p), (std::vector<std::string>{"A", "B", "C", "D"}));
}

TEST(ParserTest, MinimalProgram) {
  const auto p = parse_program("fn main() { cost 1.0; }");
  EXPECT_EQ(p.functions().size(), 1u);
  EXPECT_TRUE(list_options(p).empty());
  EXPECT_EQ(enumerate_regions(p, Granularity::kControlFlow).size(), 1u);
}

TEST(ParserTest, DuplicateGetoptListedOnce) {
  const auto p = parse_program(R"(fn main() { let a = getopt("A"); let b = getopt("A"); })");
  EXPECT_EQ(list_options(p), std::vector<std::string>{"A"});
}

TEST(ParserTest, SemanticErrors) {
  EXPECT_THROW(parse_program("fn main() { foo(); }"), ProgramError);
  EXPECT_THROW(parse_program("fn main() {} fn main() {}"), ProgramError);
  EXPECT_THROW(parse_program("fn foo() {}"), ProgramError);
  EXPECT_THROW(parse_program("fn main(x) {}"), ProgramError);
  EXPECT_THROW(parse_program("fn main() { f(1); } fn f(a, b) {}"), ProgramError);
}

TEST(ParserTest, SyntaxErrorsCarryPosition) {
  try {
    parse_program("fn main() {\n  cost 1.0\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 1u);
  }
  EXPECT_THROW(parse_program("fn main() { let x = 1.5; }"), ParseError);
  EXPECT_THROW(parse_program("fn main() { cost -1; }"), ParseError);
  EXPECT_THROW(parse_program("fn main() { x = $; }"), ParseError);
  EXPECT_THROW(parse_program("fn main() { if (true) { return; } }"), ParseError);
  EXPECT_THROW(parse_program("fn f() { return 1; cost 1; } fn main() {}"), ParseError);
  EXPECT_THROW(parse_program(R"(fn main() { let a = getopt("A-B"); })"), ParseError);
}

TEST(ParserTest, CommentsAndElseIf) {
  const auto p = parse_program(R"(
    // leading comment
    fn main() {
      let x = getparam("N"); // trailing
      if (x < 1) { cost 1; } else if (x < 2) { cost 2; } else { cost 3; }
    })");
  EXPECT_EQ(p.params().count("N"), 1u);
  EXPECT_EQ(enumerate_regions(p, Granularity::kControlFlow).size(), 3u);
}

TEST(RegionsTest, RunningExampleGranularities) {
  const auto p = testing::load_program("fig2.cpl");
  const auto method = enumerate_regions(p, Granularity::kMethod);
  ASSERT_EQ(method.size(), 3u);
  EXPECT_EQ(method[0].key, "main");
  EXPECT_EQ(method[1].key, "foo");
  EXPECT_EQ(method[2].key, "bar");
  EXPECT_EQ(enumerate_regions(p, Granularity::kProgram).size(), 1u);

  const auto cf = enumerate_regions(p, Granularity::kControlFlow);
  ASSERT_EQ(cf.size(), 7u);
  std::size_t decisions = 0;
  for (const auto& r : cf) decisions += r.key.find('@') != std::string::npos ? 1 : 0;
  EXPECT_EQ(decisions, 4u);
  EXPECT_EQ(cf[0].key, "main:body");
  EXPECT_EQ(cf[1].key, "main:if@9:3");
  EXPECT_EQ(cf[2].key, "main:while@17:3");
}

TEST(RegionsTest, ParseGranularity) {
  EXPECT_EQ(parse_granularity("cf"), Granularity::kControlFlow);
  EXPECT_EQ(parse_granularity("method"), Granularity::kMethod);
  EXPECT_EQ(parse_granularity("program"), Granularity::kProgram);
  EXPECT_THROW(parse_granularity("loop"), Error);
}

TEST(PrinterTest, RoundTripRunningExample) {
  const auto p = testing::load_program("fig2.cpl");
  const auto text = print_program(p);
  const auto q = parse_program(text);
  EXPECT_TRUE(same_structure(p, q));
  EXPECT_EQ(print_program(q), text);
}

TEST(PrinterTest, KeepsPrecedence) {
  const auto p = parse_program(
      "fn main() { let x = (1 - (2 - 3)) * (4 + 5); let b = !(true && false) || x < 3; }");
  const auto q = parse_program(print_program(p));
  EXPECT_TRUE(same_structure(p, q));
  EXPECT_NE(print_program(p).find("1 - (2 - 3)"), std::string::npos);
}

// Parse-print round trip over generated programs.
TEST(PrinterTest, RoundTripProperty) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    testing::ProgramGenerator gen(seed);
    const auto p = parse_program(gen.generate({}));
    const auto q = parse_program(print_program(p));
    EXPECT_TRUE(same_structure(p, q)) << seed;
    EXPECT_EQ(enumerate_regions(p, Granularity::kMethod).size(), p.functions().size());
    EXPECT_EQ(list_options(p), list_options(q));
  }
}

TEST(WorkloadTest, ParseAndCheck) {
  const auto w = parse_workload(R"({"N": 3, "M": 0})");
  EXPECT_EQ(w.at("N"), 3);
  EXPECT_THROW(parse_workload(R"({"N": -1})"), ProgramError);
  EXPECT_THROW(parse_workload(R"({"N": 1.5})"), ProgramError);
  EXPECT_THROW(parse_workload(R"([1])"), ProgramError);
  EXPECT_THROW(parse_workload("{"), ProgramError);

  const auto p = parse_program(R"(fn main() { let n = getparam("N"); })");
  EXPECT_NO_THROW(check_workload(p, w));
  EXPECT_THROW(check_workload(p, {}), ProgramError);
}

}  // namespace
}  // namespace pim::dsl
