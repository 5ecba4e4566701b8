// Copyright 2026 The qikit authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "qikit/render.hpp"

using namespace qikit;

namespace {

std::size_t count_occurrences(const std::string& haystack,
                              const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("rendering is deterministic") {
  const QuantumInstrument instr = fixtures::experimental_instrument();
  CHECK(render_instrument_svg(instr) == render_instrument_svg(instr));
}

TEST_CASE("ideal instrument renders four 0.50 cells per branch") {
  const std::string svg =
      render_instrument_svg(ideal_projective_instrument(1));
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  // Four nonzero cells per branch at magnitude 0.50; branch 1 carries two
  // negative entries at (I,Z) and (Z,I).
  CHECK(count_occurrences(svg, ">0.50<") == 6);
  CHECK(count_occurrences(svg, ">-0.50<") == 2);
  CHECK(svg.find("outcome 0") != std::string::npos);
  CHECK(svg.find("outcome 1") != std::string::npos);
}

TEST_CASE("experimental branch annotates the 0.49 top-row entry") {
  const std::string svg =
      render_instrument_svg(fixtures::experimental_instrument());
  CHECK(svg.find(">0.49<") != std::string::npos);
  CHECK(svg.find(">-0.49<") != std::string::npos);  // branch 1 IZ entry
}

TEST_CASE("negative and positive values use distinct hue families") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  const std::string svg = render_ptm_svg(Ptm(std::move(m)), "signed");
  CHECK(svg.find("#b2182b") != std::string::npos);  // +1: red end
  CHECK(svg.find("#2166ac") != std::string::npos);  // -1: blue end
}

TEST_CASE("the zero matrix renders at the uniform midpoint color") {
  const std::string svg =
      render_ptm_svg(Ptm(Eigen::MatrixXd::Zero(4, 4)), "zero");
  // 16 cells plus the background rectangle, all white.
  CHECK(count_occurrences(svg, "fill=\"#ffffff\"") == 17);
  CHECK(count_occurrences(svg, ">0.00<") == 16);
}
