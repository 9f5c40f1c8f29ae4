// Copyright 2026 The Covering Authors
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

#include <vector>

#include "covering/hypercover.hpp"
#include "covering/lp.hpp"
#include "doctest.h"

using covering::Rational;
using namespace covering::lp;

TEST_CASE("textbook LP reaches its known vertex") {
  DenseMatrix<double> a(3, 2);
  a(0, 0) = 1;
  a(1, 1) = 2;
  a(2, 0) = 3;
  a(2, 1) = 2;
  auto r = maximize<double>(a, {4, 12, 18}, {3, 5});
  REQUIRE(r.status == Status::kOptimal);
  CHECK(r.objective == doctest::Approx(36.0));
  CHECK(r.x[0] == doctest::Approx(2.0));
  CHECK(r.x[1] == doctest::Approx(6.0));
  // Complementary slackness: multipliers reproduce the objective.
  CHECK(4 * r.dual[0] + 12 * r.dual[1] + 18 * r.dual[2] ==
        doctest::Approx(36.0));
}

TEST_CASE("negative right-hand sides go through phase one") {
  // x + y <= 4, x >= 1, y >= 2.
  DenseMatrix<double> a(3, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  a(1, 0) = -1;
  a(2, 1) = -1;
  auto r = maximize<double>(a, {4, -1, -2}, {1, 2});
  REQUIRE(r.status == Status::kOptimal);
  CHECK(r.objective == doctest::Approx(7.0));
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(3.0));
}

TEST_CASE("infeasible and unbounded programs are reported") {
  DenseMatrix<double> a(2, 1);
  a(0, 0) = 1;
  a(1, 0) = -1;
  CHECK(maximize<double>(a, {1, -2}, {1}).status == Status::kInfeasible);

  DenseMatrix<double> b(1, 2);
  b(0, 0) = 1;
  b(0, 1) = -1;
  CHECK(maximize<double>(b, {1}, {0, 1}).status == Status::kUnbounded);
}

TEST_CASE("Beale's cycling example terminates under Bland's rule") {
  DenseMatrix<Rational> a(3, 4);
  a(0, 0) = Rational(1, 4);
  a(0, 1) = -60;
  a(0, 2) = Rational(-1, 25);
  a(0, 3) = 9;
  a(1, 0) = Rational(1, 2);
  a(1, 1) = -90;
  a(1, 2) = Rational(-1, 50);
  a(1, 3) = 3;
  a(2, 2) = 1;
  auto r = maximize<Rational>(a, {0, 0, 1},
                              {Rational(3, 4), -150, Rational(1, 50), -6});
  REQUIRE(r.status == Status::kOptimal);
  CHECK(r.objective == Rational(1, 20));
  CHECK(r.x[0] == Rational(1, 25));
  CHECK(r.x[2] == 1);
}
