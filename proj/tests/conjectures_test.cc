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

#include "kshapiq/conjectures.h"

#include <gtest/gtest.h>

#include "kshapiq/exact.h"

namespace kshapiq {
namespace {

TEST(ConjectureInverseTest, SmallCasesPass) {
  EXPECT_LT(PrecisionMatrixMse(4, 1, 1e7), kConjectureThreshold);
  EXPECT_LT(PrecisionMatrixMse(4, 2, 1e7), kConjectureThreshold);
}

TEST(ConjectureInverseTest, ReportCoversGrid) {
  const ConjectureReport r = ValidateConjectureInverse(2, 7);
  EXPECT_EQ(r.id, "inverse");
  // k = 1..floor(n/2) for n = 2..7.
  EXPECT_EQ(r.cases.size(), 1U + 1U + 2U + 2U + 3U + 3U);
  EXPECT_TRUE(r.pass);
  double worst = 0.0;
  for (const ConjectureCase& c : r.cases) {
    EXPECT_TRUE(c.pass) << c.n << "," << c.k;
    EXPECT_TRUE(c.error.empty());
    worst = std::max(worst, c.mse);
  }
  EXPECT_EQ(r.max_mse, worst);
  EXPECT_EQ(r.pass, r.max_mse < r.threshold);
  const nlohmann::json j = r.ToJson();
  EXPECT_EQ(j.at("conjecture"), "inverse");
  EXPECT_EQ(j.at("cases").size(), r.cases.size());
}

TEST(ConjectureSiiTest, SplitRepresentationOnSmallSoums) {
  const SoumGame g = GenerateSoum({7, 200, 7, 0}, 3);
  for (unsigned k = 1; k <= 3; ++k) {
    const SplitRepresentationError e = SplitRepresentationMse(g, k, 1e7);
    EXPECT_LT(e.limit_mse, kConjectureThreshold) << k;
    EXPECT_LE(e.limit_mse, e.raw_mse + 1e-30) << k;
  }
}

TEST(ConjectureSiiTest, RepresentationMatchesAnalyticSii) {
  const SoumGame g = GenerateSoum({6, 50, 6, 0}, 8);
  const std::vector<double> rep = SplitRepresentation(g, 3, 1e7);
  const InteractionValues truth = g.ExactSii(3);
  const std::vector<Coalition> keys = truth.keys_of_order(3);
  ASSERT_EQ(rep.size(), keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const double v = truth.at(keys[i]);
    EXPECT_NEAR(rep[i], v, 1e-3 * (1.0 + std::abs(v))) << keys[i].to_string();
  }
}

TEST(ConjectureSiiTest, ReportPassesOnSmallRange) {
  const ConjectureReport r = ValidateConjectureSii(2, 7, 3, 200, 1);
  EXPECT_EQ(r.id, "sii");
  EXPECT_TRUE(r.pass);
  for (const ConjectureCase& c : r.cases) {
    EXPECT_LT(c.mse, kConjectureThreshold) << c.n << "," << c.k;
    EXPECT_GE(c.raw_mse, 0.0);
  }
}

TEST(ConjectureSiiTest, Deterministic) {
  const ConjectureReport a = ValidateConjectureSii(4, 6, 2, 100, 5);
  const ConjectureReport b = ValidateConjectureSii(4, 6, 2, 100, 5);
  EXPECT_EQ(a.ToJson().dump(), b.ToJson().dump());
}

TEST(ConjectureTest, RejectsBadRange) {
  EXPECT_THROW(ValidateConjectureInverse(5, 4), std::invalid_argument);
  EXPECT_THROW(ValidateConjectureInverse(1, 4), std::invalid_argument);
}

}  // namespace
}  // namespace kshapiq
