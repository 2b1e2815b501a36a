#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>

#include <json.hpp>

#include "fovkit/errors.hpp"
#include "fovkit/io.hpp"
#include "fovkit/numrange.hpp"
#include "fovkit/verify.hpp"

using namespace fov;

TEST(Rng, SameSeedSameStream) {
  Rng a(99), b(99);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.uniform(), b.uniform());
  Rng c(5);
  for (int k = 0; k < 1000; ++k) {
    const double u = c.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const auto i = c.uniform_index(2, 8);
    EXPECT_GE(i, 2u);
    EXPECT_LE(i, 8u);
    EXPECT_NEAR(std::abs(c.unit_complex()), 1.0, 1e-15);
    EXPECT_LE(std::abs(c.disk_point(0.95)), 0.95);
  }
}

TEST(Rng, TrialSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t stream = 0; stream < 8; ++stream) {
    for (std::uint64_t k = 0; k < 500; ++k) seen.insert(trial_seed(42, stream, k));
  }
  EXPECT_EQ(seen.size(), 8u * 500u);
  EXPECT_NE(trial_seed(1, 0, 0), trial_seed(2, 0, 0));
}

TEST(RandomModel, NormalizedMatricesHaveUnitRadius) {
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const CMatrix t = random_normalized(rng);
    EXPECT_GE(t.dim(), 2u);
    EXPECT_LE(t.dim(), 8u);
    EXPECT_NEAR(numerical_radius(t), 1.0, 1e-9);
  }
  const auto b = random_blaschke(rng, 6);
  EXPECT_TRUE(b.vanishes_at_origin());
  EXPECT_LE(b.degree(), 6u);
}

TEST(LocalInequality, EqualityWitness) {
  const CMatrix t{{0.0, 2.0}, {0.0, 0.0}};
  const std::vector<Complex> x{0.0, 1.0};
  const auto terms = local_inequality_terms(t, x);
  EXPECT_NEAR(terms.norm_tx_squared, 4.0, 1e-12);
  EXPECT_NEAR(terms.bound, 4.0, 1e-12);
}

class SuiteTest : public ::testing::TestWithParam<std::string> {};

TEST_P(SuiteTest, PassesAndWitnessReproducesWorstResidual) {
  const auto reports = run_suite(GetParam(), 40, 7);
  ASSERT_EQ(reports.size(), 1u);
  const auto& r = reports[0];
  EXPECT_EQ(r.suite, GetParam());
  EXPECT_TRUE(r.passed()) << format_report(r);
  EXPECT_LE(r.worst_residual, r.tolerance);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NEAR(witness_residual(r.suite, *r.witness), r.worst_residual, 1e-12);

  // The text report carries enough digits to re-verify the witness.
  const auto parsed = parse_reports(format_report(r));
  ASSERT_EQ(parsed.size(), 1u);
  ASSERT_TRUE(parsed[0].witness.has_value());
  EXPECT_NEAR(witness_residual(r.suite, *parsed[0].witness), r.worst_residual, 1e-12);
}

TEST_P(SuiteTest, DeterministicForFixedSeed) {
  EXPECT_EQ(format_reports(run_suite(GetParam(), 15, 11)), format_reports(run_suite(GetParam(), 15, 11)));
}

INSTANTIATE_TEST_SUITE_P(AllSuites, SuiteTest,
                         ::testing::Values("berger-stampfli", "power", "local-ineq", "operator-ineq", "region-s",
                                           "drury", "props52"),
                         [](const auto& info) {
                           std::string name = info.param;
                           for (auto& ch : name) {
                             if (ch == '-') ch = '_';
                           }
                           return name;
                         });

TEST(RunSuite, AllRunsEverySuiteInOrder) {
  const auto reports = run_suite("all", 3, 1);
  ASSERT_EQ(reports.size(), std::size(kSuiteNames));
  for (std::size_t k = 0; k < reports.size(); ++k) EXPECT_EQ(reports[k].suite, kSuiteNames[k]);
}

TEST(RunSuite, UnknownNameIsRejected) {
  try {
    run_suite("nope", 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
  EXPECT_THROW(check_region_S(5, 1, 1), Error);
  EXPECT_THROW(check_power_inequality(1, 1, 1), Error);
}

TEST(RunSuite, DifferentSeedsGiveDifferentWitnesses) {
  const auto a = run_suite("local-ineq", 10, 1);
  const auto b = run_suite("local-ineq", 10, 2);
  EXPECT_NE(format_reports(a), format_reports(b));
}

TEST(Reports, TextRoundTrip) {
  const auto reports = run_suite("all", 2, 5);
  const std::string text = format_reports(reports);
  EXPECT_EQ(format_reports(parse_reports(text)), text);
  EXPECT_THROW(parse_reports("seed: 4\n"), Error);
  EXPECT_THROW(parse_reports("suite: x\nbogus line\n"), Error);
}

TEST(Reports, JsonStructure) {
  const auto reports = run_suite("region-s", 5, 5);
  const auto doc = nlohmann::json::parse(reports_to_json(reports));
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_EQ(doc[0]["suite"], "region-s");
  EXPECT_EQ(doc[0]["seed"], 5);
  EXPECT_EQ(doc[0]["passed"], true);
  EXPECT_TRUE(doc[0]["worst_residual"].is_number());
  EXPECT_TRUE(doc[0]["stats"].is_object());
  EXPECT_EQ(parse_matrix_inline(doc[0]["witness"]["matrix"].get<std::string>()), reports[0].witness->matrix);
}

TEST(ExtremalSearch, RecoversTeardropBoundForSharpExample) {
  const auto f = parse_function("mobius 1 -2 2 -1");
  const CMatrix start{{0.0, 2.0}, {0.0, 0.0}};
  const std::vector<CMatrix> starts{start};
  const auto result = extremal_search(f, 2, 400, 1, starts);
  EXPECT_GE(result.best_w, 1.25 - 1e-9);
  EXPECT_LE(result.best_w, 1.25 + 1e-6);
  EXPECT_NEAR(numerical_radius(result.witness), 1.0, 1e-9);
  EXPECT_LE(result.evaluations, 400u);
}

TEST(ExtremalSearch, RandomStartsStayBelowBound) {
  const auto f = parse_function("mobius 1 -2 2 -1");
  const auto result = extremal_search(f, 3, 300, 9);
  EXPECT_GT(result.best_w, 1.0);
  EXPECT_LE(result.best_w, 1.25 + 1e-6);
}
