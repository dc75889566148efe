#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "raschkit/diagnostics.hpp"
#include "raschkit/estimation.hpp"
#include "raschkit/simulate.hpp"

namespace raschkit {
namespace {

FacetMeasures facet(std::vector<double> measures, std::vector<std::optional<double>> se) {
    FacetMeasures f;
    f.role = FacetRole::Rater;
    for (std::size_t i = 0; i < measures.size(); ++i) f.ids.push_back("R" + std::to_string(i + 1));
    f.measure = std::move(measures);
    f.se = std::move(se);
    return f;
}

TEST(FitStatistics, OverlyPredictableDataGivesNearZeroMeanSquares) {
    ObservationSet obs;
    obs.scale = RatingScale::consecutive(0, 1);
    for (const char* item : {"I1", "I2", "I3"}) {
        obs.add("High", item, 1);
        obs.add("Low", item, 0);
    }
    auto p = make_parameter_set(obs, Model::PartialCredit, default_facets(Model::PartialCredit));
    p.examinees.measure = {6.0, -6.0};
    p.item_tau.assign(3, {0.0});
    for (const auto& row : fit_statistics(obs, p, FacetRole::Examinee)) {
        EXPECT_LT(*row.infit, 0.01);
        EXPECT_LT(*row.outfit, 0.01);
        EXPECT_GE(*row.infit, 0.0);
    }
}

TEST(FitStatistics, HandComputedMeanSquares) {
    ObservationSet obs;
    obs.scale = RatingScale::consecutive(0, 1);
    obs.add("P", "I1", 1);
    obs.add("P", "I2", 0);
    auto p = make_parameter_set(obs, Model::PartialCredit, default_facets(Model::PartialCredit));
    p.examinees.measure = {0.0};
    p.tasks.measure = {1.0, -1.0};
    p.item_tau.assign(2, {0.0});
    // Both observations are surprising with probability 1/(1+e) of occurring.
    const double q = 1.0 / (1.0 + std::exp(1.0));
    const double w = q * (1.0 - q);
    const double r2 = (1.0 - q) * (1.0 - q);
    const auto rows = fit_statistics(obs, p, FacetRole::Examinee);
    EXPECT_NEAR(*rows[0].infit, (2 * r2) / (2 * w), 1e-12);
    EXPECT_NEAR(*rows[0].outfit, r2 / w, 1e-12);
    EXPECT_EQ(rows[0].count, 2);
}

TEST(FitStatistics, PtMeaIsOneForLinearScoresAndShiftInvariant) {
    ObservationSet obs;
    obs.scale = RatingScale::consecutive(0, 2);
    obs.add("E1", "R1", "T1", 2);
    obs.add("E1", "R1", "T2", 1);
    obs.add("E1", "R1", "T3", 0);
    obs.add("E2", "R1", "T1", 1);
    auto p = make_parameter_set(obs, Model::ThreeFacet, default_facets(Model::ThreeFacet));
    p.tasks.measure = {-1.0, 0.0, 1.0};
    p.tau = {-0.5, 0.5};
    auto rows = fit_statistics(obs, p, FacetRole::Examinee);
    EXPECT_NEAR(*rows[0].ptmea, 1.0, 1e-12);
    EXPECT_FALSE(rows[1].ptmea.has_value());  // one observation
    p.examinees.measure[0] = 2.7;
    rows = fit_statistics(obs, p, FacetRole::Examinee);
    EXPECT_NEAR(*rows[0].ptmea, 1.0, 1e-12);
    EXPECT_FALSE(fit_statistics(obs, p, FacetRole::Rater)[0].ptmea.has_value());
}

TEST(FitStatistics, ModelDataAverageNearOne) {
    ThreeFacetLayout layout;
    SimulationDesign d;
    d.generating = make_three_facet_generators(layout);
    d.scale = RatingScale::consecutive(0, 3);
    d.seed = 5;
    double infit = 0, outfit = 0;
    int n = 0;
    for (int r = 0; r < 10; ++r) {
        const auto obs = generate_replication(d, r);
        const auto res = estimate_3frsm(obs, default_facets(Model::ThreeFacet));
        for (const auto& row : fit_statistics(obs, res.params, FacetRole::Examinee)) {
            infit += *row.infit;
            outfit += *row.outfit;
            ++n;
        }
    }
    EXPECT_GE(infit / n, 0.9);
    EXPECT_LE(infit / n, 1.1);
    EXPECT_GE(outfit / n, 0.9);
    EXPECT_LE(outfit / n, 1.1);
}

TEST(FitStatistics, MisfitBands) {
    EXPECT_EQ(misfit_band(1.2), "");
    EXPECT_EQ(misfit_band(1.51), "noticeable");
    EXPECT_EQ(misfit_band(2.73), "degrading");
    EXPECT_EQ(misfit_band(1.41, {1.4, 2.0}), "noticeable");
}

TEST(Reliability, HandComputedAndLimits) {
    auto r = reliability_of(facet({-1.0, 0.0, 1.0}, {0.5, 0.5, 0.5}));
    // Population variance 2/3 with mean squared error 0.25.
    EXPECT_NEAR(r.reliability, (2.0 / 3.0 - 0.25) / (2.0 / 3.0), 1e-12);
    // Variance exactly one with the same errors.
    r = reliability_of(facet({-std::sqrt(1.5), 0.0, std::sqrt(1.5)}, {0.5, 0.5, 0.5}));
    EXPECT_NEAR(r.reliability, 0.75, 1e-12);
    EXPECT_NEAR(r.rmse, 0.5, 1e-12);
    EXPECT_NEAR(r.separation, std::sqrt(0.75) / 0.5, 1e-12);
    EXPECT_DOUBLE_EQ(reliability_of(facet({0.3, 0.3, 0.3}, {0.2, 0.2, 0.2})).reliability, 0.0);
    EXPECT_NEAR(reliability_of(facet({-1.0, 0.0, 1.0}, {1e-9, 1e-9, 1e-9})).reliability, 1.0, 1e-12);
    const auto shifted = reliability_of(facet({4.0, 5.0, 6.0}, {0.5, 0.5, 0.5}));
    EXPECT_NEAR(shifted.reliability, (2.0 / 3.0 - 0.25) / (2.0 / 3.0), 1e-12);
}

TEST(Reliability, NeedsStandardErrors) {
    EXPECT_ERROR_KIND(reliability_of(facet({-1.0, 1.0}, {std::nullopt, std::nullopt})), ErrorKind::InvalidArgument);
    // Elements without an SE are skipped.
    const auto r = reliability_of(facet({-1.0, 1.0, 50.0}, {0.5, 0.5, std::nullopt}));
    EXPECT_EQ(r.elements, 2);
}

TEST(Reliability, PersonReliabilityUsesExamineeFacet) {
    ParameterSet p;
    p.model = Model::PartialCredit;
    p.examinees = facet({0.5, 0.5}, {0.3, 0.3});
    p.examinees.role = FacetRole::Examinee;
    EXPECT_DOUBLE_EQ(person_reliability(p).reliability, 0.0);
    EXPECT_EQ(person_reliability(p).facet, FacetRole::Examinee);
}

TEST(Wald, EqualMeasuresAndHandComputedStatistic) {
    auto w = wald_equal_severity(facet({0.2, 0.2, 0.2}, {0.1, 0.2, 0.3}));
    EXPECT_NEAR(w.statistic, 0.0, 1e-12);
    EXPECT_NEAR(w.p_value, 1.0, 1e-12);
    EXPECT_EQ(w.df, 2);
    w = wald_equal_severity(facet({-1.0, 1.0}, {0.1, 0.1}));
    EXPECT_NEAR(w.statistic, 200.0, 1e-9);
    EXPECT_EQ(w.df, 1);
    EXPECT_LT(w.p_value, 1e-40);
    ASSERT_EQ(w.pairwise.size(), 1U);
    EXPECT_NEAR(w.pairwise[0].z, -2.0 / std::sqrt(0.02), 1e-9);
    EXPECT_ERROR_KIND(wald_equal_severity(facet({1.0}, {0.1})), ErrorKind::InvalidArgument);
}

TEST(Wald, PlantedSpreadOfRaterSeverityIsRejected) {
    ThreeFacetLayout layout;
    layout.rater_spread = 0.34;  // 0.68 logits end to end
    SimulationDesign d;
    d.generating = make_three_facet_generators(layout);
    d.scale = RatingScale::consecutive(0, 3);
    d.seed = 12;
    const auto obs = generate_replication(d, 0);
    const auto res = estimate_3frsm(obs, default_facets(Model::ThreeFacet));
    const auto w = wald_equal_severity(res.params);
    EXPECT_EQ(w.df, 6);
    EXPECT_LT(w.p_value, 0.001);
}

RaterScoreTable table(std::vector<std::vector<std::optional<int>>> scores) {
    RaterScoreTable t;
    for (std::size_t r = 0; r < scores.size(); ++r) t.raters.push_back("R" + std::to_string(r + 1));
    for (std::size_t i = 0; i < scores[0].size(); ++i) t.items.push_back(std::to_string(i + 1));
    t.scores = std::move(scores);
    return t;
}

TEST(PairwiseDifferences, BandsAndExamples) {
    EXPECT_EQ(disagreement_band(0), "perfect agreement");
    EXPECT_EQ(disagreement_band(-1), "very low disagreement");
    EXPECT_EQ(disagreement_band(2), "low disagreement");
    EXPECT_EQ(disagreement_band(-3), "medium disagreement");
    EXPECT_EQ(disagreement_band(4), "high disagreement");
    EXPECT_EQ(disagreement_band(-5), "high disagreement");

    const auto m = pairwise_difference_matrices(table({{6, 3}, {1, 3}, {4, std::nullopt}}));
    ASSERT_EQ(m.size(), 2U);
    EXPECT_EQ(*m[0].cells[0][1], 5);
    EXPECT_EQ(disagreement_band(*m[0].cells[0][1]), "high disagreement");
    EXPECT_EQ(*m[0].cells[1][0], -5);
    EXPECT_FALSE(m[1].cells[0][2].has_value());
    EXPECT_FALSE(m[1].cells[2][2].has_value());

    for (const auto& mat : pairwise_difference_matrices(table({{2, 2}, {2, 2}}))) {
        for (const auto& row : mat.cells) {
            for (const auto& c : row) EXPECT_EQ(*c, 0);
        }
    }
}

TEST(PairwiseDifferences, AntisymmetricOnRandomTables) {
    CounterRng rng(77);
    std::vector<std::vector<std::optional<int>>> s(7, std::vector<std::optional<int>>(44));
    for (auto& row : s) {
        for (auto& c : row) c = 1 + static_cast<int>(rng.uniform() * 6);
    }
    for (const auto& mat : pairwise_difference_matrices(table(s))) {
        for (std::size_t a = 0; a < 7; ++a) {
            EXPECT_EQ(*mat.cells[a][a], 0);
            for (std::size_t b = 0; b < 7; ++b) EXPECT_EQ(*mat.cells[a][b], -*mat.cells[b][a]);
        }
    }
}

}  // namespace
}  // namespace raschkit
