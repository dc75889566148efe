#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "fixtures.hpp"
#include "raschkit/model.hpp"
#include "raschkit/simulate.hpp"

namespace raschkit {
namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(DichotomousProbability, KnownValues) {
    EXPECT_DOUBLE_EQ(dichotomous_probability(0.0, 0.0), 0.5);
    EXPECT_NEAR(dichotomous_probability(1.0, 0.0), 0.7310585786300049, 1e-15);
    for (double t : {0.1, 0.7, 3.0, 25.0}) {
        EXPECT_NEAR(dichotomous_probability(0.4 + t, 0.4) + dichotomous_probability(0.4 - t, 0.4), 1.0, 1e-15);
    }
}

TEST(DichotomousProbability, RejectsNonFinite) {
    EXPECT_ERROR_KIND(dichotomous_probability(std::numeric_limits<double>::quiet_NaN(), 0.0),
                      ErrorKind::InvalidArgument);
    EXPECT_ERROR_KIND(dichotomous_probability(0.0, std::numeric_limits<double>::infinity()),
                      ErrorKind::InvalidArgument);
}

TEST(PcmProbabilities, SymmetricWhenThresholdsZero) {
    const std::vector<double> tau{0.0, 0.0};
    const auto p = pcm_category_probabilities(0.3, 0.3, tau);
    ASSERT_EQ(p.size(), 3U);
    EXPECT_NEAR(p[0], p[2], 1e-15);
    EXPECT_NEAR(sum(p), 1.0, 1e-12);
}

TEST(PcmProbabilities, OneThresholdIsTheDichotomousModel) {
    const std::vector<double> tau{0.0};
    for (double theta : {-2.0, 0.0, 1.3}) {
        const auto p = pcm_category_probabilities(theta, 0.4, tau);
        const double q = dichotomous_probability(theta, 0.4);
        EXPECT_NEAR(p[1], q, 1e-15);
        EXPECT_NEAR(p[0], 1.0 - q, 1e-15);
    }
}

TEST(PcmProbabilities, TermByTermEvaluation) {
    // exp(0), exp(1), exp(0) over their sum.
    const std::vector<double> tau{-1.0, 1.0};
    const auto p = pcm_category_probabilities(0.0, 0.0, tau);
    EXPECT_NEAR(p[0], 0.21194155761708547, 1e-15);
    EXPECT_NEAR(p[1], 0.5761168847658291, 1e-15);
    EXPECT_NEAR(p[2], 0.21194155761708547, 1e-15);
}

TEST(PcmProbabilities, EmptyThresholdsIsDimensionError) {
    EXPECT_ERROR_KIND(pcm_category_probabilities(0.0, 0.0, std::vector<double>{}), ErrorKind::Dimension);
}

TEST(MfrmProbabilities, UniformWhenEverythingZero) {
    const std::vector<double> tau{0.0, 0.0, 0.0};
    const auto p = mfrm_category_probabilities(0.0, 0.0, 0.0, tau, Orientations::standard());
    for (double v : p) EXPECT_NEAR(v, 0.25, 1e-15);
}

TEST(MfrmProbabilities, AdjacentLogOddsFollowOrientation) {
    const std::vector<double> tau{-0.7, 0.2, 0.5};
    const double theta = 0.8, beta = -0.3, alpha = 0.45;
    for (const auto o : {Orientations::standard(), Orientations::rated_difficulty()}) {
        const auto p = mfrm_category_probabilities(theta, beta, alpha, tau, o);
        const double eta = o.examinee * theta + o.task * beta + o.rater * alpha;
        for (std::size_t k = 1; k < p.size(); ++k) {
            EXPECT_NEAR(std::log(p[k] / p[k - 1]), eta - tau[k - 1], 1e-12);
        }
    }
}

TEST(MfrmProbabilities, ZeroRaterCollapsesToPcm) {
    const std::vector<double> tau{-1.2, 0.4, 0.8};
    const auto a = mfrm_category_probabilities(0.9, 0.2, 0.0, tau, Orientations::standard());
    const auto b = pcm_category_probabilities(0.9, 0.2, tau);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-12);
}

TEST(MfrmProbabilities, ExtremeInputsStayNormalised) {
    const std::vector<double> tau{-2.0, 2.0};
    const auto p = mfrm_category_probabilities(30.0, -30.0, -30.0, tau, Orientations::standard());
    EXPECT_NEAR(sum(p), 1.0, 1e-12);
    EXPECT_NEAR(p[2], 1.0, 1e-12);
}

// Sweep of random parameters: normalisation and the translation invariance
// that motivates centering.
TEST(ModelProperties, NormalisationAndTranslationInvariance) {
    CounterRng rng(2024);
    auto draw = [&](double lim) { return -lim + 2 * lim * rng.uniform(); };
    for (int i = 0; i < 2000; ++i) {
        const double theta = draw(30), beta = draw(30), alpha = draw(30);
        std::vector<double> tau{draw(5), draw(5)};
        tau.push_back(-tau[0] - tau[1]);
        const auto p = mfrm_category_probabilities(theta, beta, alpha, tau, Orientations::standard());
        EXPECT_NEAR(sum(p), 1.0, 1e-12);
        const double c = draw(3);
        const auto q = mfrm_category_probabilities(theta + c, beta + c, alpha, tau, Orientations::standard());
        for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(p[k], q[k], 1e-9);
    }
}

TEST(ModelProperties, ExpectedScoreIncreasesWithTheta) {
    const std::vector<double> tau{-1.0, 0.3, 0.7};
    double previous = -1.0;
    for (double theta = -6.0; theta <= 6.0; theta += 0.25) {
        const auto m = expected_score_and_variance(
            mfrm_category_probabilities(theta, 0.1, -0.2, tau, Orientations::standard()));
        EXPECT_GT(m.expectation, previous);
        previous = m.expectation;
    }
}

TEST(ExpectedScoreAndVariance, Examples) {
    auto m = expected_score_and_variance(std::vector<double>{0.5, 0.5});
    EXPECT_DOUBLE_EQ(m.expectation, 0.5);
    EXPECT_DOUBLE_EQ(m.variance, 0.25);
    m = expected_score_and_variance(std::vector<double>{0.0, 0.0, 1.0});
    EXPECT_DOUBLE_EQ(m.expectation, 2.0);
    EXPECT_DOUBLE_EQ(m.variance, 0.0);
    // Direct summation over the (-1, 1) threshold vector at zero.
    m = expected_score_and_variance(pcm_category_probabilities(0.0, 0.0, std::vector<double>{-1.0, 1.0}));
    EXPECT_NEAR(m.expectation, 1.0, 1e-15);
    EXPECT_NEAR(m.variance, 0.42388311523417094, 1e-15);
}

TEST(ExpectedScoreAndVariance, RejectsUnnormalised) {
    EXPECT_ERROR_KIND(expected_score_and_variance(std::vector<double>{0.5, 0.6}), ErrorKind::InvalidArgument);
    EXPECT_ERROR_KIND(expected_score_and_variance(std::vector<double>{}), ErrorKind::InvalidArgument);
}

TEST(RatingScale, ValidatesCodesLabelsAndBands) {
    EXPECT_ERROR_KIND(RatingScale({{1, "a", std::nullopt}, {3, "b", std::nullopt}}), ErrorKind::Validation);
    EXPECT_ERROR_KIND(RatingScale({{1, "a", std::nullopt}, {2, "a", std::nullopt}}), ErrorKind::Validation);
    EXPECT_ERROR_KIND(RatingScale({{0, "a", std::make_pair(0.0, 50.0)}, {1, "b", std::nullopt}}),
                      ErrorKind::Validation);
    EXPECT_ERROR_KIND(RatingScale({{0, "a", std::make_pair(0.0, 50.0)}, {1, "b", std::make_pair(40.0, 100.0)}}),
                      ErrorKind::Validation);
    EXPECT_ERROR_KIND(RatingScale({{0, "a", std::make_pair(0.0, 40.0)}, {1, "b", std::make_pair(60.0, 100.0)}}),
                      ErrorKind::Validation);
    // Integer percent bands as printed in the category table.
    const RatingScale six({{1, "Very Easy", std::make_pair(95.0, 100.0)},
                           {2, "Fairly Easy", std::make_pair(75.0, 94.0)},
                           {3, "Middle Easy", std::make_pair(50.0, 74.0)},
                           {4, "Middle Difficult", std::make_pair(30.0, 49.0)},
                           {5, "Fairly Difficult", std::make_pair(6.0, 29.0)},
                           {6, "Very Difficult", std::make_pair(0.0, 5.0)}});
    EXPECT_EQ(six.max_index(), 5);
    EXPECT_EQ(six.index_of(1), 0);
    EXPECT_EQ(six.index_of(6), 5);
    EXPECT_FALSE(six.index_of(7).has_value());
    EXPECT_EQ(six.code_of(2), 3);
}

TEST(ObservationSet, RejectsDuplicatesAndOutOfRange) {
    ObservationSet obs;
    obs.scale = RatingScale::consecutive(0, 2);
    obs.add("E1", "R1", "T1", 1);
    obs.add("E1", "R1", "T2", 2);
    EXPECT_NO_THROW(obs.validate());
    obs.add("E1", "R1", "T1", 0);
    EXPECT_ERROR_KIND(obs.validate(), ErrorKind::Validation);
    obs.observations.pop_back();
    obs.add("E2", "R1", "T1", 3);
    EXPECT_ERROR_KIND(obs.validate(), ErrorKind::Validation);
}

TEST(Facets, ExactlyOneUncenteredExamineeFacet) {
    EXPECT_NO_THROW(validate_facets(default_facets(Model::ThreeFacet)));
    EXPECT_NO_THROW(validate_facets(rated_difficulty_facets()));
    auto f = default_facets(Model::ThreeFacet);
    f[1].centered = false;
    EXPECT_ERROR_KIND(validate_facets(f), ErrorKind::Validation);
    f = default_facets(Model::ThreeFacet);
    f[2].orientation = 0;
    EXPECT_ERROR_KIND(validate_facets(f), ErrorKind::Validation);
    f = default_facets(Model::ThreeFacet);
    f[0].centered = true;
    EXPECT_ERROR_KIND(validate_facets(f), ErrorKind::Validation);
    const auto o = orientations_of(rated_difficulty_facets());
    EXPECT_EQ(o.task, 1);
    EXPECT_EQ(o.rater, -1);
}

ParameterSet toy_parameters(const ObservationSet& obs) {
    auto p = make_parameter_set(obs, Model::ThreeFacet, default_facets(Model::ThreeFacet));
    p.examinees.measure = {0.7, -0.4};
    p.tasks.measure = {0.25, -0.25};
    p.raters.measure = {-0.1, 0.1};
    p.tau = {0.0};
    return p;
}

TEST(LogLikelihood, Examples) {
    ObservationSet empty;
    empty.scale = RatingScale::consecutive(0, 1);
    EXPECT_EQ(log_likelihood(toy_parameters(empty), empty, Model::ThreeFacet), 0.0);

    ObservationSet one;
    one.scale = RatingScale::consecutive(0, 1);
    one.add("P1", "I1", 1);
    auto p = make_parameter_set(one, Model::PartialCredit, default_facets(Model::PartialCredit));
    p.item_tau = {{0.0}};
    p.item_categories = {{0, 1}};
    p.examinees.measure = {0.3};
    p.tasks.measure = {0.3};
    EXPECT_NEAR(log_likelihood(p, one, Model::PartialCredit), std::log(0.5), 1e-15);
}

TEST(LogLikelihood, ToyDesignMatchesPerObservationSum) {
    ObservationSet obs;
    obs.scale = RatingScale::consecutive(0, 1);
    const int pattern[8] = {1, 0, 1, 1, 0, 0, 1, 0};
    int i = 0;
    for (const char* e : {"E1", "E2"}) {
        for (const char* r : {"R1", "R2"}) {
            for (const char* t : {"T1", "T2"}) obs.add(e, r, t, pattern[i++]);
        }
    }
    const auto p = toy_parameters(obs);
    double expected = 0.0;
    for (const auto& o : obs.observations) {
        const double q = 1.0 / (1.0 + std::exp(-(p.examinees.measure[o.examinee] - p.tasks.measure[o.task] -
                                                 p.raters.measure[o.rater])));
        expected += std::log(o.category == 1 ? q : 1.0 - q);
    }
    EXPECT_NEAR(log_likelihood(p, obs, Model::ThreeFacet), expected, 1e-12);
    EXPECT_LT(expected, 0.0);
}

TEST(LogLikelihood, UnknownElementIsMissingParameter) {
    ObservationSet obs;
    obs.scale = RatingScale::consecutive(0, 1);
    obs.add("E1", "R1", "T1", 1);
    obs.add("E2", "R2", "T2", 0);
    auto p = toy_parameters(obs);
    p.raters.ids = {"R1", "R9"};
    EXPECT_ERROR_KIND(log_likelihood(p, obs, Model::ThreeFacet), ErrorKind::MissingParameter);
}

}  // namespace
}  // namespace raschkit
