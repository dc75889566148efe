#pragma once

// Fit statistics, reliabilities, the Wald test of equal rater severity and the
// rater pairwise score-difference matrices.

#include <optional>
#include <string>
#include <vector>

#include "raschkit/model.hpp"

namespace raschkit {

struct FitConfig {
    double noticeable = 1.5;
    double degrading = 2.0;
};

struct FitRow {
    FacetRole facet = FacetRole::Examinee;
    std::string element_id;
    int count = 0;
    double measure = 0.0;
    std::optional<double> se;
    std::optional<double> infit;
    std::optional<double> outfit;
    std::optional<double> ptmea;  // examinee facet only
    std::string flag;
};

// "", "noticeable" or "degrading" for the larger of the two mean squares.
std::string misfit_band(double mnsq, const FitConfig& config = {});

// Rows follow the element order of the parameter set.
std::vector<FitRow> fit_statistics(const ObservationSet& obs, const ParameterSet& params, FacetRole facet,
                                   const FitConfig& config = {});

struct ReliabilityReport {
    FacetRole facet = FacetRole::Examinee;
    int elements = 0;
    double mean = 0.0;
    double observed_sd = 0.0;  // population convention
    double rmse = 0.0;
    double separation = 0.0;
    double reliability = 0.0;
};

// Elements without a standard error are skipped. Needs at least two with one.
ReliabilityReport separation_reliability(const ParameterSet& params, FacetRole facet);
ReliabilityReport person_reliability(const ParameterSet& params);
ReliabilityReport reliability_of(const FacetMeasures& measures);

struct PairwiseWald {
    std::string a;
    std::string b;
    double difference = 0.0;
    double se = 0.0;
    double z = 0.0;
    double p_value = 1.0;
};

struct WaldTest {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    double weighted_mean = 0.0;
    std::vector<PairwiseWald> pairwise;
};

// Fixed-effect homogeneity chi-square sum_j w_j (a_j - a_w)^2, w_j = 1 / SE_j^2.
WaldTest wald_equal_severity(const ParameterSet& params, FacetRole facet = FacetRole::Rater);
WaldTest wald_equal_severity(const FacetMeasures& measures);

// Raw rater x item scores on a common scale; absent cells allowed.
struct RaterScoreTable {
    std::vector<std::string> raters;
    std::vector<std::string> items;
    std::vector<std::vector<std::optional<int>>> scores;  // [rater][item]

    void validate() const;
};

std::string disagreement_band(int difference);

struct PairwiseDifferenceMatrix {
    std::string item_id;
    std::vector<std::string> raters;
    // cell[a][b] = score(a) - score(b); absent when either score is missing.
    std::vector<std::vector<std::optional<int>>> cells;
};

std::vector<PairwiseDifferenceMatrix> pairwise_difference_matrices(const RaterScoreTable& table);

}  // namespace raschkit
