#pragma once

// Joint maximum likelihood estimation for the three-facet rating scale model
// and the partial credit model.
//
// Each sweep performs one-dimensional Newton-Raphson updates per element
// (examinees, then tasks, then raters), a Newton step on the thresholds, and
// finally re-centers the constrained facets. Centering shifts are absorbed by
// the examinee facet so they never change the likelihood.
//
// Elements whose marginal score sits at the floor or ceiling have no finite
// estimate. They are removed from the joint iteration (repeatedly, since a
// removal can make another element extreme) and estimated afterwards with all
// other parameters anchored, from a score pulled toward the interior by
// `extreme_score_adjustment`.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raschkit/model.hpp"

namespace raschkit {

struct EstimationConfig {
    double convergence_tol = 0.001;
    int max_iterations = 200;
    double step_clamp = 1.0;
    double extreme_score_adjustment = 0.3;
    // When non-empty, overrides the `centered` flags of the facet specs.
    std::vector<FacetRole> centering;

    void validate() const;
};

struct ExtremeElement {
    FacetRole facet = FacetRole::Examinee;
    std::string id;
    double raw_score = 0.0;
    double max_score = 0.0;
    double adjusted_score = 0.0;
    std::string policy;
};

// Internal categories 0..m_i of an item and the scale codes they came from.
struct ItemRecode {
    std::string item_id;
    std::vector<int> source_codes;
};

struct EstimationResult {
    ParameterSet params;
    bool converged = false;
    int iterations = 0;
    double max_change = 0.0;
    std::vector<ExtremeElement> dropped_elements;
    std::vector<ItemRecode> recodes;
};

EstimationResult estimate_3frsm(const ObservationSet& obs, std::span<const FacetSpec> facets,
                                const EstimationConfig& config = {});

// Persons x items; every item gets its own thresholds, derived from the
// categories actually observed on it.
EstimationResult estimate_pcm(const ObservationSet& obs, const EstimationConfig& config = {});

// Fills the standard errors of every facet element: 1 / sqrt(sum of model
// variances over the element's observations). Elements without information
// keep an empty SE.
ParameterSet standard_errors(const ParameterSet& params, const ObservationSet& obs);

struct BiasRow {
    std::string examinee_id;
    std::string rater_id;
    int count = 0;
    double observed = 0.0;
    double expected = 0.0;  // under the main-effects model
    double phi = 0.0;       // logits, same sign convention as rater severity
    std::optional<double> se;
    std::optional<double> t;
    int df = 0;
    std::optional<double> p_value;
    bool significant = false;
    std::string flag;
};

struct BiasTable {
    std::vector<BiasRow> rows;
    double alpha_level = 0.05;
};

// Examinee-by-rater interactions with main effects anchored. Requires a
// converged three-facet result.
BiasTable estimate_bias_interactions(const ObservationSet& obs, const EstimationResult& main,
                                     const EstimationConfig& config = {});

// Person measures from the subset of items present in obs, with item
// difficulties and thresholds anchored at `anchors` (a partial credit run).
FacetMeasures estimate_anchored_persons(const ObservationSet& obs, const ParameterSet& anchors,
                                        const EstimationConfig& config = {});

}  // namespace raschkit
