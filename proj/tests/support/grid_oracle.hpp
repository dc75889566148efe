#pragma once

// Brute-force likelihood maximiser used to check JMLE on tiny designs.
//
// The two free parameters of the centered facets are searched on a grid that
// ends at a 0.005 logit spacing (0.5, 0.1, 0.02, 0.005, each level a window
// around the previous best). The remaining parameters are profiled out:
// bounded Brent searches for the three-facet design, a damped Newton iteration
// on finite differences for partial credit. The log-likelihood is concave, so
// the profile is too and the multiresolution search cannot lock onto a wrong
// basin.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "raschkit/model.hpp"

namespace raschkit::testing {

struct GridEstimate {
    std::map<std::string, double> examinee;
    std::map<std::string, double> task;
    std::map<std::string, double> rater;
    std::map<std::string, std::vector<double>> item_tau;
    double log_likelihood = 0.0;
};

// Dichotomous data, two tasks and two raters, orientation theta - beta - alpha.
// Empty when the optimum sits on the search boundary (no finite MLE).
std::optional<GridEstimate> grid_three_facet_dichotomous(const ObservationSet& obs);

// Persons x three items, every item scored 0..2 with thresholds (s, -s).
std::optional<GridEstimate> grid_partial_credit(const ObservationSet& obs);

}  // namespace raschkit::testing
