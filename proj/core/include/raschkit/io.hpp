#pragma once

// File formats: observation CSVs, wide rater tables, item banks, selection
// rules, answer keys and the JSON run configuration.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "raschkit/diagnostics.hpp"
#include "raschkit/estimation.hpp"
#include "raschkit/scale.hpp"
#include "raschkit/selection.hpp"
#include "raschkit/simulate.hpp"

namespace raschkit {

// Long format with header examinee,rater,task,score (three facets) or
// person,item,score. Scores are raw codes; an empty score is a missing cell.
// Without a scale the codes observed define a consecutive one.
ObservationSet parse_observations(const std::string& path, const std::optional<RatingScale>& scale = {});
ObservationSet parse_observations_text(const std::string& text, const std::optional<RatingScale>& scale = {},
                                       const std::string& source = "<input>");
// Raw codes, in observation order.
std::string write_observations_csv(const ObservationSet& obs);

// Header rater,<item>,<item>,...; one row per rater.
RaterScoreTable parse_wide_ratings(const std::string& text);
std::string write_wide_ratings(const RaterScoreTable& table);
// One rater,item,score row per present cell.
std::string wide_to_long_csv(const RaterScoreTable& table);

// Every combination x rater x task gets the rater's score of the item the
// combination uses for that task.
ObservationSet expand_combinations(const RaterScoreTable& table, const std::vector<Combination>& combinations,
                                   const RatingScale& scale);

// Header person,<item>,...; cells are raw answers.
ResponseTable parse_response_table(const std::string& text);

ItemBank parse_item_bank_json(const std::string& text);
std::string serialize_item_bank_json(const ItemBank& bank);
SelectionRules parse_selection_rules_json(const std::string& text);
std::string serialize_selection_rules_json(const SelectionRules& rules);
AnswerKey parse_answer_key_json(const std::string& text);

std::string serialize_audit_json(const Selection& selection);
std::vector<AuditEntry> parse_audit_json(const std::string& text);

struct InputPaths {
    std::string observations;
    std::string wide_ratings;
    std::string responses;
    std::string answer_key;
    std::string item_bank;
    std::string selection_rules;
    std::string measures;
    std::string respondent_measures;

    bool operator==(const InputPaths&) const = default;
};

struct PlantedBias {
    std::string examinee;
    std::string rater;
    int shift = 1;

    bool operator==(const PlantedBias&) const = default;
};

struct SimulationConfig {
    int examinees = 29;
    int raters = 7;
    int tasks = 4;
    std::vector<std::string> examinee_ids;
    double examinee_spread = 1.0;
    double rater_spread = 1.0;
    double task_spread = 1.0;
    std::vector<double> tau{-1.5, 0.0, 1.5};
    int persons = 75;
    int items = 20;
    double person_spread = 1.5;
    double item_spread = 1.5;
    double missing_rate = 0.0;
    int replications = 1;
    std::string format = "long";  // or "wide" (one task only)
    std::optional<PlantedBias> plant;

    bool operator==(const SimulationConfig&) const = default;
};

enum class CollapseOrder { Before, After, Never };

struct RunConfig {
    Model model = Model::ThreeFacet;
    std::vector<FacetSpec> facets;  // empty: defaults of the model
    std::optional<RatingScale> scale;
    std::vector<RecodeMap> recodes;
    CollapseOrder collapse = CollapseOrder::After;
    EstimationConfig estimation;
    FitConfig fit;
    double closeness_tol = 0.1;
    int contrasts = 2;
    InputPaths inputs;
    std::string output_dir;
    std::uint64_t seed = 1;
    SimulationConfig simulation;

    // Directory relative input paths are resolved against; not serialized.
    std::string base_dir;

    void validate() const;
    std::vector<FacetSpec> effective_facets() const;
    std::string resolve(const std::string& path) const;
};

RunConfig parse_run_config(const std::string& json_text, const std::string& base_dir = "");
RunConfig load_run_config(const std::string& path);
std::string serialize_run_config(const RunConfig& config);

// Summary of an estimation run (convergence, thresholds, extremes, recodes).
std::string serialize_estimation_json(const EstimationResult& result, const ObservationSet& obs);

SimulationDesign simulation_design(const RunConfig& config);

}  // namespace raschkit
