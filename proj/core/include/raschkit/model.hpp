#pragma once

// Rasch family probability models and the shared observation / parameter data
// model. Categories are always stored 0-based internally; RatingScale keeps the
// mapping back to the codes used in input files.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace raschkit {

enum class Model { Rasch, PartialCredit, ThreeFacet };

std::string_view to_string(Model model) noexcept;
Model parse_model(std::string_view text);

enum class FacetRole { Examinee, Task, Rater };

std::string_view to_string(FacetRole role) noexcept;
FacetRole parse_facet_role(std::string_view text);

// orientation +1: a higher measure raises the expected score; -1 lowers it.
struct FacetSpec {
    FacetRole role = FacetRole::Examinee;
    std::string name;
    int orientation = 1;
    bool centered = false;

    std::string id() const { return std::string(to_string(role)); }
};

void validate_facets(std::span<const FacetSpec> facets);

// Signs applied to (examinee, task, rater) measures when forming the linear
// predictor of the rating-scale model.
struct Orientations {
    int examinee = 1;
    int task = -1;
    int rater = -1;

    // theta - beta - alpha: the textbook form of the three-facet model.
    static constexpr Orientations standard() { return {1, -1, -1}; }
    // Difficulty-rating runs: tasks measured positively (higher difficulty,
    // higher score) and raters negatively (higher severity, lower score).
    static constexpr Orientations rated_difficulty() { return {1, 1, -1}; }
};

Orientations orientations_of(std::span<const FacetSpec> facets);
std::vector<FacetSpec> default_facets(Model model);
std::vector<FacetSpec> rated_difficulty_facets();

struct ScaleCategory {
    int code = 0;
    std::string label;
    std::optional<std::pair<double, double>> probability_band;  // percent

    bool operator==(const ScaleCategory&) const = default;
};

class RatingScale {
public:
    RatingScale() = default;
    explicit RatingScale(std::vector<ScaleCategory> categories);

    // Consecutive unlabeled codes lowest..highest.
    static RatingScale consecutive(int lowest, int highest);

    const std::vector<ScaleCategory>& categories() const noexcept { return categories_; }
    std::size_t size() const noexcept { return categories_.size(); }
    // Highest 0-based category index.
    int max_index() const noexcept { return static_cast<int>(categories_.size()) - 1; }
    int lowest_code() const;
    int code_of(int index) const;
    std::optional<int> index_of(int code) const noexcept;
    std::string describe() const;

    bool operator==(const RatingScale&) const = default;

private:
    std::vector<ScaleCategory> categories_;
};

// Insertion-ordered id registry.
class ElementRegistry {
public:
    std::uint32_t add(const std::string& id);
    std::optional<std::uint32_t> find(std::string_view id) const;
    const std::string& at(std::uint32_t index) const { return ids_.at(index); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }

    bool operator==(const ElementRegistry& other) const { return ids_ == other.ids_; }

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// category is a 0-based index into the set's RatingScale. For two-facet
// (person x item) data the rater index is unused and the rater registry empty.
struct Observation {
    std::uint32_t examinee = 0;
    std::uint32_t rater = 0;
    std::uint32_t task = 0;
    int category = 0;

    bool operator==(const Observation&) const = default;
};

struct ObservationSet {
    ElementRegistry examinees;
    ElementRegistry raters;
    ElementRegistry tasks;
    std::vector<Observation> observations;
    RatingScale scale;

    bool has_raters() const noexcept { return !raters.empty(); }
    std::size_t size() const noexcept { return observations.size(); }

    // Registers ids on first use; category is 0-based.
    void add(const std::string& examinee, const std::string& rater, const std::string& task,
             int category);
    void add(const std::string& person, const std::string& item, int category);

    // Throws Validation on duplicate triples, out-of-range categories or
    // dangling element references.
    void validate() const;
    std::size_t distinct_categories() const;
};

struct FacetMeasures {
    FacetRole role = FacetRole::Examinee;
    int orientation = 1;
    bool centered = false;
    std::vector<std::string> ids;
    std::vector<double> measure;
    std::vector<std::optional<double>> se;

    std::size_t size() const noexcept { return ids.size(); }
    std::optional<std::size_t> find(std::string_view id) const;
    double mean() const;
};

struct ParameterSet {
    Model model = Model::ThreeFacet;
    FacetMeasures examinees;
    FacetMeasures tasks;
    FacetMeasures raters;
    // Shared thresholds tau_1..tau_m (three-facet model).
    std::vector<double> tau;
    // Partial credit: per-item thresholds, and for every item the scale indices
    // that map onto its internal categories 0..m_i.
    std::vector<std::vector<double>> item_tau;
    std::vector<std::vector<int>> item_categories;

    const FacetMeasures& facet(FacetRole role) const;
    FacetMeasures& facet(FacetRole role);
    Orientations orientations() const;
};

// Builds a zero-initialised parameter set whose facets mirror the registries of
// obs, using the orientation and centering of the given facet specs.
ParameterSet make_parameter_set(const ObservationSet& obs, Model model,
                                std::span<const FacetSpec> facets);

struct Moments {
    double expectation = 0.0;
    double variance = 0.0;
};

double dichotomous_probability(double theta, double beta);

// Probabilities of categories 0..m for a linear predictor eta and thresholds
// tau_1..tau_m (adjacent log-odds eta - tau_k).
std::vector<double> category_probabilities(double eta, std::span<const double> tau);

std::vector<double> pcm_category_probabilities(double theta, double beta,
                                               std::span<const double> tau);

std::vector<double> mfrm_category_probabilities(double theta, double beta, double alpha,
                                                std::span<const double> tau,
                                                const Orientations& orientations);

Moments expected_score_and_variance(std::span<const double> probabilities);

// Model-implied quantities for one observation.
struct ObservationFit {
    int observed = 0;            // model-internal category
    double expected = 0.0;
    double variance = 0.0;
    double combined_measure = 0.0;  // oriented linear predictor
};

// One entry per observation of obs, in order. Throws MissingParameter when an
// element of obs has no parameter.
std::vector<ObservationFit> observation_fits(const ParameterSet& params, const ObservationSet& obs);

double log_likelihood(const ParameterSet& params, const ObservationSet& obs, Model model);

}  // namespace raschkit
