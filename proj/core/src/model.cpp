#include "raschkit/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "raschkit/error.hpp"

namespace raschkit {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::Dimension: return "dimension";
        case ErrorKind::MissingParameter: return "missing-parameter";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

std::string_view to_string(Model model) noexcept {
    switch (model) {
        case Model::Rasch: return "rm";
        case Model::PartialCredit: return "pcm";
        case Model::ThreeFacet: return "3frsm";
    }
    return "unknown";
}

Model parse_model(std::string_view text) {
    if (text == "rm") return Model::Rasch;
    if (text == "pcm") return Model::PartialCredit;
    if (text == "3frsm") return Model::ThreeFacet;
    fail(ErrorKind::Validation, "unknown model '" + std::string(text) + "' (expected rm, pcm or 3frsm)");
}

std::string_view to_string(FacetRole role) noexcept {
    switch (role) {
        case FacetRole::Examinee: return "examinee";
        case FacetRole::Task: return "task";
        case FacetRole::Rater: return "rater";
    }
    return "unknown";
}

FacetRole parse_facet_role(std::string_view text) {
    if (text == "examinee" || text == "person") return FacetRole::Examinee;
    if (text == "task" || text == "item") return FacetRole::Task;
    if (text == "rater") return FacetRole::Rater;
    fail(ErrorKind::Validation, "unknown facet '" + std::string(text) + "'");
}

void validate_facets(std::span<const FacetSpec> facets) {
    std::set<FacetRole> seen;
    int uncentered = 0;
    for (const auto& f : facets) {
        if (f.orientation != 1 && f.orientation != -1) {
            fail(ErrorKind::Validation, "facet " + f.id() + ": orientation must be +1 or -1");
        }
        if (!seen.insert(f.role).second) {
            fail(ErrorKind::Validation, "facet " + f.id() + " listed twice");
        }
        if (!f.centered) {
            ++uncentered;
            if (f.role != FacetRole::Examinee) {
                fail(ErrorKind::Validation, "facet " + f.id() + " must be centered; only the examinee facet floats");
            }
        }
    }
    if (!seen.contains(FacetRole::Examinee) || !seen.contains(FacetRole::Task)) {
        fail(ErrorKind::Validation, "facet list needs at least examinee and task facets");
    }
    if (uncentered != 1) {
        fail(ErrorKind::Validation, "exactly one facet (the examinee facet) must be uncentered");
    }
}

Orientations orientations_of(std::span<const FacetSpec> facets) {
    Orientations o;
    for (const auto& f : facets) {
        switch (f.role) {
            case FacetRole::Examinee: o.examinee = f.orientation; break;
            case FacetRole::Task: o.task = f.orientation; break;
            case FacetRole::Rater: o.rater = f.orientation; break;
        }
    }
    return o;
}

std::vector<FacetSpec> default_facets(Model model) {
    if (model == Model::ThreeFacet) {
        return {{FacetRole::Examinee, "Examinees", 1, false},
                {FacetRole::Task, "Tasks", -1, true},
                {FacetRole::Rater, "Raters", -1, true}};
    }
    return {{FacetRole::Examinee, "Persons", 1, false}, {FacetRole::Task, "Items", -1, true}};
}

std::vector<FacetSpec> rated_difficulty_facets() {
    return {{FacetRole::Examinee, "Combinations", 1, false},
            {FacetRole::Task, "Tasks", 1, true},
            {FacetRole::Rater, "Raters", -1, true}};
}

// --- RatingScale ---------------------------------------------------------

RatingScale::RatingScale(std::vector<ScaleCategory> categories) : categories_(std::move(categories)) {
    if (categories_.empty()) {
        fail(ErrorKind::Validation, "rating scale needs at least one category");
    }
    std::set<std::string> labels;
    for (std::size_t i = 0; i < categories_.size(); ++i) {
        if (i > 0 && categories_[i].code != categories_[i - 1].code + 1) {
            fail(ErrorKind::Validation, "rating scale codes must be consecutive integers");
        }
        if (!categories_[i].label.empty() && !labels.insert(categories_[i].label).second) {
            fail(ErrorKind::Validation, "duplicate category label '" + categories_[i].label + "'");
        }
    }
    std::vector<std::pair<double, double>> bands;
    for (const auto& c : categories_) {
        if (c.probability_band) bands.push_back(*c.probability_band);
    }
    if (!bands.empty()) {
        if (bands.size() != categories_.size()) {
            fail(ErrorKind::Validation, "probability bands must be given for every category or none");
        }
        std::sort(bands.begin(), bands.end());
        // Integer-percent bands such as 0-5, 6-29, ... are adjacent when the next
        // lower bound is at most one point above the previous upper bound.
        if (bands.front().first != 0.0 || bands.back().second != 100.0) {
            fail(ErrorKind::Validation, "probability bands must cover 0..100");
        }
        for (std::size_t i = 0; i < bands.size(); ++i) {
            if (bands[i].first > bands[i].second) {
                fail(ErrorKind::Validation, "probability band with lower bound above upper bound");
            }
            if (i > 0) {
                const double gap = bands[i].first - bands[i - 1].second;
                if (gap <= 0.0) fail(ErrorKind::Validation, "probability bands overlap");
                if (gap > 1.0) fail(ErrorKind::Validation, "probability bands leave a gap");
            }
        }
    }
}

RatingScale RatingScale::consecutive(int lowest, int highest) {
    if (highest < lowest) fail(ErrorKind::Validation, "empty rating scale range");
    std::vector<ScaleCategory> cats;
    for (int c = lowest; c <= highest; ++c) cats.push_back({c, "", std::nullopt});
    return RatingScale(std::move(cats));
}

int RatingScale::lowest_code() const {
    if (categories_.empty()) fail(ErrorKind::Validation, "empty rating scale");
    return categories_.front().code;
}

int RatingScale::code_of(int index) const {
    if (index < 0 || index > max_index()) {
        fail(ErrorKind::InvalidArgument, "category index " + std::to_string(index) + " outside scale");
    }
    return categories_[static_cast<std::size_t>(index)].code;
}

std::optional<int> RatingScale::index_of(int code) const noexcept {
    if (categories_.empty()) return std::nullopt;
    const int idx = code - categories_.front().code;
    if (idx < 0 || idx > max_index()) return std::nullopt;
    return idx;
}

std::string RatingScale::describe() const {
    if (categories_.empty()) return "empty scale";
    std::ostringstream out;
    out << "scale " << categories_.front().code << ".." << categories_.back().code;
    return out.str();
}

// --- registries and observation sets -------------------------------------

std::uint32_t ElementRegistry::add(const std::string& id) {
    if (auto it = index_.find(id); it != index_.end()) return it->second;
    const auto idx = static_cast<std::uint32_t>(ids_.size());
    ids_.push_back(id);
    index_.emplace(id, idx);
    return idx;
}

std::optional<std::uint32_t> ElementRegistry::find(std::string_view id) const {
    if (auto it = index_.find(std::string(id)); it != index_.end()) return it->second;
    return std::nullopt;
}

void ObservationSet::add(const std::string& examinee, const std::string& rater, const std::string& task,
                         int category) {
    observations.push_back({examinees.add(examinee), raters.add(rater), tasks.add(task), category});
}

void ObservationSet::add(const std::string& person, const std::string& item, int category) {
    observations.push_back({examinees.add(person), 0, tasks.add(item), category});
}

void ObservationSet::validate() const {
    std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> seen;
    for (std::size_t i = 0; i < observations.size(); ++i) {
        const auto& o = observations[i];
        if (o.examinee >= examinees.size() || o.task >= tasks.size() ||
            (has_raters() && o.rater >= raters.size())) {
            fail(ErrorKind::Validation, "observation " + std::to_string(i) + " references an unregistered element");
        }
        if (o.category < 0 || o.category > scale.max_index()) {
            fail(ErrorKind::Validation, "observation " + std::to_string(i) + " has category index " +
                                            std::to_string(o.category) + " outside " + scale.describe());
        }
        if (!seen.emplace(o.examinee, has_raters() ? o.rater : 0U, o.task).second) {
            std::string where = examinees.at(o.examinee) + "/";
            if (has_raters()) where += raters.at(o.rater) + "/";
            where += tasks.at(o.task);
            fail(ErrorKind::Validation, "duplicate observation for " + where);
        }
    }
}

std::size_t ObservationSet::distinct_categories() const {
    std::set<int> used;
    for (const auto& o : observations) used.insert(o.category);
    return used.size();
}

// --- parameters -------------------------------------------------------------

std::optional<std::size_t> FacetMeasures::find(std::string_view id) const {
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] == id) return i;
    }
    return std::nullopt;
}

double FacetMeasures::mean() const {
    if (measure.empty()) return 0.0;
    return std::accumulate(measure.begin(), measure.end(), 0.0) / static_cast<double>(measure.size());
}

const FacetMeasures& ParameterSet::facet(FacetRole role) const {
    switch (role) {
        case FacetRole::Examinee: return examinees;
        case FacetRole::Task: return tasks;
        case FacetRole::Rater: return raters;
    }
    return examinees;
}

FacetMeasures& ParameterSet::facet(FacetRole role) {
    return const_cast<FacetMeasures&>(static_cast<const ParameterSet&>(*this).facet(role));
}

Orientations ParameterSet::orientations() const {
    return {examinees.orientation, tasks.orientation, raters.orientation};
}

ParameterSet make_parameter_set(const ObservationSet& obs, Model model, std::span<const FacetSpec> facets) {
    ParameterSet p;
    p.model = model;
    auto init = [](FacetMeasures& fm, FacetRole role, const ElementRegistry& reg) {
        fm.role = role;
        fm.ids = reg.ids();
        fm.measure.assign(reg.size(), 0.0);
        fm.se.assign(reg.size(), std::nullopt);
    };
    init(p.examinees, FacetRole::Examinee, obs.examinees);
    init(p.tasks, FacetRole::Task, obs.tasks);
    init(p.raters, FacetRole::Rater, obs.raters);
    for (const auto& f : facets) {
        auto& fm = p.facet(f.role);
        fm.orientation = f.orientation;
        fm.centered = f.centered;
    }
    if (model == Model::ThreeFacet) {
        p.tau.assign(static_cast<std::size_t>(std::max(obs.scale.max_index(), 1)), 0.0);
    } else {
        const int m = std::max(obs.scale.max_index(), 1);
        p.item_tau.assign(obs.tasks.size(), std::vector<double>(static_cast<std::size_t>(m), 0.0));
        std::vector<int> all(static_cast<std::size_t>(m) + 1);
        std::iota(all.begin(), all.end(), 0);
        p.item_categories.assign(obs.tasks.size(), all);
    }
    return p;
}

// --- probability kernels ----------------------------------------------------

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        fail(ErrorKind::InvalidArgument, std::string(what) + " must be finite");
    }
}

}  // namespace

double dichotomous_probability(double theta, double beta) {
    require_finite(theta, "theta");
    require_finite(beta, "beta");
    const double d = theta - beta;
    // Evaluate on the side that cannot overflow.
    if (d >= 0.0) return 1.0 / (1.0 + std::exp(-d));
    const double e = std::exp(d);
    return e / (1.0 + e);
}

std::vector<double> category_probabilities(double eta, std::span<const double> tau) {
    require_finite(eta, "linear predictor");
    if (tau.empty()) {
        fail(ErrorKind::Dimension, "threshold vector must have at least one entry");
    }
    std::vector<double> p(tau.size() + 1);
    double cumulative = 0.0;
    p[0] = 0.0;
    for (std::size_t k = 0; k < tau.size(); ++k) {
        require_finite(tau[k], "threshold");
        cumulative += eta - tau[k];
        p[k + 1] = cumulative;
    }
    const double top = *std::max_element(p.begin(), p.end());
    double total = 0.0;
    for (auto& v : p) {
        v = std::exp(v - top);
        total += v;
    }
    for (auto& v : p) v /= total;
    return p;
}

std::vector<double> pcm_category_probabilities(double theta, double beta, std::span<const double> tau) {
    require_finite(theta, "theta");
    require_finite(beta, "beta");
    return category_probabilities(theta - beta, tau);
}

std::vector<double> mfrm_category_probabilities(double theta, double beta, double alpha,
                                                std::span<const double> tau, const Orientations& o) {
    require_finite(theta, "theta");
    require_finite(beta, "beta");
    require_finite(alpha, "alpha");
    const double eta = o.examinee * theta + o.task * beta + o.rater * alpha;
    return category_probabilities(eta, tau);
}

Moments expected_score_and_variance(std::span<const double> probabilities) {
    if (probabilities.empty()) {
        fail(ErrorKind::InvalidArgument, "empty probability vector");
    }
    double total = 0.0;
    for (double p : probabilities) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            fail(ErrorKind::InvalidArgument, "probabilities must be finite and non-negative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        fail(ErrorKind::InvalidArgument, "probability vector sums to " + std::to_string(total) + ", not 1");
    }
    double e = 0.0;
    for (std::size_t c = 0; c < probabilities.size(); ++c) e += static_cast<double>(c) * probabilities[c];
    double w = 0.0;
    for (std::size_t c = 0; c < probabilities.size(); ++c) {
        const double d = static_cast<double>(c) - e;
        w += d * d * probabilities[c];
    }
    return {e, w};
}

// --- per-observation evaluation --------------------------------------------

namespace {

std::vector<std::size_t> resolve(const FacetMeasures& fm, const ElementRegistry& reg) {
    std::vector<std::size_t> map(reg.size());
    for (std::uint32_t i = 0; i < reg.size(); ++i) {
        auto idx = fm.find(reg.at(i));
        if (!idx) {
            fail(ErrorKind::MissingParameter,
                 "no " + std::string(to_string(fm.role)) + " parameter for '" + reg.at(i) + "'");
        }
        map[i] = *idx;
    }
    return map;
}

// Maps an observation's scale index onto the item's internal category.
int item_category(const ParameterSet& p, std::size_t item, int scale_index, const std::string& item_id) {
    if (item >= p.item_categories.size() || p.item_categories[item].empty()) return scale_index;
    const auto& cats = p.item_categories[item];
    auto it = std::find(cats.begin(), cats.end(), scale_index);
    if (it == cats.end()) {
        fail(ErrorKind::Validation, "item '" + item_id + "' has no parameterised category for scale index " +
                                        std::to_string(scale_index));
    }
    return static_cast<int>(it - cats.begin());
}

struct Evaluator {
    const ParameterSet& p;
    const ObservationSet& obs;
    Model model;
    std::vector<std::size_t> ex, ta, ra;

    Evaluator(const ParameterSet& params, const ObservationSet& o, Model m) : p(params), obs(o), model(m) {
        ex = resolve(p.examinees, obs.examinees);
        ta = resolve(p.tasks, obs.tasks);
        if (model == Model::ThreeFacet) {
            if (!obs.has_raters()) fail(ErrorKind::Validation, "three-facet evaluation needs rater ids");
            ra = resolve(p.raters, obs.raters);
            if (p.tau.empty()) fail(ErrorKind::MissingParameter, "no rating-scale thresholds");
        } else if (p.item_tau.size() != p.tasks.size()) {
            fail(ErrorKind::MissingParameter, "per-item thresholds missing");
        }
    }

    // Returns (probabilities, observed internal category, combined measure).
    std::tuple<std::vector<double>, int, double> evaluate(const Observation& o) const {
        const std::size_t e = ex[o.examinee];
        const std::size_t t = ta[o.task];
        if (model == Model::ThreeFacet) {
            const std::size_t r = ra[o.rater];
            const auto orient = p.orientations();
            auto probs = mfrm_category_probabilities(p.examinees.measure[e], p.tasks.measure[t],
                                                     p.raters.measure[r], p.tau, orient);
            const double omega = orient.examinee * p.examinees.measure[e] + orient.task * p.tasks.measure[t] +
                                 orient.rater * p.raters.measure[r];
            if (o.category > static_cast<int>(p.tau.size())) {
                fail(ErrorKind::Validation, "observed category above the modelled scale");
            }
            return {std::move(probs), o.category, omega};
        }
        const auto& tau = p.item_tau[t];
        const int cat = item_category(p, t, o.category, p.tasks.ids[t]);
        if (cat > static_cast<int>(tau.size())) {
            fail(ErrorKind::Validation, "observed category above item '" + p.tasks.ids[t] + "' range");
        }
        // Items with a single structural category carry no thresholds.
        std::vector<double> probs;
        if (tau.empty()) {
            probs = {1.0};
        } else {
            probs = category_probabilities(p.examinees.orientation * p.examinees.measure[e] +
                                               p.tasks.orientation * p.tasks.measure[t],
                                           tau);
        }
        const double omega = p.examinees.orientation * p.examinees.measure[e] +
                             p.tasks.orientation * p.tasks.measure[t];
        return {std::move(probs), cat, omega};
    }
};

}  // namespace

std::vector<ObservationFit> observation_fits(const ParameterSet& params, const ObservationSet& obs) {
    Evaluator ev(params, obs, params.model);
    std::vector<ObservationFit> out;
    out.reserve(obs.size());
    for (const auto& o : obs.observations) {
        auto [probs, cat, omega] = ev.evaluate(o);
        const auto m = expected_score_and_variance(probs);
        out.push_back({cat, m.expectation, m.variance, omega});
    }
    return out;
}

double log_likelihood(const ParameterSet& params, const ObservationSet& obs, Model model) {
    if (obs.observations.empty()) return 0.0;
    Evaluator ev(params, obs, model);
    double ll = 0.0;
    for (const auto& o : obs.observations) {
        auto [probs, cat, omega] = ev.evaluate(o);
        (void)omega;
        ll += std::log(probs[static_cast<std::size_t>(cat)]);
    }
    return ll;
}

}  // namespace raschkit
