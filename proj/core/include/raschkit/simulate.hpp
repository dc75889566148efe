#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "raschkit/model.hpp"

namespace raschkit {

// SplitMix64 written in counter form: draw n is mix(key + (n + 1) * golden).
// Integer state only, so streams are identical on every platform.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept : key_(key), counter_(counter) {}

    std::uint64_t next() noexcept;
    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    std::uint64_t counter() const noexcept { return counter_; }

    static std::uint64_t mix(std::uint64_t z) noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

// Sub-seed of replication r: mix(seed ^ mix(r + 1)).
std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t replication) noexcept;

// Inverse-CDF draw from an exact probability vector.
int sample_category(std::span<const double> probabilities, CounterRng& rng);

struct SimulationDesign {
    // Facet sizes and ids come from the generating parameters. A three-facet
    // design fully crosses examinees x raters x tasks; a partial credit design
    // crosses persons x items.
    ParameterSet generating;
    RatingScale scale;
    double missing_rate = 0.0;
    std::uint64_t seed = 1;
    int replications = 1;

    void validate() const;
};

ObservationSet generate_replication(const SimulationDesign& design, int replication);
std::vector<ObservationSet> generate_observations(const SimulationDesign& design);

// Shifts every category of one examinee-rater pair by `shift`, clamped to the
// scale.
ObservationSet plant_bias(const ObservationSet& obs, const std::string& examinee_id,
                          const std::string& rater_id, int shift);

// Generators evenly spaced on [-spread, +spread] per facet. Ids are prefixed
// and zero-padded (E01, R1, T1, ...).
struct ThreeFacetLayout {
    int examinees = 29;
    int raters = 7;
    int tasks = 4;
    double examinee_spread = 1.0;
    double rater_spread = 1.0;
    double task_spread = 1.0;
    std::vector<double> tau{-1.5, 0.0, 1.5};
    Orientations orientations = Orientations::standard();
};

ParameterSet make_three_facet_generators(const ThreeFacetLayout& layout);

struct PartialCreditLayout {
    int persons = 75;
    int items = 20;
    double person_spread = 1.5;
    double item_spread = 1.5;
    // Thresholds shared by every item; a single zero gives dichotomous items.
    std::vector<double> tau{0.0};
};

ParameterSet make_partial_credit_generators(const PartialCreditLayout& layout);

}  // namespace raschkit
