#pragma once

// Rating-scale integrity: threshold disorder, category collapsing and
// dichotomization of raw answers.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raschkit/model.hpp"

namespace raschkit {

enum class ThresholdIssue { Disordered, TooClose };

std::string_view to_string(ThresholdIssue issue) noexcept;

struct ThresholdFinding {
    ThresholdIssue issue = ThresholdIssue::Disordered;
    int position = 1;  // pair (position, position + 1), 1-based
    double lower = 0.0;
    double upper = 0.0;
    std::string item_id;  // empty for a shared scale
};

// A pair can carry both findings (e.g. 0.88 then 0.83).
std::vector<ThresholdFinding> detect_disordered_thresholds(std::span<const double> tau, double closeness_tol = 0.1);

// Per-item findings of a partial credit run, or the shared scale of a
// three-facet run.
std::vector<ThresholdFinding> detect_threshold_findings(const ParameterSet& params, double closeness_tol = 0.1);

enum class RecodeReason { DisorderedThresholds, TooCloseThresholds, Dichotomization, Manual };

std::string_view to_string(RecodeReason reason) noexcept;
RecodeReason parse_recode_reason(std::string_view text);

// Maps scale codes (as collected) to new codes. An empty item means the map
// applies to every observation and rebuilds the scale; an item-scoped map must
// land on codes of the existing scale.
struct RecodeMap {
    std::string item;
    std::map<int, int> mapping;
    RecodeReason reason = RecodeReason::Manual;

    // Monotone non-decreasing, onto consecutive new codes.
    void validate() const;
    bool operator==(const RecodeMap&) const = default;
};

ObservationSet collapse_categories(const ObservationSet& obs, const RecodeMap& recode);

// Raw person x item answers; an absent or empty answer is a missing cell.
struct ResponseTable {
    std::vector<std::string> persons;
    std::vector<std::string> items;
    std::vector<std::vector<std::optional<std::string>>> answers;  // [person][item]

    void validate() const;
};

struct KeyEntry {
    // Keyed items score 1 on an accepted answer and 0 on anything else,
    // including "I don't know". Pass-through items carry integer codes
    // 0..levels-1; any non-numeric answer there scores 0.
    bool pass_through = false;
    std::vector<std::string> accepted;
    int levels = 2;
};

using AnswerKey = std::map<std::string, KeyEntry>;

// Trim surrounding whitespace and fold ASCII case.
std::string normalize_answer(std::string_view answer);

ObservationSet dichotomize(const ResponseTable& responses, const AnswerKey& key);

}  // namespace raschkit
