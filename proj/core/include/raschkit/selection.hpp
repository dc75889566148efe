#pragma once

// Item bank, combination generation, discriminability ranking and rule-based
// selection of one representative combination per data visualization.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "raschkit/diagnostics.hpp"
#include "raschkit/estimation.hpp"

namespace raschkit {

enum class SemioticTask { Name, Represent, Use, Content };
inline constexpr std::array<SemioticTask, 4> kSemioticTasks{SemioticTask::Name, SemioticTask::Represent,
                                                            SemioticTask::Use, SemioticTask::Content};

std::string_view to_string(SemioticTask task) noexcept;
SemioticTask parse_semiotic_task(std::string_view text);
// "", "_Repr", "_Use", "_Cont"
std::string_view code_suffix(SemioticTask task) noexcept;

enum class AnswerFormat { MultipleChoice, Likert3, TrueFalse, FreeText };

std::string_view to_string(AnswerFormat format) noexcept;
AnswerFormat parse_answer_format(std::string_view text);

struct ItemBankEntry {
    int item_number = 0;
    std::string data_viz;
    SemioticTask task = SemioticTask::Name;
    AnswerFormat format = AnswerFormat::MultipleChoice;

    bool operator==(const ItemBankEntry&) const = default;
};

struct ItemBank {
    std::vector<ItemBankEntry> entries;
    // First label number per data viz (default 1).
    std::map<std::string, int> label_start;

    void validate() const;
    const ItemBankEntry& item(int number) const;
    bool operator==(const ItemBank&) const = default;
};

struct Combination {
    std::string label;
    std::string data_viz;
    std::array<int, 4> items{};  // Name, Represent, Use, Content

    int item(SemioticTask task) const { return items[static_cast<std::size_t>(task)]; }
    bool operator==(const Combination&) const = default;
};

// Data viz in lexicographic order; within one, Represent varies fastest, then
// Use, then Content, variants ordered by item number.
std::vector<Combination> generate_combinations(const ItemBank& bank);

struct CombinationScore {
    std::string label;
    std::string data_viz;
    double measure = 0.0;
    std::optional<double> infit;
    std::optional<double> outfit;
    std::optional<double> ptmea;
};

// Joins examinee measures and fit rows with the combination labels.
std::vector<CombinationScore> combination_scores(const EstimationResult& result, const std::vector<FitRow>& fits,
                                                 const std::vector<Combination>& combinations);

// Measure descending, then PtMea descending (absent last), then label.
std::vector<CombinationScore> rank_combinations(std::vector<CombinationScore> scores);

enum class Strategy { TopGlobal, HighestUniqueMeasure, MidRange, BestPtMeaAmongTop, Singleton };
enum class UniquenessScope { Group, Global, Selected };

std::string_view to_string(Strategy s) noexcept;
Strategy parse_strategy(std::string_view text);
std::string_view to_string(UniquenessScope s) noexcept;
UniquenessScope parse_uniqueness_scope(std::string_view text);

struct SelectionRules {
    std::map<std::string, Strategy> strategies;
    // Data viz processed in this order first, the rest lexicographically.
    std::vector<std::string> order;
    int top_k = 2;
    UniquenessScope scope = UniquenessScope::Group;
    int decimals = 2;
    int tier_size = 2;

    void validate() const;
    bool operator==(const SelectionRules&) const = default;
};

struct Rejection {
    std::string label;
    std::string reason;
};

struct AuditEntry {
    std::string data_viz;
    Strategy strategy = Strategy::Singleton;
    std::vector<std::string> candidates;  // group members in ranked order
    std::string selected;
    std::vector<Rejection> rejected;
    std::string note;
};

struct Selection {
    std::vector<std::string> labels;  // data viz lexicographic
    std::vector<AuditEntry> audit;    // processing order
};

Selection select_items(const std::vector<CombinationScore>& ranked, const SelectionRules& rules);

// Rebuilds the selected set from an audit log alone, checking its consistency.
std::vector<std::string> replay_audit(const std::vector<AuditEntry>& audit);

struct BlueprintRow {
    std::string data_viz;
    std::string combination;
    SemioticTask task = SemioticTask::Name;
    int item_number = 0;
    std::string code;
    AnswerFormat format = AnswerFormat::MultipleChoice;
};

std::vector<BlueprintRow> export_selected_test(const std::vector<std::string>& selection,
                                               const std::vector<Combination>& combinations, const ItemBank& bank);

std::map<AnswerFormat, int> format_counts(const std::vector<BlueprintRow>& blueprint);

}  // namespace raschkit
