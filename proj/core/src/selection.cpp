#include "raschkit/selection.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "raschkit/error.hpp"

namespace raschkit {

std::string_view to_string(SemioticTask task) noexcept {
    switch (task) {
        case SemioticTask::Name: return "Name";
        case SemioticTask::Represent: return "Represent";
        case SemioticTask::Use: return "Use";
        case SemioticTask::Content: return "Content";
    }
    return "Name";
}

SemioticTask parse_semiotic_task(std::string_view text) {
    for (auto t : kSemioticTasks) {
        if (text == to_string(t)) return t;
    }
    fail(ErrorKind::Validation, "unknown task '" + std::string(text) + "' (Name, Represent, Use, Content)");
}

std::string_view code_suffix(SemioticTask task) noexcept {
    switch (task) {
        case SemioticTask::Name: return "";
        case SemioticTask::Represent: return "_Repr";
        case SemioticTask::Use: return "_Use";
        case SemioticTask::Content: return "_Cont";
    }
    return "";
}

std::string_view to_string(AnswerFormat format) noexcept {
    switch (format) {
        case AnswerFormat::MultipleChoice: return "multiple_choice";
        case AnswerFormat::Likert3: return "likert3";
        case AnswerFormat::TrueFalse: return "true_false";
        case AnswerFormat::FreeText: return "free_text";
    }
    return "multiple_choice";
}

AnswerFormat parse_answer_format(std::string_view text) {
    for (auto f : {AnswerFormat::MultipleChoice, AnswerFormat::Likert3, AnswerFormat::TrueFalse, AnswerFormat::FreeText}) {
        if (text == to_string(f)) return f;
    }
    fail(ErrorKind::Validation, "unknown answer format '" + std::string(text) + "'");
}

void ItemBank::validate() const {
    std::set<int> numbers;
    std::map<std::string, std::array<int, 4>> counts;
    for (const auto& e : entries) {
        if (!numbers.insert(e.item_number).second) {
            fail(ErrorKind::Validation, "item number " + std::to_string(e.item_number) + " appears twice");
        }
        if (e.data_viz.empty()) fail(ErrorKind::Validation, "item " + std::to_string(e.item_number) + " has no data viz");
        ++counts[e.data_viz][static_cast<std::size_t>(e.task)];
    }
    for (const auto& [viz, c] : counts) {
        for (auto t : kSemioticTasks) {
            if (c[static_cast<std::size_t>(t)] == 0) {
                fail(ErrorKind::Validation, "data viz " + viz + " has no " + std::string(to_string(t)) + " item");
            }
        }
    }
    for (const auto& [viz, start] : label_start) {
        if (!counts.count(viz)) fail(ErrorKind::Validation, "label start given for unknown data viz " + viz);
        if (start < 0) fail(ErrorKind::Validation, "label start of " + viz + " is negative");
    }
}

const ItemBankEntry& ItemBank::item(int number) const {
    for (const auto& e : entries) {
        if (e.item_number == number) return e;
    }
    fail(ErrorKind::Validation, "item " + std::to_string(number) + " is not in the bank");
}

std::vector<Combination> generate_combinations(const ItemBank& bank) {
    bank.validate();
    std::map<std::string, std::array<std::vector<int>, 4>> variants;
    for (const auto& e : bank.entries) variants[e.data_viz][static_cast<std::size_t>(e.task)].push_back(e.item_number);
    std::vector<Combination> out;
    for (auto& [viz, per_task] : variants) {
        for (auto& v : per_task) std::sort(v.begin(), v.end());
        auto it = bank.label_start.find(viz);
        int label = it == bank.label_start.end() ? 1 : it->second;
        for (int name : per_task[0]) {
            for (int content : per_task[3]) {
                for (int use : per_task[2]) {
                    for (int repr : per_task[1]) {
                        out.push_back({viz + std::to_string(label++), viz, {name, repr, use, content}});
                    }
                }
            }
        }
    }
    return out;
}

std::vector<CombinationScore> combination_scores(const EstimationResult& result, const std::vector<FitRow>& fits,
                                                 const std::vector<Combination>& combinations) {
    const auto& ex = result.params.examinees;
    std::vector<CombinationScore> out;
    for (const auto& c : combinations) {
        const auto idx = ex.find(c.label);
        if (!idx) fail(ErrorKind::MissingParameter, "no measure for combination " + c.label);
        CombinationScore s;
        s.label = c.label;
        s.data_viz = c.data_viz;
        s.measure = ex.measure[*idx];
        for (const auto& f : fits) {
            if (f.facet == FacetRole::Examinee && f.element_id == c.label) {
                s.infit = f.infit;
                s.outfit = f.outfit;
                s.ptmea = f.ptmea;
            }
        }
        out.push_back(s);
    }
    return out;
}

namespace {

bool ranked_before(const CombinationScore& a, const CombinationScore& b) {
    if (a.measure != b.measure) return a.measure > b.measure;
    if (a.ptmea.has_value() != b.ptmea.has_value()) return a.ptmea.has_value();
    if (a.ptmea && *a.ptmea != *b.ptmea) return *a.ptmea > *b.ptmea;
    return a.label < b.label;
}

}  // namespace

std::vector<CombinationScore> rank_combinations(std::vector<CombinationScore> scores) {
    std::sort(scores.begin(), scores.end(), ranked_before);
    return scores;
}

std::string_view to_string(Strategy s) noexcept {
    switch (s) {
        case Strategy::TopGlobal: return "top_global";
        case Strategy::HighestUniqueMeasure: return "highest_unique_measure";
        case Strategy::MidRange: return "mid_range";
        case Strategy::BestPtMeaAmongTop: return "best_ptmea_among_top";
        case Strategy::Singleton: return "singleton";
    }
    return "singleton";
}

Strategy parse_strategy(std::string_view text) {
    for (auto s : {Strategy::TopGlobal, Strategy::HighestUniqueMeasure, Strategy::MidRange,
                   Strategy::BestPtMeaAmongTop, Strategy::Singleton}) {
        if (text == to_string(s)) return s;
    }
    fail(ErrorKind::Validation, "unknown selection strategy '" + std::string(text) + "'");
}

std::string_view to_string(UniquenessScope s) noexcept {
    switch (s) {
        case UniquenessScope::Group: return "group";
        case UniquenessScope::Global: return "global";
        case UniquenessScope::Selected: return "selected";
    }
    return "group";
}

UniquenessScope parse_uniqueness_scope(std::string_view text) {
    for (auto s : {UniquenessScope::Group, UniquenessScope::Global, UniquenessScope::Selected}) {
        if (text == to_string(s)) return s;
    }
    fail(ErrorKind::Validation, "unknown uniqueness scope '" + std::string(text) + "'");
}

void SelectionRules::validate() const {
    if (top_k < 1) fail(ErrorKind::Validation, "top_k must be at least 1");
    if (tier_size < 1) fail(ErrorKind::Validation, "tier_size must be at least 1");
    if (decimals < 0 || decimals > 9) fail(ErrorKind::Validation, "decimals must lie in 0..9");
    std::set<std::string> seen;
    for (const auto& v : order) {
        if (!strategies.count(v)) fail(ErrorKind::Validation, "processing order names " + v + " which has no strategy");
        if (!seen.insert(v).second) fail(ErrorKind::Validation, "processing order lists " + v + " twice");
    }
}

namespace {

std::string describe(const std::vector<AuditEntry>& audit) {
    std::string out;
    for (const auto& a : audit) out += fmt::format(" [{}: {} -> {}]", a.data_viz, to_string(a.strategy), a.selected);
    return out.empty() ? " (no earlier selections)" : out;
}

}  // namespace

Selection select_items(const std::vector<CombinationScore>& input, const SelectionRules& rules) {
    rules.validate();
    const auto ranked = rank_combinations(input);
    std::map<std::string, std::vector<const CombinationScore*>> groups;
    for (const auto& s : ranked) groups[s.data_viz].push_back(&s);
    for (const auto& [viz, members] : groups) {
        if (!rules.strategies.count(viz)) fail(ErrorKind::Validation, "no selection strategy for data viz " + viz);
    }

    std::vector<std::string> order;
    for (const auto& v : rules.order) {
        if (groups.count(v)) order.push_back(v);
    }
    for (const auto& [viz, members] : groups) {
        if (std::find(order.begin(), order.end(), viz) == order.end()) order.push_back(viz);
    }

    std::vector<std::string> top_groups;
    for (const auto& s : ranked) {
        if (static_cast<int>(top_groups.size()) >= rules.top_k) break;
        if (std::find(top_groups.begin(), top_groups.end(), s.data_viz) == top_groups.end()) {
            top_groups.push_back(s.data_viz);
        }
    }

    const double scale = std::pow(10.0, rules.decimals);
    auto key = [&](double m) { return std::llround(m * scale); };
    auto shown = [&](double m) { return fmt::format("{:.{}f}", static_cast<double>(key(m)) / scale, rules.decimals); };

    Selection sel;
    std::vector<const CombinationScore*> chosen;
    for (const auto& viz : order) {
        const auto& members = groups[viz];
        AuditEntry entry;
        entry.data_viz = viz;
        entry.strategy = rules.strategies.at(viz);
        for (const auto* m : members) entry.candidates.push_back(m->label);
        const CombinationScore* pick = nullptr;

        switch (entry.strategy) {
            case Strategy::TopGlobal: {
                if (std::find(top_groups.begin(), top_groups.end(), viz) != top_groups.end()) {
                    pick = members.front();
                    entry.note = fmt::format("group among the global top {}", rules.top_k);
                    for (std::size_t i = 1; i < members.size(); ++i) {
                        entry.rejected.push_back({members[i]->label, "lower measure than " + pick->label});
                    }
                } else {
                    entry.note = fmt::format("group not among the global top {}", rules.top_k);
                }
                break;
            }
            case Strategy::HighestUniqueMeasure: {
                entry.note = fmt::format("uniqueness at {} decimals, scope {}", rules.decimals, to_string(rules.scope));
                for (const auto* m : members) {
                    std::vector<const CombinationScore*> pool;
                    if (rules.scope == UniquenessScope::Group) pool = members;
                    if (rules.scope == UniquenessScope::Selected) pool = chosen;
                    if (rules.scope == UniquenessScope::Global) {
                        for (const auto& s : ranked) pool.push_back(&s);
                    }
                    const CombinationScore* clash = nullptr;
                    for (const auto* other : pool) {
                        if (other->label != m->label && key(other->measure) == key(m->measure)) {
                            clash = other;
                            break;
                        }
                    }
                    if (!clash) {
                        pick = m;
                        break;
                    }
                    entry.rejected.push_back(
                        {m->label, "rounded measure " + shown(m->measure) + " shared with " + clash->label});
                }
                break;
            }
            case Strategy::MidRange: {
                const std::size_t mid = members.size() / 2;
                pick = members[mid];
                entry.note = members.size() % 2 ? "median member"
                                                 : "lower of the two middle members (even group)";
                for (const auto* m : members) {
                    if (m != pick) entry.rejected.push_back({m->label, "farther from the group median"});
                }
                break;
            }
            case Strategy::BestPtMeaAmongTop: {
                const std::size_t tier = std::min<std::size_t>(members.size(), static_cast<std::size_t>(rules.tier_size));
                entry.note = fmt::format("highest PtMea among the top {} by measure", tier);
                for (std::size_t i = 0; i < tier; ++i) {
                    const auto* m = members[i];
                    if (!pick || (m->ptmea && (!pick->ptmea || *m->ptmea > *pick->ptmea))) pick = m;
                }
                for (std::size_t i = 0; i < members.size(); ++i) {
                    if (members[i] == pick) continue;
                    entry.rejected.push_back(
                        {members[i]->label, i < tier ? "lower PtMea than " + pick->label : "outside the top tier"});
                }
                break;
            }
            case Strategy::Singleton: {
                if (members.size() == 1) {
                    pick = members.front();
                } else {
                    entry.note = fmt::format("singleton rule on a group of {}", members.size());
                }
                break;
            }
        }
        if (!pick) {
            fail(ErrorKind::Validation, "selection rule " + std::string(to_string(entry.strategy)) + " found no candidate for " +
                                            viz + (entry.note.empty() ? "" : " (" + entry.note + ")") +
                                            "; audit so far:" + describe(sel.audit));
        }
        entry.selected = pick->label;
        chosen.push_back(pick);
        sel.audit.push_back(std::move(entry));
    }
    sel.labels = replay_audit(sel.audit);
    return sel;
}

std::vector<std::string> replay_audit(const std::vector<AuditEntry>& audit) {
    std::map<std::string, std::string> by_viz;
    for (const auto& a : audit) {
        if (a.selected.empty()) fail(ErrorKind::Validation, "audit entry for " + a.data_viz + " selects nothing");
        if (std::find(a.candidates.begin(), a.candidates.end(), a.selected) == a.candidates.end()) {
            fail(ErrorKind::Validation, "audit entry for " + a.data_viz + " selects a non-candidate");
        }
        for (const auto& r : a.rejected) {
            if (r.label == a.selected) fail(ErrorKind::Validation, "audit entry for " + a.data_viz + " rejects its pick");
        }
        if (!by_viz.emplace(a.data_viz, a.selected).second) {
            fail(ErrorKind::Validation, "audit log selects twice for " + a.data_viz);
        }
    }
    std::vector<std::string> out;
    for (const auto& [viz, label] : by_viz) out.push_back(label);
    return out;
}

std::vector<BlueprintRow> export_selected_test(const std::vector<std::string>& selection,
                                               const std::vector<Combination>& combinations, const ItemBank& bank) {
    std::vector<const Combination*> picked;
    for (const auto& label : selection) {
        auto it = std::find_if(combinations.begin(), combinations.end(),
                               [&](const Combination& c) { return c.label == label; });
        if (it == combinations.end()) fail(ErrorKind::Validation, "selected label " + label + " is not a combination");
        picked.push_back(&*it);
    }
    std::stable_sort(picked.begin(), picked.end(),
                     [](const Combination* a, const Combination* b) { return a->data_viz < b->data_viz; });
    std::vector<BlueprintRow> out;
    for (const auto* c : picked) {
        for (auto t : kSemioticTasks) {
            const auto& entry = bank.item(c->item(t));
            out.push_back({c->data_viz, c->label, t, entry.item_number, c->data_viz + std::string(code_suffix(t)),
                           entry.format});
        }
    }
    return out;
}

std::map<AnswerFormat, int> format_counts(const std::vector<BlueprintRow>& blueprint) {
    std::map<AnswerFormat, int> out;
    for (const auto& r : blueprint) ++out[r.format];
    return out;
}

}  // namespace raschkit
