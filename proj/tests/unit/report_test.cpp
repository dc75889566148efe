#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "raschkit/csv.hpp"
#include "raschkit/estimation.hpp"
#include "raschkit/report.hpp"
#include "raschkit/simulate.hpp"
#include "reference_tables.hpp"

using namespace raschkit;
using namespace raschkit::testing;

namespace {

WrightColumn pilot_column() {
    WrightColumn col;
    col.title = "Items";
    col.markers = true;
    for (const auto& row : parse_measure_table(read_data("pilot_item_measures.csv"))) {
        col.entries.push_back({row.id, row.measure});
    }
    return col;
}

std::vector<std::pair<std::size_t, std::string>> sorted_placements(std::vector<WrightPlacement> p) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
        return std::tie(a.column, a.bin, a.id) < std::tie(b.column, b.bin, b.id);
    });
    for (const auto& x : p) out.emplace_back(x.column, x.id + "@" + std::to_string(x.bin));
    return out;
}

}  // namespace

TEST(WrightMap, PilotItemsInPublishedOrder) {
    const auto map = render_wright_map({pilot_column()});
    ASSERT_EQ(map.placements.size(), kPilotItemOrder.size());
    for (std::size_t i = 0; i < kPilotItemOrder.size(); ++i) EXPECT_EQ(map.placements[i].id, kPilotItemOrder[i]) << i;
    EXPECT_EQ(map.placements.front().bin, 45);
    EXPECT_EQ(map.placements.back().bin, -33);
    EXPECT_EQ(map.top_bin, 45);
    EXPECT_EQ(map.bottom_bin, -33);
}

TEST(WrightMap, TextAndSvgAgree) {
    const auto map = render_wright_map({pilot_column()});
    const auto text = parse_wright_text(map.text);
    const auto svg = parse_wright_svg(map.svg);
    EXPECT_EQ(sorted_placements(text), sorted_placements(map.placements));
    EXPECT_EQ(sorted_placements(svg), sorted_placements(map.placements));
}

TEST(WrightMap, EveryElementOnceAndOrderedWithinColumn) {
    WrightColumn a{"A", {{"x", 0.31}, {"y", 0.29}, {"z", -1.0}, {"w", 0.31}}, false};
    WrightColumn b{"B", {{"k", 2.0}}, false};
    const auto map = render_wright_map({a, b});
    ASSERT_EQ(map.placements.size(), 5U);
    std::vector<std::string> col0;
    for (const auto& p : map.placements) {
        if (p.column == 0) col0.push_back(p.id);
    }
    EXPECT_EQ(col0, (std::vector<std::string>{"w", "x", "y", "z"}));
    EXPECT_EQ(sorted_placements(parse_wright_text(map.text)), sorted_placements(map.placements));
    EXPECT_EQ(sorted_placements(parse_wright_svg(map.svg)), sorted_placements(map.placements));
}

TEST(WrightMap, SingleElementOneRow) {
    const auto map = render_wright_map({WrightColumn{"only", {{"e", 1.234}}, false}});
    ASSERT_EQ(map.placements.size(), 1U);
    EXPECT_EQ(map.placements[0].bin, 12);
    EXPECT_EQ(map.top_bin, map.bottom_bin);
}

TEST(WrightMap, EmptyInputIsAnError) {
    EXPECT_ERROR_KIND(render_wright_map({}), ErrorKind::InvalidArgument);
    EXPECT_ERROR_KIND(render_wright_map({WrightColumn{"none", {}, false}}), ErrorKind::InvalidArgument);
}

TEST(WrightMap, MarkersFollowMeanAndSd) {
    WrightColumn c{"c", {{"a", -1.0}, {"b", 0.0}, {"c", 1.0}}, true};
    const auto map = render_wright_map({c});
    auto find = [&](char s) {
        std::vector<long> bins;
        for (const auto& m : map.markers) {
            if (m.symbol == s) bins.push_back(m.bin);
        }
        std::sort(bins.begin(), bins.end());
        return bins;
    };
    EXPECT_EQ(find('M'), std::vector<long>{0});
    EXPECT_EQ(find('S'), (std::vector<long>{-10, 10}));
    EXPECT_EQ(find('T'), (std::vector<long>{-20, 20}));
}

TEST(WrightMap, CenteredFacetsMeanAtRowZero) {
    ThreeFacetLayout layout;
    SimulationDesign d;
    d.generating = make_three_facet_generators(layout);
    d.scale = RatingScale::consecutive(1, 4);
    d.seed = 4;
    const auto obs = generate_replication(d, 0);
    const auto res = estimate_3frsm(obs, default_facets(Model::ThreeFacet));
    ASSERT_TRUE(res.converged);
    const auto cols = wright_columns(res);
    ASSERT_EQ(cols.size(), 3U);
    const auto map = render_wright_map(cols);
    for (std::size_t c : {1U, 2U}) {
        double sum = 0.0;
        for (const auto& e : cols[c].entries) sum += e.measure;
        EXPECT_EQ(wright_bin(sum / static_cast<double>(cols[c].entries.size()), 0.1), 0);
    }
    EXPECT_EQ(map.placements.size(), 29U + 7U + 4U);
}

TEST(WrightMap, RenderingIsPure) {
    const auto a = render_wright_map({pilot_column()});
    const auto b = render_wright_map({pilot_column()});
    EXPECT_EQ(a.text, b.text);
    EXPECT_EQ(a.svg, b.svg);
}

TEST(MeasureTable, RoundTripAtTwoDecimals) {
    const auto rows = parse_measure_table(read_data("combination_measures.csv"));
    const auto again = parse_measure_table(render_measure_table(rows, 2));
    ASSERT_EQ(rows.size(), again.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].id, again[i].id);
        EXPECT_DOUBLE_EQ(rows[i].measure, again[i].measure);
        EXPECT_EQ(rows[i].infit, again[i].infit);
        EXPECT_EQ(rows[i].outfit, again[i].outfit);
        EXPECT_EQ(rows[i].ptmea, again[i].ptmea);
    }
    const auto pilot = parse_measure_table(read_data("pilot_item_measures.csv"));
    EXPECT_FALSE(pilot.front().ptmea.has_value());
    EXPECT_EQ(render_measure_table(parse_measure_table(render_measure_table(pilot))), render_measure_table(pilot));
}

TEST(MeasureTable, MalformedRowsAreErrors) {
    EXPECT_ERROR_KIND(parse_measure_table("id,measure\nA,abc\n"), ErrorKind::Validation);
    EXPECT_ERROR_KIND(parse_measure_table("name,value\nA,1\n"), ErrorKind::Validation);
}

TEST(RenderTables, EmptySectionsGetNotices) {
    const auto bundle = render_tables({});
    const auto* report = bundle.find("report.txt");
    ASSERT_NE(report, nullptr);
    EXPECT_NE(report->content.find("Measures: not computed"), std::string::npos);
    EXPECT_NE(report->content.find("Wald test of equal severity: not computed"), std::string::npos);
    EXPECT_EQ(bundle.find("measures.csv"), nullptr);
    EXPECT_EQ(bundle.find("bias.csv"), nullptr);
}

TEST(RenderTables, MeasuresAndThresholdsWhenGiven) {
    ThreeFacetLayout layout;
    SimulationDesign d;
    d.generating = make_three_facet_generators(layout);
    d.scale = RatingScale::consecutive(1, 4);
    d.seed = 12;
    const auto obs = generate_replication(d, 0);
    const auto res = estimate_3frsm(obs, default_facets(Model::ThreeFacet));
    ReportInputs in;
    in.params = standard_errors(res.params, obs);
    const auto bundle = render_tables(in);
    const auto* m = bundle.find("measures.csv");
    ASSERT_NE(m, nullptr);
    const auto t = csv::parse(m->content);
    EXPECT_EQ(t.header, (std::vector<std::string>{"facet", "element", "measure", "se", "infit", "outfit", "ptmea", "flag"}));
    EXPECT_EQ(t.rows.size(), 29U + 7U + 4U);
    EXPECT_NE(bundle.find("thresholds.csv"), nullptr);
}

TEST(Bands, RaterAndRespondentMapping) {
    const std::map<std::string, std::vector<int>> rater{
        {"a", {1, 2, 2}}, {"b", {3, 3, 4}}, {"c", {4, 4, 5}}, {"d", {6, 5, 6}}, {"e", {2, 3, 2}}, {"f", {5, 5, 5}}};
    const std::map<std::string, double> measures{{"a", -2.0}, {"b", -0.5}, {"c", 0.2}, {"d", 3.0}, {"e", -1.0}, {"f", 1.0}};
    const auto rows = rater_respondent_bands(rater, measures);
    ASSERT_EQ(rows.size(), 6U);
    std::map<std::string, std::pair<int, int>> got;
    for (const auto& r : rows) got[r.item] = {r.rater_band, r.measure_band};
    EXPECT_EQ(got["a"], std::make_pair(1, 1));
    EXPECT_EQ(got["b"], std::make_pair(2, 2));
    EXPECT_EQ(got["c"], std::make_pair(3, 3));
    EXPECT_EQ(got["d"], std::make_pair(4, 4));
    EXPECT_EQ(got["e"], std::make_pair(1, 1));
    EXPECT_EQ(got["f"], std::make_pair(4, 4));
    const auto t = csv::parse(render_band_csv(rows));
    EXPECT_EQ(t.rows.size(), 6U);
    EXPECT_EQ(t.header.front(), "item");
}

TEST(Bands, MissingMeasureIsAnError) {
    EXPECT_ERROR_KIND(rater_respondent_bands({{"x", {1}}}, {}), ErrorKind::MissingParameter);
}

TEST(RaterDistribution, LongRows) {
    RaterScoreTable t;
    t.raters = {"R1", "R2"};
    t.items = {"1", "2"};
    t.scores = {{1, std::nullopt}, {3, 4}};
    const auto parsed = csv::parse(rater_distribution_csv(t));
    EXPECT_EQ(parsed.rows.size(), 3U);
    EXPECT_EQ(parsed.rows[2], (std::vector<std::string>{"R2", "2", "4"}));
}
