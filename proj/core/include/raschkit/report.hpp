#pragma once

// Wright maps and result tables.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "raschkit/diagnostics.hpp"
#include "raschkit/dimensionality.hpp"
#include "raschkit/estimation.hpp"
#include "raschkit/scale.hpp"
#include "raschkit/selection.hpp"

namespace raschkit {

struct WrightEntry {
    std::string id;
    double measure = 0.0;
};

struct WrightColumn {
    std::string title;
    std::vector<WrightEntry> entries;
    bool markers = false;  // M (mean), S (1 SD), T (2 SD)
};

struct WrightLayout {
    double bin_width = 0.1;
    double row_height = 14.0;  // SVG pixels
    double char_width = 7.0;
};

struct WrightPlacement {
    std::size_t column = 0;
    std::string id;
    long bin = 0;

    bool operator==(const WrightPlacement&) const = default;
};

struct WrightMarker {
    std::size_t column = 0;
    char symbol = 'M';
    long bin = 0;

    bool operator==(const WrightMarker&) const = default;
};

struct WrightMap {
    std::vector<std::string> titles;
    long top_bin = 0;
    long bottom_bin = 0;
    // Rows top to bottom; within a row by measure descending, exact ties by id.
    std::vector<WrightPlacement> placements;
    std::vector<WrightMarker> markers;
    std::string text;
    std::string svg;
};

long wright_bin(double measure, double bin_width);

WrightMap render_wright_map(const std::vector<WrightColumn>& columns, const WrightLayout& layout = {});

// One column per facet: examinees, then raters (three-facet runs), then tasks.
std::vector<WrightColumn> wright_columns(const EstimationResult& result);

// Recover placements from the rendered artifacts.
std::vector<WrightPlacement> parse_wright_text(const std::string& text, double bin_width = 0.1);
std::vector<WrightPlacement> parse_wright_svg(const std::string& svg);

// Rows of a published-style measure table.
struct MeasureRow {
    std::string id;
    double measure = 0.0;
    std::optional<double> infit;
    std::optional<double> outfit;
    std::optional<double> ptmea;
};

// Header: id,measure[,infit][,outfit][,ptmea]. Empty cells are absent values.
std::vector<MeasureRow> parse_measure_table(const std::string& csv_text);
std::string render_measure_table(const std::vector<MeasureRow>& rows, int decimals = 2);

// Scores for every combination from a measure table keyed by label. Unknown
// labels and combinations without a row are Validation errors.
std::vector<CombinationScore> scores_from_measure_table(const std::vector<MeasureRow>& rows,
                                                        const std::vector<Combination>& combinations);

struct ReportInputs {
    std::optional<ParameterSet> params;
    std::vector<FitRow> fits;
    std::vector<ReliabilityReport> reliability;
    std::optional<WaldTest> wald;
    std::optional<BiasTable> bias;
    std::vector<ThresholdFinding> thresholds;
    std::optional<CorrelationTable> residual_correlations;
    std::optional<ContrastReport> contrasts;
    std::vector<PairwiseDifferenceMatrix> pairwise;
};

struct ReportFile {
    std::string name;
    std::string content;
};

struct ReportBundle {
    std::vector<ReportFile> files;

    const ReportFile* find(const std::string& name) const;
};

// CSV tables per section plus report.txt with aligned text. Sections without
// inputs get a notice line in report.txt and no CSV.
ReportBundle render_tables(const ReportInputs& inputs);

// Four difficulty bands: 1 very easy, 2 easy, 3 hard, 4 very hard.
struct BandRow {
    std::string item;
    double rater_median = 0.0;
    int rater_band = 0;
    double measure = 0.0;
    int measure_band = 0;
};

struct BandConfig {
    // Upper bounds of rater-median bands 1..3 (on the 1..6 scale).
    std::vector<double> rater_cuts{2.0, 3.0, 4.0};
};

// Measures split at 0 and at the median of each half.
std::vector<BandRow> rater_respondent_bands(const std::map<std::string, std::vector<int>>& rater_scores,
                                            const std::map<std::string, double>& measures,
                                            const BandConfig& config = {});
std::string render_band_csv(const std::vector<BandRow>& rows);

// Long rater,item,score rows for external plotting.
std::string rater_distribution_csv(const RaterScoreTable& table);

}  // namespace raschkit
