#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wikicite/features.hpp"

namespace wikicite {

// The five normalized features, in the fixed benchmark order.
inline constexpr std::size_t kFeatureCount = 5;
inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "length", "references", "ref_density", "images", "sections"};

// Per-language normalization denominators: the feature medians of that
// language's best-rated articles.
struct MedianBenchmarks {
    std::string language;
    std::array<double, kFeatureCount> medians{};  // order per kFeatureNames
};

struct QualityScore {
    std::int64_t page_id = 0;
    double nma = 0.0;  // in [0, 100]
    std::int64_t qft = 0;
    double score = 0.0;  // in [0, 100]
};

// Feature medians over a best-rated article set; even-sized sets take the
// mean of the two middle values.
MedianBenchmarks compute_medians(const std::vector<ArticleFeatures>& featured,
                                 std::string language);

// 100 points at or above the median, proportional below, 100 when the median
// itself is zero (an absent benchmark imposes no requirement).
double normalize_feature(double value, double median);

// Mean of the five normalized feature points.
double compute_nma(const ArticleFeatures& features, const MedianBenchmarks& bench);

// score = nma * (1 - 0.05 * qft), clamped to [0, 100].
QualityScore compute_quality_score(double nma, std::int64_t qft);

QualityScore score_article(const ArticleFeatures& features, const MedianBenchmarks& bench);

// Benchmarks file: one JSON object keyed by language, five named medians each.
void write_benchmarks_file(std::ostream& out, const std::vector<MedianBenchmarks>& all);
std::vector<MedianBenchmarks> read_benchmarks_file(std::istream& in, const std::string& path);

// Scores TSV: page_id, nma, qft, score; the score column carries two
// decimals, everything upstream of it stays full precision.
void write_scores_tsv(std::ostream& out, const std::vector<QualityScore>& rows);
std::vector<QualityScore> read_scores_tsv(std::istream& in);

}  // namespace wikicite
