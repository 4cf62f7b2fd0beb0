#include "wikicite/quality.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "wikicite/errors.hpp"
#include "wikicite/text_util.hpp"

namespace wikicite {

namespace {

double feature_value(const ArticleFeatures& f, std::size_t i) {
    switch (i) {
        case 0: return static_cast<double>(f.length);
        case 1: return static_cast<double>(f.references);
        case 2: return f.ref_density;
        case 3: return static_cast<double>(f.images);
        case 4: return static_cast<double>(f.sections);
        default: throw std::out_of_range("feature index");
    }
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace

MedianBenchmarks compute_medians(const std::vector<ArticleFeatures>& featured,
                                 std::string language) {
    if (featured.empty())
        throw std::invalid_argument("compute_medians: empty best-rated article list");
    MedianBenchmarks bench;
    bench.language = std::move(language);
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        std::vector<double> values;
        values.reserve(featured.size());
        for (const ArticleFeatures& f : featured) values.push_back(feature_value(f, i));
        bench.medians[i] = median_of(std::move(values));
    }
    return bench;
}

double normalize_feature(double value, double median) {
    if (value < 0) throw std::invalid_argument("normalize_feature: negative value");
    if (median < 0) throw std::invalid_argument("normalize_feature: negative median");
    if (median == 0.0) return 100.0;
    if (value >= median) return 100.0;
    return 100.0 * value / median;
}

double compute_nma(const ArticleFeatures& features, const MedianBenchmarks& bench) {
    double sum = 0.0;
    for (std::size_t i = 0; i < kFeatureCount; ++i)
        sum += normalize_feature(feature_value(features, i), bench.medians[i]);
    return sum / static_cast<double>(kFeatureCount);
}

QualityScore compute_quality_score(double nma, std::int64_t qft) {
    QualityScore q;
    q.nma = nma;
    q.qft = qft;
    double raw = nma * (1.0 - 0.05 * static_cast<double>(qft));
    q.score = std::clamp(raw, 0.0, 100.0);
    return q;
}

QualityScore score_article(const ArticleFeatures& features, const MedianBenchmarks& bench) {
    QualityScore q = compute_quality_score(compute_nma(features, bench), features.qft);
    q.page_id = features.page_id;
    return q;
}

void write_benchmarks_file(std::ostream& out, const std::vector<MedianBenchmarks>& all) {
    nlohmann::json root = nlohmann::json::object();
    for (const MedianBenchmarks& b : all) {
        nlohmann::json medians = nlohmann::json::object();
        for (std::size_t i = 0; i < kFeatureCount; ++i) medians[kFeatureNames[i]] = b.medians[i];
        root[b.language] = medians;
    }
    out << root.dump(2) << '\n';
}

std::vector<MedianBenchmarks> read_benchmarks_file(std::istream& in, const std::string& path) {
    nlohmann::json root = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (root.is_discarded() || !root.is_object())
        throw ConfigError("benchmarks file is not a JSON object: " + path);
    std::vector<MedianBenchmarks> all;
    for (auto it = root.begin(); it != root.end(); ++it) {
        MedianBenchmarks b;
        b.language = it.key();
        if (!it->is_object()) throw ConfigError("benchmarks for '" + b.language + "' malformed");
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            if (!it->contains(kFeatureNames[i]) || !(*it)[kFeatureNames[i]].is_number())
                throw ConfigError("benchmarks for '" + b.language + "' missing median '" +
                                  kFeatureNames[i] + "'");
            b.medians[i] = (*it)[kFeatureNames[i]].get<double>();
            if (b.medians[i] < 0)
                throw ConfigError("benchmarks for '" + b.language + "': negative median");
        }
        all.push_back(std::move(b));
    }
    return all;
}

void write_scores_tsv(std::ostream& out, const std::vector<QualityScore>& rows) {
    out << "page_id\tnma\tqft\tscore\n";
    for (const QualityScore& q : rows) {
        out << q.page_id << '\t' << format_double(q.nma) << '\t' << q.qft << '\t'
            << format_fixed2(q.score) << '\n';
    }
}

std::vector<QualityScore> read_scores_tsv(std::istream& in) {
    std::vector<QualityScore> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        if (cols.size() != 4) throw ParseError("scores TSV: expected 4 columns");
        QualityScore q;
        q.page_id = parse_int(cols[0]);
        q.nma = parse_double(cols[1]);
        q.qft = parse_int(cols[2]);
        q.score = parse_double(cols[3]);
        rows.push_back(q);
    }
    return rows;
}

}  // namespace wikicite
