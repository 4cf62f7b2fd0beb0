#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "wikicite/citation_index.hpp"
#include "wikicite/errors.hpp"

namespace wikicite {

struct DumpPaths {
    std::string page;
    std::string pagelinks;
    std::string linktarget;  // optional: empty for legacy-schema wikis
    std::string pages_articles;
};

struct BenchmarksSource {
    enum class Mode { File, Compute };
    Mode mode = Mode::File;
    std::string file;                               // Mode::File
    std::map<std::string, std::string> badge_lists;  // Mode::Compute, per language
};

struct PipelineConfig {
    std::vector<std::string> languages;
    std::map<std::string, DumpPaths> dumps;
    std::string wikidata_dump;
    std::string topics_file;
    std::map<std::string, std::string> lexicons;  // language -> lexicon file
    BenchmarksSource benchmarks;
    std::vector<int> k_values{10, 25, 100};
    RedirectMode redirect_mode = RedirectMode::SingleHop;
    Strictness strictness = Strictness::Strict;
    std::string output_dir;
    std::string dump_date;  // recorded as the index's generated_from
};

PipelineConfig load_pipeline_config(const std::string& path);

// Structural checks: languages, k_values, per-language entries present.
void validate_config_shape(const PipelineConfig& config);

// Shape checks plus readability of every referenced input file. Throws
// ConfigError before any stage work happens.
void validate_config(const PipelineConfig& config);

// One output cell: average quality over the Top-K most cited articles of a
// (language, topic). n_articles < k when the topic ran short.
struct MatrixRow {
    std::string language;
    std::string topic_id;
    int k = 0;
    std::int64_t n_articles = 0;
    double avg_quality = 0.0;
};

struct StageResult {
    std::string stage;
    std::string language;  // empty for cross-language stages
    bool cached = false;
    nlohmann::json report;
};

struct RunSummary {
    std::vector<StageResult> stages;
};

// Stage-by-stage pipeline over persisted TSV intermediates. Every stage is
// individually re-runnable; a stage whose outputs already exist is skipped
// unless force is set. Outputs are byte-deterministic.
class Pipeline {
public:
    Pipeline(PipelineConfig config, bool force = false);

    StageResult ingest(const std::string& language);
    StageResult index(const std::string& language);
    StageResult features(const std::string& language);
    StageResult score(const std::string& language);
    StageResult align();
    StageResult rank();
    StageResult report();

    // ingest..score per language (languages in parallel), then align, rank,
    // report, and the aggregated run_report.json.
    RunSummary run();

    const PipelineConfig& config() const { return config_; }

    // output tree layout
    std::string lang_dir(const std::string& language) const;
    std::string lang_path(const std::string& language, const std::string& name) const;
    std::string out_path(const std::string& name) const;

private:
    StageResult run_language_stage(const std::string& stage, const std::string& language);
    void write_run_report();
    PageIndex load_pages(const std::string& language);

    PipelineConfig config_;
    bool force_;
};

// Matrix assembly from rankings and per-language scores; throws
// IntegrityError when a ranked page has no score. Rows come back sorted by
// (topic, language, k).
std::vector<MatrixRow> emit_matrix(
    const std::map<std::string, std::map<std::string, std::map<int, RankedList>>>& rankings,
    const std::map<std::string, std::map<std::int64_t, double>>& scores_by_language);

// Long form: language, topic_id, k, n_articles, avg_quality (two decimals).
void write_matrix_long_tsv(std::ostream& out, const std::vector<MatrixRow>& rows);
// Wide form for one K: topics down, languages across.
void write_matrix_wide_tsv(std::ostream& out, const std::vector<MatrixRow>& rows, int k);

}  // namespace wikicite
