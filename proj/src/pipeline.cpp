#include "wikicite/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <set>
#include <sstream>

#include "wikicite/features.hpp"
#include "wikicite/gzip_stream.hpp"
#include "wikicite/mediawiki_tables.hpp"
#include "wikicite/quality.hpp"
#include "wikicite/text_util.hpp"
#include "wikicite/topics.hpp"
#include "wikicite/wikidata.hpp"
#include "wikicite/xml_dump.hpp"

namespace fs = std::filesystem;

namespace wikicite {

namespace {

using nlohmann::json;

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

std::string resolve_relative(const fs::path& base, const std::string& p) {
    if (p.empty()) return p;
    fs::path path(p);
    if (path.is_absolute()) return p;
    return (base / path).lexically_normal().string();
}

void require_readable(const std::string& what, const std::string& path) {
    if (path.empty()) throw ConfigError(what + ": no path configured");
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError(what + ": cannot read " + path);
}

std::ifstream open_input_or(const std::string& path, const std::string& hint) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("missing " + path + " (" + hint + ")");
    return f;
}

// Deterministic, atomic-enough file write: tmp file then rename.
void write_text_file(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp);
        fn(out);
        out.flush();
        if (!out) throw ConfigError("write failed: " + tmp);
    }
    fs::rename(tmp, path);
}

void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

json read_json_file(const std::string& path, const std::string& hint) {
    std::ifstream in = open_input_or(path, hint);
    json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ConfigError("malformed JSON report: " + path);
    return j;
}

bool all_exist(const std::vector<std::string>& paths) {
    for (const std::string& p : paths)
        if (!fs::exists(p)) return false;
    return true;
}

json sql_diag_json(const SqlDiagnostics& d) {
    return json{{"statements_skipped", d.statements_skipped},
                {"malformed_tuples", d.malformed_tuples},
                {"truncated", d.truncated}};
}

template <typename Fn>
auto with_stage_context(const std::string& stage, const std::string& language, Fn&& fn) {
    try {
        return fn();
    } catch (const SqlError& e) {
        throw SqlError(e.kind(), e.byte_offset(),
                       "stage " + stage + (language.empty() ? "" : " (" + language + ")") + ": " +
                           e.what());
    } catch (const XmlError& e) {
        throw XmlError(e.line(), "stage " + stage +
                                     (language.empty() ? "" : " (" + language + ")") + ": " +
                                     e.what());
    }
}

struct RankingsRow {
    std::string language;
    std::string topic_id;
    int k = 0;
    int rank = 0;
    std::int64_t page_id = 0;
    std::uint64_t citation_count = 0;
};

void write_rankings_tsv(std::ostream& out, const std::vector<RankingsRow>& rows) {
    out << "language\ttopic_id\tk\trank\tpage_id\tcitation_count\n";
    for (const RankingsRow& r : rows) {
        out << r.language << '\t' << r.topic_id << '\t' << r.k << '\t' << r.rank << '\t'
            << r.page_id << '\t' << r.citation_count << '\n';
    }
}

std::vector<RankingsRow> read_rankings_tsv(std::istream& in) {
    std::vector<RankingsRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        if (cols.size() != 6) throw ParseError("rankings TSV: expected 6 columns");
        RankingsRow r;
        r.language = std::string(cols[0]);
        r.topic_id = std::string(cols[1]);
        r.k = static_cast<int>(parse_int(cols[2]));
        r.rank = static_cast<int>(parse_int(cols[3]));
        r.page_id = parse_int(cols[4]);
        r.citation_count = static_cast<std::uint64_t>(parse_int(cols[5]));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::int64_t> read_badge_list(const std::string& path) {
    std::ifstream in = open_input_or(path, "badge list");
    std::vector<std::int64_t> ids;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        ids.push_back(parse_int(s));
    }
    return ids;
}

}  // namespace

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json root = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (root.is_discarded() || !root.is_object())
        throw ConfigError("config file is not a JSON object: " + path);

    fs::path base = fs::path(path).parent_path();
    PipelineConfig cfg;
    try {
        cfg.languages = root.at("languages").get<std::vector<std::string>>();
        cfg.output_dir = resolve_relative(base, root.at("output_dir").get<std::string>());
        cfg.wikidata_dump = resolve_relative(base, root.value("wikidata_dump", std::string()));
        cfg.topics_file = resolve_relative(base, root.value("topics_file", std::string()));
        cfg.dump_date = root.value("dump_date", std::string("unknown"));

        if (root.contains("k_values"))
            cfg.k_values = root["k_values"].get<std::vector<int>>();

        std::string mode = root.value("redirect_mode", std::string("single-hop"));
        if (mode == "single-hop") {
            cfg.redirect_mode = RedirectMode::SingleHop;
        } else if (mode == "none") {
            cfg.redirect_mode = RedirectMode::None;
        } else {
            throw ConfigError("redirect_mode must be 'single-hop' or 'none'");
        }
        cfg.strictness =
            root.value("strict", true) ? Strictness::Strict : Strictness::Lenient;

        if (root.contains("dumps")) {
            for (auto it = root["dumps"].begin(); it != root["dumps"].end(); ++it) {
                DumpPaths dp;
                dp.page = resolve_relative(base, it->value("page", std::string()));
                dp.pagelinks = resolve_relative(base, it->value("pagelinks", std::string()));
                dp.linktarget = resolve_relative(base, it->value("linktarget", std::string()));
                dp.pages_articles =
                    resolve_relative(base, it->value("pages_articles", std::string()));
                cfg.dumps[it.key()] = std::move(dp);
            }
        }
        if (root.contains("lexicons")) {
            for (auto it = root["lexicons"].begin(); it != root["lexicons"].end(); ++it)
                cfg.lexicons[it.key()] = resolve_relative(base, it->get<std::string>());
        }
        if (root.contains("benchmarks")) {
            const json& b = root["benchmarks"];
            std::string bmode = b.value("mode", std::string("file"));
            if (bmode == "file") {
                cfg.benchmarks.mode = BenchmarksSource::Mode::File;
                cfg.benchmarks.file = resolve_relative(base, b.value("path", std::string()));
            } else if (bmode == "compute") {
                cfg.benchmarks.mode = BenchmarksSource::Mode::Compute;
                if (b.contains("badge_lists")) {
                    for (auto it = b["badge_lists"].begin(); it != b["badge_lists"].end(); ++it)
                        cfg.benchmarks.badge_lists[it.key()] =
                            resolve_relative(base, it->get<std::string>());
                }
            } else {
                throw ConfigError("benchmarks.mode must be 'file' or 'compute'");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config file ") + path + ": " + e.what());
    }
    return cfg;
}

void validate_config_shape(const PipelineConfig& config) {
    if (config.languages.empty()) throw ConfigError("no languages configured");
    if (config.output_dir.empty()) throw ConfigError("output_dir not configured");

    if (config.k_values.empty()) throw ConfigError("k_values must be non-empty");
    int prev = 0;
    for (int k : config.k_values) {
        if (k <= prev) throw ConfigError("k_values must be positive and strictly increasing");
        prev = k;
    }

    std::set<std::string> seen;
    for (const std::string& lang : config.languages) {
        if (lang.empty()) throw ConfigError("empty language code");
        if (!seen.insert(lang).second) throw ConfigError("duplicate language: " + lang);
        if (config.dumps.find(lang) == config.dumps.end())
            throw ConfigError("no dump paths configured for language: " + lang);
        if (config.lexicons.find(lang) == config.lexicons.end())
            throw ConfigError("no lexicon configured for language: " + lang);
    }
}

void validate_config(const PipelineConfig& config) {
    validate_config_shape(config);

    for (const std::string& lang : config.languages) {
        const DumpPaths& dp = config.dumps.at(lang);
        require_readable("page dump for " + lang, dp.page);
        require_readable("pagelinks dump for " + lang, dp.pagelinks);
        require_readable("pages-articles dump for " + lang, dp.pages_articles);
        if (!dp.linktarget.empty())
            require_readable("linktarget dump for " + lang, dp.linktarget);
        require_readable("lexicon for " + lang, config.lexicons.at(lang));

        if (config.benchmarks.mode == BenchmarksSource::Mode::Compute) {
            auto badge_it = config.benchmarks.badge_lists.find(lang);
            if (badge_it == config.benchmarks.badge_lists.end())
                throw ConfigError("no badge list configured for language: " + lang);
            require_readable("badge list for " + lang, badge_it->second);
        }
    }
    if (config.benchmarks.mode == BenchmarksSource::Mode::File)
        require_readable("benchmarks file", config.benchmarks.file);

    require_readable("wikidata dump", config.wikidata_dump);
    require_readable("topics file", config.topics_file);
}

Pipeline::Pipeline(PipelineConfig config, bool force)
    : config_(std::move(config)), force_(force) {}

std::string Pipeline::lang_dir(const std::string& language) const {
    return join_path(config_.output_dir, language);
}

std::string Pipeline::lang_path(const std::string& language, const std::string& name) const {
    return join_path(lang_dir(language), name);
}

std::string Pipeline::out_path(const std::string& name) const {
    return join_path(config_.output_dir, name);
}

StageResult Pipeline::ingest(const std::string& language) {
    return with_stage_context("ingest", language, [&]() -> StageResult {
        const DumpPaths& dp = config_.dumps.at(language);
        std::string pages_out = lang_path(language, "pages.tsv");
        std::string lt_out = lang_path(language, "linktargets.tsv");
        std::string report_out = lang_path(language, "ingest_report.json");

        std::vector<std::string> outputs{pages_out, report_out};
        if (!dp.linktarget.empty()) outputs.push_back(lt_out);
        if (!force_ && all_exist(outputs))
            return {"ingest", language, true, read_json_file(report_out, "stage report")};

        fs::create_directories(lang_dir(language));

        InputFile page_in(dp.page);
        PageTableReader reader(page_in.buf(), config_.strictness);
        std::vector<PageRecord> pages;
        PageRecord rec;
        std::uint64_t redirects = 0, main_ns = 0;
        while (reader.next(rec)) {
            if (rec.is_redirect) ++redirects;
            if (rec.namespace_id == 0) ++main_ns;
            pages.push_back(rec);
        }
        std::sort(pages.begin(), pages.end(),
                  [](const PageRecord& a, const PageRecord& b) { return a.page_id < b.page_id; });
        write_text_file(pages_out, [&](std::ostream& out) { write_pages_tsv(out, pages); });

        json report{{"pages", pages.size()},
                    {"main_namespace_pages", main_ns},
                    {"redirects", redirects},
                    {"sql", sql_diag_json(reader.diagnostics())}};

        if (!dp.linktarget.empty()) {
            InputFile lt_in(dp.linktarget);
            SqlDiagnostics lt_diag;
            LinkTargetMap map = parse_linktarget_table(lt_in.buf(), config_.strictness, &lt_diag);
            write_text_file(lt_out, [&](std::ostream& out) { write_linktargets_tsv(out, map); });
            report["linktargets"] = map.size();
            report["linktarget_sql"] = sql_diag_json(lt_diag);
        }

        write_json_file(report_out, report);
        return {"ingest", language, false, report};
    });
}

PageIndex Pipeline::load_pages(const std::string& language) {
    std::ifstream in =
        open_input_or(lang_path(language, "pages.tsv"), "run the ingest stage first");
    return load_page_index(in);
}

StageResult Pipeline::index(const std::string& language) {
    return with_stage_context("index", language, [&]() -> StageResult {
        const DumpPaths& dp = config_.dumps.at(language);
        std::string index_out = lang_path(language, "citation_index.tsv");
        std::string report_out = lang_path(language, "index_report.json");
        if (!force_ && all_exist({index_out, report_out}))
            return {"index", language, true, read_json_file(report_out, "stage report")};

        fs::create_directories(lang_dir(language));
        PageIndex pages = load_pages(language);

        LinkTargetMap linktargets;
        bool have_lt = false;
        std::string lt_path = lang_path(language, "linktargets.tsv");
        if (fs::exists(lt_path)) {
            std::ifstream lt_in = open_input_or(lt_path, "linktargets");
            linktargets = read_linktargets_tsv(lt_in);
            have_lt = true;
        }

        CitationIndexBuilder builder(pages, have_lt ? &linktargets : nullptr,
                                     config_.redirect_mode, config_.strictness);
        InputFile links_in(dp.pagelinks);
        PagelinksReader reader(links_in.buf(), PagelinksSchema::Auto, config_.strictness);
        LinkRow row;
        while (reader.next(row)) builder.add(row);

        CitationIndex index = builder.build(language, config_.dump_date);
        write_text_file(index_out,
                        [&](std::ostream& out) { write_citation_index_tsv(out, index, pages); });

        const CitationDiagnostics& d = builder.diagnostics();
        json report{{"rows_seen", d.rows_seen},
                    {"counted", d.counted},
                    {"nonmain_source", d.nonmain_source},
                    {"red_links", d.red_links},
                    {"nonmain_target", d.nonmain_target},
                    {"missing_target_id", d.missing_target_id},
                    {"pagelinks_schema",
                     reader.schema() == PagelinksSchema::Legacy        ? "legacy"
                     : reader.schema() == PagelinksSchema::Normalized ? "normalized"
                                                                       : "empty"},
                    {"rows_skipped", reader.rows_skipped()},
                    {"sql", sql_diag_json(reader.diagnostics())}};
        write_json_file(report_out, report);
        return {"index", language, false, report};
    });
}

StageResult Pipeline::features(const std::string& language) {
    return with_stage_context("features", language, [&]() -> StageResult {
        const DumpPaths& dp = config_.dumps.at(language);
        std::string features_out = lang_path(language, "features.tsv");
        std::string report_out = lang_path(language, "features_report.json");
        if (!force_ && all_exist({features_out, report_out}))
            return {"features", language, true, read_json_file(report_out, "stage report")};

        fs::create_directories(lang_dir(language));
        LanguageLexicon lexicon = load_lexicon_file(config_.lexicons.at(language));

        InputFile xml_in(dp.pages_articles);
        PagesArticlesReader reader(xml_in.buf());
        std::vector<ArticleFeatures> rows;
        ArticleText article;
        std::uint64_t non_main = 0;
        while (reader.next(article)) {
            if (article.namespace_id != 0) {
                ++non_main;
                continue;
            }
            rows.push_back(extract_features(article, lexicon));
        }
        std::sort(rows.begin(), rows.end(), [](const ArticleFeatures& a, const ArticleFeatures& b) {
            return a.page_id < b.page_id;
        });
        write_text_file(features_out, [&](std::ostream& out) { write_features_tsv(out, rows); });

        json report{{"articles", rows.size()},
                    {"non_main_skipped", non_main},
                    {"pages_missing_text", reader.diagnostics().pages_missing_text}};
        write_json_file(report_out, report);
        return {"features", language, false, report};
    });
}

StageResult Pipeline::score(const std::string& language) {
    return with_stage_context("score", language, [&]() -> StageResult {
        std::string bench_out = lang_path(language, "benchmarks.json");
        std::string scores_out = lang_path(language, "scores.tsv");
        std::string report_out = lang_path(language, "score_report.json");
        if (!force_ && all_exist({bench_out, scores_out, report_out}))
            return {"score", language, true, read_json_file(report_out, "stage report")};

        fs::create_directories(lang_dir(language));
        std::ifstream feat_in =
            open_input_or(lang_path(language, "features.tsv"), "run the features stage first");
        std::vector<ArticleFeatures> features = read_features_tsv(feat_in);

        MedianBenchmarks bench;
        std::size_t featured_count = 0;
        if (config_.benchmarks.mode == BenchmarksSource::Mode::File) {
            std::ifstream bin = open_input_or(config_.benchmarks.file, "benchmarks file");
            bool found = false;
            for (MedianBenchmarks& b : read_benchmarks_file(bin, config_.benchmarks.file)) {
                if (b.language == language) {
                    bench = std::move(b);
                    found = true;
                    break;
                }
            }
            if (!found)
                throw ConfigError("benchmarks file has no entry for language: " + language);
        } else {
            std::vector<std::int64_t> badge_ids =
                read_badge_list(config_.benchmarks.badge_lists.at(language));
            std::set<std::int64_t> wanted(badge_ids.begin(), badge_ids.end());
            std::vector<ArticleFeatures> featured;
            for (const ArticleFeatures& f : features) {
                if (wanted.erase(f.page_id)) featured.push_back(f);
            }
            if (!wanted.empty())
                throw IntegrityError("badge list for " + language + " references page " +
                                     std::to_string(*wanted.begin()) +
                                     " absent from extracted features");
            if (featured.empty())
                throw ConfigError("badge list for " + language + " matched no articles");
            featured_count = featured.size();
            bench = compute_medians(featured, language);
        }
        write_text_file(bench_out,
                        [&](std::ostream& out) { write_benchmarks_file(out, {bench}); });

        std::vector<QualityScore> scores;
        scores.reserve(features.size());
        for (const ArticleFeatures& f : features) scores.push_back(score_article(f, bench));
        write_text_file(scores_out, [&](std::ostream& out) { write_scores_tsv(out, scores); });

        json report{{"articles_scored", scores.size()},
                    {"benchmarks_mode",
                     config_.benchmarks.mode == BenchmarksSource::Mode::File ? "file" : "computed"},
                    {"featured_articles", featured_count}};
        write_json_file(report_out, report);
        return {"score", language, false, report};
    });
}

StageResult Pipeline::align() {
    return with_stage_context("align", "", [&]() -> StageResult {
        std::string membership_out = out_path("membership.tsv");
        std::string report_out = out_path("align_report.json");
        if (!force_ && all_exist({membership_out, report_out}))
            return {"align", "", true, read_json_file(report_out, "stage report")};

        fs::create_directories(config_.output_dir);
        std::vector<TopicSpec> specs = load_topic_specs(config_.topics_file);

        std::map<std::string, PageIndex> loaded;
        std::map<std::string, const PageIndex*> pointers;
        for (const std::string& lang : config_.languages) {
            loaded.emplace(lang, load_pages(lang));
            pointers[lang] = &loaded.at(lang);
        }

        TopicMembershipBuilder builder(specs, pointers);
        InputFile wd_in(config_.wikidata_dump);
        WikidataDumpReader reader(wd_in.buf());
        WikidataItem item;
        while (reader.next(item)) builder.add(item);

        std::vector<TopicMembership> memberships = builder.build();
        write_text_file(membership_out,
                        [&](std::ostream& out) { write_membership_tsv(out, memberships); });

        std::uint64_t nonempty = 0;
        for (const TopicMembership& m : memberships)
            if (!m.page_ids.empty()) ++nonempty;

        const TopicDiagnostics& d = builder.diagnostics();
        json report{{"items_seen", d.items_seen},
                    {"items_matched", d.items_matched},
                    {"unresolved_sitelinks", d.unresolved_sitelinks},
                    {"malformed_lines", reader.malformed_lines()},
                    {"skipped_non_items", reader.skipped_non_items()},
                    {"topics", specs.size()},
                    {"memberships_nonempty", nonempty}};
        write_json_file(report_out, report);
        return {"align", "", false, report};
    });
}

StageResult Pipeline::rank() {
    return with_stage_context("rank", "", [&]() -> StageResult {
        std::string rankings_out = out_path("rankings.tsv");
        std::string report_out = out_path("rank_report.json");
        if (!force_ && all_exist({rankings_out, report_out}))
            return {"rank", "", true, read_json_file(report_out, "stage report")};

        fs::create_directories(config_.output_dir);
        std::ifstream mem_in = open_input_or(out_path("membership.tsv"),
                                             "run the align stage first");
        std::vector<TopicMembership> memberships = read_membership_tsv(mem_in);

        std::map<std::string, CitationIndex> indexes;
        for (const std::string& lang : config_.languages) {
            std::ifstream idx_in = open_input_or(lang_path(lang, "citation_index.tsv"),
                                                 "run the index stage first");
            indexes.emplace(lang, read_citation_index_tsv(idx_in, lang));
        }

        std::vector<RankingsRow> rows;
        json shortfalls = json::object();
        for (const TopicMembership& m : memberships) {
            auto idx_it = indexes.find(m.language);
            if (idx_it == indexes.end()) continue;  // membership beyond configured languages
            std::vector<std::int64_t> eligible(m.page_ids.begin(), m.page_ids.end());
            if (eligible.empty()) continue;
            for (int k : config_.k_values) {
                RankedList ranked =
                    top_k_citations(idx_it->second, static_cast<std::size_t>(k), eligible);
                int position = 0;
                for (const RankedEntry& e : ranked.entries) {
                    rows.push_back({m.language, m.topic_id, k, ++position, e.page_id,
                                    e.citation_count});
                }
                if (ranked.shortfall > 0)
                    shortfalls[m.language + "/" + m.topic_id + "/" + std::to_string(k)] =
                        ranked.shortfall;
            }
        }
        write_text_file(rankings_out, [&](std::ostream& out) { write_rankings_tsv(out, rows); });

        json report{{"ranking_rows", rows.size()}, {"shortfalls", shortfalls}};
        write_json_file(report_out, report);
        return {"rank", "", false, report};
    });
}

std::vector<MatrixRow> emit_matrix(
    const std::map<std::string, std::map<std::string, std::map<int, RankedList>>>& rankings,
    const std::map<std::string, std::map<std::int64_t, double>>& scores_by_language) {
    std::vector<MatrixRow> rows;
    for (const auto& [language, by_topic] : rankings) {
        auto scores_it = scores_by_language.find(language);
        if (scores_it == scores_by_language.end())
            throw IntegrityError("no scores loaded for language: " + language);
        const auto& scores = scores_it->second;
        for (const auto& [topic, by_k] : by_topic) {
            for (const auto& [k, ranked] : by_k) {
                if (ranked.entries.empty()) continue;
                double sum = 0.0;
                for (const RankedEntry& e : ranked.entries) {
                    auto s = scores.find(e.page_id);
                    if (s == scores.end())
                        throw IntegrityError("ranked page " + std::to_string(e.page_id) + " (" +
                                             language + "/" + topic + ") has no quality score");
                    sum += s->second;
                }
                MatrixRow row;
                row.language = language;
                row.topic_id = topic;
                row.k = k;
                row.n_articles = static_cast<std::int64_t>(ranked.entries.size());
                row.avg_quality = sum / static_cast<double>(ranked.entries.size());
                rows.push_back(std::move(row));
            }
        }
    }
    std::sort(rows.begin(), rows.end(), [](const MatrixRow& a, const MatrixRow& b) {
        if (a.topic_id != b.topic_id) return a.topic_id < b.topic_id;
        if (a.language != b.language) return a.language < b.language;
        return a.k < b.k;
    });
    return rows;
}

void write_matrix_long_tsv(std::ostream& out, const std::vector<MatrixRow>& rows) {
    out << "language\ttopic_id\tk\tn_articles\tavg_quality\n";
    for (const MatrixRow& r : rows) {
        out << r.language << '\t' << r.topic_id << '\t' << r.k << '\t' << r.n_articles << '\t'
            << format_fixed2(r.avg_quality) << '\n';
    }
}

void write_matrix_wide_tsv(std::ostream& out, const std::vector<MatrixRow>& rows, int k) {
    std::set<std::string> languages, topics;
    std::map<std::pair<std::string, std::string>, double> cells;
    for (const MatrixRow& r : rows) {
        if (r.k != k) continue;
        languages.insert(r.language);
        topics.insert(r.topic_id);
        cells[{r.topic_id, r.language}] = r.avg_quality;
    }
    out << "topic";
    for (const std::string& lang : languages) out << '\t' << lang;
    out << '\n';
    for (const std::string& topic : topics) {
        out << topic;
        for (const std::string& lang : languages) {
            out << '\t';
            auto it = cells.find({topic, lang});
            if (it != cells.end()) out << format_fixed2(it->second);
        }
        out << '\n';
    }
}

StageResult Pipeline::report() {
    return with_stage_context("report", "", [&]() -> StageResult {
        std::string long_out = out_path("matrix_long.tsv");
        std::string report_out = out_path("matrix_report.json");
        std::string run_report_out = out_path("run_report.json");
        std::vector<std::string> outputs{long_out, report_out, run_report_out};
        for (int k : config_.k_values)
            outputs.push_back(out_path("matrix_wide_k" + std::to_string(k) + ".tsv"));
        if (!force_ && all_exist(outputs))
            return {"report", "", true, read_json_file(report_out, "stage report")};

        fs::create_directories(config_.output_dir);
        std::ifstream rank_in = open_input_or(out_path("rankings.tsv"),
                                              "run the rank stage first");
        std::vector<RankingsRow> ranking_rows = read_rankings_tsv(rank_in);

        std::map<std::string, std::map<std::string, std::map<int, RankedList>>> rankings;
        for (const RankingsRow& r : ranking_rows) {
            RankedList& list = rankings[r.language][r.topic_id][r.k];
            list.k = static_cast<std::size_t>(r.k);
            list.entries.push_back({r.page_id, r.citation_count});
        }

        std::map<std::string, std::map<std::int64_t, double>> scores_by_language;
        for (const std::string& lang : config_.languages) {
            std::ifstream s_in = open_input_or(lang_path(lang, "scores.tsv"),
                                               "run the score stage first");
            auto& per_page = scores_by_language[lang];
            for (const QualityScore& q : read_scores_tsv(s_in)) per_page[q.page_id] = q.score;
        }

        std::vector<MatrixRow> matrix = emit_matrix(rankings, scores_by_language);
        write_text_file(long_out,
                        [&](std::ostream& out) { write_matrix_long_tsv(out, matrix); });
        for (int k : config_.k_values) {
            write_text_file(out_path("matrix_wide_k" + std::to_string(k) + ".tsv"),
                            [&](std::ostream& out) { write_matrix_wide_tsv(out, matrix, k); });
        }

        json report{{"matrix_cells", matrix.size()},
                    {"k_values", config_.k_values},
                    {"languages", config_.languages}};
        write_json_file(report_out, report);
        write_run_report();
        return {"report", "", false, report};
    });
}

void Pipeline::write_run_report() {
    json per_language = json::object();
    for (const std::string& lang : config_.languages) {
        json stages = json::object();
        for (const char* stage : {"ingest", "index", "features", "score"}) {
            stages[stage] = read_json_file(lang_path(lang, std::string(stage) + "_report.json"),
                                           "stage report");
        }
        per_language[lang] = stages;
    }
    json run_report{{"languages", per_language},
                    {"align", read_json_file(out_path("align_report.json"), "stage report")},
                    {"rank", read_json_file(out_path("rank_report.json"), "stage report")},
                    {"matrix", read_json_file(out_path("matrix_report.json"), "stage report")}};
    write_json_file(out_path("run_report.json"), run_report);
}

RunSummary Pipeline::run() {
    validate_config(config_);
    RunSummary summary;

    // languages are independent; run their stage chains in parallel
    std::vector<std::future<std::vector<StageResult>>> futures;
    futures.reserve(config_.languages.size());
    for (const std::string& lang : config_.languages) {
        futures.push_back(std::async(std::launch::async, [this, lang]() {
            std::vector<StageResult> results;
            results.push_back(ingest(lang));
            results.push_back(index(lang));
            results.push_back(features(lang));
            results.push_back(score(lang));
            return results;
        }));
    }
    for (auto& f : futures) {
        for (StageResult& r : f.get()) summary.stages.push_back(std::move(r));
    }

    summary.stages.push_back(align());
    summary.stages.push_back(rank());
    summary.stages.push_back(report());
    return summary;
}

}  // namespace wikicite
