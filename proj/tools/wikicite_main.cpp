// wikicite: batch pipeline from MediaWiki dumps to per-topic quality matrices.
//
// Stages: ingest -> index -> features -> score -> align -> rank -> report.
// Each stage persists its outputs under the configured output directory and
// is skipped on re-run while they exist (--force regenerates).

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wikicite/errors.hpp"
#include "wikicite/pipeline.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        if (comma == std::string::npos) {
            if (start < csv.size()) out.push_back(csv.substr(start));
            break;
        }
        if (comma > start) out.push_back(csv.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

void print_result(const wikicite::StageResult& r) {
    std::cout << r.stage;
    if (!r.language.empty()) std::cout << ' ' << r.language;
    if (r.cached) {
        std::cout << ": cached\n";
    } else {
        std::cout << ": done " << r.report.dump() << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wikicite: citation index and quality score pipeline for Wikipedia dumps"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path;
    std::string languages_csv;
    std::string k_csv;
    bool force = false;
    bool lenient = false;
    bool strict = false;

    app.add_option("--config", config_path, "pipeline config file (JSON)")->required();
    app.add_flag("--force", force, "re-run stages even when their outputs exist");
    app.add_flag("--lenient", lenient, "tolerate malformed dump rows (tallied, then skipped)");
    app.add_flag("--strict", strict, "abort on malformed dump rows (default)");
    app.add_option("--languages", languages_csv, "comma-separated language subset override");
    app.add_option("--k", k_csv, "comma-separated K values override (e.g. 10,25,100)");

    for (const char* name : {"ingest", "index", "features", "score", "align", "rank", "report",
                             "run"}) {
        app.add_subcommand(name);
    }

    CLI11_PARSE(app, argc, argv);
    std::string stage = app.get_subcommands().front()->get_name();

    try {
        wikicite::PipelineConfig config = wikicite::load_pipeline_config(config_path);
        if (!languages_csv.empty()) config.languages = split_csv(languages_csv);
        if (!k_csv.empty()) {
            config.k_values.clear();
            for (const std::string& k : split_csv(k_csv))
                config.k_values.push_back(static_cast<int>(std::stol(k)));
        }
        if (lenient && strict) throw wikicite::ConfigError("--strict and --lenient conflict");
        if (lenient) config.strictness = wikicite::Strictness::Lenient;
        if (strict) config.strictness = wikicite::Strictness::Strict;

        wikicite::validate_config_shape(config);
        wikicite::Pipeline pipeline(std::move(config), force);

        if (stage == "run") {
            wikicite::RunSummary summary = pipeline.run();
            for (const wikicite::StageResult& r : summary.stages) print_result(r);
            std::cout << "output tree: " << pipeline.config().output_dir << '\n';
            return 0;
        }

        std::vector<wikicite::StageResult> results;
        if (stage == "align") {
            results.push_back(pipeline.align());
        } else if (stage == "rank") {
            results.push_back(pipeline.rank());
        } else if (stage == "report") {
            results.push_back(pipeline.report());
        } else {
            for (const std::string& lang : pipeline.config().languages) {
                if (stage == "ingest") results.push_back(pipeline.ingest(lang));
                else if (stage == "index") results.push_back(pipeline.index(lang));
                else if (stage == "features") results.push_back(pipeline.features(lang));
                else if (stage == "score") results.push_back(pipeline.score(lang));
            }
        }
        for (const wikicite::StageResult& r : results) print_result(r);
        return 0;
    } catch (const wikicite::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const wikicite::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const wikicite::IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
