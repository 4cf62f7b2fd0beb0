#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wikicite/records.hpp"

namespace wikicite {

struct ArticleFeatures {
    std::int64_t page_id = 0;
    std::int64_t length = 0;      // bytes of wikitext
    std::int64_t references = 0;  // <ref> occurrences
    double ref_density = 0.0;     // references per 1000 bytes
    std::int64_t images = 0;
    std::int64_t sections = 0;
    std::int64_t qft = 0;  // quality-flaw template instances
};

// Per-language counting vocabulary: the local file-namespace aliases and the
// canonical names of quality-flaw templates. Alias matching is ASCII
// case-insensitive; template names are normalized (underscores to spaces,
// first ASCII letter uppercased) on load and on match.
struct LanguageLexicon {
    std::string language;
    std::vector<std::string> file_namespace_aliases;
    std::set<std::string> qft_template_names;  // normalized
};

LanguageLexicon load_lexicon_file(const std::string& path);
LanguageLexicon make_lexicon(std::string language, std::vector<std::string> aliases,
                             std::vector<std::string> qft_names);

// Counts every <ref ...>...</ref> pair and self-closing <ref .../> once;
// tag match is case-insensitive, an unclosed ref still counts.
std::int64_t count_references(std::string_view wikitext);

// File-namespace wikilinks for any alias, plus one per non-empty line inside
// <gallery> blocks.
std::int64_t count_images(std::string_view wikitext, const LanguageLexicon& lexicon);

// Heading lines: ={2..6} title ={2..6} with matching lengths at line start.
std::int64_t count_sections(std::string_view wikitext);

// Template invocations whose normalized name is in the lexicon's QFT list;
// every instance counts, including nested ones.
std::int64_t count_qft(std::string_view wikitext, const LanguageLexicon& lexicon);

// All five features plus QFT for one main-namespace article.
ArticleFeatures extract_features(const ArticleText& article, const LanguageLexicon& lexicon);

// TSV: page_id, length, references, ref_density, images, sections, qft.
void write_features_tsv(std::ostream& out, const std::vector<ArticleFeatures>& rows);
std::vector<ArticleFeatures> read_features_tsv(std::istream& in);

}  // namespace wikicite
