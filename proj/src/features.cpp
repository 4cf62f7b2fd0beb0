#include "wikicite/features.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "wikicite/errors.hpp"
#include "wikicite/text_util.hpp"

namespace wikicite {

namespace {

bool iprefix(std::string_view text, std::size_t pos, std::string_view word) {
    if (pos + word.size() > text.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[pos + i])) !=
            std::tolower(static_cast<unsigned char>(word[i])))
            return false;
    }
    return true;
}

bool tag_boundary(std::string_view text, std::size_t pos) {
    if (pos >= text.size()) return true;  // tag cut off at end of text
    char c = text[pos];
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '>' || c == '/';
}

}  // namespace

std::int64_t count_references(std::string_view wikitext) {
    std::int64_t count = 0;
    std::size_t pos = 0;
    while ((pos = wikitext.find('<', pos)) != std::string_view::npos) {
        if (iprefix(wikitext, pos + 1, "ref") && tag_boundary(wikitext, pos + 4)) ++count;
        ++pos;
    }
    return count;
}

std::int64_t count_images(std::string_view wikitext, const LanguageLexicon& lexicon) {
    std::int64_t count = 0;

    // [[Alias:...]] wikilinks
    std::size_t pos = 0;
    while ((pos = wikitext.find("[[", pos)) != std::string_view::npos) {
        std::size_t start = pos + 2;
        std::size_t stop = wikitext.find_first_of("|]\n", start);
        std::size_t limit = (stop == std::string_view::npos) ? wikitext.size() : stop;
        std::string_view head = wikitext.substr(start, limit - start);
        std::size_t colon = head.find(':');
        if (colon != std::string_view::npos) {
            std::string_view alias = trim(head.substr(0, colon));
            for (const std::string& a : lexicon.file_namespace_aliases) {
                if (ascii_iequals(alias, a)) {
                    ++count;
                    break;
                }
            }
        }
        pos = start;
    }

    // one per non-empty line inside <gallery> blocks
    pos = 0;
    while ((pos = wikitext.find('<', pos)) != std::string_view::npos) {
        if (!iprefix(wikitext, pos + 1, "gallery") || !tag_boundary(wikitext, pos + 8)) {
            ++pos;
            continue;
        }
        std::size_t open_end = wikitext.find('>', pos);
        if (open_end == std::string_view::npos) break;
        if (open_end > 0 && wikitext[open_end - 1] == '/') {  // <gallery/>
            pos = open_end;
            continue;
        }
        std::size_t body_start = open_end + 1;
        std::size_t close = std::string_view::npos;
        for (std::size_t q = body_start;
             (q = wikitext.find('<', q)) != std::string_view::npos; ++q) {
            if (q + 1 < wikitext.size() && wikitext[q + 1] == '/' &&
                iprefix(wikitext, q + 2, "gallery")) {
                close = q;
                break;
            }
        }
        std::size_t body_end = (close == std::string_view::npos) ? wikitext.size() : close;
        std::string_view body = wikitext.substr(body_start, body_end - body_start);
        std::size_t line_start = 0;
        while (line_start <= body.size()) {
            std::size_t nl = body.find('\n', line_start);
            std::size_t line_end = (nl == std::string_view::npos) ? body.size() : nl;
            if (!trim(body.substr(line_start, line_end - line_start)).empty()) ++count;
            if (nl == std::string_view::npos) break;
            line_start = nl + 1;
        }
        pos = (close == std::string_view::npos) ? wikitext.size() : close + 1;
    }

    return count;
}

std::int64_t count_sections(std::string_view wikitext) {
    std::int64_t count = 0;
    std::size_t line_start = 0;
    while (line_start < wikitext.size()) {
        std::size_t nl = wikitext.find('\n', line_start);
        std::size_t line_end = (nl == std::string_view::npos) ? wikitext.size() : nl;
        std::string_view line = wikitext.substr(line_start, line_end - line_start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (!line.empty() && line.front() == '=') {
            // trailing whitespace is tolerated, as MediaWiki does
            std::size_t e = line.size();
            while (e > 0 && (line[e - 1] == ' ' || line[e - 1] == '\t')) --e;
            line = line.substr(0, e);

            std::size_t open = 0;
            while (open < line.size() && line[open] == '=') ++open;
            std::size_t closing = 0;
            while (closing < line.size() && line[line.size() - 1 - closing] == '=') ++closing;
            if (open >= 2 && open <= 6 && open == closing && line.size() > open + closing) {
                std::string_view title = line.substr(open, line.size() - open - closing);
                if (!trim(title).empty()) ++count;
            }
        }
        if (nl == std::string_view::npos) break;
        line_start = nl + 1;
    }
    return count;
}

std::int64_t count_qft(std::string_view wikitext, const LanguageLexicon& lexicon) {
    if (lexicon.qft_template_names.empty()) return 0;
    std::int64_t count = 0;
    std::size_t pos = 0;
    while ((pos = wikitext.find("{{", pos)) != std::string_view::npos) {
        // {{{...}}} is a template parameter, not an invocation
        if (pos > 0 && wikitext[pos - 1] == '{') {
            ++pos;
            continue;
        }
        std::size_t start = pos + 2;
        if (start < wikitext.size() && wikitext[start] == '{') {
            pos = start;
            continue;
        }
        std::size_t stop = wikitext.find_first_of("|}\n", start);
        std::size_t limit = (stop == std::string_view::npos) ? wikitext.size() : stop;
        std::string name = normalize_template_name(wikitext.substr(start, limit - start));
        if (!name.empty() && lexicon.qft_template_names.count(name)) ++count;
        pos = start;
    }
    return count;
}

ArticleFeatures extract_features(const ArticleText& article, const LanguageLexicon& lexicon) {
    if (article.namespace_id != 0)
        throw std::invalid_argument("extract_features: article must be in namespace 0");
    ArticleFeatures f;
    f.page_id = article.page_id;
    f.length = static_cast<std::int64_t>(article.wikitext.size());
    f.references = count_references(article.wikitext);
    f.images = count_images(article.wikitext, lexicon);
    f.sections = count_sections(article.wikitext);
    f.qft = count_qft(article.wikitext, lexicon);
    f.ref_density =
        f.length > 0 ? static_cast<double>(f.references) * 1000.0 / static_cast<double>(f.length)
                     : 0.0;
    return f;
}

LanguageLexicon make_lexicon(std::string language, std::vector<std::string> aliases,
                             std::vector<std::string> qft_names) {
    LanguageLexicon lex;
    lex.language = std::move(language);
    lex.file_namespace_aliases = std::move(aliases);
    if (lex.file_namespace_aliases.empty())
        throw ConfigError("lexicon for '" + lex.language + "' has no file namespace aliases");
    for (const std::string& name : qft_names)
        lex.qft_template_names.insert(normalize_template_name(name));
    return lex;
}

LanguageLexicon load_lexicon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open lexicon file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object())
        throw ConfigError("lexicon file is not a JSON object: " + path);
    try {
        return make_lexicon(j.at("language").get<std::string>(),
                            j.at("file_namespace_aliases").get<std::vector<std::string>>(),
                            j.at("qft_template_names").get<std::vector<std::string>>());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("lexicon file " + path + ": " + e.what());
    }
}

void write_features_tsv(std::ostream& out, const std::vector<ArticleFeatures>& rows) {
    out << "page_id\tlength\treferences\tref_density\timages\tsections\tqft\n";
    for (const ArticleFeatures& f : rows) {
        out << f.page_id << '\t' << f.length << '\t' << f.references << '\t'
            << format_double(f.ref_density) << '\t' << f.images << '\t' << f.sections << '\t'
            << f.qft << '\n';
    }
}

std::vector<ArticleFeatures> read_features_tsv(std::istream& in) {
    std::vector<ArticleFeatures> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        if (cols.size() != 7) throw ParseError("features TSV: expected 7 columns");
        ArticleFeatures f;
        f.page_id = parse_int(cols[0]);
        f.length = parse_int(cols[1]);
        f.references = parse_int(cols[2]);
        f.ref_density = parse_double(cols[3]);
        f.images = parse_int(cols[4]);
        f.sections = parse_int(cols[5]);
        f.qft = parse_int(cols[6]);
        rows.push_back(f);
    }
    return rows;
}

}  // namespace wikicite
