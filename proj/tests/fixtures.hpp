// Fixture generation for unit and acceptance tests: hand-shaped mini-wiki
// dumps (two languages, three topics, known link graph) plus a large random
// graph for oracle comparison. Serialization here is intentionally separate
// from the library so the parsers are tested against independently produced
// bytes.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace fixtures {

// RAII scratch directory under the system temp dir.
class TempDir {
public:
    explicit TempDir(const std::string& name_hint);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct Page {
    std::int64_t id = 0;
    int ns = 0;
    std::string title;  // underscores
    bool is_redirect = false;
    std::string wikitext;
    bool xml_omit_text = false;
    // ground-truth feature annotations for articles
    std::int64_t refs = 0, images = 0, sections = 0, qft = 0;
};

struct Edge {
    std::int64_t from_id = 0;
    int from_ns = 0;
    int target_ns = 0;
    std::string target_title;  // underscores
};

struct Language {
    std::string code;
    bool normalized_schema = false;  // pagelinks via linktarget table
    bool gzip = false;               // compress this language's dumps
    std::string file_alias;          // image namespace used in generated text
    std::string qft_template;        // flaw template used in generated text
    std::vector<Page> pages;
    std::vector<Edge> edges;
    std::map<std::int64_t, std::int64_t> redirect_truth;  // redirect id -> target id
    std::vector<std::int64_t> badge_ids;                  // featured articles

    const Page* find_title(int ns, const std::string& title) const;
    const Page* find_id(std::int64_t id) const;
};

struct Item {
    std::string qid;
    std::vector<std::string> p31;
    std::map<std::string, std::string> sitelinks;  // site key -> title (spaces)
};

struct Topic {
    std::string topic_id;
    std::vector<std::string> qids;
};

struct MiniWiki {
    std::string root;
    std::string config_path;
    std::string output_dir;
    std::vector<Language> langs;
    std::vector<Item> items;
    std::vector<Topic> topics;

    const Language& lang(const std::string& code) const;
};

// Builds the full fixture tree (dumps, lexicons, topic spec, badge lists,
// pipeline config) under root. Deterministic: no randomness anywhere.
MiniWiki build_mini_wiki(const std::string& root);

// --- serializers -------------------------------------------------------------

std::string sql_quote(const std::string& raw);
std::string xml_escape(const std::string& raw);
std::string title_spaces(const std::string& underscored);

std::string page_table_sql(const std::vector<Page>& pages);
std::string pagelinks_sql_legacy(const std::vector<Edge>& edges);
// assigns linktarget ids for every distinct target (sorted order, from 1)
std::string pagelinks_sql_normalized(
    const std::vector<Edge>& edges,
    std::map<std::pair<int, std::string>, std::int64_t>* lt_ids_out);
std::string linktarget_sql(const std::map<std::pair<int, std::string>, std::int64_t>& lt_ids);
std::string pages_articles_xml(const std::vector<Page>& pages);
std::string wikidata_json(const std::vector<Item>& items, bool with_junk_lines);

void write_file(const std::string& path, const std::string& content, bool gz = false);
std::string read_file(const std::string& path);

// --- random graph for oracle comparison ---------------------------------------

struct RandomGraph {
    std::vector<Page> pages;
    std::vector<Edge> edges;
    std::map<std::int64_t, std::int64_t> redirect_truth;
    std::uint64_t planted_red_links = 0;
    std::uint64_t planted_nonmain_source = 0;
    std::uint64_t planted_nonmain_target = 0;
};

// Mixed namespaces, ~5% redirects (with pointer rows), ~2% red links; no
// duplicate (source, target) pairs; random links never originate from
// redirect pages so the ground-truth redirect map matches what a counter can
// infer from the rows.
RandomGraph make_random_graph(std::uint32_t seed, std::size_t n_pages, std::size_t n_links);

}  // namespace fixtures
