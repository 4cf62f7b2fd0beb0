#include "fixtures.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wikicite/gzip_stream.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace fixtures {

TempDir::TempDir(const std::string& name_hint) {
    static std::atomic<unsigned> counter{0};
    fs::path base = fs::temp_directory_path() / "wikicite-tests";
    fs::create_directories(base);
    path_ = (base / (name_hint + "-" + std::to_string(::getpid()) + "-" +
                     std::to_string(counter++)))
                .string();
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

const Page* Language::find_title(int ns, const std::string& title) const {
    for (const Page& p : pages)
        if (p.ns == ns && p.title == title) return &p;
    return nullptr;
}

const Page* Language::find_id(std::int64_t id) const {
    for (const Page& p : pages)
        if (p.id == id) return &p;
    return nullptr;
}

const Language& MiniWiki::lang(const std::string& code) const {
    for (const Language& l : langs)
        if (l.code == code) return l;
    throw std::runtime_error("fixture language not found: " + code);
}

std::string sql_quote(const std::string& raw) {
    std::string out = "'";
    for (char c : raw) {
        switch (c) {
            case '\'': out += "\\'"; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\0': out += "\\0"; break;
            case '"': out += "\\\""; break;
            default: out.push_back(c); break;
        }
    }
    out.push_back('\'');
    return out;
}

std::string xml_escape(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c); break;
        }
    }
    return out;
}

std::string title_spaces(const std::string& underscored) {
    std::string out = underscored;
    for (char& c : out)
        if (c == '_') c = ' ';
    return out;
}

namespace {

const char* ns_prefix(int ns) {
    switch (ns) {
        case 0: return "";
        case 1: return "Talk:";
        case 4: return "Project:";
        case 10: return "Template:";
        case 14: return "Category:";
        default: return "NS:";
    }
}

// INSERT statements in dump shape, batched a few tuples per statement.
std::string insert_statements(const std::string& table, const std::vector<std::string>& tuples,
                              std::size_t per_statement = 50) {
    std::string out;
    for (std::size_t i = 0; i < tuples.size(); i += per_statement) {
        out += "INSERT INTO `" + table + "` VALUES ";
        for (std::size_t j = i; j < std::min(i + per_statement, tuples.size()); ++j) {
            if (j > i) out += ",";
            out += tuples[j];
        }
        out += ";\n";
    }
    return out;
}

std::string dump_header(const std::string& table) {
    return "-- MySQL dump fixture\n"
           "/*!40101 SET NAMES binary */;\n"
           "DROP TABLE IF EXISTS `" +
           table +
           "`;\n"
           "CREATE TABLE `" +
           table +
           "` (\n  `dummy` int\n) ENGINE=InnoDB;\n"
           "LOCK TABLES `" +
           table + "` WRITE;\n";
}

std::string dump_footer() { return "UNLOCK TABLES;\n"; }

}  // namespace

std::string page_table_sql(const std::vector<Page>& pages) {
    std::vector<std::string> tuples;
    tuples.reserve(pages.size());
    for (const Page& p : pages) {
        std::string t = "(" + std::to_string(p.id) + "," + std::to_string(p.ns) + "," +
                        sql_quote(p.title) + "," + (p.is_redirect ? "1" : "0") + ",0,0.5," +
                        "'20240801000000',NULL,1," + std::to_string(p.wikitext.size()) +
                        ",'wikitext',NULL)";
        tuples.push_back(std::move(t));
    }
    return dump_header("page") + insert_statements("page", tuples) + dump_footer();
}

std::string pagelinks_sql_legacy(const std::vector<Edge>& edges) {
    std::vector<std::string> tuples;
    tuples.reserve(edges.size());
    for (const Edge& e : edges) {
        tuples.push_back("(" + std::to_string(e.from_id) + "," + std::to_string(e.target_ns) +
                         "," + sql_quote(e.target_title) + "," + std::to_string(e.from_ns) + ")");
    }
    return dump_header("pagelinks") + insert_statements("pagelinks", tuples) + dump_footer();
}

std::string pagelinks_sql_normalized(
    const std::vector<Edge>& edges,
    std::map<std::pair<int, std::string>, std::int64_t>* lt_ids_out) {
    std::map<std::pair<int, std::string>, std::int64_t> lt_ids;
    for (const Edge& e : edges) lt_ids[{e.target_ns, e.target_title}] = 0;
    std::int64_t next = 1;
    for (auto& [key, id] : lt_ids) id = next++;

    std::vector<std::string> tuples;
    tuples.reserve(edges.size());
    for (const Edge& e : edges) {
        tuples.push_back("(" + std::to_string(e.from_id) + "," + std::to_string(e.from_ns) + "," +
                         std::to_string(lt_ids.at({e.target_ns, e.target_title})) + ")");
    }
    if (lt_ids_out) *lt_ids_out = std::move(lt_ids);
    return dump_header("pagelinks") + insert_statements("pagelinks", tuples) + dump_footer();
}

std::string linktarget_sql(const std::map<std::pair<int, std::string>, std::int64_t>& lt_ids) {
    std::vector<std::pair<std::int64_t, std::pair<int, std::string>>> rows;
    rows.reserve(lt_ids.size());
    for (const auto& [key, id] : lt_ids) rows.emplace_back(id, key);
    std::sort(rows.begin(), rows.end());
    std::vector<std::string> tuples;
    tuples.reserve(rows.size());
    for (const auto& [id, key] : rows) {
        tuples.push_back("(" + std::to_string(id) + "," + std::to_string(key.first) + "," +
                         sql_quote(key.second) + ")");
    }
    return dump_header("linktarget") + insert_statements("linktarget", tuples) + dump_footer();
}

std::string pages_articles_xml(const std::vector<Page>& pages) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<mediawiki xmlns=\"http://www.mediawiki.org/xml/export-0.11/\" version=\"0.11\" "
           "xml:lang=\"en\">\n"
        << "  <siteinfo>\n"
        << "    <sitename>Fixture Wiki</sitename>\n"
        << "    <dbname>fixturewiki</dbname>\n"
        << "    <namespaces>\n"
        << "      <namespace key=\"0\" />\n"
        << "      <namespace key=\"1\">Talk</namespace>\n"
        << "      <namespace key=\"10\">Template</namespace>\n"
        << "    </namespaces>\n"
        << "  </siteinfo>\n";
    for (const Page& p : pages) {
        std::string display = std::string(ns_prefix(p.ns)) + title_spaces(p.title);
        out << "  <page>\n"
            << "    <title>" << xml_escape(display) << "</title>\n"
            << "    <ns>" << p.ns << "</ns>\n"
            << "    <id>" << p.id << "</id>\n";
        if (p.is_redirect) {
            out << "    <redirect title=\"redirect target\" />\n";
        }
        out << "    <revision>\n"
            << "      <id>" << (p.id * 10 + 1) << "</id>\n"
            << "      <timestamp>2024-08-01T00:00:00Z</timestamp>\n";
        if (!p.xml_omit_text) {
            if (p.wikitext.empty()) {
                out << "      <text bytes=\"0\" />\n";
            } else {
                out << "      <text bytes=\"" << p.wikitext.size() << "\" xml:space=\"preserve\">"
                    << xml_escape(p.wikitext) << "</text>\n";
            }
        }
        out << "    </revision>\n"
            << "  </page>\n";
    }
    out << "</mediawiki>\n";
    return out.str();
}

std::string wikidata_json(const std::vector<Item>& items, bool with_junk_lines) {
    std::string out = "[\n";
    std::vector<std::string> lines;
    for (const Item& item : items) {
        json entity;
        entity["type"] = "item";
        entity["id"] = item.qid;
        entity["labels"] = json::object();
        json claims = json::object();
        if (!item.p31.empty()) {
            json arr = json::array();
            for (const std::string& qid : item.p31) {
                json claim;
                claim["mainsnak"] = {
                    {"snaktype", "value"},
                    {"property", "P31"},
                    {"datavalue",
                     {{"value", {{"entity-type", "item"}, {"id", qid}}},
                      {"type", "wikibase-entityid"}}}};
                claim["type"] = "statement";
                arr.push_back(claim);
            }
            claims["P31"] = arr;
        }
        entity["claims"] = claims;
        json sitelinks = json::object();
        for (const auto& [site, title] : item.sitelinks) {
            sitelinks[site] = {{"site", site}, {"title", title}, {"badges", json::array()}};
        }
        entity["sitelinks"] = sitelinks;
        lines.push_back(entity.dump());
    }
    if (with_junk_lines) {
        lines.push_back("{\"type\":\"property\",\"id\":\"P9000\",\"claims\":{}}");
        lines.push_back("{\"id\":\"Q31337\",\"claims\":");  // malformed
        lines.push_back("{\"type\":\"item\",\"id\":\"Q31338\"}");  // no claims, no sitelinks
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out += lines[i];
        if (i + 1 < lines.size()) out += ",";
        out += "\n";
    }
    out += "]\n";
    return out;
}

void write_file(const std::string& path, const std::string& content, bool gz) {
    fs::create_directories(fs::path(path).parent_path());
    if (gz) {
        wikicite::GzipFileWriter writer(path, 6);
        writer.write(content);
        writer.close();
    } else {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("fixture write failed: " + path);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("fixture read failed: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- mini-wiki ---------------------------------------------------------------

namespace {

// Deterministic wikitext with exactly the annotated counts.
void build_article_text(Page& page, const std::string& alias, const std::string& qft_name,
                        const std::vector<std::string>& outlinks, std::int64_t gallery_lines) {
    std::string t = "'''" + title_spaces(page.title) + "''' is a test subject.\n";
    for (std::int64_t i = 1; i <= page.sections; ++i)
        t += "== Part " + std::to_string(i) + " ==\nProse about part " + std::to_string(i) +
             ".\n";
    for (std::int64_t i = 1; i <= page.refs; ++i)
        t += "A claim.<ref>Source " + std::to_string(i) + "</ref>\n";
    std::int64_t wikilink_images = page.images - gallery_lines;
    for (std::int64_t i = 1; i <= wikilink_images; ++i)
        t += "[[" + alias + ":Pic " + std::to_string(i) + ".png|thumb|An illustration]]\n";
    if (gallery_lines > 0) {
        t += "<gallery>\n";
        for (std::int64_t i = 1; i <= gallery_lines; ++i)
            t += "Extra " + std::to_string(i) + ".png|caption\n";
        t += "</gallery>\n";
    }
    for (std::int64_t i = 1; i <= page.qft; ++i) t += "{{" + qft_name + "}}\n";
    for (const std::string& l : outlinks) t += "See also [[" + l + "]].\n";
    page.wikitext = std::move(t);
}

struct ArticleSpec {
    std::int64_t id;
    std::string title;
    std::int64_t refs, images, sections, qft;
    std::int64_t gallery_lines = 0;
};

void add_article(Language& lang, const ArticleSpec& spec) {
    Page p;
    p.id = spec.id;
    p.ns = 0;
    p.title = spec.title;
    p.refs = spec.refs;
    p.images = spec.images;
    p.sections = spec.sections;
    p.qft = spec.qft;
    build_article_text(p, lang.file_alias, lang.qft_template,
                       {title_spaces(spec.title) + " peer"}, spec.gallery_lines);
    lang.pages.push_back(std::move(p));
}

void add_redirect(Language& lang, std::int64_t id, const std::string& title,
                  const std::string& target_title, std::int64_t target_id) {
    Page p;
    p.id = id;
    p.ns = 0;
    p.title = title;
    p.is_redirect = true;
    p.wikitext = "#REDIRECT [[" + title_spaces(target_title) + "]]\n";
    lang.pages.push_back(std::move(p));
    if (target_id != 0) lang.redirect_truth[id] = target_id;
    lang.edges.push_back({id, 0, 0, target_title});  // the redirect pointer row
}

void add_aux_page(Language& lang, std::int64_t id, int ns, const std::string& title,
                  bool omit_text = false) {
    Page p;
    p.id = id;
    p.ns = ns;
    p.title = title;
    p.wikitext = "Auxiliary page content.\n";
    p.xml_omit_text = omit_text;
    lang.pages.push_back(std::move(p));
}

// pop(article) incoming links from distinct non-redirect articles.
void add_popularity_links(Language& lang,
                          const std::vector<std::pair<std::int64_t, int>>& popularity) {
    std::vector<const Page*> sources;
    for (const Page& p : lang.pages)
        if (p.ns == 0 && !p.is_redirect) sources.push_back(&p);
    std::sort(sources.begin(), sources.end(),
              [](const Page* a, const Page* b) { return a->id < b->id; });

    std::set<std::pair<std::int64_t, std::string>> used;
    for (const Edge& e : lang.edges)
        if (e.target_ns == 0) used.insert({e.from_id, e.target_title});

    std::size_t cursor = 0;
    for (const auto& [target_id, pop] : popularity) {
        const Page* target = lang.find_id(target_id);
        int added = 0;
        std::size_t scanned = 0;
        while (added < pop && scanned < sources.size() * 2) {
            const Page* src = sources[cursor % sources.size()];
            ++cursor;
            ++scanned;
            if (src->id == target_id) continue;
            if (!used.insert({src->id, target->title}).second) continue;
            lang.edges.push_back({src->id, 0, 0, target->title});
            ++added;
        }
        if (added != pop) throw std::runtime_error("fixture popularity underflow");
    }
}

Language build_language_en() {
    Language lang;
    lang.code = "en";
    lang.normalized_schema = true;
    lang.gzip = true;
    lang.file_alias = "File";
    lang.qft_template = "Citation needed";

    for (std::int64_t i = 1; i <= 10; ++i)
        add_article(lang, {100 + i, "City_" + std::to_string(i), i, i % 4, 2 + i % 3,
                           (i % 5 == 0) ? 1 : 0, (i == 3) ? 2 : 0});
    for (std::int64_t i = 1; i <= 6; ++i)
        add_article(lang, {120 + i, "University_" + std::to_string(i), 2 * i, 1, 3, i % 2});
    for (std::int64_t i = 1; i <= 18; ++i)
        add_article(lang, {130 + i, "Human_" + std::to_string(i), (i * 3) % 7, i % 2, 1 + i % 4,
                           (i % 6 == 0) ? 2 : 0});
    for (std::int64_t i = 1; i <= 4; ++i)
        add_article(lang, {150 + i, "Misc_" + std::to_string(i), 1, 0, 1, 0});

    add_redirect(lang, 161, "Big_Apple", "City_1", 101);
    add_redirect(lang, 162, "NYU", "University_1", 121);
    add_redirect(lang, 163, "H2_alias", "Human_2", 132);
    add_redirect(lang, 164, "Old_City_2", "City_2", 102);
    add_redirect(lang, 165, "Dead_Redirect", "Missing_Target", 0);  // red pointer

    add_aux_page(lang, 171, 1, "City_1");
    add_aux_page(lang, 172, 1, "Human_1", /*omit_text=*/true);
    add_aux_page(lang, 173, 1, "Misc_1");
    add_aux_page(lang, 181, 10, "Infobox");
    add_aux_page(lang, 182, 10, "Citation_needed");
    add_aux_page(lang, 191, 14, "Cities");

    // links to redirects (single-hop credits flow to the targets)
    lang.edges.push_back({153, 0, 0, "Big_Apple"});
    lang.edges.push_back({154, 0, 0, "Big_Apple"});
    lang.edges.push_back({151, 0, 0, "NYU"});
    lang.edges.push_back({152, 0, 0, "H2_alias"});
    lang.edges.push_back({151, 0, 0, "Old_City_2"});
    lang.edges.push_back({152, 0, 0, "Dead_Redirect"});  // stays, target unknown

    // red links, non-main targets, talk-page sources
    lang.edges.push_back({101, 0, 0, "Missing_1"});
    lang.edges.push_back({102, 0, 0, "Missing_2"});
    lang.edges.push_back({103, 0, 10, "Infobox"});
    lang.edges.push_back({104, 0, 14, "Cities"});
    lang.edges.push_back({171, 1, 0, "City_1"});
    lang.edges.push_back({173, 1, 0, "Human_1"});

    std::vector<std::pair<std::int64_t, int>> popularity;
    for (std::int64_t i = 1; i <= 10; ++i) popularity.push_back({100 + i, 16 - (int)i});
    for (std::int64_t i = 1; i <= 6; ++i) popularity.push_back({120 + i, 10 - (int)i});
    for (std::int64_t i = 1; i <= 18; ++i) {
        int pop = std::max(0, 14 - (int)i);
        if (i == 10 || i == 11) pop = 4;  // engineered tie at the top-10 boundary
        popularity.push_back({130 + i, pop});
    }
    popularity.push_back({151, 2});
    popularity.push_back({152, 2});
    popularity.push_back({153, 1});
    add_popularity_links(lang, popularity);

    lang.badge_ids = {101, 105, 122, 133, 137};
    return lang;
}

Language build_language_pl() {
    Language lang;
    lang.code = "pl";
    lang.normalized_schema = false;  // legacy pagelinks schema
    lang.gzip = false;
    lang.file_alias = "Plik";
    lang.qft_template = "Fakt";

    for (std::int64_t i = 1; i <= 8; ++i)
        add_article(lang, {200 + i, "Miasto_" + std::to_string(i), i + 1, i % 3, 1 + i % 4,
                           (i % 4 == 0) ? 1 : 0, (i == 2) ? 1 : 0});
    for (std::int64_t i = 1; i <= 5; ++i)
        add_article(lang, {220 + i, "Uniwersytet_" + std::to_string(i), 3 * i, i % 2, 2, 0});
    for (std::int64_t i = 1; i <= 20; ++i)
        add_article(lang, {230 + i, "Osoba_" + std::to_string(i), (i * 2) % 5, i % 2, 1 + i % 3,
                           (i % 7 == 0) ? 3 : 0});
    for (std::int64_t i = 1; i <= 6; ++i)
        add_article(lang, {250 + i, "Rozne_" + std::to_string(i), 1, 0, 1, 0});

    add_redirect(lang, 261, "Stare_Miasto_1", "Miasto_1", 201);
    add_redirect(lang, 262, "UW", "Uniwersytet_1", 221);
    add_redirect(lang, 263, "O3_alias", "Osoba_3", 233);

    add_aux_page(lang, 271, 1, "Miasto_1");
    add_aux_page(lang, 272, 1, "Osoba_1");
    add_aux_page(lang, 281, 10, "Infoboks");
    add_aux_page(lang, 291, 14, "Miasta");

    lang.edges.push_back({251, 0, 0, "Stare_Miasto_1"});
    lang.edges.push_back({252, 0, 0, "UW"});
    lang.edges.push_back({253, 0, 0, "O3_alias"});
    lang.edges.push_back({201, 0, 0, "Brakujacy_1"});  // red link
    lang.edges.push_back({202, 0, 10, "Infoboks"});
    lang.edges.push_back({271, 1, 0, "Miasto_1"});

    std::vector<std::pair<std::int64_t, int>> popularity;
    for (std::int64_t i = 1; i <= 8; ++i) popularity.push_back({200 + i, 13 - (int)i});
    for (std::int64_t i = 1; i <= 5; ++i) popularity.push_back({220 + i, 8 - (int)i});
    for (std::int64_t i = 1; i <= 20; ++i) {
        int pop = std::max(0, 12 - (int)i);
        if (i == 10 || i == 11) pop = 3;  // tie at the top-10 boundary
        popularity.push_back({230 + i, pop});
    }
    add_popularity_links(lang, popularity);

    lang.badge_ids = {201, 204, 222, 233, 240};
    return lang;
}

std::vector<Item> build_items() {
    std::vector<Item> items;
    for (int i = 1; i <= 10; ++i) {
        Item item;
        item.qid = "Q" + std::to_string(1000 + i);
        item.p31 = {"Q515"};
        if (i == 1) item.p31.push_back("Q1549591");
        item.sitelinks["enwiki"] = "City " + std::to_string(i);
        if (i <= 8) item.sitelinks["plwiki"] = "Miasto " + std::to_string(i);
        items.push_back(std::move(item));
    }
    for (int i = 1; i <= 6; ++i) {
        Item item;
        item.qid = "Q" + std::to_string(2000 + i);
        item.p31 = {"Q3918"};
        item.sitelinks["enwiki"] = "University " + std::to_string(i);
        if (i <= 5) item.sitelinks["plwiki"] = "Uniwersytet " + std::to_string(i);
        items.push_back(std::move(item));
    }
    for (int i = 1; i <= 20; ++i) {
        Item item;
        item.qid = "Q" + std::to_string(3000 + i);
        item.p31 = {"Q5"};
        if (i <= 18) item.sitelinks["enwiki"] = "Human " + std::to_string(i);
        item.sitelinks["plwiki"] = "Osoba " + std::to_string(i);
        items.push_back(std::move(item));
    }
    // sitelink resolving to a redirect page: joins as that page id
    items.push_back({"Q4001", {"Q515"}, {{"enwiki", "Big Apple"}}});
    // unresolved sitelink
    items.push_back({"Q4002", {"Q515"}, {{"enwiki", "Ghost Town"}}});
    // no configured topic
    items.push_back({"Q4003", {"Q99999"}, {{"enwiki", "Misc 1"}}});
    // no P31 at all
    items.push_back({"Q4004", {}, {{"enwiki", "Misc 2"}}});
    // only a non-language sitelink
    items.push_back({"Q4005", {"Q515"}, {{"commonswiki", "Foo"}}});
    return items;
}

}  // namespace

MiniWiki build_mini_wiki(const std::string& root) {
    MiniWiki mw;
    mw.root = root;
    mw.output_dir = (fs::path(root) / "out").string();
    mw.langs.push_back(build_language_en());
    mw.langs.push_back(build_language_pl());
    mw.items = build_items();
    mw.topics = {{"city", {"Q515", "Q1549591", "Q925381"}},
                 {"university", {"Q3918"}},
                 {"human", {"Q5"}}};

    json dumps = json::object();
    json lexicons = json::object();
    json badge_lists = json::object();

    for (const Language& lang : mw.langs) {
        fs::path dir = fs::path(root) / "dumps" / lang.code;
        std::string ext = lang.gzip ? ".gz" : "";
        std::string page_path = (dir / ("page.sql" + ext)).string();
        std::string links_path = (dir / ("pagelinks.sql" + ext)).string();
        std::string xml_path = (dir / ("pages-articles.xml" + ext)).string();

        write_file(page_path, page_table_sql(lang.pages), lang.gzip);
        write_file(xml_path, pages_articles_xml(lang.pages), lang.gzip);

        json dump_entry{{"page", page_path}, {"pagelinks", links_path},
                        {"pages_articles", xml_path}};
        if (lang.normalized_schema) {
            std::map<std::pair<int, std::string>, std::int64_t> lt_ids;
            write_file(links_path, pagelinks_sql_normalized(lang.edges, &lt_ids), lang.gzip);
            std::string lt_path = (dir / ("linktarget.sql" + ext)).string();
            write_file(lt_path, linktarget_sql(lt_ids), lang.gzip);
            dump_entry["linktarget"] = lt_path;
        } else {
            write_file(links_path, pagelinks_sql_legacy(lang.edges), lang.gzip);
        }
        dumps[lang.code] = dump_entry;

        json lex{{"language", lang.code},
                 {"file_namespace_aliases",
                  lang.code == "en" ? json::array({"File", "Image"})
                                    : json::array({"Plik", "File", "Image"})},
                 {"qft_template_names",
                  lang.code == "en" ? json::array({"Citation needed", "Unreferenced", "POV"})
                                    : json::array({"Fakt", "Dopracować"})}};
        std::string lex_path = (fs::path(root) / "config" / ("lexicon_" + lang.code + ".json"))
                                   .string();
        write_file(lex_path, lex.dump(2) + "\n");
        lexicons[lang.code] = lex_path;

        std::string badges;
        badges += "# featured articles (" + lang.code + ")\n";
        for (std::int64_t id : lang.badge_ids) badges += std::to_string(id) + "\n";
        std::string badge_path = (fs::path(root) / "config" / ("badges_" + lang.code + ".txt"))
                                     .string();
        write_file(badge_path, badges);
        badge_lists[lang.code] = badge_path;
    }

    std::string wikidata_path = (fs::path(root) / "dumps" / "wikidata.json").string();
    write_file(wikidata_path, wikidata_json(mw.items, /*with_junk_lines=*/true));

    json topics = json::array();
    for (const Topic& t : mw.topics) {
        topics.push_back({{"topic_id", t.topic_id},
                          {"display_name", t.topic_id},
                          {"qids", t.qids}});
    }
    std::string topics_path = (fs::path(root) / "config" / "topics.json").string();
    write_file(topics_path, topics.dump(2) + "\n");

    json config{{"languages", {"en", "pl"}},
                {"output_dir", mw.output_dir},
                {"dump_date", "20240801"},
                {"k_values", {10, 25, 100}},
                {"redirect_mode", "single-hop"},
                {"strict", true},
                {"wikidata_dump", wikidata_path},
                {"topics_file", topics_path},
                {"dumps", dumps},
                {"lexicons", lexicons},
                {"benchmarks", {{"mode", "compute"}, {"badge_lists", badge_lists}}}};
    mw.config_path = (fs::path(root) / "config" / "pipeline.json").string();
    write_file(mw.config_path, config.dump(2) + "\n");
    return mw;
}

// --- random graph --------------------------------------------------------------

RandomGraph make_random_graph(std::uint32_t seed, std::size_t n_pages, std::size_t n_links) {
    std::mt19937 rng(seed);
    RandomGraph g;
    g.pages.reserve(n_pages);

    std::vector<std::size_t> articles;       // non-redirect ns-0 indexes
    std::vector<std::size_t> redirects;      // redirect indexes
    std::vector<std::size_t> other_ns;       // non-main indexes
    const int aux_namespaces[4] = {1, 4, 10, 14};

    for (std::size_t i = 1; i <= n_pages; ++i) {
        Page p;
        p.id = static_cast<std::int64_t>(i);
        if (i % 10 == 0) {
            p.ns = aux_namespaces[(i / 10) % 4];
        } else {
            p.ns = 0;
        }
        p.title = "T" + std::to_string(i);
        if (p.ns == 0 && i % 20 == 7) p.is_redirect = true;  // ~5% of pages
        std::size_t index = g.pages.size();
        if (p.ns != 0) other_ns.push_back(index);
        else if (p.is_redirect) redirects.push_back(index);
        else articles.push_back(index);
        g.pages.push_back(std::move(p));
    }

    auto pick = [&rng](const std::vector<std::size_t>& pool) {
        std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
        return d(rng);
    };

    std::set<std::pair<std::int64_t, std::string>> used;  // (from, ns|title) dedup
    auto add_edge = [&](const Page& from, int target_ns, const std::string& target_title) {
        std::string key = std::to_string(target_ns) + "|" + target_title;
        if (!used.insert({from.id, key}).second) return false;
        g.edges.push_back({from.id, from.ns, target_ns, target_title});
        return true;
    };

    // redirect pointer rows: exactly one resolvable outgoing link per redirect
    for (std::size_t ri : redirects) {
        const Page& r = g.pages[ri];
        const Page& target = g.pages[articles[pick(articles)]];
        add_edge(r, 0, target.title);
        g.redirect_truth[r.id] = target.id;
    }

    std::size_t red_quota = n_links / 50;        // 2%
    std::size_t nonmain_src_quota = n_links / 20;  // 5%
    std::size_t nonmain_tgt_quota = n_links / 50;
    std::size_t to_redirect_quota = n_links / 20;

    while (g.planted_red_links < red_quota) {
        const Page& from = g.pages[articles[pick(articles)]];
        if (add_edge(from, 0, "Red" + std::to_string(g.planted_red_links)))
            ++g.planted_red_links;
    }
    while (g.planted_nonmain_source < nonmain_src_quota) {
        const Page& from = g.pages[other_ns[pick(other_ns)]];
        const Page& to = g.pages[articles[pick(articles)]];
        if (add_edge(from, 0, to.title)) ++g.planted_nonmain_source;
    }
    while (g.planted_nonmain_target < nonmain_tgt_quota) {
        const Page& from = g.pages[articles[pick(articles)]];
        const Page& to = g.pages[other_ns[pick(other_ns)]];
        if (add_edge(from, to.ns, to.title)) ++g.planted_nonmain_target;
    }
    for (std::size_t added = 0; added < to_redirect_quota;) {
        const Page& from = g.pages[articles[pick(articles)]];
        const Page& to = g.pages[redirects[pick(redirects)]];
        if (add_edge(from, 0, to.title)) ++added;
    }
    while (g.edges.size() < n_links) {
        const Page& from = g.pages[articles[pick(articles)]];
        const Page& to = g.pages[articles[pick(articles)]];
        if (from.id == to.id) continue;
        add_edge(from, 0, to.title);
    }
    return g;
}

}  // namespace fixtures
