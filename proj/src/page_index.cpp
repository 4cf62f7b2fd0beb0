#include "wikicite/page_index.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "wikicite/text_util.hpp"

namespace wikicite {

std::string PageIndex::title_key(int namespace_id, std::string_view title) {
    std::string key = std::to_string(namespace_id);
    key.push_back(':');
    key.append(title);
    return key;
}

void PageIndex::add(PageRecord rec) {
    std::string key = title_key(rec.namespace_id, rec.title);
    std::int64_t id = rec.page_id;
    if (!by_title_.emplace(std::move(key), id).second)
        throw IntegrityError("duplicate page title: ns " + std::to_string(rec.namespace_id) +
                             " '" + rec.title + "'");
    if (!by_id_.emplace(id, std::move(rec)).second)
        throw IntegrityError("duplicate page id " + std::to_string(id));
}

const PageRecord* PageIndex::find_id(std::int64_t page_id) const {
    auto it = by_id_.find(page_id);
    return it == by_id_.end() ? nullptr : &it->second;
}

const PageRecord* PageIndex::find_title(int namespace_id, std::string_view title) const {
    auto it = by_title_.find(title_key(namespace_id, title));
    if (it == by_title_.end()) return nullptr;
    return find_id(it->second);
}

std::vector<std::int64_t> PageIndex::main_namespace_ids() const {
    std::vector<std::int64_t> ids;
    for (const auto& [id, rec] : by_id_) {
        if (rec.namespace_id == 0) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

void write_pages_tsv(std::ostream& out, const std::vector<PageRecord>& pages) {
    out << "page_id\tnamespace\ttitle\tis_redirect\twikitext_bytes\n";
    for (const PageRecord& p : pages) {
        out << p.page_id << '\t' << p.namespace_id << '\t' << p.title << '\t'
            << (p.is_redirect ? 1 : 0) << '\t' << p.wikitext_bytes << '\n';
    }
}

std::vector<PageRecord> read_pages_tsv(std::istream& in) {
    std::vector<PageRecord> pages;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        if (cols.size() != 5) throw ParseError("pages TSV: expected 5 columns");
        PageRecord p;
        p.page_id = parse_int(cols[0]);
        p.namespace_id = static_cast<int>(parse_int(cols[1]));
        p.title = std::string(cols[2]);
        p.is_redirect = parse_int(cols[3]) != 0;
        p.wikitext_bytes = parse_int(cols[4]);
        pages.push_back(std::move(p));
    }
    return pages;
}

PageIndex load_page_index(std::istream& pages_tsv) {
    PageIndex index;
    for (PageRecord& p : read_pages_tsv(pages_tsv)) index.add(std::move(p));
    return index;
}

}  // namespace wikicite
