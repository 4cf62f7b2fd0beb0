#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wikicite/errors.hpp"
#include "wikicite/records.hpp"

namespace wikicite {

// In-memory page table for one language edition, addressable by page id and
// by (namespace, title). Duplicate ids or titles violate the table's keys.
class PageIndex {
public:
    void add(PageRecord rec);

    const PageRecord* find_id(std::int64_t page_id) const;
    const PageRecord* find_title(int namespace_id, std::string_view title) const;

    // All namespace-0 page ids, ascending.
    std::vector<std::int64_t> main_namespace_ids() const;

    std::size_t size() const { return by_id_.size(); }

private:
    static std::string title_key(int namespace_id, std::string_view title);

    std::unordered_map<std::int64_t, PageRecord> by_id_;
    std::unordered_map<std::string, std::int64_t> by_title_;
};

// TSV: page_id, namespace, title, is_redirect, wikitext_bytes; page_id asc.
void write_pages_tsv(std::ostream& out, const std::vector<PageRecord>& pages);
std::vector<PageRecord> read_pages_tsv(std::istream& in);

PageIndex load_page_index(std::istream& pages_tsv);

}  // namespace wikicite
