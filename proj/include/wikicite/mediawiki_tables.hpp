#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>

#include "wikicite/records.hpp"
#include "wikicite/sql_dump.hpp"

namespace wikicite {

// Typed readers over SqlInsertReader for the three MediaWiki SQL tables the
// pipeline consumes. Column positions follow the 2024-08 dump schemas.

// page: page_id, page_namespace, page_title, page_is_redirect, page_is_new,
//       page_random, page_touched, page_links_updated, page_latest, page_len,
//       page_content_model, page_lang
class PageTableReader {
public:
    explicit PageTableReader(std::streambuf* src, Strictness strictness = Strictness::Strict);

    bool next(PageRecord& out);

    std::uint64_t offset() const { return sql_.offset(); }
    const SqlDiagnostics& diagnostics() const { return sql_.diagnostics(); }

private:
    SqlInsertReader sql_;
    SqlRow row_;
};

struct LinkTarget {
    int namespace_id = 0;
    std::string title;
};

using LinkTargetMap = std::unordered_map<std::int64_t, LinkTarget>;

// linktarget: lt_id, lt_namespace, lt_title. Loads the whole table; a
// duplicate lt_id violates the table's primary key and raises SqlError.
LinkTargetMap parse_linktarget_table(std::streambuf* src,
                                     Strictness strictness = Strictness::Strict,
                                     SqlDiagnostics* diag_out = nullptr);

enum class PagelinksSchema {
    Auto,        // detect from the first tuple's arity
    Legacy,      // pl_from, pl_namespace, pl_title, pl_from_namespace
    Normalized,  // pl_from, pl_from_namespace, pl_target_id
};

// pagelinks rows in either schema generation; the August 2024 dumps straddle
// the linktarget migration, so both must parse.
class PagelinksReader {
public:
    PagelinksReader(std::streambuf* src, PagelinksSchema schema = PagelinksSchema::Auto,
                    Strictness strictness = Strictness::Strict);

    bool next(LinkRow& out);

    PagelinksSchema schema() const { return schema_; }
    std::uint64_t offset() const { return sql_.offset(); }
    const SqlDiagnostics& diagnostics() const { return sql_.diagnostics(); }
    std::uint64_t rows_skipped() const { return rows_skipped_; }

private:
    bool decode(const SqlRow& row, LinkRow& out, std::uint64_t at);

    SqlInsertReader sql_;
    PagelinksSchema schema_;
    Strictness strictness_;
    SqlRow row_;
    std::uint64_t rows_skipped_ = 0;
};

// TSV: target_id, namespace, title; target_id asc.
void write_linktargets_tsv(std::ostream& out, const LinkTargetMap& map);
LinkTargetMap read_linktargets_tsv(std::istream& in);

}  // namespace wikicite
