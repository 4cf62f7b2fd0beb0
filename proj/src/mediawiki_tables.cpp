#include "wikicite/mediawiki_tables.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <vector>

#include "wikicite/text_util.hpp"

namespace wikicite {

namespace {

SqlSchema page_schema() {
    return SqlSchema{{SqlType::Int, SqlType::Int, SqlType::Text, SqlType::Int, SqlType::Int,
                      SqlType::Float, SqlType::Text, SqlType::Text, SqlType::Int, SqlType::Int,
                      SqlType::Text, SqlType::Text}};
}

SqlSchema linktarget_schema() {
    return SqlSchema{{SqlType::Int, SqlType::Int, SqlType::Text}};
}

}  // namespace

namespace {

void require_not_null(const SqlRow& row, std::initializer_list<std::size_t> columns,
                      std::uint64_t offset) {
    for (std::size_t i : columns) {
        if (row[i].is_null()) {
            throw SqlError(SqlError::Kind::Schema, offset,
                           "unexpected NULL in column " + std::to_string(i + 1));
        }
    }
}

}  // namespace

PageTableReader::PageTableReader(std::streambuf* src, Strictness strictness)
    : sql_(src, page_schema(), strictness) {}

bool PageTableReader::next(PageRecord& out) {
    if (!sql_.next(row_)) return false;
    require_not_null(row_, {0, 1, 2, 3, 9}, sql_.offset());
    out.page_id = row_[0].as_int();
    out.namespace_id = static_cast<int>(row_[1].as_int());
    out.title = row_[2].as_text();
    out.is_redirect = row_[3].as_int() != 0;
    out.wikitext_bytes = row_[9].as_int();
    return true;
}

LinkTargetMap parse_linktarget_table(std::streambuf* src, Strictness strictness,
                                     SqlDiagnostics* diag_out) {
    SqlInsertReader sql(src, linktarget_schema(), strictness);
    LinkTargetMap map;
    SqlRow row;
    while (sql.next(row)) {
        require_not_null(row, {0, 1, 2}, sql.offset());
        std::int64_t id = row[0].as_int();
        LinkTarget lt{static_cast<int>(row[1].as_int()), row[2].as_text()};
        auto [it, inserted] = map.emplace(id, std::move(lt));
        if (!inserted) {
            throw SqlError(SqlError::Kind::Duplicate, sql.offset(),
                           "duplicate linktarget id " + std::to_string(id));
        }
    }
    if (diag_out) *diag_out = sql.diagnostics();
    return map;
}

PagelinksReader::PagelinksReader(std::streambuf* src, PagelinksSchema schema,
                                 Strictness strictness)
    : sql_(src, SqlSchema{}, strictness), schema_(schema), strictness_(strictness) {}

bool PagelinksReader::decode(const SqlRow& row, LinkRow& out, std::uint64_t at) {
    if (schema_ == PagelinksSchema::Auto) {
        if (row.size() == 3) {
            schema_ = PagelinksSchema::Normalized;
        } else if (row.size() == 4) {
            schema_ = PagelinksSchema::Legacy;
        } else {
            throw SqlError(SqlError::Kind::Schema, at,
                           "unknown pagelinks arity " + std::to_string(row.size()));
        }
    }
    bool ok;
    if (schema_ == PagelinksSchema::Normalized) {
        ok = row.size() == 3 && row[0].kind == SqlValue::Kind::Int &&
             row[1].kind == SqlValue::Kind::Int && row[2].kind == SqlValue::Kind::Int;
        if (ok) {
            out.from_page_id = row[0].as_int();
            out.from_namespace = static_cast<int>(row[1].as_int());
            out.target_id = row[2].as_int();
            out.target_namespace = 0;
            out.target_title.clear();
        }
    } else {
        ok = row.size() == 4 && row[0].kind == SqlValue::Kind::Int &&
             row[1].kind == SqlValue::Kind::Int && row[2].kind == SqlValue::Kind::Text &&
             row[3].kind == SqlValue::Kind::Int;
        if (ok) {
            out.from_page_id = row[0].as_int();
            out.from_namespace = static_cast<int>(row[3].as_int());
            out.target_id.reset();
            out.target_namespace = static_cast<int>(row[1].as_int());
            out.target_title = row[2].as_text();
        }
    }
    if (!ok) {
        if (strictness_ == Strictness::Strict) {
            throw SqlError(SqlError::Kind::Schema, at, "pagelinks row does not match schema");
        }
        ++rows_skipped_;
        return false;
    }
    return true;
}

bool PagelinksReader::next(LinkRow& out) {
    for (;;) {
        std::uint64_t at = sql_.offset();
        if (!sql_.next(row_)) return false;
        if (decode(row_, out, at)) return true;
    }
}

void write_linktargets_tsv(std::ostream& out, const LinkTargetMap& map) {
    std::vector<std::int64_t> ids;
    ids.reserve(map.size());
    for (const auto& [id, lt] : map) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    out << "target_id\tnamespace\ttitle\n";
    for (std::int64_t id : ids) {
        const LinkTarget& lt = map.at(id);
        out << id << '\t' << lt.namespace_id << '\t' << lt.title << '\n';
    }
}

LinkTargetMap read_linktargets_tsv(std::istream& in) {
    LinkTargetMap map;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        if (cols.size() != 3) throw ParseError("linktargets TSV: expected 3 columns");
        map.emplace(parse_int(cols[0]),
                    LinkTarget{static_cast<int>(parse_int(cols[1])), std::string(cols[2])});
    }
    return map;
}

}  // namespace wikicite
