#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wikicite/byte_reader.hpp"
#include "wikicite/errors.hpp"
#include "wikicite/records.hpp"

namespace wikicite {

struct XmlDiagnostics {
    std::uint64_t pages_missing_text = 0;
};

// Streaming reader for MediaWiki pages-articles XML exports. Yields one
// ArticleText per <page> in document order, holding at most one page's text
// in memory. This is a purpose-built reader for the export schema, not a
// general XML parser: it validates tag nesting and reports malformed input
// with a line number, and it decodes the standard character entities the
// export format uses.
//
// Pages without a <text> element are skipped and tallied in diagnostics;
// when a page carries several <revision> blocks the last one wins (exports
// order revisions oldest-first, so last is the latest).
class PagesArticlesReader {
public:
    explicit PagesArticlesReader(std::streambuf* src);

    bool next(ArticleText& out);

    const XmlDiagnostics& diagnostics() const { return diag_; }

private:
    struct Tag {
        std::string name;
        bool closing = false;
        bool self_closing = false;
        bool skip = false;  // comment, PI, doctype
    };

    bool read_markup(Tag& tag);          // cursor just past '<'
    void handle_open(const std::string& name);
    bool handle_close(const std::string& name);  // true when a page completed
    void append_char_data(int first_char);
    void decode_entity();
    [[noreturn]] void fail(const std::string& msg);

    ByteReader in_;
    XmlDiagnostics diag_;
    std::vector<std::string> stack_;

    bool in_page_ = false;
    bool have_page_id_ = false;
    bool have_text_ = false;
    std::string title_;
    std::string ns_text_;
    std::string id_text_;
    std::string text_;
    std::string* capture_ = nullptr;
};

}  // namespace wikicite
