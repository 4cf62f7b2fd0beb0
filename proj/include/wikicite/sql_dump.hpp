#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wikicite/byte_reader.hpp"
#include "wikicite/errors.hpp"

namespace wikicite {

// Streaming reader for mysqldump-style table dumps:
//
//   -- comment lines, /* conditional comments */;
//   CREATE TABLE `pagelinks` (...);
//   LOCK TABLES `pagelinks` WRITE;
//   INSERT INTO `pagelinks` VALUES (1,0,'Title'),(2,0,'O\'Brien');
//   UNLOCK TABLES;
//
// Only INSERT statements produce rows; everything else is skipped at
// statement granularity. Memory use is bounded by the largest single tuple,
// never by statement or file size. This is not a SQL parser; it accepts
// exactly the dump shape above.

struct SqlValue {
    enum class Kind { Null, Int, Float, Text };

    Kind kind = Kind::Null;
    std::int64_t int_value = 0;
    double float_value = 0.0;
    std::string text;  // unescaped bytes

    bool is_null() const { return kind == Kind::Null; }
    std::int64_t as_int() const;
    double as_double() const;
    const std::string& as_text() const;

    static SqlValue null();
    static SqlValue integer(std::int64_t v);
    static SqlValue real(double v);
    static SqlValue str(std::string v);
};

using SqlRow = std::vector<SqlValue>;

enum class SqlType { Int, Float, Text };

// Expected arity and column types. An empty schema disables validation
// (generic mode, used for schema auto-detection).
struct SqlSchema {
    std::vector<SqlType> columns;

    bool empty() const { return columns.empty(); }
    std::size_t arity() const { return columns.size(); }
};

struct SqlDiagnostics {
    std::uint64_t statements_skipped = 0;
    std::uint64_t malformed_tuples = 0;  // lenient mode only
    std::uint64_t truncated = 0;         // lenient mode only

    void merge(const SqlDiagnostics& o) {
        statements_skipped += o.statements_skipped;
        malformed_tuples += o.malformed_tuples;
        truncated += o.truncated;
    }
};

class SqlInsertReader {
public:
    SqlInsertReader(std::streambuf* src, SqlSchema schema = {},
                    Strictness strictness = Strictness::Strict);

    // Yields the next tuple in file order. Returns false at clean end of
    // stream. Strict mode throws SqlError on malformed input; lenient mode
    // tallies the fault and recovers at the next statement boundary.
    bool next(SqlRow& out);

    std::uint64_t offset() const { return in_.offset(); }
    const SqlDiagnostics& diagnostics() const { return diag_; }

private:
    enum class State { Statement, Tuples, Done };

    bool next_impl(SqlRow& out);
    bool begin_next_statement();     // positions at first tuple of next INSERT
    void scan_to_values();
    void parse_tuple(SqlRow& out);   // expects '(' at cursor
    SqlValue parse_value();
    std::string parse_string_literal();
    void parse_number(SqlValue& out);
    void skip_statement();           // to just past ';', quote-aware
    void skip_ws();
    void skip_ws_and_comments();
    void skip_line();
    void skip_block_comment();
    void skip_backtick_ident(bool already_open = false);
    std::string read_word();
    static bool strcasecmp_ascii(const std::string& a, const char* b);
    void validate(const SqlRow& row, std::uint64_t at);
    [[noreturn]] void fail(SqlError::Kind kind, std::uint64_t at, const std::string& msg);

    ByteReader in_;
    SqlSchema schema_;
    Strictness strictness_;
    SqlDiagnostics diag_;
    State state_ = State::Statement;
    bool need_separator_ = false;
};

// MySQL-style string escaping. unescape_sql resolves \0 \' \" \b \n \r \t \Z
// and \\; escape_sql emits the canonical escapes for the characters that
// require them, so unescape(escape(s)) == s for every byte string.
std::string escape_sql(std::string_view raw);
std::string unescape_sql(std::string_view escaped);

}  // namespace wikicite
