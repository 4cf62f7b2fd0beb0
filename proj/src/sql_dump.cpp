#include "wikicite/sql_dump.hpp"

#include <cctype>
#include <charconv>

namespace wikicite {

std::int64_t SqlValue::as_int() const {
    if (kind != Kind::Int) throw std::invalid_argument("SqlValue: not an integer");
    return int_value;
}

double SqlValue::as_double() const {
    if (kind == Kind::Float) return float_value;
    if (kind == Kind::Int) return static_cast<double>(int_value);
    throw std::invalid_argument("SqlValue: not a number");
}

const std::string& SqlValue::as_text() const {
    if (kind != Kind::Text) throw std::invalid_argument("SqlValue: not text");
    return text;
}

SqlValue SqlValue::null() { return SqlValue{}; }

SqlValue SqlValue::integer(std::int64_t v) {
    SqlValue s;
    s.kind = Kind::Int;
    s.int_value = v;
    return s;
}

SqlValue SqlValue::real(double v) {
    SqlValue s;
    s.kind = Kind::Float;
    s.float_value = v;
    return s;
}

SqlValue SqlValue::str(std::string v) {
    SqlValue s;
    s.kind = Kind::Text;
    s.text = std::move(v);
    return s;
}

SqlInsertReader::SqlInsertReader(std::streambuf* src, SqlSchema schema, Strictness strictness)
    : in_(src), schema_(std::move(schema)), strictness_(strictness) {}

void SqlInsertReader::fail(SqlError::Kind kind, std::uint64_t at, const std::string& msg) {
    throw SqlError(kind, at, msg);
}

bool SqlInsertReader::next(SqlRow& out) {
    for (;;) {
        try {
            return next_impl(out);
        } catch (const SqlError& e) {
            if (strictness_ == Strictness::Strict) throw;
            if (e.kind() == SqlError::Kind::Truncated) {
                ++diag_.truncated;
                state_ = State::Done;
                return false;
            }
            ++diag_.malformed_tuples;
            try {
                skip_statement();
            } catch (const SqlError&) {
                ++diag_.truncated;
                state_ = State::Done;
                return false;
            }
            state_ = State::Statement;
            need_separator_ = false;
        }
    }
}

bool SqlInsertReader::next_impl(SqlRow& out) {
    if (state_ == State::Done) return false;

    if (state_ == State::Tuples && need_separator_) {
        skip_ws();
        int c = in_.get();
        if (c == ',') {
            need_separator_ = false;
        } else if (c == ';') {
            state_ = State::Statement;
            need_separator_ = false;
        } else if (c == ByteReader::kEof) {
            fail(SqlError::Kind::Truncated, in_.offset(), "stream ends inside INSERT statement");
        } else {
            fail(SqlError::Kind::Literal, in_.offset() - 1,
                 "expected ',' or ';' after tuple");
        }
    }

    if (state_ == State::Statement) {
        if (!begin_next_statement()) return false;
    }

    skip_ws();
    std::uint64_t tuple_start = in_.offset();
    if (in_.peek() != '(') {
        if (in_.peek() == ByteReader::kEof)
            fail(SqlError::Kind::Truncated, tuple_start, "stream ends inside VALUES list");
        fail(SqlError::Kind::Literal, tuple_start, "expected '(' to start tuple");
    }
    parse_tuple(out);
    validate(out, tuple_start);
    need_separator_ = true;
    return true;
}

bool SqlInsertReader::begin_next_statement() {
    for (;;) {
        skip_ws_and_comments();
        int c = in_.peek();
        if (c == ByteReader::kEof) {
            state_ = State::Done;
            return false;
        }
        if (c == ';') {  // empty statement, e.g. after a conditional comment
            in_.get();
            continue;
        }
        if (!std::isalpha(c)) {
            fail(SqlError::Kind::Literal, in_.offset(), "unexpected byte at statement start");
        }
        std::string word = read_word();
        if (word.size() == 6 && (word[0] == 'I' || word[0] == 'i') &&
            strcasecmp_ascii(word, "INSERT")) {
            scan_to_values();
            state_ = State::Tuples;
            need_separator_ = false;
            return true;
        }
        ++diag_.statements_skipped;
        skip_statement();
    }
}

void SqlInsertReader::scan_to_values() {
    for (;;) {
        skip_ws_and_comments();
        int c = in_.peek();
        if (c == ByteReader::kEof)
            fail(SqlError::Kind::Truncated, in_.offset(), "stream ends inside INSERT header");
        if (c == ';')
            fail(SqlError::Kind::Literal, in_.offset(), "INSERT statement without VALUES");
        if (c == '`') {
            skip_backtick_ident();
            continue;
        }
        if (c == '(') {  // explicit column list
            in_.get();
            for (;;) {
                int d = in_.get();
                if (d == ByteReader::kEof)
                    fail(SqlError::Kind::Truncated, in_.offset(), "stream ends inside column list");
                if (d == '`') {
                    skip_backtick_ident(/*already_open=*/true);
                    continue;
                }
                if (d == ')') break;
            }
            continue;
        }
        if (std::isalpha(c)) {
            std::string word = read_word();
            if (strcasecmp_ascii(word, "VALUES") || strcasecmp_ascii(word, "VALUE")) return;
            continue;  // INTO, table name, IGNORE, ...
        }
        fail(SqlError::Kind::Literal, in_.offset(), "unexpected byte in INSERT header");
    }
}

void SqlInsertReader::parse_tuple(SqlRow& out) {
    out.clear();
    in_.get();  // '('
    skip_ws();
    if (in_.peek() == ')') {
        in_.get();
        return;
    }
    for (;;) {
        out.push_back(parse_value());
        skip_ws();
        int c = in_.get();
        if (c == ',') {
            continue;
        }
        if (c == ')') return;
        if (c == ByteReader::kEof)
            fail(SqlError::Kind::Truncated, in_.offset(), "stream ends inside tuple");
        fail(SqlError::Kind::Literal, in_.offset() - 1, "expected ',' or ')' in tuple");
    }
}

SqlValue SqlInsertReader::parse_value() {
    skip_ws();
    int c = in_.peek();
    if (c == ByteReader::kEof)
        fail(SqlError::Kind::Truncated, in_.offset(), "stream ends inside tuple");
    if (c == '\'') return SqlValue::str(parse_string_literal());
    if (c == 'N' || c == 'n') {
        std::uint64_t at = in_.offset();
        std::string word = read_word();
        if (strcasecmp_ascii(word, "NULL")) return SqlValue::null();
        fail(SqlError::Kind::Literal, at, "unexpected literal '" + word + "'");
    }
    if (std::isdigit(c) || c == '-' || c == '+' || c == '.') {
        SqlValue v;
        parse_number(v);
        return v;
    }
    fail(SqlError::Kind::Literal, in_.offset(), "unexpected byte in value");
}

void SqlInsertReader::parse_number(SqlValue& out) {
    std::uint64_t at = in_.offset();
    char buf[64];
    std::size_t n = 0;
    bool is_float = false;
    for (;;) {
        int c = in_.peek();
        bool numeric = (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.' ||
                       c == 'e' || c == 'E';
        if (!numeric) break;
        if (c == '.' || c == 'e' || c == 'E') is_float = true;
        if (n + 1 >= sizeof(buf)) fail(SqlError::Kind::Literal, at, "numeric literal too long");
        buf[n++] = static_cast<char>(in_.get());
    }
    if (n == 0) fail(SqlError::Kind::Literal, at, "empty numeric literal");
    if (!is_float) {
        std::int64_t v = 0;
        auto res = std::from_chars(buf, buf + n, v);
        if (res.ec == std::errc() && res.ptr == buf + n) {
            out = SqlValue::integer(v);
            return;
        }
        // fall through: out-of-range integers degrade to double
    }
    double d = 0;
    auto res = std::from_chars(buf, buf + n, d);
    if (res.ec != std::errc() || res.ptr != buf + n)
        fail(SqlError::Kind::Literal, at, "malformed numeric literal");
    out = SqlValue::real(d);
}

std::string SqlInsertReader::parse_string_literal() {
    in_.get();  // opening quote
    std::string out;
    for (;;) {
        int c = in_.get();
        if (c == ByteReader::kEof)
            fail(SqlError::Kind::Truncated, in_.offset(), "unterminated string literal");
        if (c == '\\') {
            int e = in_.get();
            if (e == ByteReader::kEof)
                fail(SqlError::Kind::Truncated, in_.offset(), "unterminated string literal");
            switch (e) {
                case '0': out.push_back('\0'); break;
                case 'b': out.push_back('\b'); break;
                case 'n': out.push_back('\n'); break;
                case 'r': out.push_back('\r'); break;
                case 't': out.push_back('\t'); break;
                case 'Z': out.push_back('\x1a'); break;
                default: out.push_back(static_cast<char>(e)); break;  // \' \" \\ and identity
            }
            continue;
        }
        if (c == '\'') {
            if (in_.peek() == '\'') {  // doubled quote
                in_.get();
                out.push_back('\'');
                continue;
            }
            return out;
        }
        out.push_back(static_cast<char>(c));
    }
}

void SqlInsertReader::skip_statement() {
    for (;;) {
        int c = in_.get();
        if (c == ByteReader::kEof)
            fail(SqlError::Kind::Truncated, in_.offset(), "stream ends inside statement");
        switch (c) {
            case ';':
                return;
            case '\'': {
                for (;;) {
                    int d = in_.get();
                    if (d == ByteReader::kEof)
                        fail(SqlError::Kind::Truncated, in_.offset(), "unterminated string literal");
                    if (d == '\\') {
                        if (in_.get() == ByteReader::kEof)
                            fail(SqlError::Kind::Truncated, in_.offset(),
                                 "unterminated string literal");
                        continue;
                    }
                    if (d == '\'') {
                        if (in_.peek() == '\'') {
                            in_.get();
                            continue;
                        }
                        break;
                    }
                }
                break;
            }
            case '"': {
                for (;;) {
                    int d = in_.get();
                    if (d == ByteReader::kEof)
                        fail(SqlError::Kind::Truncated, in_.offset(), "unterminated string literal");
                    if (d == '\\') {
                        if (in_.get() == ByteReader::kEof)
                            fail(SqlError::Kind::Truncated, in_.offset(),
                                 "unterminated string literal");
                        continue;
                    }
                    if (d == '"') break;
                }
                break;
            }
            case '`':
                skip_backtick_ident(/*already_open=*/true);
                break;
            case '-':
                if (in_.peek() == '-') skip_line();
                break;
            case '#':
                skip_line();
                break;
            case '/':
                if (in_.peek() == '*') {
                    in_.get();
                    skip_block_comment();
                }
                break;
            default:
                break;
        }
    }
}

void SqlInsertReader::skip_ws() {
    for (;;) {
        int c = in_.peek();
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            in_.get();
            continue;
        }
        return;
    }
}

void SqlInsertReader::skip_ws_and_comments() {
    for (;;) {
        skip_ws();
        int c = in_.peek();
        if (c == '-') {
            in_.get();
            if (in_.peek() == '-') {
                skip_line();
                continue;
            }
            fail(SqlError::Kind::Literal, in_.offset() - 1, "stray '-' between statements");
        }
        if (c == '#') {
            in_.get();
            skip_line();
            continue;
        }
        if (c == '/') {
            in_.get();
            if (in_.peek() == '*') {
                in_.get();
                skip_block_comment();
                continue;
            }
            fail(SqlError::Kind::Literal, in_.offset() - 1, "stray '/' between statements");
        }
        return;
    }
}

void SqlInsertReader::skip_line() {
    for (;;) {
        int c = in_.get();
        if (c == ByteReader::kEof || c == '\n') return;
    }
}

void SqlInsertReader::skip_block_comment() {
    for (;;) {
        int c = in_.get();
        if (c == ByteReader::kEof)
            fail(SqlError::Kind::Truncated, in_.offset(), "unterminated block comment");
        if (c == '*' && in_.peek() == '/') {
            in_.get();
            return;
        }
    }
}

void SqlInsertReader::skip_backtick_ident(bool already_open) {
    if (!already_open) in_.get();
    for (;;) {
        int c = in_.get();
        if (c == ByteReader::kEof)
            fail(SqlError::Kind::Truncated, in_.offset(), "unterminated backtick identifier");
        if (c == '`') {
            if (in_.peek() == '`') {  // doubled backtick
                in_.get();
                continue;
            }
            return;
        }
    }
}

std::string SqlInsertReader::read_word() {
    std::string w;
    for (;;) {
        int c = in_.peek();
        if (std::isalnum(c) || c == '_') {
            w.push_back(static_cast<char>(in_.get()));
            continue;
        }
        return w;
    }
}

bool SqlInsertReader::strcasecmp_ascii(const std::string& a, const char* b) {
    std::size_t i = 0;
    for (; i < a.size(); ++i) {
        if (b[i] == '\0') return false;
        if (std::toupper(static_cast<unsigned char>(a[i])) !=
            std::toupper(static_cast<unsigned char>(b[i])))
            return false;
    }
    return b[i] == '\0';
}

void SqlInsertReader::validate(const SqlRow& row, std::uint64_t at) {
    if (schema_.empty()) return;
    if (row.size() != schema_.arity()) {
        fail(SqlError::Kind::Schema, at,
             "arity mismatch: expected " + std::to_string(schema_.arity()) + " columns, got " +
                 std::to_string(row.size()));
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].is_null()) continue;
        bool ok = false;
        switch (schema_.columns[i]) {
            case SqlType::Int: ok = row[i].kind == SqlValue::Kind::Int; break;
            case SqlType::Float:
                ok = row[i].kind == SqlValue::Kind::Int || row[i].kind == SqlValue::Kind::Float;
                break;
            case SqlType::Text: ok = row[i].kind == SqlValue::Kind::Text; break;
        }
        if (!ok) {
            fail(SqlError::Kind::Schema, at,
                 "type mismatch in column " + std::to_string(i + 1));
        }
    }
}

std::string escape_sql(std::string_view raw) {
    std::string out;
    out.reserve(raw.size() + raw.size() / 8);
    for (char c : raw) {
        switch (c) {
            case '\0': out += "\\0"; break;
            case '\'': out += "\\'"; break;
            case '"': out += "\\\""; break;
            case '\b': out += "\\b"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\x1a': out += "\\Z"; break;
            case '\\': out += "\\\\"; break;
            default: out.push_back(c); break;
        }
    }
    return out;
}

std::string unescape_sql(std::string_view escaped) {
    std::string out;
    out.reserve(escaped.size());
    for (std::size_t i = 0; i < escaped.size(); ++i) {
        char c = escaped[i];
        if (c != '\\' || i + 1 == escaped.size()) {
            out.push_back(c);
            continue;
        }
        char e = escaped[++i];
        switch (e) {
            case '0': out.push_back('\0'); break;
            case 'b': out.push_back('\b'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            case 't': out.push_back('\t'); break;
            case 'Z': out.push_back('\x1a'); break;
            default: out.push_back(e); break;
        }
    }
    return out;
}

}  // namespace wikicite
