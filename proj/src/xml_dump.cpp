#include "wikicite/xml_dump.hpp"

#include <cctype>

#include "wikicite/text_util.hpp"

namespace wikicite {

PagesArticlesReader::PagesArticlesReader(std::streambuf* src) : in_(src) {
    // UTF-8 BOM, if any
    if (in_.peek() == 0xEF) {
        in_.get();
        in_.get();
        in_.get();
    }
}

void PagesArticlesReader::fail(const std::string& msg) { throw XmlError(in_.line(), msg); }

bool PagesArticlesReader::next(ArticleText& out) {
    for (;;) {
        int c = in_.get();
        if (c == ByteReader::kEof) {
            if (!stack_.empty()) fail("unexpected end of file inside <" + stack_.back() + ">");
            return false;
        }
        if (c != '<') {
            append_char_data(c);
            continue;
        }
        Tag tag;
        if (!read_markup(tag)) continue;  // comment / PI / doctype / cdata
        if (tag.closing) {
            if (handle_close(tag.name)) {
                out.page_id = 0;
                out.namespace_id = 0;
                try {
                    out.page_id = parse_int(trim(id_text_));
                    out.namespace_id = static_cast<int>(parse_int(trim(ns_text_)));
                } catch (const std::invalid_argument&) {
                    fail("page with non-numeric <id> or <ns>");
                }
                out.title = title_;
                for (char& t : out.title) {
                    if (t == ' ') t = '_';
                }
                out.wikitext = std::move(text_);
                text_.clear();
                return true;
            }
        } else {
            handle_open(tag.name);
            if (tag.self_closing) {
                if (handle_close(tag.name)) fail("self-closing <page>");
            }
        }
    }
}

bool PagesArticlesReader::read_markup(Tag& tag) {
    int c = in_.get();
    if (c == ByteReader::kEof) fail("unexpected end of file after '<'");
    if (c == '?') {  // processing instruction
        for (;;) {
            int d = in_.get();
            if (d == ByteReader::kEof) fail("unterminated processing instruction");
            if (d == '?' && in_.peek() == '>') {
                in_.get();
                return false;
            }
        }
    }
    if (c == '!') {
        int d = in_.peek();
        if (d == '-') {  // comment
            in_.get();
            if (in_.get() != '-') fail("malformed comment");
            int dashes = 0;
            for (;;) {
                int e = in_.get();
                if (e == ByteReader::kEof) fail("unterminated comment");
                if (e == '-') {
                    ++dashes;
                } else if (e == '>' && dashes >= 2) {
                    return false;
                } else {
                    dashes = 0;
                }
            }
        }
        if (d == '[') {  // CDATA: raw characters into the capture buffer
            for (const char* expect = "[CDATA["; *expect; ++expect) {
                if (in_.get() != *expect) fail("malformed CDATA section");
            }
            int brackets = 0;
            for (;;) {
                int e = in_.get();
                if (e == ByteReader::kEof) fail("unterminated CDATA section");
                if (e == ']') {
                    ++brackets;
                    continue;
                }
                if (e == '>' && brackets >= 2) return false;
                for (; brackets > 0; --brackets)
                    if (capture_) capture_->push_back(']');
                if (capture_) capture_->push_back(static_cast<char>(e));
            }
        }
        // DOCTYPE and friends: skip to '>'
        for (;;) {
            int e = in_.get();
            if (e == ByteReader::kEof) fail("unterminated declaration");
            if (e == '>') return false;
        }
    }

    if (c == '/') {
        tag.closing = true;
        c = in_.get();
    }
    if (c == ByteReader::kEof) fail("unexpected end of file in tag");
    if (!std::isalpha(c) && c != '_') fail("malformed tag name");
    tag.name.push_back(static_cast<char>(c));
    for (;;) {
        int d = in_.peek();
        if (d == ByteReader::kEof) fail("unexpected end of file in tag");
        if (std::isalnum(d) || d == '_' || d == '-' || d == ':' || d == '.') {
            tag.name.push_back(static_cast<char>(in_.get()));
            continue;
        }
        break;
    }
    // attributes (values may contain '>'), trailing '/' marks self-closing
    bool last_slash = false;
    for (;;) {
        int d = in_.get();
        if (d == ByteReader::kEof) fail("unexpected end of file in tag");
        if (d == '>') break;
        if (d == '"' || d == '\'') {
            last_slash = false;
            int quote = d;
            for (;;) {
                int e = in_.get();
                if (e == ByteReader::kEof) fail("unterminated attribute value");
                if (e == quote) break;
            }
            continue;
        }
        last_slash = (d == '/');
    }
    tag.self_closing = last_slash;
    if (tag.closing && tag.self_closing) fail("malformed closing tag");
    return true;
}

void PagesArticlesReader::handle_open(const std::string& name) {
    const std::string parent = stack_.empty() ? std::string() : stack_.back();
    stack_.push_back(name);
    capture_ = nullptr;
    if (name == "page") {
        in_page_ = true;
        have_page_id_ = false;
        have_text_ = false;
        title_.clear();
        ns_text_.clear();
        id_text_.clear();
        text_.clear();
        return;
    }
    if (!in_page_) return;
    if (parent == "page") {
        if (name == "title") {
            capture_ = &title_;
        } else if (name == "ns") {
            capture_ = &ns_text_;
        } else if (name == "id" && !have_page_id_) {
            capture_ = &id_text_;
        }
    } else if (name == "text" && parent == "revision") {
        text_.clear();
        have_text_ = true;
        capture_ = &text_;
    }
}

bool PagesArticlesReader::handle_close(const std::string& name) {
    if (stack_.empty() || stack_.back() != name)
        fail("mismatched closing tag </" + name + ">");
    const std::string parent = stack_.size() >= 2 ? stack_[stack_.size() - 2] : std::string();
    stack_.pop_back();
    capture_ = nullptr;
    if (name == "id" && parent == "page") have_page_id_ = true;
    if (name == "page") {
        in_page_ = false;
        if (!have_page_id_ || trim(ns_text_).empty() || title_.empty())
            fail("page missing <id>, <ns> or <title>");
        if (!have_text_) {
            ++diag_.pages_missing_text;
            return false;
        }
        return true;
    }
    return false;
}

void PagesArticlesReader::append_char_data(int first_char) {
    if (first_char == '&') {
        decode_entity();
        return;
    }
    if (capture_) capture_->push_back(static_cast<char>(first_char));
}

void PagesArticlesReader::decode_entity() {
    std::string name;
    for (;;) {
        int c = in_.peek();
        if (c == ByteReader::kEof || c == '<' || name.size() > 10) {
            // not an entity; keep the raw bytes
            if (capture_) {
                capture_->push_back('&');
                capture_->append(name);
            }
            return;
        }
        in_.get();
        if (c == ';') break;
        name.push_back(static_cast<char>(c));
    }
    if (!capture_) return;
    if (name == "amp") {
        capture_->push_back('&');
    } else if (name == "lt") {
        capture_->push_back('<');
    } else if (name == "gt") {
        capture_->push_back('>');
    } else if (name == "quot") {
        capture_->push_back('"');
    } else if (name == "apos") {
        capture_->push_back('\'');
    } else if (!name.empty() && name[0] == '#') {
        long code = 0;
        bool ok = name.size() > 1;
        if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
            for (std::size_t i = 2; i < name.size() && ok; ++i) {
                int d = std::isdigit(static_cast<unsigned char>(name[i])) ? name[i] - '0'
                        : (name[i] >= 'a' && name[i] <= 'f')              ? name[i] - 'a' + 10
                        : (name[i] >= 'A' && name[i] <= 'F')              ? name[i] - 'A' + 10
                                                                          : -1;
                if (d < 0) ok = false;
                else code = code * 16 + d;
            }
        } else {
            for (std::size_t i = 1; i < name.size() && ok; ++i) {
                if (!std::isdigit(static_cast<unsigned char>(name[i]))) ok = false;
                else code = code * 10 + (name[i] - '0');
            }
        }
        if (!ok || code <= 0 || code > 0x10FFFF) {
            capture_->push_back('&');
            capture_->append(name);
            capture_->push_back(';');
            return;
        }
        // UTF-8 encode
        if (code < 0x80) {
            capture_->push_back(static_cast<char>(code));
        } else if (code < 0x800) {
            capture_->push_back(static_cast<char>(0xC0 | (code >> 6)));
            capture_->push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else if (code < 0x10000) {
            capture_->push_back(static_cast<char>(0xE0 | (code >> 12)));
            capture_->push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            capture_->push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else {
            capture_->push_back(static_cast<char>(0xF0 | (code >> 18)));
            capture_->push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
            capture_->push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            capture_->push_back(static_cast<char>(0x80 | (code & 0x3F)));
        }
    } else {
        // unknown entity: keep raw
        capture_->push_back('&');
        capture_->append(name);
        capture_->push_back(';');
    }
}

}  // namespace wikicite
